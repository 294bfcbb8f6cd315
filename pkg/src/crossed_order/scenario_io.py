"""Scenario files: strict JSON schema, parsing and canonical serialization.

Local scenario::

    {"version": 1, "name": "...", "field": {...}, "group": "cyclic:2",
     "action": {"a": 1}, "ramification": {"a": 4}, "cocycle": "trivial"}

``action`` lists Frobenius powers on generators (omitted means trivial).
``ramification`` gives values on generators of the inertia, or
``{"e0": n, "exponents": {label: k}}`` for ``zeta_e0 ** k``.  Both are
extended multiplicatively.  ``cocycle`` is ``"trivial"``,
``{"cyclic": alpha}``, ``{"bimult": [[...]], "root": m}`` or ``{"table": ...}``.

Global scenario: ``"components"``, ``"permutation"`` (generator label ->
1-based images) and ``"local"`` holding field/action/ramification/cocycle
over the stabilizer of component 1.

Canonical form: ``json.dumps(obj, sort_keys=True, indent=2)`` plus newline.
"""

from __future__ import annotations

import json
from pathlib import Path

import jsonschema

from .cocycles import TwoCocycle, cocycle_from_spec
from .errors import CocycleError, FieldError, FormatError, GroupError, NoRootOfUnityError, ScenarioError
from .exactfields import Field, field_from_descriptor, primitive_root_of_unity
from .groupkit import (
    FiniteGroup,
    GroupAction,
    action_from_generators,
    group_from_spec,
    group_to_spec,
    subgroup_generated,
    trivial_action,
)
from .ramification import RamifiedScenario

FORMAT_VERSION = 1

_LOCAL_BODY = {
    "field": {"type": "object"},
    "action": {"type": "object", "additionalProperties": {"type": "integer"}},
    "ramification": {"type": "object"},
    "cocycle": {"type": ["string", "object", "array"]},
}
LOCAL_SCHEMA = {
    "type": "object",
    "properties": {
        "version": {"const": FORMAT_VERSION},
        "name": {"type": "string"},
        "group": {"type": ["string", "object"]},
        **_LOCAL_BODY,
    },
    "required": ["version", "field", "group", "ramification", "cocycle"],
    "additionalProperties": False,
}
GLOBAL_SCHEMA = {
    "type": "object",
    "properties": {
        "version": {"const": FORMAT_VERSION},
        "name": {"type": "string"},
        "group": {"type": ["string", "object"]},
        "components": {"type": "integer", "minimum": 1},
        "permutation": {
            "type": "object",
            "additionalProperties": {"type": "array", "items": {"type": "integer"}},
        },
        "local": {
            "type": "object",
            "properties": dict(_LOCAL_BODY),
            "required": ["field", "ramification", "cocycle"],
            "additionalProperties": False,
        },
    },
    "required": ["version", "group", "components", "local"],
    "additionalProperties": False,
}


def canonical_dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_json(path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror or exc}") from None
    return loads_json(text)


def loads_json(text: str) -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc.msg} at line {exc.lineno} column {exc.colno}") from None
    if not isinstance(obj, dict):
        raise FormatError("top level must be a JSON object")
    return obj


def is_global(obj: dict) -> bool:
    return "components" in obj or "local" in obj


def _check_schema(obj: dict, schema: dict) -> None:
    try:
        jsonschema.validate(obj, schema)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "top level"
        raise FormatError(f"schema violation at {where}: {exc.message}") from None


# ---------------------------------------------------------------------------
# pieces
# ---------------------------------------------------------------------------

def parse_field(desc) -> Field:
    try:
        return field_from_descriptor(desc)
    except FieldError as exc:
        raise FormatError(f"bad field descriptor: {exc}") from None


def parse_group(spec) -> FiniteGroup:
    try:
        return group_from_spec(spec)
    except GroupError as exc:
        raise FormatError(f"bad group: {exc}") from None


def _label_index(G: FiniteGroup, label: str) -> int:
    try:
        return G.index(label)
    except GroupError:
        raise FormatError(f"unknown group element {label!r}") from None


def parse_action(G: FiniteGroup, K: Field, spec) -> GroupAction:
    if not spec:
        return trivial_action(G, K)
    gens = {_label_index(G, lab): int(k) for lab, k in spec.items()}
    # unlisted generators act trivially
    for g in G.generators:
        if g not in subgroup_generated(G, list(gens)):
            gens[g] = 0
    try:
        return action_from_generators(G, K, gens)
    except GroupError as exc:
        raise ScenarioError(str(exc)) from None


def _extend_character(G: FiniteGroup, K: Field, values: dict[int, object]):
    """Multiplicative closure from the listed elements; returns (map, conflict or None)."""
    out = {G.identity: K.one()}
    gens = list(values.items())
    for g, v in gens:
        if g == G.identity and not v.is_one():
            return dict(values), f"ramification value at {G.label(g)} must be 1"
    frontier = [G.identity]
    while frontier:
        new = []
        for x in frontier:
            for g, v in gens:
                y = G.mul(x, g)
                w = out[x] * v
                if y in out:
                    if out[y] != w:
                        return dict(values), "ramification character is not a homomorphism on the listed generators"
                else:
                    out[y] = w
                    new.append(y)
        frontier = new
    return out, None


def parse_ramification(G: FiniteGroup, K: Field, spec: dict):
    """Returns ``(xbar or None, declared_e0, violations)``."""
    if "e0" in spec or "exponents" in spec:
        extra = set(spec) - {"e0", "exponents"}
        if extra or "e0" not in spec:
            raise FormatError("ramification in exponent form needs exactly 'e0' and 'exponents'")
        e0 = spec["e0"]
        exps = spec.get("exponents", {})
        if not isinstance(e0, int) or e0 < 1 or not isinstance(exps, dict):
            raise FormatError("bad exponent-form ramification")
        try:
            zeta = primitive_root_of_unity(K, e0)
        except NoRootOfUnityError as exc:
            if e0 % K.p == 0:
                return None, e0, []
            return None, e0, [str(exc)]
        vals = {}
        for lab, k in exps.items():
            if not isinstance(k, int):
                raise FormatError("ramification exponents must be integers")
            vals[_label_index(G, lab)] = zeta ** (k % e0)
        xbar, conflict = _extend_character(G, K, vals)
        return xbar, e0, [conflict] if conflict else []
    vals = {}
    for lab, enc in spec.items():
        try:
            vals[_label_index(G, lab)] = K.decode(enc)
        except FieldError as exc:
            raise FormatError(f"bad ramification value for {lab!r}: {exc}") from None
    xbar, conflict = _extend_character(G, K, vals)
    return xbar, None, [conflict] if conflict else []


def parse_cocycle(action: GroupAction, spec) -> TwoCocycle:
    try:
        return cocycle_from_spec(action, spec)
    except FieldError as exc:
        if isinstance(exc, NoRootOfUnityError):
            raise ScenarioError(str(exc)) from None
        raise FormatError(f"bad cocycle value: {exc}") from None
    except CocycleError as exc:
        raise ScenarioError(str(exc)) from None


def _build_local(G: FiniteGroup, body: dict, name: str, source: dict) -> RamifiedScenario:
    K = parse_field(body["field"])
    action = parse_action(G, K, body.get("action"))
    xbar, e0, viol = parse_ramification(G, K, body["ramification"])
    f = parse_cocycle(action, body["cocycle"])
    return RamifiedScenario(K, G, action, xbar, f, declared_e0=e0, name=name,
                            extra_violations=viol, source=source)


# ---------------------------------------------------------------------------
# entry points
# ---------------------------------------------------------------------------

def parse_scenario(obj: dict) -> RamifiedScenario:
    _check_schema(obj, LOCAL_SCHEMA)
    G = parse_group(obj["group"])
    return _build_local(G, obj, obj.get("name", ""), obj)


def load_scenario(path) -> RamifiedScenario:
    return parse_scenario(load_json(path))


def load_any(path):
    """A local RamifiedScenario or a GlobalScenario, by shape."""
    obj = load_json(path)
    if is_global(obj):
        from .reduction import parse_global

        return parse_global(obj)
    return parse_scenario(obj)


def scenario_to_dict(s: RamifiedScenario) -> dict:
    """The source object for parsed scenarios; an explicit form otherwise."""
    if s.source is not None:
        return s.source
    G, K = s.group, s.field
    out = {
        "version": FORMAT_VERSION,
        "field": K.descriptor(),
        "group": group_to_spec(G),
        "action": {G.label(g): s.action.auts[g].power for g in G.generators if s.action.auts[g].power},
        "ramification": {G.label(g): v.encode() for g, v in sorted((s.xbar or {}).items())},
        "cocycle": {"table": s.cocycle.encode()},
    }
    if s.name:
        out["name"] = s.name
    return out


def dumps_scenario(s: RamifiedScenario) -> str:
    return canonical_dumps(scenario_to_dict(s))
