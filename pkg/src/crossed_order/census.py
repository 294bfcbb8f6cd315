"""Census: sweep fields x groups x actions x cocycle families and compare counts.

Spec file::

    {"version": 1,
     "fields": [{"kind": "prime", "p": 5}, ...],
     "groups": ["cyclic:2", "klein4", ...],
     "families": ["cyclic", "bimult"],
     "alphas": "all",              # or a list of encodings
     "bimult_root": null,          # default: exponent of the group
     "actions": "all",             # or a list of {generator label: power}
     "budget": 1000,
     "workers": 1}

For every action the ramification character is the valid equivariant
character of largest image order (first in enumeration order on ties);
actions admitting none are skipped.  Rows come out in spec order.
"""

from __future__ import annotations

import itertools
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import jsonschema

from .cocycles import bimultiplicative_cocycle, cyclic_cocycle, homomorphisms, trivial_cocycle
from .crossedalg import center_decomposition
from .errors import (
    CocycleError,
    FieldError,
    FormatError,
    GroupError,
    InconsistencyError,
    OracleBudgetError,
    ScenarioError,
    UnsupportedError,
)
from .exactfields import FiniteField, primitive_root_of_unity
from .groupkit import FiniteGroup, GroupAction, abelian_basis, action_from_generators, kernel_of_action
from .ramification import RamifiedScenario, conductor, gamma_f, heredity_verdict, inertia_split, validate_scenario

CENSUS_SCHEMA = {
    "type": "object",
    "properties": {
        "version": {"const": 1},
        "name": {"type": "string"},
        "fields": {"type": "array", "items": {"type": "object"}},
        "groups": {"type": "array", "items": {"type": ["string", "object"]}},
        "families": {"type": "array", "items": {"enum": ["cyclic", "bimult"]}},
        "alphas": {"oneOf": [{"const": "all"}, {"type": "array"}]},
        "bimult_root": {"type": ["integer", "null"], "minimum": 1},
        "actions": {"oneOf": [{"const": "all"}, {"type": "array", "items": {"type": "object"}}]},
        "budget": {"type": "integer", "minimum": 0},
        "workers": {"type": "integer", "minimum": 1},
    },
    "additionalProperties": False,
}
DEFAULT_BUDGET = 5000
COLUMNS = ("field", "group", "action", "cocycle", "tame", "hereditary", "d", "|im pi|", "|H_f|", "oracle", "agree")


@dataclass
class CensusEntry:
    ident: str
    scenario: RamifiedScenario


@dataclass
class CensusRow:
    field: str
    group: str
    action: str
    cocycle: str
    tame: bool
    hereditary: bool
    d: int | None
    image: int | None
    conductor: int | None
    count: int | None
    oracle: int | None
    agree: bool | None
    note: str = ""

    def cells(self) -> list[str]:
        def show(v):
            if v is None:
                return "-"
            if isinstance(v, bool):
                return "yes" if v else "no"
            return str(v)

        agree = "-" if self.agree is None else ("agree" if self.agree else "MISMATCH")
        return [self.field, self.group, self.action, self.cocycle, show(self.tame), show(self.hereditary),
                show(self.d), show(self.image), show(self.conductor), show(self.oracle), agree]

    def record(self) -> dict:
        rec = dict(zip(COLUMNS, self.cells()))
        rec["component_count"] = "-" if self.count is None else str(self.count)
        if self.note:
            rec["note"] = self.note
        return rec


@dataclass
class CensusResult:
    rows: list[CensusRow]

    @property
    def mismatches(self) -> int:
        return sum(1 for r in self.rows if r.agree is False)

    def summary(self) -> str:
        status = "zero mismatches" if self.mismatches == 0 else f"{self.mismatches} MISMATCHES"
        return f"census: {len(self.rows)} scenarios; {status}"

    def to_text(self) -> str:
        table = [list(COLUMNS)] + [r.cells() for r in self.rows]
        widths = [max(len(row[i]) for row in table) for i in range(len(COLUMNS))]
        lines = ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in table]
        for i, r in enumerate(self.rows, 1):
            if r.note:
                lines.append(f"row {i}: {r.note}")
        lines.append(self.summary())
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        obj = {"rows": [r.record() for r in self.rows], "total": len(self.rows), "mismatches": self.mismatches}
        return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


class CensusBudgetError(OracleBudgetError):
    pass


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def check_spec(spec: dict) -> None:
    try:
        jsonschema.validate(spec, CENSUS_SCHEMA)
    except jsonschema.ValidationError as exc:
        where = "/".join(str(p) for p in exc.absolute_path) or "top level"
        raise FormatError(f"census spec: schema violation at {where}: {exc.message}") from None


def all_actions(G: FiniteGroup, K) -> list[GroupAction]:
    """Every homomorphism ``G -> Gal`` by Frobenius powers, in lexicographic order on generators."""
    D = K.automorphism_degree
    gens = G.generators
    out = []
    for powers in itertools.product(range(D), repeat=len(gens)):
        try:
            out.append(action_from_generators(G, K, dict(zip(gens, powers))))
        except GroupError:
            continue
    return out


def _action_label(action: GroupAction) -> str:
    G = action.group
    moved = [f"{G.label(g)}:{action.auts[g].power}" for g in G.generators if action.auts[g].power]
    return ",".join(moved) if moved else "trivial"


def choose_ramification(G: FiniteGroup, K, action: GroupAction) -> dict | None:
    GI = kernel_of_action(G, action)
    if not GI.is_abelian:
        return None
    best, best_e0 = None, 0
    triv = trivial_cocycle(action)
    for chi in homomorphisms(GI, K):
        s = RamifiedScenario(K, G, action, dict(chi.values), triv)
        if not validate_scenario(s).ok:
            continue
        e0 = len(set(chi.values.values()))
        if e0 > best_e0:
            best, best_e0 = dict(chi.values), e0
    return best


def _cocycles(spec: dict, action: GroupAction):
    G, K = action.group, action.field
    fams = spec.get("families", ["cyclic", "bimult"])
    if "cyclic" in fams and G.whole().is_cyclic and G.order > 1:
        alphas = spec.get("alphas", "all")
        if alphas == "all":
            values = K.units() if isinstance(K, FiniteField) else []
        else:
            values = [K.decode(a) for a in alphas]
        gen = G.whole().cyclic_generator
        for alpha in values:
            try:
                f = cyclic_cocycle(action, alpha, gen)
            except CocycleError:
                continue
            yield f"cyclic:{json.dumps(alpha.encode(), separators=(',', ':'))}", f
    if "bimult" in fams and G.is_abelian and G.order > 1:
        basis = abelian_basis(G)
        orders = [G.element_order(b) for b in basis]
        m = spec.get("bimult_root")
        if m is None:
            m = 1
            for o in orders:
                m = m * o // math.gcd(m, o)
        try:
            primitive_root_of_unity(K, m)
        except FieldError:
            return
        r = len(basis)
        for flat in itertools.product(range(m), repeat=r * r):
            E = [list(flat[i * r:(i + 1) * r]) for i in range(r)]
            try:
                f = bimultiplicative_cocycle(action, E, root=m, basis=basis)
            except CocycleError:
                continue
            yield f"bimult:{m}:{json.dumps(E, separators=(',', ':'))}", f


def enumerate_census(spec: dict) -> list[CensusEntry]:
    from .scenario_io import parse_action, parse_field, parse_group

    check_spec(spec)
    out: list[CensusEntry] = []
    for fdesc in spec.get("fields", []):
        K = parse_field(fdesc)
        for gspec in spec.get("groups", []):
            G = parse_group(gspec)
            acts = spec.get("actions", "all")
            if acts == "all":
                actions = all_actions(G, K)
            else:
                actions = []
                for a in acts:
                    try:
                        actions.append(parse_action(G, K, a))
                    except ScenarioError:
                        continue
            for action in actions:
                xbar = choose_ramification(G, K, action)
                if xbar is None:
                    continue
                for cid, f in _cocycles(spec, action):
                    name = f"{K} | {G.describe()} | {_action_label(action)} | {cid}"
                    out.append(CensusEntry(name, RamifiedScenario(K, G, action, xbar, f, name=name)))
    return out


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def evaluate(entry: CensusEntry) -> CensusRow:
    s = entry.scenario
    field, group, action, cid = entry.ident.split(" | ")
    row = CensusRow(field, group, action, cid, tame=False, hereditary=False, d=None, image=None,
                    conductor=None, count=None, oracle=None, agree=None)
    try:
        split = inertia_split(s)
        row.tame = split.inertia.order % s.field.p != 0
        her = heredity_verdict(s, split)
    except InconsistencyError as exc:
        row.agree, row.note = False, str(exc)
        return row
    except UnsupportedError as exc:
        row.note = str(exc)
        return row
    row.hereditary = her.hereditary
    if not her.hereditary:
        return row
    try:
        gd = gamma_f(s, split)
        cd = conductor(s, split, gd)
    except InconsistencyError as exc:
        row.agree, row.note = False, str(exc)
        return row
    except UnsupportedError as exc:
        row.note = str(exc)
        return row
    row.d, row.image, row.conductor, row.count = gd.d, len(cd.image), cd.conductor.order, cd.count
    if isinstance(s.field, FiniteField):
        row.oracle = center_decomposition(s.algebra()).components
        row.agree = row.count == row.conductor == row.oracle
    return row


def run_census(spec: dict, budget: int | None = None) -> CensusResult:
    entries = enumerate_census(spec)
    limit = budget if budget is not None else spec.get("budget", DEFAULT_BUDGET)
    if len(entries) > limit:
        raise CensusBudgetError(f"oracle out of range: census has {len(entries)} scenarios, budget {limit}")
    workers = spec.get("workers", 1)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(evaluate, entries))
    else:
        rows = [evaluate(e) for e in entries]
    return CensusResult(rows)
