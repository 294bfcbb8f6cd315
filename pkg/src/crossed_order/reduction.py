"""Global scenarios: k components permuted transitively by G.

The completed ring splits into k primitive idempotents e_1..e_k permuted by
G.  Everything that decides heredity and maximality lives in the corner
attached to e_1 and its stabilizer G_1 (the decomposition group), so a
global scenario stores the permutation action plus the local data over G_1,
and the global verdict is defined as the verdict of that local scenario.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .cocycles import TwoCocycle
from .errors import FormatError, ScenarioError
from .groupkit import FiniteGroup, GroupAction, Subgroup
from .ramification import AnalysisReport, RamifiedScenario, analyze

TRANSFER_NOTE = (
    "global verdict read from the decomposition-group corner; "
    "the number of maximal two-sided ideals transfers unchanged"
)


@dataclass
class GlobalScenario:
    """``perm[g][j]`` is the image of label ``j`` (0-based) under ``g``."""

    group: FiniteGroup
    components: int
    perm: tuple[tuple[int, ...], ...]
    local: RamifiedScenario
    embedding: tuple[int, ...]
    name: str = ""
    source: dict | None = None

    def __post_init__(self):
        G, k = self.group, self.components
        if len(self.perm) != G.order or any(sorted(p) != list(range(k)) for p in self.perm):
            raise ScenarioError("permutation action must give a permutation of the k labels per element")
        for g in G.elements():
            for h in G.elements():
                gh = G.mul(g, h)
                if any(self.perm[gh][j] != self.perm[g][self.perm[h][j]] for j in range(k)):
                    raise ScenarioError(
                        f"permutation action is not a homomorphism at ({G.label(g)}, {G.label(h)})"
                    )
        orbit = {self.perm[g][0] for g in G.elements()}
        if len(orbit) != k:
            raise ScenarioError("reduce each orbit separately: G does not act transitively on the components")
        stab = stabilizer(self, 0)
        if tuple(sorted(self.embedding)) != stab.elements:
            raise ScenarioError("the local scenario must live on the stabilizer of component 1")

    def carrier(self, j: int) -> int:
        """Least-index element sending label 0 to ``j``."""
        return next(g for g in self.group.elements() if self.perm[g][0] == j)


def stabilizer(gs: GlobalScenario, j: int) -> Subgroup:
    G = gs.group
    return Subgroup(G, tuple(g for g in G.elements() if gs.perm[g][j] == j))


def decomposition_group(gs: GlobalScenario, j: int) -> Subgroup:
    """Stabilizer of label ``j`` (1-based), checked to be conjugate to ``G_1``."""
    if not 1 <= j <= gs.components:
        raise ScenarioError(f"component label {j} out of range 1..{gs.components}")
    G = gs.group
    Gj = stabilizer(gs, j - 1)
    G1 = stabilizer(gs, 0)
    g = gs.carrier(j - 1)
    conj = Subgroup(G, tuple(G.conj(g, x) for x in G1.elements))
    if conj != Gj:  # pragma: no cover - group theory
        raise ScenarioError("decomposition groups are not conjugate")
    return Gj


def reduce_to_local(gs: GlobalScenario) -> RamifiedScenario:
    return gs.local


def analyze_global(gs: GlobalScenario, **kwargs) -> AnalysisReport:
    report = analyze(reduce_to_local(gs), **kwargs)
    report.notes.append(TRANSFER_NOTE)
    return report


def relabel(gs: GlobalScenario, tau) -> GlobalScenario:
    """Rename component ``j`` to ``tau[j]`` (0-based permutation of labels).

    The new component 1 is old component ``j = tau^-1(0)``; its local data is
    the old one transported along conjugation by the least ``g`` with
    ``g(1) = j``: ``x -> g x g^-1`` on groups, identity on field values.
    """
    k = gs.components
    tau = list(tau)
    if sorted(tau) != list(range(k)):
        raise ScenarioError("relabeling must be a permutation of the components")
    tinv = [0] * k
    for j, t in enumerate(tau):
        tinv[t] = j
    G = gs.group
    new_perm = tuple(tuple(tau[gs.perm[g][tinv[i]]] for i in range(k)) for g in G.elements())
    j = tinv[0]
    g = gs.carrier(j)
    loc = gs.local
    emb_old = gs.embedding
    targets = [G.conj(g, x) for x in emb_old]
    order = sorted(range(len(targets)), key=lambda i: targets[i])
    new_emb = tuple(targets[i] for i in order)
    # local group on the conjugate stabilizer, elements in parent order
    Lold = loc.group
    pos_old = order  # new local index i <- old local index order[i]
    new_of_old = {old: new for new, old in enumerate(pos_old)}
    table = [[new_of_old[Lold.mul(pos_old[a], pos_old[b])] for b in range(len(pos_old))] for a in range(len(pos_old))]
    Lnew = FiniteGroup(table, [G.label(x) for x in new_emb], check=False)
    act = GroupAction(Lnew, loc.field, [loc.action.auts[pos_old[i]].power for i in range(len(pos_old))], check=False)
    xbar = None
    if loc.xbar is not None:
        xbar = {new_of_old[o]: v for o, v in loc.xbar.items()}
    f = TwoCocycle(act, [[loc.cocycle(pos_old[a], pos_old[b]) for b in range(len(pos_old))]
                         for a in range(len(pos_old))], check=False)
    new_local = RamifiedScenario(loc.field, Lnew, act, xbar, f, declared_e0=loc.declared_e0,
                                 name=loc.name, extra_violations=list(loc.extra_violations))
    return GlobalScenario(G, k, new_perm, new_local, new_emb, name=gs.name)


def all_relabelings(gs: GlobalScenario):
    for tau in itertools.permutations(range(gs.components)):
        yield tau, relabel(gs, tau)


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def parse_global(obj: dict) -> GlobalScenario:
    from .scenario_io import GLOBAL_SCHEMA, _build_local, _check_schema, parse_group

    _check_schema(obj, GLOBAL_SCHEMA)
    G = parse_group(obj["group"])
    k = obj["components"]
    perm = _permutation_action(G, k, obj.get("permutation", {}))
    stab = Subgroup(G, tuple(g for g in G.elements() if perm[g][0] == 0))
    if stab.order == G.order:
        L, emb = G, tuple(G.elements())
    else:
        L, emb = stab.as_group()
    local = _build_local(L, obj["local"], obj.get("name", ""), None)
    return GlobalScenario(G, k, perm, local, emb, name=obj.get("name", ""), source=obj)


def _permutation_action(G: FiniteGroup, k: int, spec: dict):
    from .scenario_io import _label_index

    gens = {}
    for lab, images in spec.items():
        g = _label_index(G, lab)
        if sorted(images) != list(range(1, k + 1)):
            raise FormatError(f"permutation for {lab!r} must list each of 1..{k} once")
        gens[g] = tuple(i - 1 for i in images)
    ident = tuple(range(k))
    perms = {G.identity: ident}
    frontier = [G.identity]
    while frontier:
        new = []
        for x in frontier:
            for g, pg in gens.items():
                y = G.mul(x, g)
                py = tuple(perms[x][pg[j]] for j in range(k))
                if y in perms:
                    if perms[y] != py:
                        raise ScenarioError("permutation images do not define a group action")
                else:
                    perms[y] = py
                    new.append(y)
        frontier = new
    if len(perms) != G.order:
        raise ScenarioError("permutation generators must generate the group")
    return tuple(perms[g] for g in G.elements())


def local_from_global_file(obj: dict) -> dict:
    """The reduced local scenario as a standalone file object."""
    from .groupkit import group_to_spec

    gs = parse_global(obj)
    body = dict(obj["local"])
    out = {"version": obj["version"], "group": group_to_spec(gs.local.group), **body}
    if obj.get("name"):
        out["name"] = obj["name"] + " (reduced)"
    return out

