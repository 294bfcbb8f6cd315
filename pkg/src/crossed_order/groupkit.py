"""Finite groups given by multiplication tables, subgroups, quotients, actions.

Groups are small (order <= 64) and every structural check is exhaustive.
Elements are integer indices into the table; labels are only for display
and serialization.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import GroupError
from .exactfields import AutomorphismSpec, Field, FieldElement

MAX_ORDER = 64
SUBGROUP_ENUM_LIMIT = 16


class FiniteGroup:
    """A group by its Cayley table.

    ``table[a, b]`` is the index of ``a * b``.  ``basis`` optionally names an
    independent generating tuple for abelian groups built from cyclic factors;
    bimultiplicative cocycles are written against it.
    """

    def __init__(self, table, labels=None, name: str | None = None, basis=None, check: bool = True):
        table = np.array(table, dtype=np.int64)
        if table.ndim != 2 or table.shape[0] != table.shape[1] or table.shape[0] == 0:
            raise GroupError("multiplication table must be a non-empty square array")
        n = table.shape[0]
        if n > MAX_ORDER:
            raise GroupError(f"groups above order {MAX_ORDER} are not supported")
        if labels is None:
            labels = [str(i) for i in range(n)]
        labels = tuple(str(s) for s in labels)
        if len(labels) != n or len(set(labels)) != n:
            raise GroupError("labels must be unique and one per element")
        self.order = n
        self.labels = labels
        self.name = name
        self._index = {s: i for i, s in enumerate(labels)}
        if check:
            _check_table(table)
        self.table = table
        self.table.setflags(write=False)
        ident = [e for e in range(n) if np.array_equal(table[e], np.arange(n))]
        if not ident:
            raise GroupError("no identity element")
        self.identity = ident[0]
        inv = np.empty(n, dtype=np.int64)
        for a in range(n):
            inv[a] = int(np.flatnonzero(table[a] == self.identity)[0])
        self.inverse = inv
        self.inverse.setflags(write=False)
        self.basis = tuple(basis) if basis is not None else None

    # -- basic operations ---------------------------------------------------
    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"<FiniteGroup {self.name or 'table'} of order {self.order}>"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    def inv(self, a: int) -> int:
        return int(self.inverse[a])

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv(a), -k
        r = self.identity
        for _ in range(k):
            r = self.mul(r, a)
        return r

    def conj(self, g: int, x: int) -> int:
        """``g x g^-1``."""
        return self.mul(self.mul(g, x), self.inv(g))

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.mul(x, a)
            k += 1
        return k

    def index(self, label: str) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise GroupError(f"unknown group element {label!r}") from None

    def label(self, i: int) -> str:
        return self.labels[i]

    def elements(self) -> range:
        return range(self.order)

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def whole(self) -> "Subgroup":
        return Subgroup(self, tuple(range(self.order)))

    def trivial(self) -> "Subgroup":
        return Subgroup(self, (self.identity,))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """Greedy generating set: each element not yet generated, by index."""
        gens: list[int] = []
        H = {self.identity}
        for g in range(self.order):
            if g not in H:
                gens.append(g)
                H = set(subgroup_generated(self, gens).elements)
        return tuple(gens)

    def describe(self) -> str:
        return self.name or f"table group of order {self.order}"


def _check_table(table: np.ndarray) -> None:
    n = table.shape[0]
    if table.min() < 0 or table.max() >= n:
        raise GroupError("table entries out of range")
    rng = np.arange(n)
    for i in range(n):
        if not np.array_equal(np.sort(table[i]), rng) or not np.array_equal(np.sort(table[:, i]), rng):
            raise GroupError("table is not a Latin square (inverses not unique)")
    hit = _kernels.assoc_violation(table)
    if hit[0] >= 0:
        x, y, z = (int(v) for v in hit)
        raise GroupError(f"table is not associative at ({x}, {y}, {z})")


@dataclass(frozen=True, eq=False)
class Subgroup:
    """Sorted element indices of a subgroup of ``group``."""

    group: FiniteGroup
    elements: tuple[int, ...]

    def __post_init__(self):
        els = tuple(sorted(set(int(e) for e in self.elements)))
        object.__setattr__(self, "elements", els)
        idx = np.asarray(els, dtype=np.int64)
        # finite and closed under products => closed under inverses
        if not els or not np.isin(self.group.table[np.ix_(idx, idx)], idx).all():
            raise GroupError("subgroup elements are not closed under multiplication")

    def __eq__(self, other):
        return isinstance(other, Subgroup) and other.group is self.group and other.elements == self.elements

    def __hash__(self):
        return hash((id(self.group), self.elements))

    def __contains__(self, g) -> bool:
        return int(g) in self._set

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.elements)

    def labels(self) -> list[str]:
        return [self.group.label(e) for e in self.elements]

    def __repr__(self) -> str:
        return "{" + ", ".join(self.labels()) + "}"

    def is_subgroup_of(self, other: "Subgroup") -> bool:
        return self._set <= other._set

    @cached_property
    def is_abelian(self) -> bool:
        G = self.group
        return all(G.mul(a, b) == G.mul(b, a) for a in self.elements for b in self.elements)

    def is_normal(self, ambient: "Subgroup | None" = None) -> bool:
        """Normal in ``ambient`` (default: the whole group)."""
        G = self.group
        conj_by = ambient.elements if ambient is not None else range(G.order)
        return all(G.conj(g, x) in self._set for g in conj_by for x in self.elements)

    @cached_property
    def cyclic_generator(self) -> int | None:
        """Least-index generator when the subgroup is cyclic, else None."""
        for g in self.elements:
            if self.group.element_order(g) == self.order:
                return g
        return None

    @property
    def is_cyclic(self) -> bool:
        return self.cyclic_generator is not None

    def as_group(self) -> tuple[FiniteGroup, tuple[int, ...]]:
        """The subgroup as a standalone group, plus ``local -> parent`` indices."""
        emb = self.elements
        pos = {g: i for i, g in enumerate(emb)}
        G = self.group
        table = [[pos[G.mul(a, b)] for b in emb] for a in emb]
        basis = None
        if G.basis is not None and all(b in self._set for b in G.basis):
            basis = [pos[b] for b in G.basis]
        H = FiniteGroup(table, [G.label(g) for g in emb], name=None, basis=basis, check=False)
        return H, emb


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic group order must be positive")
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    labels = ["1"] + ["a" if i == 1 else f"a^{i}" for i in range(1, n)]
    return FiniteGroup(table, labels, name=f"cyclic:{n}", basis=[1] if n > 1 else [])


def klein_four() -> FiniteGroup:
    G = direct_product(cyclic_group(2), cyclic_group(2))
    G.name = "klein4"
    return G


def symmetric_group(k: int) -> FiniteGroup:
    perms = list(itertools.permutations(range(k)))
    pos = {p: i for i, p in enumerate(perms)}
    # (s t)(x) = s(t(x))
    table = [[pos[tuple(s[t[x]] for x in range(k))] for t in perms] for s in perms]
    return FiniteGroup(table, [_cycle_label(p) for p in perms], name="s3" if k == 3 else f"symmetric:{k}")


def _cycle_label(perm) -> str:
    seen, parts = set(), []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc, x = [], start
        while x not in seen:
            seen.add(x)
            cyc.append(str(x + 1))
            x = perm[x]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "()"


def dihedral_group(n: int) -> FiniteGroup:
    """Order ``2n``: ``r^i s^j`` with ``s r s = r^-1``; index ``j*n + i``."""
    def idx(i, j):
        return j * n + (i % n)

    table = []
    for j1 in range(2):
        for i1 in range(n):
            row = []
            for j2 in range(2):
                for i2 in range(n):
                    i = i1 + (i2 if j1 == 0 else -i2)
                    row.append(idx(i, (j1 + j2) % 2))
            table.append(row)
    labels = []
    for j in range(2):
        for i in range(n):
            r = "" if i == 0 else ("r" if i == 1 else f"r^{i}")
            s = "s" if j else ""
            labels.append((r + s) or "1")
    return FiniteGroup(table, labels, name=f"dihedral:{n}")


def quaternion_group() -> FiniteGroup:
    names = ["1", "i", "j", "k"]
    mult = {
        ("1", x): (1, x) for x in names
    }
    mult.update({(x, "1"): (1, x) for x in names})
    for x in "ijk":
        mult[(x, x)] = (-1, "1")
    mult.update({("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, x) for x in names for s in (1, -1)]
    pos = {e: i for i, e in enumerate(elems)}
    table = []
    for s1, x1 in elems:
        row = []
        for s2, x2 in elems:
            s, x = mult[(x1, x2)]
            row.append(pos[(s * s1 * s2, x)])
        table.append(row)
    labels = [("" if s == 1 else "-") + x for s, x in elems]
    return FiniteGroup(table, labels, name="q8")


def direct_product(*factors: FiniteGroup) -> FiniteGroup:
    """Index of ``(x_1, ..., x_r)`` is mixed-radix with the first factor most significant."""
    if not factors:
        raise GroupError("direct product needs at least one factor")
    orders = [F.order for F in factors]
    tuples = list(itertools.product(*[range(k) for k in orders]))
    pos = {t: i for i, t in enumerate(tuples)}
    table = [[pos[tuple(F.mul(a, b) for F, a, b in zip(factors, x, y))] for y in tuples] for x in tuples]
    all_cyclic = all(F.name and F.name.startswith("cyclic:") for F in factors)
    if all_cyclic and len(factors) <= 8:
        letters = "abcdefgh"
        labels = []
        for t in tuples:
            parts = []
            for letter, e in zip(letters, t):
                if e == 1:
                    parts.append(letter)
                elif e > 1:
                    parts.append(f"{letter}^{e}")
            labels.append("".join(parts) or "1")
        basis = []
        for k, F in enumerate(factors):
            if F.order > 1:
                unit = [F.identity for F in factors]
                unit[k] = 1
                basis.append(pos[tuple(unit)])
    else:
        labels = ["(" + ",".join(F.label(e) for F, e in zip(factors, t)) + ")" for t in tuples]
        basis = None
    name = "product:" + ",".join(F.name or "table" for F in factors)
    return FiniteGroup(table, labels, name=name, basis=basis)


def group_from_spec(spec) -> FiniteGroup:
    """Named shorthand or an explicit ``{"order", "table", "labels"}`` object."""
    if isinstance(spec, dict):
        extra = set(spec) - {"order", "table", "labels"}
        if extra:
            raise GroupError(f"unknown keys in group spec: {sorted(extra)}")
        table = spec.get("table")
        if not isinstance(table, list):
            raise GroupError("group spec needs a 'table'")
        G = FiniteGroup(table, spec.get("labels"))
        if spec.get("order", G.order) != G.order:
            raise GroupError("declared order does not match the table")
        return G
    if not isinstance(spec, str):
        raise GroupError(f"cannot read group spec {spec!r}")
    s = spec.strip()
    if s == "klein4":
        return klein_four()
    if s == "s3":
        return symmetric_group(3)
    if s == "q8":
        return quaternion_group()
    head, _, rest = s.partition(":")
    if head == "product":
        parts = _split_product(rest)
        if len(parts) < 2:
            raise GroupError("product needs at least two factors")
        return direct_product(*[group_from_spec(p) for p in parts])
    if head in ("cyclic", "dihedral", "symmetric"):
        try:
            n = int(rest)
        except ValueError:
            raise GroupError(f"bad group spec {spec!r}") from None
        return {"cyclic": cyclic_group, "dihedral": dihedral_group, "symmetric": symmetric_group}[head](n)
    raise GroupError(f"unknown group spec {spec!r}")


def _split_product(rest: str) -> list[str]:
    # factors are comma separated; only the product head itself takes commas
    return [p for p in rest.split(",") if p]


def group_to_spec(G: FiniteGroup):
    if G.name:
        return G.name
    return {"order": G.order, "table": G.table.tolist(), "labels": list(G.labels)}


# ---------------------------------------------------------------------------
# subgroup machinery
# ---------------------------------------------------------------------------

def _as_ambient(group) -> tuple[FiniteGroup, Subgroup]:
    if isinstance(group, Subgroup):
        return group.group, group
    return group, group.whole()


def subgroup_generated(group: FiniteGroup, gens) -> Subgroup:
    """Closure of ``gens`` under multiplication (finite, so inverses come free)."""
    H = {group.identity}
    frontier = [int(g) for g in gens]
    for g in frontier:
        if not 0 <= g < group.order:
            raise GroupError(f"element {g} not in group")
    gens = list(dict.fromkeys(frontier))
    frontier = list(gens)
    H.update(gens)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = group.mul(x, g)
                if y not in H:
                    H.add(y)
                    new.append(y)
        frontier = new
    return Subgroup(group, tuple(H))


@dataclass(frozen=True, eq=False)
class QuotientGroup:
    """``G/N`` with cosets ordered by least element; ``reps[c]`` is that element."""

    group: FiniteGroup
    parent: FiniteGroup
    normal: Subgroup
    projection: tuple[int, ...]
    reps: tuple[int, ...]

    def project(self, g: int) -> int:
        return self.projection[g]

    def coset(self, c: int) -> tuple[int, ...]:
        return tuple(g for g in range(self.parent.order) if self.projection[g] == c)


def quotient_group(group: FiniteGroup, normal: Subgroup) -> QuotientGroup:
    if normal.group is not group:
        raise GroupError("subgroup belongs to another group")
    if not normal.is_normal():
        raise GroupError("quotient undefined: subgroup is not normal")
    proj = [-1] * group.order
    reps = []
    for g in range(group.order):
        if proj[g] < 0:
            c = len(reps)
            reps.append(g)
            for a in normal.elements:
                proj[group.mul(g, a)] = c
    m = len(reps)
    table = [[proj[group.mul(reps[i], reps[j])] for j in range(m)] for i in range(m)]
    labels = ["[" + group.label(r) + "]" for r in reps]
    Q = FiniteGroup(table, labels, name=None, check=False)
    return QuotientGroup(Q, group, normal, tuple(proj), tuple(reps))


def sylow_subgroup(group, p: int) -> Subgroup:
    """Closure of the p-power-order elements; ``p == 0`` gives the trivial group.

    Exact for the abelian (more generally p-normal) groups it is used on; for
    a general ambient group the closure can overshoot, which is reported.
    """
    G, amb = _as_ambient(group)
    if p == 0:
        return G.trivial()
    pp = [g for g in amb.elements if _is_p_power(G.element_order(g), p)]
    H = subgroup_generated(G, pp)
    k = amb.order
    while k % p == 0:
        k //= p
    if H.order * k != amb.order:
        raise GroupError("p-power elements do not form a Sylow subgroup here (non-unique Sylow)")
    return H


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def is_normal(sub: Subgroup, ambient: Subgroup | None = None) -> bool:
    return sub.is_normal(ambient)


def is_abelian(group) -> bool:
    return group.is_abelian


def element_order(group: FiniteGroup, g: int) -> int:
    return group.element_order(g)


def commutator_subgroup(group) -> Subgroup:
    G, amb = _as_ambient(group)
    comms = {G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))) for a in amb.elements for b in amb.elements}
    return subgroup_generated(G, sorted(comms))


def internal_direct_product_check(P: Subgroup, C: Subgroup, whole: Subgroup | None = None) -> bool:
    """True iff ``whole = P x C`` internally (commuting, trivial meet, orders multiply)."""
    G = P.group
    if whole is None:
        whole = subgroup_generated(G, P.elements + C.elements)
    if not (P.is_subgroup_of(whole) and C.is_subgroup_of(whole)):
        return False
    if set(P.elements) & set(C.elements) != {G.identity}:
        return False
    if P.order * C.order != whole.order:
        return False
    return all(G.mul(x, y) == G.mul(y, x) for x in P.elements for y in C.elements)


def enumerate_all_subgroups(group, limit: int = SUBGROUP_ENUM_LIMIT) -> list[Subgroup]:
    """All subgroups, sorted by (order, elements)."""
    G, amb = _as_ambient(group)
    if amb.order > limit:
        raise GroupError(f"subgroup enumeration is limited to order {limit}")
    subs = {subgroup_generated(G, [g]) for g in amb.elements}
    frontier = set(subs)
    while frontier:
        new = set()
        for A in frontier:
            for B in list(subs):
                J = subgroup_generated(G, A.elements + B.elements)
                if J not in subs and J not in new:
                    new.add(J)
        subs |= new
        frontier = new
    return sorted(subs, key=lambda H: (H.order, H.elements))


def abelian_basis(group) -> tuple[int, ...]:
    """Independent generators ``g_1, ..., g_r`` with ``<g_1> x ... x <g_r>`` the whole.

    Orders are non-increasing; ties go to the least index.  Trivial group -> ().
    """
    G, amb = _as_ambient(group)
    if not amb.is_abelian:
        raise GroupError("cyclic decomposition needs an abelian group")
    if amb.order == 1:
        return ()
    if amb is not None and amb.order == G.order and G.basis is not None:
        return G.basis
    elems = sorted((e for e in amb.elements if e != G.identity), key=lambda e: (-G.element_order(e), e))

    def search(chosen, span):
        if len(span) == amb.order:
            return chosen
        for e in elems:
            if chosen and G.element_order(e) > G.element_order(chosen[-1]):
                continue
            if e in span:
                continue
            cyc = subgroup_generated(G, [e]).elements
            if set(cyc) & span != {G.identity}:
                continue
            new_span = set(subgroup_generated(G, list(chosen) + [e]).elements)
            if len(new_span) != len(span) * len(cyc):
                continue
            out = search(chosen + (e,), new_span)
            if out is not None:
                return out
        return None

    out = search((), {G.identity})
    if out is None:  # pragma: no cover - finite abelian groups always decompose
        raise GroupError("no cyclic decomposition found")
    return out


def basis_exponents(group, basis) -> dict[int, tuple[int, ...]]:
    """``g -> (x_1, ..., x_r)`` with ``g = g_1^x_1 ... g_r^x_r`` and ``0 <= x_i < ord(g_i)``."""
    G, _ = _as_ambient(group)
    orders = [G.element_order(b) for b in basis]
    out = {}
    for xs in itertools.product(*[range(k) for k in orders]):
        g = G.identity
        for b, x in zip(basis, xs):
            g = G.mul(g, G.power(b, x))
        out[g] = xs
    return out


# ---------------------------------------------------------------------------
# actions on fields
# ---------------------------------------------------------------------------

class GroupAction:
    """``g -> Frobenius power`` on a field; a homomorphism ``G -> Aut``."""

    def __init__(self, group: FiniteGroup, field: Field, powers, check: bool = True):
        powers = [int(k) for k in powers]
        if len(powers) != group.order:
            raise GroupError("action needs one automorphism per group element")
        self.group = group
        self.field = field
        self.auts = tuple(AutomorphismSpec(field, k) for k in powers)
        if check:
            bad = self.violation()
            if bad is not None:
                g, h = bad
                raise GroupError(
                    f"action is not a homomorphism at ({group.label(g)}, {group.label(h)})"
                )

    @property
    def powers(self) -> tuple[int, ...]:
        return tuple(a.power for a in self.auts)

    def violation(self) -> tuple[int, int] | None:
        G = self.group
        if not self.auts[G.identity].is_identity:
            return (G.identity, G.identity)
        for g in range(G.order):
            for h in range(G.order):
                if self.auts[G.mul(g, h)] != self.auts[g].compose(self.auts[h]):
                    return (g, h)
        return None

    def automorphism(self, g: int) -> AutomorphismSpec:
        return self.auts[g]

    def apply(self, g: int, x: FieldElement) -> FieldElement:
        return self.auts[g](x)

    def is_trivial_on(self, sub: Subgroup) -> bool:
        return all(self.auts[g].is_identity for g in sub.elements)

    def restricted(self, group: FiniteGroup, embedding) -> "GroupAction":
        return GroupAction(group, self.field, [self.auts[e].power for e in embedding], check=False)

    def frobenius_log_multipliers(self) -> np.ndarray:
        """``p**power mod (q-1)`` per element: the action on discrete logs."""
        F = self.field
        qm1 = F.q - 1
        return np.array([pow(F.p, a.power, qm1) if qm1 > 1 else 0 for a in self.auts], dtype=np.int64)


def trivial_action(group: FiniteGroup, field: Field) -> GroupAction:
    return GroupAction(group, field, [0] * group.order, check=False)


def action_from_generators(group: FiniteGroup, field: Field, gen_powers: dict[int, int]) -> GroupAction:
    """Extend Frobenius powers on generators to a homomorphism; error if inconsistent."""
    D = field.automorphism_degree
    powers: dict[int, int] = {group.identity: 0}
    frontier = [group.identity]
    gens = list(gen_powers)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = group.mul(x, g)
                k = (powers[x] + gen_powers[g]) % D
                if y in powers:
                    if powers[y] != k:
                        raise GroupError("generator powers do not define a homomorphism")
                else:
                    powers[y] = k
                    new.append(y)
        frontier = new
    if len(powers) != group.order:
        raise GroupError("action generators do not generate the group")
    return GroupAction(group, field, [powers[g] for g in range(group.order)])


def kernel_of_action(group: FiniteGroup, action: GroupAction) -> Subgroup:
    """Elements acting as the identity automorphism (always normal)."""
    return Subgroup(group, tuple(g for g in range(group.order) if action.auts[g].is_identity))


def gcd_all(values) -> int:
    out = 0
    for v in values:
        out = math.gcd(out, v)
    return out
