"""Unit-valued 2-cocycles, 1-cochains, characters and the map pi_f.

Conventions (multiplicative throughout):

* cocycle identity ``g(f(h,k)) f(g,hk) = f(g,h) f(gh,k)``, normalized so that
  ``f(1,g) = f(g,1) = 1``;
* coboundary of a cochain ``(dc)(g,h) = c(g) g(c(h)) / c(gh)``;
* ``pi_f(gA)`` is the character ``a -> f(a, g)`` of ``A``; it satisfies
  ``pi(gh) = pi(g) * g.pi(h)`` where ``(g.phi)(a) = g(phi(g^-1 a g))``.

The brute-force oracles work on discrete logarithms and therefore need a
finite field.  They enumerate cochains in lexicographic order of their log
vectors (non-identity elements in index order, first one most significant)
and return the first hit.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import _kernels
from .errors import CocycleError, FieldError, OracleBudgetError, UnsupportedError
from .exactfields import Field, FieldElement, FiniteField, nth_root, primitive_root_of_unity
from .groupkit import (
    FiniteGroup,
    GroupAction,
    QuotientGroup,
    Subgroup,
    abelian_basis,
    basis_exponents,
    quotient_group,
)

DEFAULT_ORACLE_BUDGET = 10**7
BUDGET_ENV = "CROSSED_ORDER_ORACLE_BUDGET"


def oracle_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_ORACLE_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise OracleBudgetError(f"{BUDGET_ENV} must be an integer") from None


# ---------------------------------------------------------------------------
# cochains
# ---------------------------------------------------------------------------

class OneCochain:
    """``c: G -> K*`` with ``c(1) = 1``."""

    def __init__(self, action: GroupAction, values):
        G, K = action.group, action.field
        values = tuple(K(v) for v in values)
        if len(values) != G.order:
            raise CocycleError("cochain needs one value per group element")
        if any(v.is_zero() for v in values):
            raise CocycleError("not unit-valued")
        if not values[G.identity].is_one():
            raise CocycleError("cochain must be 1 at the identity")
        self.action = action
        self.values = values

    @property
    def group(self) -> FiniteGroup:
        return self.action.group

    def __call__(self, g: int) -> FieldElement:
        return self.values[g]

    def coboundary(self) -> "TwoCocycle":
        G, act, c = self.group, self.action, self.values
        table = [[c[g] * act.apply(g, c[h]) / c[G.mul(g, h)] for h in G.elements()] for g in G.elements()]
        return TwoCocycle(act, table, check=False)

    def __mul__(self, other: "OneCochain") -> "OneCochain":
        return OneCochain(self.action, [a * b for a, b in zip(self.values, other.values)])

    def restricted_to(self, A: Subgroup) -> dict[int, FieldElement]:
        return {a: self.values[a] for a in A.elements}

    def encode(self) -> dict:
        G = self.group
        return {G.label(g): self.values[g].encode() for g in G.elements()}

    def __repr__(self) -> str:
        G = self.group
        return "OneCochain{" + ", ".join(f"{G.label(g)}: {v}" for g, v in enumerate(self.values)) + "}"


class TwoCocycle:
    """Value table ``f(g, h)`` over a group acting on a field.

    With ``check=True`` (the default) construction validates the cocycle
    identity and identity-normalization and raises on failure; build with
    ``check=False`` to inspect a suspect table through :func:`validate_cocycle`.
    """

    def __init__(self, action: GroupAction, table, check: bool = True, embedding=None):
        G, K = action.group, action.field
        if len(table) != G.order or any(len(row) != G.order for row in table):
            raise CocycleError("cocycle table must be |G| x |G|")
        values = tuple(tuple(K(v) for v in row) for row in table)
        for row in values:
            for v in row:
                if v.is_zero():
                    raise CocycleError("not unit-valued")
        self.action = action
        self.values = values
        self.embedding = tuple(embedding) if embedding is not None else None
        if check:
            rep = validate_cocycle(self)
            if not rep.ok:
                raise CocycleError(rep.message)

    @property
    def group(self) -> FiniteGroup:
        return self.action.group

    @property
    def field(self) -> Field:
        return self.action.field

    def __call__(self, g: int, h: int) -> FieldElement:
        return self.values[g][h]

    @cached_property
    def log_table(self) -> np.ndarray | None:
        K = self.field
        if not isinstance(K, FiniteField):
            return None
        n = self.group.order
        out = np.empty((n, n), dtype=np.int64)
        for g in range(n):
            for h in range(n):
                out[g, h] = K.log(self.values[g][h])
        return out

    def __mul__(self, other: "TwoCocycle") -> "TwoCocycle":
        if other.group is not self.group:
            raise CocycleError("cocycles live on different groups")
        table = [[a * b for a, b in zip(r1, r2)] for r1, r2 in zip(self.values, other.values)]
        return TwoCocycle(self.action, table, check=False)

    def inverse(self) -> "TwoCocycle":
        return TwoCocycle(self.action, [[v.inverse() for v in row] for row in self.values], check=False)

    def __eq__(self, other) -> bool:
        return isinstance(other, TwoCocycle) and other.group is self.group and other.values == self.values

    def __hash__(self):
        return hash(self.values)

    def is_trivial(self) -> bool:
        return all(v.is_one() for row in self.values for v in row)

    def encode(self) -> list:
        return [[v.encode() for v in row] for row in self.values]

    def __repr__(self) -> str:
        return f"<TwoCocycle on {self.group.describe()} over {self.field}>"


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CocycleReport:
    ok: bool
    message: str
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


def validate_cocycle(f: TwoCocycle) -> CocycleReport:
    G, act = f.group, f.action
    e = G.identity
    for g in G.elements():
        if not f(e, g).is_one() or not f(g, e).is_one():
            return CocycleReport(False, f"not normalized at the identity (element {G.label(g)})", (g,))
    if f.log_table is not None:
        K = f.field
        hit = _kernels.cocycle_violation(f.log_table, G.table, act.frobenius_log_multipliers(), K.q - 1)
        if hit[0] < 0:
            return CocycleReport(True, "valid")
        g, h, k = (int(x) for x in hit)
    else:
        bad = _first_violation_generic(f)
        if bad is None:
            return CocycleReport(True, "valid")
        g, h, k = bad
    return CocycleReport(
        False,
        f"cocycle identity fails at ({G.label(g)}, {G.label(h)}, {G.label(k)})",
        (g, h, k),
    )


def _first_violation_generic(f: TwoCocycle):
    G, act = f.group, f.action
    for g in G.elements():
        for h in G.elements():
            gh = G.mul(g, h)
            for k in G.elements():
                if act.apply(g, f(h, k)) * f(g, G.mul(h, k)) != f(g, h) * f(gh, k):
                    return g, h, k
    return None


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------

def trivial_cocycle(action: GroupAction) -> TwoCocycle:
    one = action.field.one()
    n = action.group.order
    return TwoCocycle(action, [[one] * n for _ in range(n)], check=False)


def cyclic_cocycle(action: GroupAction, alpha, generator: int | None = None) -> TwoCocycle:
    """On ``G = <a>`` of order n: ``f(a^i, a^j) = 1`` if ``i + j < n`` else alpha.

    This is the cocycle with ``U_a^n = alpha``; it needs ``alpha`` fixed by ``a``.
    """
    G, K = action.group, action.field
    alpha = K(alpha)
    whole = G.whole()
    a = generator if generator is not None else whole.cyclic_generator
    if a is None or G.element_order(a) != G.order:
        raise CocycleError("cyclic cocycle needs a cyclic group and a generator")
    n = G.order
    expo = {G.power(a, i): i for i in range(n)}
    one = K.one()
    table = [[one if expo[g] + expo[h] < n else alpha for h in G.elements()] for g in G.elements()]
    return TwoCocycle(action, table)


def bimultiplicative_cocycle(action: GroupAction, exponents, root: int | None = None, basis=None) -> TwoCocycle:
    """``f(x, y) = zeta_m ** sum(e_ij x_i y_j)`` on exponent vectors w.r.t. ``basis``.

    ``m`` defaults to the exponent of ``G``; ``zeta_m`` is the least primitive
    m-th root of unity.
    """
    G, K = action.group, action.field
    if not G.is_abelian:
        raise CocycleError("bimultiplicative cocycles need an abelian group")
    basis = tuple(basis) if basis is not None else abelian_basis(G)
    r = len(basis)
    E = [list(map(int, row)) for row in exponents]
    if len(E) != r or any(len(row) != r for row in E):
        raise CocycleError(f"exponent matrix must be {r} x {r} for this group")
    orders = [G.element_order(b) for b in basis]
    if root is None:
        root = 1
        for o in orders:
            root = root * o // np.gcd(root, o)
    root = int(root)
    for i in range(r):
        for j in range(r):
            if (E[i][j] * orders[i]) % root or (E[i][j] * orders[j]) % root:
                raise CocycleError("exponent matrix is not well defined on the group")
    zeta = primitive_root_of_unity(K, root)
    coords = basis_exponents(G, basis)
    table = []
    for g in G.elements():
        row = []
        for h in G.elements():
            x, y = coords[g], coords[h]
            s = sum(E[i][j] * x[i] * y[j] for i in range(r) for j in range(r))
            row.append(zeta ** (s % root))
        table.append(row)
    return TwoCocycle(action, table)


def cocycle_from_spec(action: GroupAction, spec) -> TwoCocycle:
    """Shorthand strings/objects or an explicit table of encodings."""
    K = action.field
    if isinstance(spec, str):
        s = spec.strip()
        if s == "trivial":
            return trivial_cocycle(action)
        head, _, rest = s.partition(":")
        if head == "cyclic":
            return cyclic_cocycle(action, K.decode(_json_or_int(rest)))
        if head == "bimult":
            return bimultiplicative_cocycle(action, _json_or_int(rest))
        raise CocycleError(f"unknown cocycle shorthand {spec!r}")
    if isinstance(spec, dict):
        keys = set(spec)
        if keys == {"table"}:
            return TwoCocycle(action, [[K.decode(v) for v in row] for row in spec["table"]])
        if keys == {"cyclic"}:
            return cyclic_cocycle(action, K.decode(spec["cyclic"]))
        if keys <= {"bimult", "root"} and "bimult" in keys:
            return bimultiplicative_cocycle(action, spec["bimult"], spec.get("root"))
        raise CocycleError(f"unknown cocycle spec keys {sorted(keys)}")
    if isinstance(spec, list):
        return TwoCocycle(action, [[K.decode(v) for v in row] for row in spec])
    raise CocycleError(f"cannot read cocycle spec {spec!r}")


def _json_or_int(text: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        raise CocycleError(f"cannot parse {text!r}") from None


# ---------------------------------------------------------------------------
# restriction, inflation, normalization
# ---------------------------------------------------------------------------

def restrict(f: TwoCocycle, H: Subgroup) -> TwoCocycle:
    """Cut the table down to ``H x H``; the result lives on ``H`` as a standalone group.

    ``result.embedding[i]`` is the index in ``G`` of local element ``i``.
    """
    if H.group is not f.group:
        raise CocycleError("subgroup belongs to another group")
    Hg, emb = H.as_group()
    act = f.action.restricted(Hg, emb)
    table = [[f(a, b) for b in emb] for a in emb]
    return TwoCocycle(act, table, check=False, embedding=emb)


def induced_action(action: GroupAction, quotient: QuotientGroup) -> GroupAction:
    if not action.is_trivial_on(quotient.normal):
        raise CocycleError("the normal subgroup must act trivially to induce an action on the quotient")
    return GroupAction(quotient.group, action.field, [action.auts[r].power for r in quotient.reps], check=False)


def inflate(fq: TwoCocycle, quotient: QuotientGroup, action: GroupAction) -> TwoCocycle:
    """``f(g, h) = fq(gA, hA)`` on the parent group with ``action``."""
    if fq.group is not quotient.group:
        raise CocycleError("cocycle is not on this quotient")
    if action.group is not quotient.parent:
        raise CocycleError("action is not on the parent group")
    pr = quotient.projection
    n = quotient.parent.order
    table = [[fq(pr[g], pr[h]) for h in range(n)] for g in range(n)]
    return TwoCocycle(action, table, check=False)


def coset_representatives(A: Subgroup) -> list[int]:
    """``rep[g]`` = least index in ``gA``."""
    G = A.group
    rep = [-1] * G.order
    for g in G.elements():
        if rep[g] < 0:
            coset = [G.mul(g, a) for a in A.elements]
            m = min(coset)
            for x in coset:
                rep[x] = m
    return rep


def _check_normalizable(f: TwoCocycle, A: Subgroup, generator: int | None) -> int:
    if A.group is not f.group:
        raise CocycleError("subgroup belongs to another group")
    a = generator if generator is not None else A.cyclic_generator
    if a is None:
        raise UnsupportedError("unsupported: non-cyclic A")
    if a not in A or A.group.element_order(a) != A.order:
        raise CocycleError("generator does not generate A")
    if not A.is_normal():
        raise CocycleError("A must be normal")
    if not f.action.is_trivial_on(A):
        raise CocycleError("A must act trivially on the field")
    return a


def cyclic_class_value(f: TwoCocycle, a: int) -> FieldElement:
    """``U_a^n`` as a scalar: ``prod_{i=1}^{n-1} f(a^i, a)`` with ``n = ord(a)``."""
    G = f.group
    n = G.element_order(a)
    alpha = f.field.one()
    x = a
    for _ in range(1, n):
        alpha = alpha * f(x, a)
        x = G.mul(x, a)
    return alpha


def normalizing_cochain(f: TwoCocycle, A: Subgroup, generator: int | None = None) -> OneCochain:
    """The cochain ``lam`` with ``f * d(lam)`` trivial on ``A x A`` and constant on right A-translates.

    New basis: ``V_{a^i} = beta^-i U_a^i`` with ``beta^n = U_a^n``, then
    ``V_{r a^i} = U_r V_{a^i}`` for least-index coset representatives ``r``.
    """
    a = _check_normalizable(f, A, generator)
    G, act = f.group, f.action
    n = A.order
    alpha = cyclic_class_value(f, a)
    beta = nth_root(alpha, n)
    if beta is None:
        raise CocycleError("A outside ker(res): U_a^n has no n-th root in the field")
    K = f.field
    # P[i] = U_a^i / U_{a^i} = prod_{j=1}^{i-1} f(a^j, a)
    P = [K.one()] * n
    acc = K.one()
    x = a
    for i in range(2, n):
        acc = acc * f(x, a)
        P[i] = acc
        x = G.mul(x, a)
    binv = beta.inverse()
    mu_a = [binv**i * P[i] for i in range(n)]
    rep = coset_representatives(A)
    apow = [G.power(a, i) for i in range(n)]
    lam = [None] * G.order
    for r in sorted(set(rep)):
        for i in range(n):
            g = G.mul(r, apow[i])
            lam[g] = act.apply(r, mu_a[i]) * f(r, apow[i])
    return OneCochain(act, lam)


def normalize_on_cyclic_subgroup(f: TwoCocycle, A: Subgroup, generator: int | None = None) -> TwoCocycle:
    """A cohomologous cocycle with ``f'(g, h a) = f'(g, h)`` for ``a`` in ``A`` and ``f'|AxA = 1``."""
    lam = normalizing_cochain(f, A, generator)
    out = f * lam.coboundary()
    return TwoCocycle(f.action, out.values, check=False)


def coset_normalization_violation(f: TwoCocycle, A: Subgroup) -> tuple[int, int, int] | None:
    """First ``(g1, g2, a)`` with ``f(g1, g2 a) != f(g1, g2)``."""
    G = f.group
    for g1 in G.elements():
        for g2 in G.elements():
            v = f(g1, g2)
            for a in A.elements:
                if f(g1, G.mul(g2, a)) != v:
                    return g1, g2, a
    return None


# ---------------------------------------------------------------------------
# characters
# ---------------------------------------------------------------------------

class Character:
    """Homomorphism ``A -> K*`` stored as a value per element of ``A``."""

    __slots__ = ("A", "field", "values")

    def __init__(self, A: Subgroup, field: Field, values: dict):
        self.A = A
        self.field = field
        self.values = {int(a): field(v) for a, v in values.items()}
        if set(self.values) != set(A.elements):
            raise CocycleError("character must be defined exactly on A")

    def __call__(self, a: int) -> FieldElement:
        return self.values[a]

    @property
    def key(self) -> tuple:
        return tuple(self.values[a].sort_key() for a in self.A.elements)

    def __eq__(self, other) -> bool:
        return isinstance(other, Character) and other.A == self.A and other.values == self.values

    def __hash__(self):
        return hash(self.key)

    def __mul__(self, other: "Character") -> "Character":
        return Character(self.A, self.field, {a: self.values[a] * other.values[a] for a in self.A.elements})

    def __truediv__(self, other: "Character") -> "Character":
        return Character(self.A, self.field, {a: self.values[a] / other.values[a] for a in self.A.elements})

    def inverse(self) -> "Character":
        return Character(self.A, self.field, {a: v.inverse() for a, v in self.values.items()})

    def is_trivial(self) -> bool:
        return all(v.is_one() for v in self.values.values())

    def is_homomorphism(self) -> bool:
        G = self.A.group
        return all(
            self.values[G.mul(a, b)] == self.values[a] * self.values[b]
            for a in self.A.elements
            for b in self.A.elements
        )

    def kernel(self) -> tuple[int, ...]:
        return tuple(a for a in self.A.elements if self.values[a].is_one())

    def twist(self, g: int, action: GroupAction) -> "Character":
        """``(g.chi)(a) = g(chi(g^-1 a g))``."""
        G = self.A.group
        gi = G.inv(g)
        return Character(
            self.A, self.field, {a: action.apply(g, self.values[G.conj(gi, a)]) for a in self.A.elements}
        )

    def order(self) -> int:
        k = 1
        while not all((v**k).is_one() for v in self.values.values()):
            k += 1
        return k

    def encode(self) -> dict:
        G = self.A.group
        return {G.label(a): self.values[a].encode() for a in self.A.elements}

    def __repr__(self) -> str:
        G = self.A.group
        return "chi{" + ", ".join(f"{G.label(a)}->{self.values[a]}" for a in self.A.elements) + "}"


def trivial_character(A: Subgroup, field: Field) -> Character:
    return Character(A, field, {a: field.one() for a in A.elements})


def homomorphisms(A: Subgroup, field: Field) -> list[Character]:
    """Every homomorphism ``A -> K*`` (values are roots of unity of the field)."""
    if not A.is_abelian:
        raise CocycleError("characters are taken on abelian subgroups only")
    G = A.group
    basis = abelian_basis(A)
    coords = basis_exponents(A, basis)
    choices = [field.roots_of_unity(G.element_order(b)) for b in basis]
    out = []
    for imgs in itertools.product(*choices):
        vals = {}
        for a, xs in coords.items():
            v = field.one()
            for img, x in zip(imgs, xs):
                v = v * img**x
            vals[a] = v
        out.append(Character(A, field, vals))
    return out


def character_group(A: Subgroup, field: Field, zeta: FieldElement | None = None,
                    generator: int | None = None) -> list[Character]:
    """All ``|A|`` characters.

    For cyclic ``A = <a>`` of order ``n`` the j-th character sends ``a`` to
    ``zeta**j`` (``zeta`` defaults to the least primitive n-th root).  For
    non-cyclic ``A`` the indexing runs over a cyclic decomposition in
    mixed radix, first factor most significant.
    """
    G = A.group
    if A.order == 1:
        return [trivial_character(A, field)]
    if A.is_cyclic or generator is not None:
        a = generator if generator is not None else A.cyclic_generator
        n = A.order
        if zeta is None:
            zeta = primitive_root_of_unity(field, n)
        zeta = field(zeta)
        if zeta.multiplicative_order() != n:
            raise FieldError(f"zeta must have exact order {n}")
        apow = [G.power(a, i) for i in range(n)]
        return [Character(A, field, {apow[i]: zeta ** ((i * j) % n) for i in range(n)}) for j in range(n)]
    basis = abelian_basis(A)
    coords = basis_exponents(A, basis)
    orders = [G.element_order(b) for b in basis]
    zetas = [primitive_root_of_unity(field, o) for o in orders]
    out = []
    for js in itertools.product(*[range(o) for o in orders]):
        vals = {}
        for a, xs in coords.items():
            v = field.one()
            for z, j, x, o in zip(zetas, js, xs, orders):
                v = v * z ** ((j * x) % o)
            vals[a] = v
        out.append(Character(A, field, vals))
    return out


# ---------------------------------------------------------------------------
# pi_f
# ---------------------------------------------------------------------------

@dataclass(eq=False)
class PiMap:
    """``pi_f: G/A -> Hom(A, K*)``; ``chars[c]`` is the value on coset ``c``."""

    f: TwoCocycle
    A: Subgroup
    quotient: QuotientGroup
    chars: list[Character]

    def __call__(self, g: int) -> Character:
        """Value on the coset of the parent element ``g``."""
        return self.chars[self.quotient.projection[g]]

    def image(self) -> list[Character]:
        seen = {}
        for chi in self.chars:
            seen.setdefault(chi.key, chi)
        return [seen[k] for k in sorted(seen)]

    def is_trivial(self) -> bool:
        return all(chi.is_trivial() for chi in self.chars)

    def acts_trivially(self) -> tuple[int, Character] | None:
        """First ``(g, chi)`` with ``g.chi != chi`` among all characters of A, else None."""
        act = self.f.action
        for chi in homomorphisms(self.A, self.f.field):
            for r in self.quotient.reps:
                if chi.twist(r, act) != chi:
                    return r, chi
        return None

    def cocycle_identity_violation(self) -> tuple[int, int] | None:
        G, act = self.f.group, self.f.action
        for g in self.quotient.reps:
            for h in self.quotient.reps:
                if self(G.mul(g, h)) != self(g) * self(h).twist(g, act):
                    return g, h
        return None

    def is_homomorphism(self) -> bool:
        G = self.f.group
        return all(
            self(G.mul(g, h)) == self(g) * self(h) for g in self.quotient.reps for h in self.quotient.reps
        )

    def coboundary_witness(self) -> Character | None:
        """Least ``psi`` (enumeration order of :func:`homomorphisms`) with ``pi(g) = psi / g.psi``."""
        act = self.f.action
        for psi in homomorphisms(self.A, self.f.field):
            if all(self(r) == psi / psi.twist(r, act) for r in self.quotient.reps):
                return psi
        return None

    def is_coboundary(self) -> bool:
        return self.coboundary_witness() is not None

    def kernel_of_image(self) -> tuple[int, ...]:
        """``{a in A : chi(a) = 1 for every chi in the image}``."""
        return tuple(a for a in self.A.elements if all(chi(a).is_one() for chi in self.chars))


def pi_map(f: TwoCocycle, A: Subgroup) -> PiMap:
    """``gA -> (a -> f(a, g))`` with its defining properties checked."""
    G = f.group
    if A.group is not G:
        raise CocycleError("subgroup belongs to another group")
    if not A.is_abelian or not A.is_normal():
        raise CocycleError("A must be abelian and normal")
    if not f.action.is_trivial_on(A):
        raise CocycleError("A must act trivially on the field")
    bad = coset_normalization_violation(f, A)
    if bad is not None:
        g1, g2, a = bad
        raise CocycleError(
            f"f(g1, g2 a) != f(g1, g2) at ({G.label(g1)}, {G.label(g2)}, {G.label(a)}); "
            "normalize on A first"
        )
    Q = quotient_group(G, A)
    chars = []
    for c, r in enumerate(Q.reps):
        chi = Character(A, f.field, {a: f(a, r) for a in A.elements})
        for g in Q.coset(c):
            if any(f(a, g) != chi(a) for a in A.elements):  # pragma: no cover - implied by the check above
                raise CocycleError("pi_f depends on the coset representative")
        if not chi.is_homomorphism():  # pragma: no cover - cannot happen
            raise CocycleError(f"pi_f({G.label(r)}) is not a homomorphism on A")
        chars.append(chi)
    pm = PiMap(f, A, Q, chars)
    bad2 = pm.cocycle_identity_violation()
    if bad2 is not None:  # pragma: no cover - cannot happen
        raise CocycleError("pi_f fails the 1-cocycle identity")
    return pm


# ---------------------------------------------------------------------------
# brute-force oracles
# ---------------------------------------------------------------------------

def _oracle_inputs(f: TwoCocycle):
    K = f.field
    if not isinstance(K, FiniteField):
        raise UnsupportedError("oracle supports finite fields only")
    qm1 = K.q - 1
    n = f.group.order
    budget = oracle_budget()
    candidates = qm1 ** (n - 1)
    if candidates > budget:
        raise OracleBudgetError(
            f"oracle out of range: {candidates} candidate cochains exceed the budget {budget}"
        )
    return f.log_table, f.group.table, f.action.frobenius_log_multipliers(), qm1


def _cochain_from_logs(f: TwoCocycle, logs) -> OneCochain:
    K = f.field
    return OneCochain(f.action, [K.exp(int(k)) for k in logs])


def brute_force_is_coboundary(f: TwoCocycle) -> OneCochain | None:
    """First cochain ``c`` with ``f = dc``, or None."""
    logf, table, fmul, qm1 = _oracle_inputs(f)
    out = _kernels.search_cochain(logf, table, fmul, qm1, f.group.identity)
    return None if out is None else _cochain_from_logs(f, out)


def brute_force_inflation_witness(f: TwoCocycle, A: Subgroup) -> OneCochain | None:
    """First cochain ``c`` with ``f * dc`` inflated from ``G/A``, or None."""
    if A.group is not f.group:
        raise CocycleError("subgroup belongs to another group")
    if not A.is_normal():
        raise CocycleError("A must be normal")
    logf, table, fmul, qm1 = _oracle_inputs(f)
    rep = np.array(coset_representatives(A), dtype=np.int64)
    in_a = np.array([1 if g in A else 0 for g in f.group.elements()], dtype=np.int64)
    out = _kernels.search_cochain(logf, table, fmul, qm1, f.group.identity, rep, in_a)
    return None if out is None else _cochain_from_logs(f, out)


def brute_force_is_inflated(f: TwoCocycle, A: Subgroup) -> bool:
    return brute_force_inflation_witness(f, A) is not None
