"""Heredity, maximality and the maximal-order count from residue data.

A scenario is the residue field K, a group G acting on K, the ramification
character xbar on the inertia G_I (the kernel of the action) and a 2-cocycle
f on G.  The pipeline:

1. split G_I: P = ker xbar, e0 = |im xbar|, sigma0 a preimage of zeta_e0
   of order e0;
2. heredity: tame (p does not divide |G_I|) or K^f P a purely inseparable
   field;
3. Gamma_f = <sigma0^c> of order d, the largest divisor of e0 with
   alpha0 = U_sigma0^e0 a d-th power;
4. normalize f on Gamma_f, take pi_f: G/Gamma_f -> Hom(Gamma_f, K*), and
   read off H_f (kernel of the image) and the count d / |im pi_f|.

Over finite fields the count is re-derived by decomposing the center of
K^f * G, and (optionally) H_f by exhaustive inflation search.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field

from .cocycles import (
    TwoCocycle,
    brute_force_is_inflated,
    cyclic_class_value,
    normalize_on_cyclic_subgroup,
    pi_map,
    validate_cocycle,
)
from .crossedalg import (
    CrossedProduct,
    InseparableVerdict,
    center_decomposition,
    purely_inseparable_field_test,
)
from .errors import (
    InconsistencyError,
    NoRootOfUnityError,
    OracleBudgetError,
    ScenarioError,
    UnsupportedError,
)
from .exactfields import Field, FieldElement, FiniteField, divisors, nth_root, primitive_root_of_unity
from .groupkit import (
    FiniteGroup,
    GroupAction,
    Subgroup,
    enumerate_all_subgroups,
    internal_direct_product_check,
    kernel_of_action,
    subgroup_generated,
)

ACTRIV_MESSAGE = "action on characters nontrivial: scenario outside analyzer scope"


@dataclass
class RamifiedScenario:
    """Residue-level data of a crossed product order.

    ``xbar`` maps each inertia element to its ramification value.  It may be
    ``None`` when the file declared an ``e0`` the field cannot realize; the
    declared value is kept in ``declared_e0`` so validation can explain why.
    """

    field: Field
    group: FiniteGroup
    action: GroupAction
    xbar: dict[int, FieldElement] | None
    cocycle: TwoCocycle
    declared_e0: int | None = None
    name: str = ""
    extra_violations: list[str] = dc_field(default_factory=list)
    source: dict | None = None

    @property
    def inertia(self) -> Subgroup:
        return kernel_of_action(self.group, self.action)

    @property
    def p(self) -> int:
        return self.field.p

    def algebra(self) -> CrossedProduct:
        return CrossedProduct(self.cocycle)


@dataclass
class ScenarioReport:
    violations: list[str]

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok


def validate_scenario(s: RamifiedScenario) -> ScenarioReport:
    """Every admissibility condition, each failure listed."""
    out: list[str] = list(s.extra_violations)
    G, K, p = s.group, s.field, s.p
    if s.action.group is not G or s.cocycle.group is not G:
        out.append("action and cocycle must be on the scenario group")
        return ScenarioReport(out)
    bad = s.action.violation()
    if bad is not None:
        out.append(f"action is not a homomorphism at ({G.label(bad[0])}, {G.label(bad[1])})")
    rep = validate_cocycle(s.cocycle)
    if not rep.ok:
        out.append(rep.message)
    if s.declared_e0 is not None and s.declared_e0 % p == 0:
        out.append(f"image order not prime to p (e0={s.declared_e0}, p={p})")
    if s.xbar is None:
        if s.declared_e0 is None or s.declared_e0 % p:
            out.append("ramification character missing")
        return ScenarioReport(out)
    GI = s.inertia
    keys = set(s.xbar)
    if keys != set(GI.elements):
        extra = sorted(keys - set(GI.elements))
        missing = sorted(set(GI.elements) - keys)
        if extra:
            out.append("ramification character given outside the inertia: " + ", ".join(G.label(g) for g in extra))
        if missing:
            out.append("ramification character missing on inertia elements: " + ", ".join(G.label(g) for g in missing))
        return ScenarioReport(out)
    x = s.xbar
    for g in GI.elements:
        if x[g].is_zero():
            out.append(f"ramification value at {G.label(g)} is zero")
            return ScenarioReport(out)
    hom_bad = next(((a, b) for a in GI.elements for b in GI.elements if x[G.mul(a, b)] != x[a] * x[b]), None)
    if hom_bad is not None:
        out.append(f"ramification character is not a homomorphism at ({G.label(hom_bad[0])}, {G.label(hom_bad[1])})")
        return ScenarioReport(out)
    image = {x[g] for g in GI.elements}
    e0 = len(image)
    if e0 % p == 0:
        out.append(f"image order not prime to p (e0={e0}, p={p})")
    if s.declared_e0 is not None and s.declared_e0 != e0:
        out.append(f"declared e0={s.declared_e0} differs from the image order {e0}")
    kern = [g for g in GI.elements if x[g].is_one()]
    if not _is_p_power(len(kern), p):
        out.append(f"kernel of the ramification character has order {len(kern)}, not a power of p")
    for g in G.elements():
        for sig in GI.elements:
            if x[G.conj(g, sig)] != s.action.apply(g, x[sig]):
                out.append(f"ramification character is not G-equivariant at ({G.label(g)}, {G.label(sig)})")
                return ScenarioReport(out)
    if e0 % p:
        try:
            primitive_root_of_unity(K, e0)
        except NoRootOfUnityError as exc:  # pragma: no cover - the image itself supplies the roots
            out.append(str(exc))
    return ScenarioReport(out)


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


# ---------------------------------------------------------------------------
# inertia splitting
# ---------------------------------------------------------------------------

@dataclass
class InertiaSplit:
    inertia: Subgroup
    P: Subgroup
    C: Subgroup
    sigma0: int
    e0: int
    zeta: FieldElement


def inertia_split(s: RamifiedScenario, sigma0: int | None = None, zeta: FieldElement | None = None) -> InertiaSplit:
    """``P = ker xbar``, ``e0 = |im xbar|`` and ``sigma0``.

    Default ``sigma0``: the least-index element of order ``e0`` mapping to the
    least primitive e0-th root of unity.  An explicit ``sigma0`` fixes
    ``zeta = xbar(sigma0)``; an explicit ``zeta`` picks the least such preimage.
    """
    G, K = s.group, s.field
    GI = s.inertia
    x = s.xbar
    if x is None:
        raise ScenarioError("ramification character missing")
    P = Subgroup(G, tuple(g for g in GI.elements if x[g].is_one()))
    e0 = len({x[g] for g in GI.elements})
    if sigma0 is not None:
        if sigma0 not in GI:
            raise ScenarioError("sigma0 must lie in the inertia")
        z = x[sigma0]
        if z.multiplicative_order() != e0:
            raise ScenarioError("sigma0 must map to a generator of the image")
        if G.element_order(sigma0) != e0:
            raise ScenarioError("sigma0 must have order e0")
        if zeta is not None and K(zeta) != z:
            raise ScenarioError("sigma0 and zeta overrides disagree")
        zeta = z
    else:
        if zeta is None:
            zeta = primitive_root_of_unity(K, e0) if e0 > 1 else K.one()
        zeta = K(zeta)
        if zeta.multiplicative_order() != e0:
            raise ScenarioError(f"zeta must have exact order e0={e0}")
        pre = [g for g in GI.elements if x[g] == zeta]
        exact = [g for g in pre if G.element_order(g) == e0]
        if exact:
            sigma0 = exact[0]
        elif GI.is_abelian:
            raise InconsistencyError("abelian inertia without an order-e0 preimage of zeta")
        else:
            sigma0 = pre[0]
    C = subgroup_generated(G, [sigma0])
    return InertiaSplit(GI, P, C, sigma0, e0, zeta)


# ---------------------------------------------------------------------------
# heredity
# ---------------------------------------------------------------------------

@dataclass
class HeredityVerdict:
    hereditary: bool
    tame: bool
    evidence: str
    test: InseparableVerdict | None = None
    checks: dict = dc_field(default_factory=dict)


def heredity_verdict(s: RamifiedScenario, split: InertiaSplit) -> HeredityVerdict:
    G, p = s.group, s.p
    GI = split.inertia
    tame = GI.order % p != 0
    alg = s.algebra()
    if tame:
        verdict = HeredityVerdict(True, True, "tame: |G_I| is invertible in the residue field")
    else:
        test = purely_inseparable_field_test(alg, split.P)
        if test.is_field:
            verdict = HeredityVerdict(True, False, "K^f P is a purely inseparable field", test)
        else:
            return HeredityVerdict(False, False, test.reason, test)
    _structure_guard(s, split, alg, verdict)
    return verdict


def _structure_guard(s: RamifiedScenario, split: InertiaSplit, alg: CrossedProduct, verdict: HeredityVerdict):
    """A hereditary verdict forces G_I = P x C_e0 abelian with K^f G_I commutative."""
    G = s.group
    GI, P, C = split.inertia, split.P, split.C
    checks = {
        "inertia_abelian": GI.is_abelian,
        "direct_product": internal_direct_product_check(P, C, GI),
    }
    U0 = alg.basis(split.sigma0)
    checks["sigma0_central"] = all(U0 * alg.basis(g) == alg.basis(g) * U0 for g in GI.elements)
    comm = True
    for a in GI.elements:
        for b in GI.elements:
            if a < b and alg.basis(a) * alg.basis(b) != alg.basis(b) * alg.basis(a):
                comm = False
    checks["inertia_algebra_commutative"] = comm
    top = U0 ** split.e0
    checks["alpha0_scalar"] = top.support() == (G.identity,)
    verdict.checks = checks
    failed = [k for k, v in checks.items() if not v]
    if failed:
        raise InconsistencyError("hereditary verdict contradicts the inertia structure: " + ", ".join(failed))


# ---------------------------------------------------------------------------
# Gamma_f and the conductor
# ---------------------------------------------------------------------------

@dataclass
class GammaData:
    alpha0: FieldElement
    c: int
    d: int
    tau: int
    gamma: Subgroup


def gamma_f(s: RamifiedScenario, split: InertiaSplit) -> GammaData:
    G = s.group
    e0, s0 = split.e0, split.sigma0
    alpha0 = cyclic_class_value(s.cocycle, s0) if e0 > 1 else s.field.one()
    d = max(k for k in divisors(e0) if nth_root(alpha0, k) is not None)
    c = e0 // d
    tau = G.power(s0, c)
    return GammaData(alpha0, c, d, tau, subgroup_generated(G, [tau]))


@dataclass
class ConductorData:
    normalized: TwoCocycle
    image: list  # characters of Gamma_f in the image of pi_f
    conductor: Subgroup
    count: int
    pi_values: list  # (coset representative, character) pairs


def conductor(s: RamifiedScenario, split: InertiaSplit, gd: GammaData) -> ConductorData:
    G = s.group
    Gam = gd.gamma
    if not Gam.is_normal():
        raise InconsistencyError("Gamma_f is not normal in G")
    f1 = normalize_on_cyclic_subgroup(s.cocycle, Gam, generator=gd.tau)
    pm = pi_map(f1, Gam)
    if pm.acts_trivially() is not None:
        raise UnsupportedError(ACTRIV_MESSAGE)
    if not pm.is_homomorphism():  # pragma: no cover - follows from the previous check
        raise InconsistencyError("pi_f is not a homomorphism although the action is trivial")
    image = pm.image()
    if gd.d % len(image):
        raise InconsistencyError("|im pi_f| does not divide d")
    count = gd.d // len(image)
    H = Subgroup(G, pm.kernel_of_image())
    if H.order != count:
        raise InconsistencyError(f"|H_f|={H.order} differs from the index d/|im pi|={count}")
    pairs = [(r, pm.chars[i]) for i, r in enumerate(pm.quotient.reps)]
    return ConductorData(f1, image, H, count, pairs)


def conductor_by_inflation(s: RamifiedScenario) -> Subgroup:
    """Largest subgroup of G_I, normal in G, from whose quotient ``[f]`` is inflated.

    Exhaustive over subgroups and cochains (finite fields, oracle budget).
    """
    GI = s.inertia
    good = [H for H in enumerate_all_subgroups(GI) if H.is_normal() and brute_force_is_inflated(s.cocycle, H)]
    top = max(h.order for h in good)
    best = [H for H in good if H.order == top]
    if len(best) != 1 or not all(H.is_subgroup_of(best[0]) for H in good):
        raise InconsistencyError("no unique maximal subgroup with inflated class")
    return best[0]


# ---------------------------------------------------------------------------
# the report
# ---------------------------------------------------------------------------

NOT_HEREDITARY_COUNT = "n/a (not hereditary)"


@dataclass
class AnalysisReport:
    scenario: RamifiedScenario
    split: InertiaSplit
    heredity: HeredityVerdict
    gamma: GammaData | None = None
    cond: ConductorData | None = None
    oracle_count: int | None = None
    oracle_note: str = ""
    conductor_oracle: Subgroup | None = None
    conductor_oracle_note: str = ""
    show_oracle: bool = False
    notes: list[str] = dc_field(default_factory=list)

    # -- derived ---------------------------------------------------------------
    @property
    def hereditary(self) -> bool:
        return self.heredity.hereditary

    @property
    def tame(self) -> bool:
        return self.heredity.tame

    @property
    def component_count(self) -> int | None:
        return self.cond.count if self.cond else None

    @property
    def H_f(self) -> Subgroup | None:
        return self.cond.conductor if self.cond else None

    @property
    def maximal(self) -> bool:
        return self.hereditary and self.cond is not None and self.cond.count == 1

    @property
    def maximal_order_count(self):
        return self.cond.conductor.order if self.cond else NOT_HEREDITARY_COUNT

    @property
    def verdict(self) -> str:
        if not self.hereditary:
            kind = "nilpotent" if self.heredity.test and self.heredity.test.witness_power else "non-commuting"
            return f"NOT HEREDITARY ({kind} witness shown); not maximal"
        h = self.cond.conductor.order
        orders = "1 maximal order" if h == 1 else f"{h} maximal orders"
        head = "MAXIMAL" if h == 1 else "NOT MAXIMAL"
        return f"{head}; hereditary; |H_f|={h}; {orders}"

    @property
    def oracle_line(self) -> str:
        if not self.hereditary:
            return "oracle: n/a (not hereditary)"
        if self.oracle_count is None:
            return f"oracle: n/a ({self.oracle_note})"
        n = self.cond.count
        word = "component" if n == 1 else "components"
        status = "OK" if n == self.oracle_count else "MISMATCH"
        return f"{n} {word} (formula) = {self.oracle_count} (oracle): {status}"

    @property
    def conductor_oracle_line(self) -> str | None:
        if not self.show_oracle or not self.hereditary:
            return None
        if self.conductor_oracle is None:
            return f"conductor oracle: n/a ({self.conductor_oracle_note})"
        status = "OK" if self.conductor_oracle == self.cond.conductor else "MISMATCH"
        return f"H_f (pairing kernel) = {self.cond.conductor!r} = {self.conductor_oracle!r} (inflation search): {status}"

    # -- serialization ------------------------------------------------------------
    def record(self) -> dict:
        s, sp = self.scenario, self.split
        G, K = s.group, s.field
        rec = {
            "scenario": s.name,
            "field": str(K),
            "group": G.describe(),
            "inertia": sp.inertia.labels(),
            "P": sp.P.labels(),
            "e0": sp.e0,
            "sigma0": G.label(sp.sigma0),
            "zeta_e0": sp.zeta.encode(),
            "tame": self.tame,
            "hereditary": self.hereditary,
            "heredity_evidence": self.heredity.evidence,
            "verdict": self.verdict,
            "maximal": self.maximal,
            "maximal_order_count": self.maximal_order_count,
        }
        t = self.heredity.test
        if t is not None:
            rec["tower"] = [
                {"generator": st["generator"], "order": st["order"], "alpha": st["alpha"].encode()} for st in t.tower
            ]
            if t.witness is not None:
                w = t.witness
                rec["witness"] = list(w) if isinstance(w, tuple) else w.encode()
                if t.witness_power:
                    rec["witness_power"] = t.witness_power
        if self.hereditary:
            gd, cd = self.gamma, self.cond
            rec.update({
                "alpha0": gd.alpha0.encode(),
                "c": gd.c,
                "d": gd.d,
                "Gamma_f": gd.gamma.labels(),
                "Gamma_f_generator": G.label(gd.tau),
                "pi_image": [chi(gd.tau).encode() for chi in cd.image],
                "pi_image_order": len(cd.image),
                "H_f": cd.conductor.labels(),
                "component_count": cd.count,
            })
            rec["structure_checks"] = dict(sorted(self.heredity.checks.items()))
        if self.show_oracle:
            rec["oracle"] = self.oracle_line
            if self.conductor_oracle_line is not None:
                rec["conductor_oracle"] = self.conductor_oracle_line
        rec["notes"] = list(self.notes)
        return rec

    def to_json(self) -> str:
        return json.dumps(self.record(), sort_keys=True, indent=2, ensure_ascii=False) + "\n"

    def to_text(self) -> str:
        s, sp = self.scenario, self.split
        G, K = s.group, s.field
        lines = [
            f"scenario: {s.name}" if s.name else "scenario: (unnamed)",
            f"field: {K}",
            f"group: {G.describe()} (order {G.order})",
            f"inertia G_I: {sp.inertia!r}",
            f"P: {sp.P!r}",
            f"e0: {sp.e0}",
            f"sigma0: {G.label(sp.sigma0)} (zeta_e0 = {sp.zeta})",
            f"ramification: {'tame' if self.tame else 'wild'}",
            f"heredity: {self.heredity.evidence}",
        ]
        t = self.heredity.test
        if t is not None:
            for st in t.tower:
                lines.append(f"  tower step: U[{st['generator']}]^{st['order']} = {st['alpha']}")
            if t.witness is not None:
                if isinstance(t.witness, tuple):
                    lines.append(f"  witness: U[{t.witness[0]}], U[{t.witness[1]}] do not commute")
                else:
                    lines.append(f"  witness: N = {t.witness}, N^{t.witness_power} = 0")
        if self.hereditary:
            gd, cd = self.gamma, self.cond
            lines += [
                f"alpha0: {gd.alpha0}",
                f"c: {gd.c}",
                f"d: {gd.d}",
                f"Gamma_f: {gd.gamma!r}",
                "im pi_f: " + ", ".join(f"{G.label(gd.tau)}->{chi(gd.tau)}" for chi in cd.image),
                f"H_f: {cd.conductor!r}",
                f"components: {cd.count}",
            ]
        lines.append(f"verdict: {self.verdict}")
        if self.show_oracle:
            lines.append(self.oracle_line)
            if self.conductor_oracle_line is not None:
                lines.append(self.conductor_oracle_line)
        for n in self.notes:
            lines.append(f"note: {n}")
        return "\n".join(lines) + "\n"


def analyze(s: RamifiedScenario, sigma0: int | None = None, zeta=None, oracle: bool = False) -> AnalysisReport:
    """Full analysis.

    On finite fields the center-decomposition count is always computed and
    must match.  ``oracle=True`` also shows it and runs the exhaustive
    inflation search for ``H_f``; a budget overrun there is recorded in the
    report and re-raised by callers that need it via :func:`oracle_budget_exceeded`.
    """
    rep = validate_scenario(s)
    if not rep.ok:
        raise ScenarioError("; ".join(rep.violations))
    split = inertia_split(s, sigma0, zeta)
    her = heredity_verdict(s, split)
    report = AnalysisReport(s, split, her, show_oracle=oracle)
    if not her.hereditary:
        report.notes.append("counts are not reported for non-hereditary orders")
        return report
    gd = gamma_f(s, split)
    cd = conductor(s, split, gd)
    report.gamma, report.cond = gd, cd
    report.notes.append("Gamma_f, H_f and all counts do not depend on the choice of sigma0 or zeta")
    if isinstance(s.field, FiniteField):
        dec = center_decomposition(s.algebra())
        report.oracle_count = dec.components
        if dec.components != cd.count:
            raise InconsistencyError(
                f"component count mismatch: formula {cd.count}, center decomposition {dec.components}"
            )
    else:
        report.oracle_note = "finite fields only"
    if oracle:
        if isinstance(s.field, FiniteField):
            try:
                report.conductor_oracle = conductor_by_inflation(s)
            except OracleBudgetError as exc:
                report.conductor_oracle_note = str(exc)
            else:
                if report.conductor_oracle != cd.conductor:
                    raise InconsistencyError(
                        f"conductor mismatch: pairing kernel {cd.conductor!r}, inflation search {report.conductor_oracle!r}"
                    )
        else:
            report.conductor_oracle_note = "finite fields only"
    return report


def oracle_budget_exceeded(report: AnalysisReport) -> bool:
    return report.show_oracle and report.hereditary and report.conductor_oracle is None and \
        report.conductor_oracle_note.startswith("oracle out of range")
