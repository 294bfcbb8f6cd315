"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS criterion N: ...`` or ``FAIL criterion N: ...``
line (also collected in the terminal summary) and then asserts.
"""

import itertools
import os
import subprocess
import sys
import time

import numpy as np
import pytest

from crossed_order.census import enumerate_census, run_census
from crossed_order.cocycles import (
    OneCochain,
    bimultiplicative_cocycle,
    brute_force_is_coboundary,
    brute_force_is_inflated,
    cyclic_class_value,
    cyclic_cocycle,
    homomorphisms,
    coset_normalization_violation,
    normalize_on_cyclic_subgroup,
    pi_map,
    trivial_cocycle,
)
from crossed_order.crossedalg import (
    CrossedProduct,
    center,
    conjugate_idempotent,
    iota_characters,
    iota_idempotents,
)
from crossed_order.errors import InconsistencyError, OracleBudgetError
from crossed_order.exactfields import nth_root, prime_field
from crossed_order.groupkit import (
    abelian_basis,
    enumerate_all_subgroups,
    group_from_spec,
    internal_direct_product_check,
    quotient_group,
    trivial_action,
)
from crossed_order.ramification import (
    analyze,
    conductor,
    conductor_by_inflation,
    gamma_f,
    heredity_verdict,
    inertia_split,
)
from crossed_order.reduction import all_relabelings, analyze_global, parse_global
from crossed_order.scenario_io import load_json, load_scenario

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
SCEN = os.path.join(ROOT, "scenarios")
WILD = ["wild_f2t_t", "wild_f2t_t2", "wild_f3t_t", "wild_f3t_t3", "mixed_f4t_t", "mixed_f4t_t3"]


def scen_path(*parts):
    return os.path.join(SCEN, *parts)


@pytest.fixture(scope="module")
def tame_census():
    spec = load_json(scen_path("census_tame.json"))
    return spec, enumerate_census(spec)


def pipeline(s):
    sp = inertia_split(s)
    her = heredity_verdict(s, sp)
    if not her.hereditary:
        return sp, her, None, None
    gd = gamma_f(s, sp)
    return sp, her, gd, conductor(s, sp, gd)


# ---------------------------------------------------------------------------

def test_criterion_1_tame_census(tame_census, acceptance):
    spec, _ = tame_census
    t0 = time.perf_counter()
    res = run_census(spec)
    elapsed = time.perf_counter() - t0
    rows = res.rows
    compared = [r for r in rows if r.agree is not None]
    exact = all(r.count == r.conductor == r.oracle for r in compared)
    proper = sum(1 for r in rows if r.action != "trivial")
    ok = len(compared) >= 100 and res.mismatches == 0 and exact and elapsed < 60 and proper > 0
    acceptance(1, ok, f"{len(rows)} scenarios ({proper} with proper inertia), "
                      f"{res.mismatches} mismatches, {elapsed:.1f}s")
    assert ok


# -- criterion 2 --------------------------------------------------------------------

SMALL_GROUPS = ["cyclic:2", "cyclic:3", "cyclic:4", "cyclic:5", "cyclic:6", "cyclic:7", "cyclic:8",
                "klein4", "product:cyclic:2,cyclic:4", "product:cyclic:2,cyclic:2,cyclic:2",
                "s3", "dihedral:4", "q8"]


def _random_cochain(action, rng):
    K = action.field
    units = list(K.units())
    G = action.group
    vals = [K.one()] + [units[int(rng.integers(len(units)))] for _ in range(G.order - 1)]
    return OneCochain(action, vals)


def _small_cocycles(G, K, rng):
    act = trivial_action(G, K)
    out = [trivial_cocycle(act)]
    if G.whole().is_cyclic:
        out += [cyclic_cocycle(act, u, G.whole().cyclic_generator) for u in K.units()]
    elif G.is_abelian:
        basis = abelian_basis(G)
        r = len(basis)
        m = 2
        cells = [(i, j) for i in range(r) for j in range(r) if i < j] if r > 2 else \
            [(i, j) for i in range(r) for j in range(r)]
        for bits in itertools.product(range(m), repeat=len(cells)):
            E = [[0] * r for _ in range(r)]
            for (i, j), b in zip(cells, bits):
                E[i][j] = b
            out.append(bimultiplicative_cocycle(act, E, root=m, basis=basis))
    # disturb by coboundaries so normalization has work to do
    return [f * _random_cochain(act, rng).coboundary() for f in out]


def _psi_extension(action, A, psi, Q, rng):
    """c(r b) = psi(b) * gamma(coset) with c = 1 on the identity coset's representative."""
    K = action.field
    units = list(K.units())
    G = action.group
    gamma = [K.one()] + [units[int(rng.integers(len(units)))] for _ in range(len(Q.reps) - 1)]
    vals = []
    for g in G.elements():
        c = Q.projection[g]
        r = Q.reps[c]
        b = G.mul(G.inv(r), g)
        vals.append(psi(b) * gamma[c])
    return OneCochain(action, vals)


def test_criterion_2_pi_suite(acceptance):
    rng = np.random.default_rng(20240601)
    failures = []
    cases = inflation_checked = 0
    for Kp in (3, 5):
        K = prime_field(Kp)
        for gs in SMALL_GROUPS:
            G = group_from_spec(gs)
            subs = [A for A in enumerate_all_subgroups(G.whole())
                    if A.order > 1 and A.is_normal() and A.is_cyclic]
            cocycles = _small_cocycles(G, K, rng)
            for A in subs:
                a = A.cyclic_generator
                Q = quotient_group(G, A)
                normalized = []
                for f in cocycles:
                    if nth_root(cyclic_class_value(f, a), A.order) is None:
                        continue  # restriction to A is not trivial
                    cases += 1
                    tag = f"{K} {gs} A={A!r}"
                    f1 = normalize_on_cyclic_subgroup(f, A, generator=a)
                    if coset_normalization_violation(f1, A) is not None:
                        failures.append(f"{tag}: normalization")
                        continue
                    if brute_force_is_coboundary(f1 * f.inverse()) is None:
                        failures.append(f"{tag}: normalization changed the class")
                    pm = pi_map(f1, A)
                    if not all(chi.is_homomorphism() for chi in pm.chars):
                        failures.append(f"{tag}: values not homomorphisms")
                    if any(f1(x, g) != pm(g)(x) for g in G.elements() for x in A.elements):
                        failures.append(f"{tag}: representative dependence")
                    if pm.cocycle_identity_violation() is not None:
                        failures.append(f"{tag}: 1-cocycle identity")
                    chars = homomorphisms(A, K)
                    psi = chars[int(rng.integers(len(chars)))]
                    c = _psi_extension(f1.action, A, psi, Q, rng)
                    f2 = f1 * c.coboundary()
                    if coset_normalization_violation(f2, A) is not None:
                        failures.append(f"{tag}: shifted cocycle lost normalization")
                    else:
                        pm2 = pi_map(f2, A)
                        if any(pm2(g) / pm(g) != psi / psi.twist(g, f1.action) for g in G.elements()):
                            failures.append(f"{tag}: coboundary shift")
                    for f0 in normalized[-2:]:
                        pm0, pmp = pi_map(f0, A), pi_map(f0 * f1, A)
                        if any(pmp(g) != pm0(g) * pm(g) for g in G.elements()):
                            failures.append(f"{tag}: multiplicativity")
                    normalized.append(f1)
                    try:
                        inflated = brute_force_is_inflated(f, A)
                    except OracleBudgetError:
                        continue
                    inflation_checked += 1
                    if inflated != pm.is_coboundary():
                        failures.append(f"{tag}: coboundary vs inflation")
    ok = not failures and cases > 0
    acceptance(2, ok, f"{cases} (cocycle, A) cases, {inflation_checked} inflation checks, "
                      f"{len(failures)} failures" + (f" (first: {failures[0]})" if failures else ""))
    assert ok


# -- criterion 3 --------------------------------------------------------------------

def test_criterion_3_idempotents(tame_census, acceptance):
    _, entries = tame_census
    failures = []
    triples = set()
    for e in entries:
        s = e.scenario
        sp, her, gd, cd = pipeline(s)
        if gd is None:
            continue
        triples.add((sp.e0, str(gd.alpha0), gd.d))
        alg = CrossedProduct(cd.normalized)
        fam = iota_idempotents(alg, gd.tau, gd.d)
        io = fam.iotas
        if len(io) != gd.d:
            failures.append(f"{e.ident}: count")
        if any(x * x != x for x in io):
            failures.append(f"{e.ident}: not idempotent")
        if any(not (io[i] * io[j]).is_zero() for i in range(len(io)) for j in range(len(io)) if i != j):
            failures.append(f"{e.ident}: not orthogonal")
        total = alg.zero()
        for x in io:
            total = total + x
        if total != alg.one():
            failures.append(f"{e.ident}: sum is not 1")
        chars = iota_characters(fam)
        pm = pi_map(cd.normalized, gd.gamma)
        orbits = {}
        for j, x in enumerate(io):
            orbit = set()
            for g in s.group.elements():
                y = conjugate_idempotent(alg, g, x)
                if y != io[chars.index(chars[j] * pm(g))]:
                    failures.append(f"{e.ident}: conjugation is not translation by pi_f")
                orbit.add(fam.index_of(y))
            orbits[j] = frozenset(orbit)
        sizes = {len(o) for o in orbits.values()}
        if len(sizes) != 1 or len(set(orbits.values())) * sizes.pop() != gd.d:
            failures.append(f"{e.ident}: unequal orbits")
    ok = not failures
    acceptance(3, ok, f"{len(triples)} distinct (e0, alpha0, d) over {len(entries)} scenarios, "
                      f"{len(failures)} failures")
    assert ok


# -- criterion 4 --------------------------------------------------------------------

def test_criterion_4_wild(acceptance):
    expect = {
        "wild_f2t_t": "MAXIMAL; hereditary; |H_f|=1; 1 maximal order",
        "wild_f3t_t": "MAXIMAL; hereditary; |H_f|=1; 1 maximal order",
        "wild_f2t_t2": "NOT HEREDITARY (nilpotent witness shown); not maximal",
        "wild_f3t_t3": "NOT HEREDITARY (nilpotent witness shown); not maximal",
        "mixed_f4t_t": "MAXIMAL; hereditary; |H_f|=1; 1 maximal order",
        "mixed_f4t_t3": "NOT MAXIMAL; hereditary; |H_f|=3; 3 maximal orders",
    }
    bad = []
    for name, verdict in expect.items():
        s = load_scenario(scen_path(f"{name}.json"))
        rep = analyze(s)
        if rep.verdict != verdict:
            bad.append(f"{name}: {rep.verdict}")
        t = rep.heredity.test
        if not rep.hereditary:
            N, k = t.witness, t.witness_power
            if N.is_zero() or not (N ** k).is_zero() or (N ** (k - 1)).is_zero():
                bad.append(f"{name}: witness not verified")
        if name.startswith("mixed"):
            if rep.split.P.order != 2 or rep.split.e0 != 3 or rep.tame:
                bad.append(f"{name}: P or e0")
    ok = not bad
    acceptance(4, ok, f"{len(expect)} wild fixtures" + (f", wrong: {bad}" if bad else ", all verdicts exact"))
    assert ok


# -- criterion 5 --------------------------------------------------------------------

def test_criterion_5_guard(tame_census, acceptance):
    _, entries = tame_census
    scenarios = [e.scenario for e in entries] + [load_scenario(scen_path(f"{n}.json")) for n in WILD]
    bad = []
    hereditary = 0
    for s in scenarios:
        try:
            sp = inertia_split(s)
            her = heredity_verdict(s, sp)
        except InconsistencyError as exc:
            bad.append(f"{s.name}: {exc}")
            continue
        if her.hereditary:
            hereditary += 1
            if not sp.inertia.is_abelian or not internal_direct_product_check(sp.P, sp.C, sp.inertia):
                bad.append(s.name)
    s3 = load_scenario(scen_path("s3_p3.json"))
    rep = analyze(s3)
    s3_ok = not s3.inertia.is_abelian and not rep.hereditary and rep.verdict.startswith("NOT HEREDITARY")
    ok = not bad and s3_ok
    acceptance(5, ok, f"{hereditary} hereditary verdicts of {len(scenarios)}, {len(bad)} guard violations; "
                      f"S3 inertia with p=3: {'not hereditary' if s3_ok else rep.verdict}")
    assert ok


# -- criterion 6 --------------------------------------------------------------------

def test_criterion_6_center_support(tame_census, acceptance):
    _, entries = tame_census
    scenarios = [e.scenario for e in entries] + [load_scenario(scen_path(f"{n}.json")) for n in WILD]
    bad = vectors = 0
    for s in scenarios:
        GI = set(s.inertia.elements)
        for z in center(s.algebra()).elements:
            vectors += 1
            if not set(z.support()) <= GI:
                bad += 1
    ok = bad == 0
    acceptance(6, ok, f"{vectors} center basis vectors over {len(scenarios)} scenarios, {bad} outside G_I")
    assert ok


# -- criterion 7 --------------------------------------------------------------------

def test_criterion_7_conductor(tame_census, acceptance):
    _, entries = tame_census
    checked = skipped = 0
    bad = []
    for e in entries:
        s = e.scenario
        _, _, gd, cd = pipeline(s)
        if cd is None:
            continue
        try:
            H = conductor_by_inflation(s)
        except OracleBudgetError:
            skipped += 1
            continue
        checked += 1
        if H != cd.conductor:
            bad.append(e.ident)
    ok = not bad and checked > 0
    acceptance(7, ok, f"{checked} in-budget scenarios, {skipped} over budget, {len(bad)} mismatches")
    assert ok


# -- criterion 8 --------------------------------------------------------------------

GLOBALS = {"g1_k1_c2": None, "g2_k2_klein": "g2_local", "g3_k2_c2_swap": "g3_local",
           "g4_k3_s3": "g4_local", "g5_k3_c6": "g5_local", "g6_k2_c4": "g6_local"}


def _summary(rep):
    return rep.verdict, rep.component_count


def test_criterion_8_reduction(acceptance):
    bad = []
    ks = set()
    relabelings = 0
    for name, local_name in GLOBALS.items():
        gs = parse_global(load_json(scen_path("global", f"{name}.json")))
        ks.add(gs.components)
        base = _summary(analyze_global(gs))
        for tau, gs2 in all_relabelings(gs):
            relabelings += 1
            if _summary(analyze_global(gs2)) != base:
                bad.append(f"{name} relabeled by {tau}")
        if local_name is not None:
            direct = _summary(analyze(load_scenario(scen_path("global", f"{local_name}.json"))))
            if direct != base:
                bad.append(f"{name} vs {local_name}")
    ok = not bad and len(GLOBALS) >= 5 and ks == {1, 2, 3}
    acceptance(8, ok, f"{len(GLOBALS)} global scenarios, k in {sorted(ks)}, {relabelings} relabelings, "
                      f"{len(bad)} disagreements")
    assert ok


# -- criterion 9 --------------------------------------------------------------------

def _run(args, **env):
    full = dict(os.environ, **env)
    out = subprocess.run([sys.executable, "-m", "crossed_order.cli", *args], capture_output=True,
                         env=full, cwd=ROOT)
    return out.returncode, out.stdout


def test_criterion_9_determinism(acceptance):
    runs = [
        ["analyze", scen_path("example_c.json"), "--oracle"],
        ["analyze", scen_path("example_a.json"), "--json", "--oracle"],
        ["analyze", scen_path("mixed_f4t_t3.json")],
        ["census", scen_path("census_tame.json")],
        ["census", scen_path("census_f9_klein_pm1.json"), "--json"],
    ]
    bad = []
    for args in runs:
        first = _run(args, CROSSED_ORDER_NO_NUMBA="0")
        second = _run(args, CROSSED_ORDER_NO_NUMBA="0")
        fallback = _run(args, CROSSED_ORDER_NO_NUMBA="1")
        if first != second or first != fallback or first[0] != 0:
            bad.append(" ".join(os.path.basename(a) for a in args))
    ok = not bad
    acceptance(9, ok, f"{len(runs)} commands x 3 runs (numba twice, numpy once) byte-identical"
               if ok else f"differing outputs: {bad}")
    assert ok
