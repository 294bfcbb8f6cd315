import itertools

import pytest
from hypothesis import given, strategies as st

from crossed_order.errors import FieldError, NoRootOfUnityError
from crossed_order.exactfields import (
    AutomorphismSpec,
    apply_automorphism,
    extension_field,
    field_from_descriptor,
    is_pth_power,
    nth_root,
    nth_roots,
    prime_field,
    primitive_root_of_unity,
    rational_function_field,
)

F2, F3, F5, F7 = (prime_field(p) for p in (2, 3, 5, 7))
F4 = extension_field(2, [1, 1, 1])
F9 = extension_field(3, [1, 0, 1])
F2t = rational_function_field(F2)
F3t = rational_function_field(F3)
F9t = rational_function_field(F9)


def t_of(K):
    return K.decode({"num": [0, 1]})


# -- nth_root ------------------------------------------------------------------

def test_nth_root_examples():
    assert nth_root(F5(4), 2) == F5(2)
    assert nth_root(F5(2), 2) is None
    for K in (F5, F9, F2t):
        assert nth_root(K.one(), 1) == K.one()


def test_nth_root_zero():
    with pytest.raises(FieldError, match="zero has no unit root"):
        nth_root(F5(0), 2)


@pytest.mark.parametrize("K", [F3, F4, F5, F7, F9, extension_field(5, [2, 0, 1]), extension_field(2, [1, 1, 0, 1])])
@pytest.mark.parametrize("n", [1, 2, 3, 4, 6])
def test_nth_root_matches_exhaustive(K, n):
    for x in K.units():
        roots = sorted((y for y in K.units() if y**n == x), key=lambda y: y.sort_key())
        got = nth_root(x, n)
        if roots:
            assert got == roots[0]
        else:
            assert got is None


def test_nth_root_ratfunc():
    t = t_of(F2t)
    assert nth_root(t**6, 3) == t**2
    assert nth_root(t, 2) is None
    x = (t + 1) ** 4 / t**2
    r = nth_root(x, 2)
    assert r is not None and r**2 == x
    # bounded-degree exhaustive check over F_3(t)
    t3 = t_of(F3t)
    polys = [sum((F3t(c) * t3**i for i, c in enumerate(cs)), F3t.zero()) for cs in itertools.product(range(3), repeat=3)]
    cands = {p / q for p in polys for q in polys if not p.is_zero() and not q.is_zero()}
    for x in list(cands)[:40]:
        y = nth_root(x**2, 2)
        assert y is not None and y**2 == x**2
        z = nth_root(x, 2)
        assert (z is None) == all(c**2 != x for c in cands)


def test_nth_roots_all():
    assert sorted(int(r.rep) for r in nth_roots(F5(1), 4)) == [1, 2, 3, 4]


# -- roots of unity ----------------------------------------------------------------

def test_primitive_root_examples():
    assert primitive_root_of_unity(F5, 4) == F5(2)
    assert primitive_root_of_unity(F9, 2) == F9(2)
    with pytest.raises(NoRootOfUnityError):
        primitive_root_of_unity(F5, 3)
    with pytest.raises(NoRootOfUnityError):
        primitive_root_of_unity(F3t, 3)


@pytest.mark.parametrize("K", [F5, F7, F9, F4, F9t])
def test_primitive_root_exact_order(K):
    q = K.base.q if hasattr(K, "base") else K.q
    for n in range(1, q):
        if (q - 1) % n:
            continue
        z = primitive_root_of_unity(K, n)
        assert (z**n).is_one()
        assert all(not (z**m).is_one() for m in range(1, n) if n % m == 0)


# -- p-th powers -----------------------------------------------------------------

def test_pth_power_examples():
    t = t_of(F2t)
    assert is_pth_power(t)[0] is False
    ok, w = is_pth_power(t**2)
    assert ok and w == t
    assert is_pth_power(F9.decode([0, 1]))[0]
    assert is_pth_power(F2t.zero()) == (True, F2t.zero())


@pytest.mark.parametrize("K", [F2, F3, F4, F5, F7, F9, extension_field(2, [1, 0, 1, 0, 0, 1]),
                               extension_field(7, [1, 0, 1])])
def test_pth_power_finite_exhaustive(K):
    pth = {y**K.p for y in K.elements()}
    for x in K.elements():
        ok, w = is_pth_power(x)
        assert ok == (x in pth)
        assert w**K.p == x


@pytest.mark.parametrize("K", [F2t, F3t])
def test_pth_power_ratfunc_bounded(K):
    p = K.p
    t = t_of(K)
    polys = [sum((K(c) * t**i for i, c in enumerate(cs)), K.zero())
             for cs in itertools.product(range(p), repeat=3)]
    polys = [x for x in polys if not x.is_zero()]
    small = {a / b for a in polys for b in polys}
    powers = {y**p for y in small}
    for x in small:
        ok, w = is_pth_power(x)
        if x in powers:
            assert ok
        if ok:
            assert w**p == x
    for x in powers:
        assert is_pth_power(x)[0]


# -- automorphisms ---------------------------------------------------------------

def test_frobenius_examples():
    u = F9.decode([0, 1])
    frob = AutomorphismSpec(F9, 1)
    assert apply_automorphism(frob, u) == -u
    assert apply_automorphism(AutomorphismSpec(F9, 0), u) == u
    ut = F9t(u) * t_of(F9t)
    assert apply_automorphism(AutomorphismSpec(F9t, 1), ut) == -ut


@given(st.integers(0, 8), st.integers(0, 8))
def test_frobenius_is_field_automorphism(a, b):
    frob = AutomorphismSpec(F9, 1)
    x, y = F9.decode([a % 3, a // 3]), F9.decode([b % 3, b // 3])
    assert frob(x + y) == frob(x) + frob(y)
    assert frob(x * y) == frob(x) * frob(y)
    assert frob(frob(x)) == x


# -- field axioms ------------------------------------------------------------------

def f9_elems():
    return st.tuples(st.integers(0, 2), st.integers(0, 2)).map(lambda c: F9.decode(list(c)))


def ratfunc_elems(K):
    poly = st.lists(st.integers(0, K.p - 1), min_size=1, max_size=4)
    return st.tuples(poly, poly).filter(lambda nd: any(nd[1])).map(
        lambda nd: K.decode({"num": nd[0], "den": nd[1]}))


@pytest.mark.parametrize("strategy", [f9_elems(), ratfunc_elems(F2t), ratfunc_elems(F3t)],
                         ids=["F9", "F2(t)", "F3(t)"])
def test_field_axioms(strategy):
    @given(strategy, strategy, strategy)
    def check(x, y, z):
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * y == y * x and x + y == y + x
        assert x * (y + z) == x * y + x * z
        if not x.is_zero():
            assert (x * x.inverse()).is_one()
        assert x - x == x.field.zero()

    check()


def test_canonical_ratfunc():
    t = t_of(F3t)
    x = (t**2 - 1) / (F3t(2) * (t - 1))
    num, den = x.rep
    assert x == (t + 1) / F3t(2)
    assert den[-1] == 1  # monic denominator


def test_descriptor_roundtrip():
    for K in (F5, F9, F2t, rational_function_field(F4, "s")):
        again = field_from_descriptor(K.descriptor())
        assert again.descriptor() == K.descriptor() and str(again) == str(K)


def test_bad_descriptors():
    with pytest.raises(FieldError):
        field_from_descriptor({"kind": "prime", "p": 4})
    with pytest.raises(FieldError):
        field_from_descriptor({"kind": "extension", "p": 3, "modulus": [2, 0, 1]})  # u^2 + 2 = (u-1)(u+1)
    with pytest.raises(FieldError):
        field_from_descriptor({"kind": "number"})
    with pytest.raises(FieldError):
        field_from_descriptor({"kind": "prime", "p": 5, "extra": 1})


def test_encode_decode_roundtrip():
    for x in list(F5.units()) + list(F9.units()):
        assert x.field.decode(x.encode()) == x
    t = t_of(F3t)
    for x in (t / (t + 1), F3t(2) * t**3 - 1, (t**2 + 1).inverse()):
        assert F3t.decode(x.encode()) == x
