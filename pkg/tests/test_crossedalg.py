import itertools

import pytest

from crossed_order.cocycles import (
    bimultiplicative_cocycle,
    cyclic_cocycle,
    normalize_on_cyclic_subgroup,
    pi_map,
    trivial_cocycle,
)
from crossed_order.crossedalg import (
    CrossedProduct,
    center,
    center_decomposition,
    conjugate_idempotent,
    count_simple_components_oracle,
    iota_characters,
    iota_idempotents,
    purely_inseparable_field_test,
    twisted_subalgebra,
)
from crossed_order.errors import CrossedOrderError, FieldError, UnsupportedError
from crossed_order.exactfields import extension_field, prime_field, rational_function_field
from crossed_order.groupkit import (
    action_from_generators,
    cyclic_group,
    direct_product,
    kernel_of_action,
    klein_four,
    quaternion_group,
    subgroup_generated,
    symmetric_group,
    trivial_action,
)

F2, F3, F5 = prime_field(2), prime_field(3), prime_field(5)
F9 = extension_field(3, [1, 0, 1])
U9 = F9.decode([0, 1])
F2t = rational_function_field(F2)
T2 = F2t.decode({"num": [0, 1]})
V = klein_four()


def example_c():
    act = action_from_generators(V, F9, {V.index("a"): 0, V.index("b"): 1})
    return CrossedProduct(bimultiplicative_cocycle(act, [[0, 1], [0, 0]], root=2))


def c2(K, alpha, frob=0):
    C2 = cyclic_group(2)
    act = action_from_generators(C2, K, {1: frob}) if frob else trivial_action(C2, K)
    return CrossedProduct(cyclic_cocycle(act, alpha))


def test_multiply_examples():
    A = example_c()
    x = A.element({0: U9, 3: 1})
    assert A.one() * x == x and x * A.one() == x
    b = V.index("b")
    assert A.basis(b) * A.scalar(U9) == A.element({b: -U9})
    B = c2(F5, 2)
    assert B.basis(1) * B.basis(1) == B.scalar(2)


def test_mixed_parents_rejected():
    with pytest.raises(CrossedOrderError):
        c2(F5, 2).one() * c2(F5, 2).one()


@pytest.mark.parametrize("alg", [
    example_c(),
    CrossedProduct(bimultiplicative_cocycle(trivial_action(direct_product(cyclic_group(2), cyclic_group(4)), F5),
                                            [[2, 2], [0, 1]], root=4)),
    CrossedProduct(trivial_cocycle(trivial_action(quaternion_group(), F3))),
    CrossedProduct(trivial_cocycle(action_from_generators(symmetric_group(3), F9, {1: 1, 2: 1}))),
], ids=["klein-F9", "C2xC4-F5", "Q8-F3", "S3-F9"])
def test_associativity_on_basis(alg):
    G, K = alg.group, alg.field
    scal = [K.one()] + K.algebra_generators()
    basis = [s * alg.basis(g) for g in G.elements() for s in scal]
    for x, y, z in itertools.product(basis, repeat=3):
        assert (x * y) * z == x * (y * z)


def test_basis_inverse():
    A = example_c()
    for g in V.elements():
        assert A.basis(g) * A.basis_inverse(g) == A.one()


def test_center_commutative_whole():
    alg = CrossedProduct(trivial_cocycle(trivial_action(V, F5)))
    assert center(alg).dimension == 4


def test_center_example_c():
    alg = example_c()
    C = center(alg)
    assert C.dimension == 2
    GI = kernel_of_action(V, alg.action)
    for z in C.elements:
        assert set(z.support()) <= set(GI.elements)
        for g in V.elements():
            assert z * alg.basis(g) == alg.basis(g) * z
        assert z * alg.scalar(U9) == alg.scalar(U9) * z


def test_center_frobenius_c2():
    alg = CrossedProduct(trivial_cocycle(action_from_generators(cyclic_group(2), F9, {1: 1})))
    C = center(alg)
    assert C.dimension == 1
    assert C.elements[0].support() == (0,)


def test_center_ratfunc_support():
    # C2 x C2 over F_2(t): trivial action, everything central
    alg = CrossedProduct(trivial_cocycle(trivial_action(V, F2t)))
    assert center(alg).dimension == 4


def test_oracle_examples():
    assert count_simple_components_oracle(CrossedProduct(trivial_cocycle(trivial_action(cyclic_group(2), F5)))) == 2
    assert count_simple_components_oracle(c2(F5, 2)) == 1
    assert count_simple_components_oracle(example_c()) == 1


def test_oracle_nilradical():
    # F_2[C_2] is local with a one-dimensional nilradical
    dec = center_decomposition(CrossedProduct(trivial_cocycle(trivial_action(cyclic_group(2), F2))))
    assert dec.components == 1 and dec.nilradical_dimension == 1


def test_oracle_idempotents_are_central_and_orthogonal():
    alg = CrossedProduct(trivial_cocycle(trivial_action(cyclic_group(6), prime_field(7))))
    dec = center_decomposition(alg)
    assert dec.components == 6
    total = alg.zero()
    for i, e in enumerate(dec.idempotents):
        assert e * e == e
        for j, e2 in enumerate(dec.idempotents):
            if i != j:
                assert (e * e2).is_zero()
        total = total + e
    assert total == alg.one()


def test_oracle_finite_only():
    with pytest.raises(UnsupportedError, match="finite fields only"):
        count_simple_components_oracle(c2(F2t, T2))


def check_complete(fam):
    alg = fam.algebra
    total = alg.zero()
    for i, x in enumerate(fam.iotas):
        assert x * x == x
        for j, y in enumerate(fam.iotas):
            if i != j:
                assert (x * y).is_zero()
        total = total + x
    assert total == alg.one()
    assert len(fam.iotas) == fam.d


def test_iota_c2_f5():
    alg = c2(F5, 1)
    fam = iota_idempotents(alg, 1, 2, F5(4))
    assert fam.iotas[0] == alg.element({0: 3, 1: 3})
    assert fam.iotas[1] == alg.element({0: 3, 1: 2})
    check_complete(fam)


def test_iota_c4_and_trivial():
    C4 = cyclic_group(4)
    alg = CrossedProduct(cyclic_cocycle(trivial_action(C4, F5), 1))
    check_complete(iota_idempotents(alg, C4.index("a"), 4, F5(2)))
    fam = iota_idempotents(alg, 0, 1)
    assert fam.iotas == [alg.one()]
    # rescaling handles a nontrivial d-th power
    alg4 = CrossedProduct(cyclic_cocycle(trivial_action(C4, F5), 4))
    check_complete(iota_idempotents(alg4, C4.index("a^2"), 2))


def test_iota_tame_index():
    alg = c2(F2t, 1)
    with pytest.raises(FieldError, match="tame index violated"):
        iota_idempotents(alg, 1, 2)


def test_iota_conjugation_example_c():
    alg = example_c()
    a, b = V.index("a"), V.index("b")
    fam = iota_idempotents(alg, a, 2)
    assert conjugate_idempotent(alg, b, fam.iotas[0]) == fam.iotas[1]
    assert conjugate_idempotent(alg, b, fam.iotas[1]) == fam.iotas[0]
    assert conjugate_idempotent(alg, a, fam.iotas[0]) == fam.iotas[0]
    # translation by pi_f(b)
    A = subgroup_generated(V, [a])
    pi = pi_map(alg.cocycle, A)
    chars = iota_characters(fam)
    j = chars.index(chars[0] * pi(b))
    assert conjugate_idempotent(alg, b, fam.iotas[0]) == fam.iotas[j]


def test_iota_fixed_when_inflated():
    # trivial cocycle is inflated: conjugation fixes every idempotent
    act = action_from_generators(V, F9, {V.index("a"): 0, V.index("b"): 1})
    alg = CrossedProduct(trivial_cocycle(act))
    fam = iota_idempotents(alg, V.index("a"), 2)
    for g in V.elements():
        for x in fam.iotas:
            assert conjugate_idempotent(alg, g, x) == x


def test_twisted_subalgebra():
    alg = example_c()
    triv = twisted_subalgebra(alg, V.trivial())
    assert triv.dimension == 1
    assert twisted_subalgebra(alg, V.whole()).dimension == 4
    sub = twisted_subalgebra(alg, subgroup_generated(V, [V.index("a")]))
    s = sub.basis(1)
    assert s * s == sub.one()
    x = sub.element({0: U9, 1: 1})
    assert x * s == s * x


def test_inseparable_examples():
    alg = c2(F2t, 1)
    assert purely_inseparable_field_test(alg, alg.group.trivial()).is_field
    alg = c2(F2t, T2)
    yes = purely_inseparable_field_test(alg, alg.group.whole())
    assert yes.is_field and yes.tower[0]["alpha"] == T2
    alg = c2(F2t, T2**2)
    no = purely_inseparable_field_test(alg, alg.group.whole())
    assert not no.is_field
    N = no.witness
    assert N == no.witness.parent.element({0: T2, 1: 1})
    assert not N.is_zero() and (N**2).is_zero()


def test_inseparable_klein_tower():
    act = trivial_action(V, F2t)
    a, b = V.index("a"), V.index("b")

    def build(x, y):
        # U_a^2 = x, U_b^2 = y, commuting
        vals = [[F2t.one()] * 4 for _ in range(4)]
        for g in V.elements():
            for h in V.elements():
                v = F2t.one()
                ga, gb = g in (a, V.mul(a, b)), g in (b, V.mul(a, b))
                ha, hb = h in (a, V.mul(a, b)), h in (b, V.mul(a, b))
                if ga and ha:
                    v = v * x
                if gb and hb:
                    v = v * y
                vals[g][h] = v
        from crossed_order.cocycles import TwoCocycle
        return CrossedProduct(TwoCocycle(act, vals))

    # F_2(t) has a single p-basis element, so a second step never stays a field
    t = T2
    for y in (t + 1, t**3, t / (t + 1)):
        res = purely_inseparable_field_test(build(t, y), V.whole())
        assert not res.is_field
        assert len(res.tower) == 1
        assert not res.witness.is_zero() and (res.witness**2).is_zero()


def test_inseparable_noncommuting():
    # over F_3(t) a sign cocycle makes U_a, U_b anticommute
    F3t = rational_function_field(F3)
    g = bimultiplicative_cocycle(trivial_action(V, F3t), [[0, 1], [0, 0]], root=2)
    res = purely_inseparable_field_test(CrossedProduct(g), V.whole())
    assert not res.is_field and isinstance(res.witness, tuple)


def test_inseparable_height_budget():
    G = direct_product(cyclic_group(2), cyclic_group(2), cyclic_group(2), cyclic_group(2))
    alg = CrossedProduct(trivial_cocycle(trivial_action(G, F2t)))
    with pytest.raises(UnsupportedError, match="unsupported tower height"):
        purely_inseparable_field_test(alg, G.whole())


def test_iota_translation_order_four():
    # C4 x C4 over F_625, b acting by Frobenius: pi_f has image of order 4,
    # so translation by pi_f(g) and by its inverse are told apart
    K = extension_field(5, [3, 0, 0, 0, 1])
    G = direct_product(cyclic_group(4), cyclic_group(4))
    act = action_from_generators(G, K, {G.index("b"): 1, G.index("a"): 0})
    a = G.index("a")
    A = kernel_of_action(G, act)
    assert A.elements == subgroup_generated(G, [a]).elements
    f = normalize_on_cyclic_subgroup(bimultiplicative_cocycle(act, [[0, 0], [1, 0]], root=4), A, generator=a)
    alg = CrossedProduct(f)
    pi = pi_map(f, A)
    assert len(pi.image()) == 4
    fam = iota_idempotents(alg, a, 4)
    chars = iota_characters(fam)
    for g in G.elements():
        for j, x in enumerate(fam.iotas):
            assert conjugate_idempotent(alg, g, x) == fam.iotas[chars.index(chars[j] * pi(g))]
