import random
from itertools import permutations, product

import pytest

from conjchern.cyclo import (
    CycInt,
    CycMatrix,
    a_matrix,
    conj_act,
    cyc_determinant,
    gen_matrices,
    verify_extraspecial,
    verify_weight_basis,
)
from conjchern.errors import NotMonomial, PrimeMismatch, SizeGuard


def w(p, k=1):
    return CycInt.omega(p, k)


def random_cyc(rng, p, bound=3):
    return CycInt(p, [rng.randrange(-bound, bound + 1) for _ in range(p - 1)])


# -- ring of cyclotomic integers ----------------------------------------------


def test_omega_has_order_p():
    for p in (3, 5, 7):
        assert w(p) * w(p, p - 1) == 1
        acc = CycInt.from_int(p, 1)
        for k in range(1, p + 1):
            acc = acc * w(p)
            assert (acc == 1) == (k == p)


def test_cyclotomic_relation():
    for p in (3, 5):
        total = CycInt.zero(p)
        for k in range(p):
            total = total + w(p, k)
        assert total.is_zero()


def test_omega_power_addition():
    rng = random.Random(3)
    for p in (3, 5):
        for _ in range(50):
            a, b = rng.randrange(p), rng.randrange(p)
            assert w(p, a) * w(p, b) == w(p, (a + b) % p)


def test_ring_laws_random():
    rng = random.Random(5)
    for p in (3, 5):
        for _ in range(300):
            a, b, c = (random_cyc(rng, p) for _ in range(3))
            assert a * b == b * a
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c


def test_prime_mismatch():
    with pytest.raises(PrimeMismatch):
        w(3) + w(5)
    with pytest.raises(PrimeMismatch):
        w(3) * w(5)


def test_omega_exponent_detection():
    for p in (3, 5):
        for k in range(p):
            assert w(p, k).omega_exponent() == k
        assert (w(p) + 1).omega_exponent() is None


# -- generator matrices --------------------------------------------------------


def test_sigma_matrix_frozen():
    sigma, _ = gen_matrices(3)
    assert [sigma.rows[i][i] for i in range(3)] == [w(3, 1), w(3, 2), w(3, 0)]
    off = [(i, j) for i in range(3) for j in range(3) if i != j]
    assert all(sigma.rows[i][j].is_zero() for i, j in off)


def test_tau_matrix_frozen():
    _, tau = gen_matrices(3)
    pattern = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    for i in range(3):
        for j in range(3):
            entry = tau.rows[i][j]
            assert entry == pattern[i][j]


def test_generator_orders():
    for p in (3, 5):
        sigma, tau = gen_matrices(p)
        eye = CycMatrix.identity(p, p)
        assert sigma**p == eye
        assert tau**p == eye


def test_a_matrix_frozen_values():
    for p in (3, 5):
        assert a_matrix(0, 0, p) == CycMatrix.identity(p, p)
    a01 = a_matrix(0, 1, 3)
    assert [a01.rows[i][i] for i in range(3)] == [w(3, 2), w(3, 1), w(3, 0)]
    a10 = a_matrix(1, 0, 3)
    pattern = [[0, 0, 1], [1, 0, 0], [0, 1, 0]]
    for i in range(3):
        for j in range(3):
            assert a10.rows[i][j] == pattern[i][j]


def test_a_matrix_index_range():
    from conjchern.errors import IndexOutOfRange

    with pytest.raises(IndexOutOfRange):
        a_matrix(3, 0, 3)


def test_a_matrix_factorization():
    for p in (3, 5):
        for i in range(p):
            for j in range(p):
                assert a_matrix(i, j, p) == a_matrix(i, 0, p) * a_matrix(0, j, p)


# -- conjugation action ----------------------------------------------------------


def test_conj_by_identity():
    m = a_matrix(1, 2, 3)
    assert conj_act(CycMatrix.identity(3, 3), m) == m


def test_eigen_relations_exhaustive():
    for p in (3, 5):
        sigma, tau = gen_matrices(p)
        for i in range(p):
            for j in range(p):
                a = a_matrix(i, j, p)
                assert conj_act(sigma, a) == a.mul_omega(i)
                assert conj_act(tau, a) == a.mul_omega(j)


def test_conj_action_axiom():
    p = 3
    sigma, tau = gen_matrices(p)
    m = a_matrix(2, 1, p)
    for g, h in product((sigma, tau), repeat=2):
        assert conj_act(g * h, m) == conj_act(g, conj_act(h, m))


def test_conj_matches_full_product():
    p = 3
    sigma, tau = gen_matrices(p)
    g = sigma * tau
    m = a_matrix(1, 2, p)
    assert conj_act(g, m) == g * m * g.inverse_monomial()


def test_not_monomial():
    p = 3
    bad = CycMatrix(
        p,
        [
            [CycInt.from_int(p, 1), CycInt.from_int(p, 1), CycInt.zero(p)],
            [CycInt.zero(p), CycInt.from_int(p, 1), CycInt.zero(p)],
            [CycInt.zero(p), CycInt.zero(p), CycInt.from_int(p, 1)],
        ],
    )
    with pytest.raises(NotMonomial):
        conj_act(bad, a_matrix(0, 0, p))
    with pytest.raises(NotMonomial):
        bad.inverse_monomial()


def test_weight_characters_pairwise_distinct():
    # any two index pairs are separated by a generator
    for p in (3, 5):
        pairs = list(product(range(p), repeat=2))
        for a in pairs:
            for b in pairs:
                if a != b:
                    assert a[0] != b[0] or a[1] != b[1]


# -- determinants over Z[w] ------------------------------------------------------


def brute_force_det(mat):
    total = CycInt.zero(mat.p)
    n = mat.size
    for perm in permutations(range(n)):
        invs = sum(
            1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b]
        )
        prod = CycInt.from_int(mat.p, 1)
        for r, c in enumerate(perm):
            prod = prod * mat.rows[r][c]
        total = total + (prod if invs % 2 == 0 else -prod)
    return total


def test_component_determinant_matches_brute_force():
    rng = random.Random(77)
    for p in (3, 5):
        for n in (2, 3, 4):
            for _ in range(15):
                rows = [
                    [
                        random_cyc(rng, p, 1)
                        if rng.random() < 0.6
                        else CycInt.zero(p)
                        for _ in range(n)
                    ]
                    for _ in range(n)
                ]
                mat = CycMatrix(p, rows)
                assert cyc_determinant(mat) == brute_force_det(mat)


def test_zero_row_determinant():
    p = 3
    z = CycInt.zero(p)
    mat = CycMatrix(p, [[z, z], [z, CycInt.from_int(p, 1)]])
    assert cyc_determinant(mat).is_zero()


# -- verifiers -------------------------------------------------------------------


@pytest.mark.parametrize("p", [3, 5])
def test_extraspecial_relations(p):
    report = verify_extraspecial(p)
    assert report.passed()
    commutator = [c for c in report.checks if c.name == "commutator-central"][0]
    assert "w^" in commutator.detail


def test_extraspecial_commutator_nontrivial():
    sigma, tau = gen_matrices(3)
    eye = CycMatrix.identity(3, 3)
    comm = tau * sigma * tau.inverse_monomial() * sigma.inverse_monomial()
    assert comm != eye
    assert comm.scalar_exponent() == 2  # w^{-1} I at p = 3


def test_weight_basis_l1():
    for p in (3, 5):
        table = verify_weight_basis(p, 1)
        assert len(table) == p * p
        assert set(table.weights) == set(product(range(p), repeat=2))


def test_weight_basis_l2():
    table = verify_weight_basis(3, 2)
    assert len(table) == 81
    assert all(table.weights[idx] == idx for idx in table.weights)


def test_weight_basis_guard():
    with pytest.raises(SizeGuard):
        verify_weight_basis(5, 3)
