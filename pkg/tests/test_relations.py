from itertools import combinations

import pytest

from conjchern.errors import IndexOutOfRange, SamePartition, SizeGuard
from conjchern.relations import (
    Partition22,
    epsilon,
    index_set4,
    partitions22,
    r_j_poly,
    r_monomial,
    slash,
    verify_chern_r_relations,
    verify_partition_signs,
    verify_quadratic,
    verify_r_delta,
    weighted_degrees,
    y_ring,
)

U, V, W = partitions22((0, 1, 2, 3))


def test_index_set_validation():
    assert index_set4((3, 1, 0, 2)) == (0, 1, 2, 3)
    with pytest.raises(ValueError):
        index_set4((0, 1, 2, 2))
    with pytest.raises(ValueError):
        index_set4((0, 1, 2))


def test_three_partitions_in_display_order():
    parts = partitions22((0, 1, 2, 4))
    assert len(parts) == 3
    assert parts[0] == Partition22.of((0, 1), (2, 4))
    assert parts[1] == Partition22.of((0, 2), (1, 4))
    assert parts[2] == Partition22.of((0, 4), (1, 2))
    for rho in parts:
        assert sorted(rho.first + rho.second) == [0, 1, 2, 4]


def test_epsilon_frozen_values():
    assert epsilon(U) == 1
    assert epsilon(V) == -1
    assert epsilon(W) == 1


def test_epsilon_on_shifted_sets():
    for iset in [(1, 2, 3, 4), (0, 2, 3, 6), (2, 3, 5, 6)]:
        u, v, w = partitions22(iset)
        assert (epsilon(u), epsilon(v), epsilon(w)) == (1, -1, 1)


def test_slash_frozen_values():
    assert slash(U, V) == 1
    assert slash(V, U) == 1
    assert slash(W, U) == 1
    assert slash(U, W) == -1
    assert slash(V, W) == -1
    assert slash(W, V) == -1


def test_slash_same_partition():
    with pytest.raises(SamePartition):
        slash(U, U)


def test_sign_sum_vanishes_on_all_subsets():
    for iset in combinations(range(7), 4):
        parts = partitions22(iset)
        for kappa in parts:
            total = sum(
                epsilon(rho) * slash(rho, kappa) for rho in parts if rho != kappa
            )
            assert total == 0
        assert verify_partition_signs(iset).passed()


# -- the graded polynomials -----------------------------------------------------


def test_r_monomial_values():
    assert r_monomial(2, 3, 3) == y_ring(3).from_text("Y1^9")
    assert r_monomial(0, 2, 5) == y_ring(5).from_text("Y2")
    with pytest.raises(IndexOutOfRange):
        r_monomial(3, 3, 3)


def test_r_monomial_weights():
    for p in (3, 5):
        for i in range(4):
            for j in range(i + 1, 5):
                assert weighted_degrees(r_monomial(i, j, p), p) == {p**i + p**j}


def test_r4_formula():
    for p in (3, 5):
        ring = y_ring(p)
        expected = (
            ring.from_text(f"Y1^{p * p + 1}")
            - ring.from_text(f"Y2^{p + 1}")
            + ring.from_text(f"Y1^{p}*Y3")
        )
        assert r_j_poly(4, p) == expected


def test_r_j_weighted_homogeneity():
    for p in (3, 5):
        total = sum(p**i for i in range(5))
        for j in range(5):
            assert weighted_degrees(r_j_poly(j, p), p) == {total - p**j}
    with pytest.raises(IndexOutOfRange):
        r_j_poly(5, 3)


@pytest.mark.parametrize("p", [3, 5])
def test_quadratic_scaling(p):
    assert verify_quadratic(p).passed()


def test_quadratic_scaling_specific_value():
    # scale by a = 2 at p = 3, j = 4 by hand
    ring = y_ring(3)
    base = r_j_poly(4, 3)
    images = [ring.monomial({t: 1}, 2) for t in range(4)]
    assert base.compose(images, ring) == base * 4


# -- the substitution identities ---------------------------------------------------


def test_r_delta_identity_p3():
    report = verify_r_delta(3)
    assert report.passed()
    assert {c.name for c in report.checks} >= {f"moore-minor-j{j}" for j in range(5)}


def test_chern_relations_p3():
    report = verify_chern_r_relations(3)
    assert report.passed()
    names = [c.name for c in report.checks]
    assert "chern-relation-j4" in names
    tautology = [c for c in report.checks if c.name == "chern-relation-j4"][0]
    assert "tautology" in tautology.detail
    for j in range(4):
        assert f"display-j{j}" in names


def test_heavy_guard_at_p5():
    with pytest.raises(SizeGuard):
        verify_r_delta(5)
    with pytest.raises(SizeGuard):
        verify_chern_r_relations(5)
