from itertools import product

import pytest

from conjchern.chern import (
    ChernContext,
    GradedChern,
    dickson_on_classes,
    linear_form,
    total_conj_chern,
    verify_conj_chern,
    verify_top_chern,
    verify_vistoli,
)
from conjchern.errors import ArityMismatch, SizeGuard
from helpers import naive_product

C31 = ChernContext(3, 1)


def tx(text, ctx=C31):
    return ctx.ring.from_text(text)


def all_factors(ctx):
    """The nonzero linear factors 1 + L_v, for the naive product oracle."""
    out = []
    for t in product(range(ctx.p), repeat=2 * ctx.l):
        if any(t):
            out.append(ctx.ring.one() + linear_form(t, ctx))
    return out


# -- linear forms -------------------------------------------------------------


def test_linear_form_examples():
    assert linear_form((0, 0), C31).is_zero()
    assert linear_form((1, 0), C31) == tx("xi1")
    assert linear_form((1, 2), C31) == tx("xi1 + 2*eta1")


def test_linear_form_arity():
    with pytest.raises(ArityMismatch):
        linear_form((1, 0, 0), C31)


# -- the graded product ---------------------------------------------------------


def test_graded_product_matches_naive_oracle():
    for p in (3, 5):
        ctx = ChernContext(p, 1)
        graded = total_conj_chern(ctx)
        assert graded.total() == naive_product(all_factors(ctx))


def test_rank_one_parts_frozen():
    graded = total_conj_chern(C31)
    assert graded.part(0) == C31.ring.one()
    # degree 6 = 9 - 3 carries -C_{2,1}(eta, xi)
    assert graded.part(6) == -dickson_on_classes(C31, 1)
    assert graded.part(7).is_zero()
    assert graded.total().graded_part(7).is_zero()
    # degree 8 = 9 - 1 is the square of the rank-one class
    assert graded.part(8) == tx("xi1^3*eta1 - xi1*eta1^3") ** 2


def test_nonzero_degrees_follow_p_power_pattern():
    for p, l in [(3, 1), (5, 1), (3, 2)]:
        ctx = ChernContext(p, l)
        top = p ** (2 * l)
        graded = total_conj_chern(ctx)
        expected = {top - p**k for k in range(2 * l + 1)}
        assert set(graded.nonzero_degrees()) == expected
        assert max(graded.nonzero_degrees()) == top - 1


def test_parts_are_homogeneous():
    graded = total_conj_chern(ChernContext(3, 2))
    for d, part in graded.parts.items():
        assert part.is_homogeneous()
        if not part.is_zero():
            assert part.degree() == d


def test_pair_block_relabeling_symmetry():
    ctx = ChernContext(3, 2)
    ring = ctx.ring
    graded = total_conj_chern(ctx)
    swap = [
        ring.variable("xi2"),
        ring.variable("eta2"),
        ring.variable("xi1"),
        ring.variable("eta1"),
    ]
    for d in graded.nonzero_degrees():
        part = graded.part(d)
        assert part.compose(swap, ring) == part


def test_two_routes_product_vs_dickson_assembly():
    # the full product equals sum_k (-1)^k C_{4,k}(eta1, xi1, eta2, xi2)
    ctx = ChernContext(3, 2)
    total = total_conj_chern(ctx).total()
    assembled = ctx.ring.zero()
    for k in range(5):
        term = dickson_on_classes(ctx, k)
        if k % 2:
            term = -term
        assembled = assembled + term
    assert total == assembled


def test_size_guard():
    with pytest.raises(SizeGuard):
        total_conj_chern(ChernContext(5, 2))


# -- verifiers --------------------------------------------------------------------


@pytest.mark.parametrize("p,l", [(3, 1), (5, 1), (3, 2)])
def test_verify_conj_chern(p, l):
    report = verify_conj_chern(ChernContext(p, l))
    assert report.passed()
    names = {c.name for c in report.checks}
    assert "vanishing-elsewhere" in names
    assert "argument-order-invariance" in names


@pytest.mark.parametrize("p,l", [(3, 1), (5, 1), (3, 2)])
def test_verify_top_chern(p, l):
    assert verify_top_chern(ChernContext(p, l)).passed()


@pytest.mark.parametrize("p", [3, 5])
def test_verify_vistoli(p):
    report = verify_vistoli(p)
    assert report.passed()
    assert [c.name for c in report.checks] == [
        "gamma-mid-closed-form",
        "gamma-top-closed-form",
        "r2-relation",
        "r1-power-relation",
    ]


def test_graded_chern_part_outside_range():
    graded = total_conj_chern(C31)
    assert graded.part(100).is_zero()
    assert isinstance(graded, GradedChern)
