"""(2,2)-partition combinatorics and the graded relations they encode.

A 4-element index set has exactly three splittings into unordered pairs,
listed as u, v, w.  Their signs and the slash pairing drive a family of
three-term quadratic polynomials R_j in the weighted ring F_p[Y_1..Y_4],
deg(Y_i) = p^i + 1.  Substituting the closed-form classes r_i for Y_i turns
each R_j into a Moore minor, and from there into a relation between the
restricted Chern classes and the r_i.
"""

from __future__ import annotations

from typing import NamedTuple

from .chern import ChernContext, total_conj_chern
from .dickson import DicksonContext, delta_ni
from .errors import IndexOutOfRange, SamePartition, SizeGuard
from .fp import check_modulus
from .poly import Poly, PolyRing, diff_detail
from .report import VerificationReport, timed_check
from .steenrod import even_to_poly, r_closed


def index_set4(values) -> tuple:
    """Four distinct non-negative integers, sorted ascending."""
    vals = tuple(sorted(values))
    if len(vals) != 4 or len(set(vals)) != 4:
        raise ValueError(f"need four distinct values, got {values!r}")
    if vals[0] < 0:
        raise ValueError("indices must be non-negative")
    return vals


class Partition22(NamedTuple):
    """An unordered splitting of a 4-element set into two unordered pairs;
    stored with each block sorted and the blocks ordered by first element."""

    first: tuple
    second: tuple

    @classmethod
    def of(cls, block1, block2) -> Partition22:
        a = tuple(sorted(block1))
        b = tuple(sorted(block2))
        if len(a) != 2 or len(b) != 2 or set(a) & set(b):
            raise ValueError(f"blocks {block1!r}, {block2!r} do not partition")
        if a > b:
            a, b = b, a
        return cls(a, b)

    @property
    def support(self) -> tuple:
        return tuple(sorted(self.first + self.second))


def partitions22(iset) -> list:
    """The three (2,2)-partitions u, v, w of a 4-element set, in that order."""
    i1, i2, i3, i4 = index_set4(iset)
    return [
        Partition22.of((i1, i2), (i3, i4)),
        Partition22.of((i1, i3), (i2, i4)),
        Partition22.of((i1, i4), (i2, i3)),
    ]


def _perm_sign(base, target) -> int:
    positions = [base.index(t) for t in target]
    inversions = sum(
        1
        for a in range(len(positions))
        for b in range(a + 1, len(positions))
        if positions[a] > positions[b]
    )
    return -1 if inversions % 2 else 1


def epsilon(rho: Partition22) -> int:
    """Sign of the permutation listing the blocks after the sorted support;
    both block orders give the same sign, which is asserted."""
    base = rho.support
    k1, l1 = rho.first
    k2, l2 = rho.second
    sign_a = _perm_sign(base, (k1, l1, k2, l2))
    sign_b = _perm_sign(base, (k2, l2, k1, l1))
    assert sign_a == sign_b, "block order changed the sign"
    return sign_a


def slash(rho: Partition22, kappa: Partition22) -> int:
    """+1 if the bijection between the blocks of rho induced by kappa is
    increasing, else -1; independent of which block is the domain."""
    if rho == kappa:
        raise SamePartition("slash needs two distinct partitions")
    if rho.support != kappa.support:
        raise ValueError("partitions live on different index sets")

    def from_domain(dom, cod) -> int:
        k, l = dom
        if Partition22.of((k, cod[0]), (l, cod[1])) == kappa:
            fk, fl = cod[0], cod[1]
        elif Partition22.of((k, cod[1]), (l, cod[0])) == kappa:
            fk, fl = cod[1], cod[0]
        else:
            raise ValueError("no pairing bijection exists")
        return 1 if fk < fl else -1

    value = from_domain(rho.first, rho.second)
    assert value == from_domain(rho.second, rho.first), "domain choice changed slash"
    return value


def verify_partition_signs(iset) -> VerificationReport:
    """sum over partitions rho != kappa of epsilon(rho) * (rho/kappa) is zero
    for each of the three choices of kappa."""
    vals = index_set4(iset)
    parts = partitions22(vals)
    names = ["u", "v", "w"]
    checks = []

    def total_for(kappa):
        def run():
            total = sum(
                epsilon(rho) * slash(rho, kappa) for rho in parts if rho != kappa
            )
            return total == 0, f"sum = {total}"

        return run

    for name, kappa in zip(names, parts):
        checks.append(timed_check(f"kappa-{name}", total_for(kappa)))
    return VerificationReport(
        suite="signs", params={"indices": list(vals)}, checks=checks
    )


def y_ring(p: int) -> PolyRing:
    check_modulus(p)
    return PolyRing(p, ("Y1", "Y2", "Y3", "Y4"))


def r_monomial(i: int, j: int, p: int) -> Poly:
    """Y_{j-i}^{p^i} for 0 <= i < j <= 4."""
    if not 0 <= i < j <= 4:
        raise IndexOutOfRange(f"need 0 <= i < j <= 4, got ({i}, {j})")
    return y_ring(p).monomial({j - i - 1: p**i})


def r_block(block, p: int) -> Poly:
    """The quadratic-block monomial for an unordered pair of indices."""
    i, j = sorted(block)
    return r_monomial(i, j, p)


def r_j_poly(j: int, p: int) -> Poly:
    """The signed three-term sum over the (2,2)-partitions of {0..4} - {j}."""
    if not 0 <= j <= 4:
        raise IndexOutOfRange(f"j must be in 0..4, got {j}")
    iset = tuple(t for t in range(5) if t != j)
    out = y_ring(p).zero()
    for rho in partitions22(iset):
        term = r_block(rho.first, p) * r_block(rho.second, p)
        out = out + term * epsilon(rho)
    return out


def weighted_degrees(f: Poly, p: int) -> set:
    """Degrees of f under the grading deg(Y_i) = p^i + 1."""
    weights = [p**i + 1 for i in range(1, 5)]
    return {sum(e * w for e, w in zip(m, weights)) for m in f.terms}


def verify_quadratic(p: int) -> VerificationReport:
    """Scaling every Y_i by a scalar a of F_p scales each R_j by a^2."""
    ring = y_ring(p)
    checks = []

    def scaling(j):
        def run():
            base = r_j_poly(j, p)
            for a in range(p):
                images = [ring.monomial({t: 1}, a) for t in range(4)]
                scaled = base.compose(images, ring)
                if scaled != base * (a * a):
                    return False, f"a = {a} violates quadratic scaling"
            return True, f"all {p} scalars"

        return run

    for j in range(5):
        checks.append(timed_check(f"quadratic-scaling-j{j}", scaling(j)))
    return VerificationReport(suite="relations", params={"p": p}, checks=checks)


def _r_classes(p: int, ring: PolyRing) -> list:
    """The closed-form classes r_1..r_4 for l = 2, as even polynomials."""
    return [even_to_poly(r_closed(p, i, 2), ring) for i in range(1, 5)]


def _check_heavy(p: int, heavy: bool):
    if p == 3:
        return
    if p == 5 and heavy:
        return
    raise SizeGuard(
        f"p = {p} substitution identities are feature-flagged (heavy); "
        "only p = 3 runs by default"
    )


def verify_r_delta(p: int, heavy: bool = False) -> VerificationReport:
    """Substituting r_i for Y_i turns R_j into the Moore minor with the rows
    (eta_1, xi_1, eta_2, xi_2); gradings are checked before equality."""
    _check_heavy(p, heavy)
    ctx = ChernContext(p, 2)
    ring = ctx.ring
    rs = _r_classes(p, ring)
    dctx = DicksonContext(p, 4)
    eta_xi = [
        ring.variable("eta1"),
        ring.variable("xi1"),
        ring.variable("eta2"),
        ring.variable("xi2"),
    ]
    checks = []

    def grading():
        for i, r in enumerate(rs, start=1):
            degs = {sum(m) for m in r.terms}
            if degs != {p**i + 1}:
                return False, f"r_{i} is not homogeneous of degree p^{i}+1"
        return True, "deg r_i = p^i + 1 matches the Y_i weights"

    checks.append(timed_check("substitution-grading", grading))

    def delta_match(j):
        def run():
            lhs = r_j_poly(j, p).compose(rs, ring)
            rhs = delta_ni(dctx, j).compose(eta_xi, ring)
            lhs_degs = {sum(m) for m in lhs.terms}
            rhs_degs = {sum(m) for m in rhs.terms}
            if lhs_degs != rhs_degs:
                return False, f"degree mismatch: {lhs_degs} vs {rhs_degs}"
            if lhs == rhs:
                return True, ""
            return False, diff_detail(lhs, rhs)

        return run

    for j in range(5):
        checks.append(timed_check(f"moore-minor-j{j}", delta_match(j)))
    return VerificationReport(suite="relations", params={"p": p}, checks=checks)


def verify_chern_r_relations(p: int, heavy: bool = False) -> VerificationReport:
    """R_j(r) = (-1)^j gamma_{p^4 - p^j} R_4(r) for j = 0..4 (the j = 4
    instance is the tautology gamma_0 = 1), plus the four explicit displays
    written out with literal exponents."""
    _check_heavy(p, heavy)
    ctx = ChernContext(p, 2)
    ring = ctx.ring
    rs = _r_classes(p, ring)
    r1, r2, r3, r4 = rs
    chern = total_conj_chern(ctx)
    r4_sub = r_j_poly(4, p).compose(rs, ring)
    checks = []

    def general(j):
        def run():
            lhs = r_j_poly(j, p).compose(rs, ring)
            gamma = chern.part(p**4 - p**j)
            rhs = gamma * r4_sub
            if j % 2:
                rhs = -rhs
            if lhs == rhs:
                detail = "tautology gamma_0 = 1" if j == 4 else ""
                return True, detail
            return False, diff_detail(lhs, rhs)

        return run

    for j in range(5):
        checks.append(timed_check(f"chern-relation-j{j}", general(j)))

    base = r1 ** (p**2 + 1) - r2 ** (p + 1) + r1**p * r3
    displays = [
        (
            "display-j3",
            r1**p * r4 + r1 * r2 ** (p**2) - r2 * r3**p,
            -(chern.part(p**4 - p**3) * base),
        ),
        (
            "display-j2",
            r1 ** (p**3 + 1) + r2**p * r4 - r3 ** (p + 1),
            chern.part(p**4 - p**2) * base,
        ),
        (
            "display-j1",
            r1 ** (p**3) * r2 - r2 ** (p**2) * r3 + r1 ** (p**2) * r4,
            -(chern.part(p**4 - p) * base),
        ),
        (
            "display-j0",
            r1 ** (p**3 + p) - r2 ** (p**2 + p) + r1 ** (p**2) * r3**p,
            chern.part(p**4 - 1) * base,
        ),
    ]

    def display_check(lhs, rhs):
        def run():
            if lhs == rhs:
                return True, ""
            return False, diff_detail(lhs, rhs)

        return run

    for name, lhs, rhs in displays:
        checks.append(timed_check(name, display_check(lhs, rhs)))
    return VerificationReport(suite="relations", params={"p": p}, checks=checks)
