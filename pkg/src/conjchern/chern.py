"""The restricted total Chern class of the conjugation representation.

The product of the linear factors 1 + sum(i_k xi_k + j_k eta_k) over all
nonzero tuples of F_p^{2l} is accumulated degree by degree in dense integer
arrays (one slab per total degree, reduced mod p after every factor), then
split back into sparse graded parts.  Degrees follow the half-degree
convention: each ring variable counts 1, standing for a cohomology class of
topological degree 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .dickson import DicksonContext, dickson_c, delta_ni
from .errors import ArityMismatch, SizeGuard
from .fp import check_modulus
from .poly import Poly, PolyRing, diff_detail
from .report import VerificationReport, timed_check
from .steenrod import even_to_poly, r_closed

MAX_FACTORS = 100


class ChernContext:
    """p, l, and the ring F_p[xi_1, eta_1, ..., xi_l, eta_l]."""

    __slots__ = ("p", "l", "ring")

    def __init__(self, p: int, l: int):
        check_modulus(p)
        if p == 2:
            raise ValueError("the conjugation representation needs an odd prime")
        if l < 1:
            raise ValueError("l must be >= 1")
        names = []
        for k in range(1, l + 1):
            names += [f"xi{k}", f"eta{k}"]
        self.p = p
        self.l = l
        self.ring = PolyRing(p, names)

    def __eq__(self, other):
        if isinstance(other, ChernContext):
            return self.p == other.p and self.l == other.l
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.l))

    def __repr__(self):
        return f"ChernContext(p={self.p}, l={self.l})"


def linear_form(v, ctx: ChernContext) -> Poly:
    """sum_k (i_k xi_k + j_k eta_k) for v = (i_1, j_1, ..., i_l, j_l)."""
    v = tuple(v)
    if len(v) != 2 * ctx.l:
        raise ArityMismatch(f"tuple length {len(v)}, expected {2 * ctx.l}")
    if any(not 0 <= c < ctx.p for c in v):
        raise ValueError("tuple entries must lie in [0, p)")
    form = ctx.ring.zero()
    for t, c in enumerate(v):
        if c:
            form = form + ctx.ring.monomial({t: 1}, c)
    return form


@dataclass
class GradedChern:
    """Graded parts of the total restricted Chern class, by half-degree."""

    ring: PolyRing
    top: int
    parts: dict

    def part(self, d: int) -> Poly:
        return self.parts.get(d, self.ring.zero())

    def nonzero_degrees(self) -> list:
        return sorted(self.parts)

    def total(self) -> Poly:
        out = self.ring.zero()
        for f in self.parts.values():
            out = out + f
        return out


@lru_cache(maxsize=None)
def total_conj_chern(ctx: ChernContext) -> GradedChern:
    """The exact product of the p^{2l} linear factors (the zero tuple
    contributes the factor 1), split into graded parts."""
    p = ctx.p
    nvar = 2 * ctx.l
    tuples = [t for t in product(range(p), repeat=nvar) if any(t)]
    if len(tuples) > MAX_FACTORS:
        raise SizeGuard(
            f"{len(tuples)} linear factors exceed the {MAX_FACTORS} product guard"
        )
    ndim = nvar - 1
    slabs = [np.ones((1,) * ndim, dtype=np.int64)]
    for k, t in enumerate(tuples, start=1):
        slabs.append(np.zeros((k + 1,) * ndim, dtype=np.int64))
        for d in range(k, 0, -1):
            src = slabs[d - 1]
            dst = slabs[d]
            for var, c in enumerate(t):
                if not c:
                    continue
                idx = [slice(0, d)] * ndim
                if var < ndim:
                    idx[var] = slice(1, d + 1)
                dst[tuple(idx)] += c * src
            np.remainder(dst, p, out=dst)
    parts = {}
    for d, slab in enumerate(slabs):
        coords = np.argwhere(slab)
        if coords.size == 0:
            continue
        terms = {}
        for pos in coords:
            head = tuple(int(e) for e in pos)
            terms[head + (d - sum(head),)] = int(slab[tuple(pos)])
        parts[d] = Poly(ctx.ring, terms)
    return GradedChern(ring=ctx.ring, top=len(tuples), parts=parts)


def _dickson_images(ctx: ChernContext, swap_last_pair: bool = False):
    """The substitution (eta_1, xi_1, eta_2, xi_2, ...) feeding the invariants;
    optionally with the final pair in the (xi_l, eta_l) order instead."""
    images = []
    for k in range(ctx.l):
        xi = ctx.ring.variable(2 * k)
        eta = ctx.ring.variable(2 * k + 1)
        if swap_last_pair and k == ctx.l - 1:
            images += [xi, eta]
        else:
            images += [eta, xi]
    return images


def dickson_on_classes(ctx: ChernContext, k: int, swap_last_pair: bool = False) -> Poly:
    """C_{2l,k} evaluated at (eta_1, xi_1, ..., eta_l, xi_l)."""
    dctx = DicksonContext(ctx.p, 2 * ctx.l)
    return dickson_c(dctx, k).compose(_dickson_images(ctx, swap_last_pair), ctx.ring)


def delta_on_classes(ctx: ChernContext, i: int) -> Poly:
    """The Moore minor in the same class variables."""
    dctx = DicksonContext(ctx.p, 2 * ctx.l)
    return delta_ni(dctx, i).compose(_dickson_images(ctx), ctx.ring)


def verify_conj_chern(ctx: ChernContext) -> VerificationReport:
    """Every graded part of the product equals the matching signed Dickson
    invariant in the class variables, and all other parts vanish."""
    p, l = ctx.p, ctx.l
    top = p ** (2 * l)
    chern = total_conj_chern(ctx)
    checks = []
    special = {top - p**k: k for k in range(2 * l + 1)}

    def gamma_check(d, k):
        def run():
            got = chern.part(d)
            expected = dickson_on_classes(ctx, k)
            if k % 2:
                expected = -expected
            if got == expected:
                return True, ""
            return False, diff_detail(got, expected)

        return run

    for d in sorted(special, reverse=True):
        checks.append(timed_check(f"gamma-degree-{d}", gamma_check(d, special[d])))

    def vanishing():
        bad = [
            d
            for d in range(1, top + 1)
            if d not in special and not chern.part(d).is_zero()
        ]
        if bad:
            return False, f"unexpected nonzero parts in degrees {bad[:5]}"
        return True, f"degrees 1..{top} outside the p-power pattern all vanish"

    checks.append(timed_check("vanishing-elsewhere", vanishing))

    def order_invariance():
        for k in range(2 * l + 1):
            main = dickson_on_classes(ctx, k)
            alt = dickson_on_classes(ctx, k, swap_last_pair=True)
            if main != alt:
                return False, f"argument orders disagree for C_{{{2 * l},{k}}}"
        return True, "both documented argument orders agree"

    checks.append(timed_check("argument-order-invariance", order_invariance))
    return VerificationReport(
        suite="chern", params={"p": p, "l": l}, checks=checks
    )


def verify_top_chern(ctx: ChernContext) -> VerificationReport:
    """The top graded part is the (p-1)-st power of the Moore determinant in
    the class variables, and the row-0 minor is its p-th power."""
    p, l = ctx.p, ctx.l
    top = p ** (2 * l)
    checks = []

    def top_part():
        got = total_conj_chern(ctx).part(top - 1)
        expected = delta_on_classes(ctx, 2 * l) ** (p - 1)
        if got == expected:
            return True, ""
        return False, diff_detail(got, expected)

    checks.append(timed_check("top-gamma-power", top_part))

    def zero_minor():
        lhs = delta_on_classes(ctx, 0)
        rhs = delta_on_classes(ctx, 2 * l) ** p
        if lhs == rhs:
            return True, ""
        return False, diff_detail(lhs, rhs)

    checks.append(timed_check("minor-frobenius-power", zero_minor))
    return VerificationReport(
        suite="chern", params={"p": p, "l": l}, checks=checks
    )


def verify_vistoli(p: int) -> VerificationReport:
    """The rank-one closed forms of the two surviving Chern classes and the
    two product relations they impose on r_1 and r_2."""
    ctx = ChernContext(p, 1)
    ring = ctx.ring
    xi = ring.variable("xi1")
    eta = ring.variable("eta1")
    chern = total_conj_chern(ctx)
    gamma_mid = chern.part(p * p - p)
    gamma_top = chern.part(p * p - 1)
    r1 = even_to_poly(r_closed(p, 1, 1), ring)
    r2 = even_to_poly(r_closed(p, 2, 1), ring)
    checks = []

    def mid_closed_form():
        expected = -(xi ** (p * p - p)) - eta ** (p - 1) * (
            xi ** (p - 1) - eta ** (p - 1)
        ) ** (p - 1)
        if gamma_mid == expected:
            return True, ""
        return False, diff_detail(gamma_mid, expected)

    checks.append(timed_check("gamma-mid-closed-form", mid_closed_form))

    def top_closed_form():
        expected = r1 ** (p - 1)
        direct = (xi**p * eta - xi * eta**p) ** (p - 1)
        if gamma_top == expected and expected == direct:
            return True, ""
        return False, diff_detail(gamma_top, expected)

    checks.append(timed_check("gamma-top-closed-form", top_closed_form))

    def r2_relation():
        lhs = r2
        rhs = -(gamma_mid * r1)
        if lhs == rhs:
            return True, ""
        return False, diff_detail(lhs, rhs)

    checks.append(timed_check("r2-relation", r2_relation))

    def r1_power_relation():
        lhs = r1**p
        rhs = gamma_top * r1
        if lhs == rhs:
            return True, ""
        return False, diff_detail(lhs, rhs)

    checks.append(timed_check("r1-power-relation", r1_power_relation))
    return VerificationReport(suite="vistoli", params={"p": p, "l": 1}, checks=checks)
