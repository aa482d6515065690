"""Moore matrices, Dickson invariants, and randomized GL-invariance checks.

Over F_p[x_1..x_n] the key objects are the Moore determinants built from the
Frobenius-power rows (x_1^{p^r}, ..., x_n^{p^r}), the product f_n(X) of the
linear forms X - sum(k_i x_i) over all tuples k in F_p^n, and the invariants
C_{n,i} obtained either as exact quotients of Moore minors or as signed
coefficients of f_n(X).  The two constructions are independent computation
routes and serve as mutual oracles.
"""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations, product

from .errors import IndexOutOfRange, RingMismatch, SizeGuard
from .fp import check_modulus
from .poly import Poly, PolyMatrix, PolyRing, determinant, diff_detail, exact_div
from .report import VerificationReport, timed_check

MAX_PRODUCT = 10**6


class DicksonContext:
    """Holds p, n, the ring F_p[x_1..x_n], and the same ring with X appended."""

    __slots__ = ("p", "n", "ring", "xring")

    def __init__(self, p: int, n: int, variables=None, aux: str = "X"):
        check_modulus(p)
        if not 1 <= n <= 6:
            raise ValueError(f"n must be in 1..6, got {n}")
        if variables is None:
            variables = tuple(f"x{i}" for i in range(1, n + 1))
        else:
            variables = tuple(variables)
            if len(variables) != n:
                raise ValueError("variable list length differs from n")
        self.p = p
        self.n = n
        self.ring = PolyRing(p, variables)
        self.xring = PolyRing(p, variables + (aux,))

    def __eq__(self, other):
        if isinstance(other, DicksonContext):
            return self.xring == other.xring
        return NotImplemented

    def __hash__(self):
        return hash(self.xring)

    def __repr__(self):
        return f"DicksonContext(p={self.p}, n={self.n})"

    def to_xring(self, f: Poly) -> Poly:
        """Embed an n-variable polynomial into the X-augmented ring."""
        images = [self.xring.variable(v) for v in self.ring.variables]
        return f.compose(images, self.xring)


def _moore_matrix(ctx: DicksonContext, row_powers, with_aux: bool) -> PolyMatrix:
    ring = ctx.xring if with_aux else ctx.ring
    width = ring.arity
    rows = []
    for r in row_powers:
        q = ctx.p**r
        rows.append([ring.monomial({j: q}) for j in range(width)])
    return PolyMatrix(rows)


@lru_cache(maxsize=None)
def delta_full(ctx: DicksonContext) -> Poly:
    """Determinant of the (n+1)x(n+1) Moore matrix with the X column."""
    return determinant(_moore_matrix(ctx, range(ctx.n + 1), with_aux=True))


@lru_cache(maxsize=None)
def delta_ni(ctx: DicksonContext, i: int) -> Poly:
    """Moore minor: rows r = 0..n with row r = i deleted, X column absent."""
    if not 0 <= i <= ctx.n:
        raise IndexOutOfRange(f"row index {i} not in 0..{ctx.n}")
    rows = [r for r in range(ctx.n + 1) if r != i]
    return determinant(_moore_matrix(ctx, rows, with_aux=False))


def _balanced_product(factors):
    """Multiply a list of polynomials pairwise, keeping degrees balanced."""
    while len(factors) > 1:
        nxt = []
        for k in range(0, len(factors) - 1, 2):
            nxt.append(factors[k] * factors[k + 1])
        if len(factors) % 2:
            nxt.append(factors[-1])
        factors = nxt
    return factors[0]


@lru_cache(maxsize=None)
def f_n_product(ctx: DicksonContext) -> Poly:
    """The product of X - sum(k_i x_i) over all p^n coefficient tuples."""
    if ctx.p**ctx.n > MAX_PRODUCT:
        raise SizeGuard(f"{ctx.p}^{ctx.n} factors exceed the {MAX_PRODUCT} guard")
    xring = ctx.xring
    x_var = xring.variable(ctx.n)
    factors = []
    for ks in product(range(ctx.p), repeat=ctx.n):
        form = x_var
        for j, k in enumerate(ks):
            if k:
                form = form - xring.monomial({j: 1}, k)
        factors.append(form)
    return _balanced_product(factors)


@lru_cache(maxsize=None)
def dickson_c(ctx: DicksonContext, i: int) -> Poly:
    """C_{n,i} by the determinant route: the exact quotient of Moore minors."""
    return exact_div(delta_ni(ctx, i), delta_ni(ctx, ctx.n))


@lru_cache(maxsize=None)
def dickson_c_from_f(ctx: DicksonContext, i: int) -> Poly:
    """C_{n,i} by the product route: signed coefficient of X^{p^i} in f_n."""
    if not 0 <= i <= ctx.n:
        raise IndexOutOfRange(f"index {i} not in 0..{ctx.n}")
    f = f_n_product(ctx)
    target = ctx.p**i
    ax = ctx.xring.arity - 1
    coeff_terms = {m[:ax]: c for m, c in f.terms.items() if m[ax] == target}
    poly = Poly(ctx.ring, coeff_terms)
    if (ctx.n + i) % 2:
        poly = -poly
    return poly


class GLMatrix:
    """An invertible n x n matrix over F_p."""

    __slots__ = ("p", "n", "entries")

    def __init__(self, entries, p: int):
        check_modulus(p)
        rows = tuple(tuple(v % p for v in row) for row in entries)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        if int_det_mod(rows, p) == 0:
            raise ValueError("matrix is singular mod p")
        self.p = p
        self.n = n
        self.entries = rows

    def __mul__(self, other):
        if not isinstance(other, GLMatrix):
            return NotImplemented
        if self.p != other.p or self.n != other.n:
            raise RingMismatch("GL matrix shape or prime mismatch")
        n, p = self.n, self.p
        rows = [
            [
                sum(self.entries[i][k] * other.entries[k][j] for k in range(n)) % p
                for j in range(n)
            ]
            for i in range(n)
        ]
        return GLMatrix(rows, p)

    def __eq__(self, other):
        if isinstance(other, GLMatrix):
            return self.p == other.p and self.entries == other.entries
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.entries))

    def __repr__(self):
        return f"GLMatrix({self.entries}, p={self.p})"


def int_det_mod(rows, p: int) -> int:
    """Determinant mod p of a small integer matrix, by signed expansion."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(
            1 for a in range(n) for b in range(a + 1, n) if perm[a] > perm[b]
        )
        prod = 1
        for r, c in enumerate(perm):
            prod = prod * rows[r][c] % p
            if not prod:
                break
        total += prod if inversions % 2 == 0 else -prod
    return total % p


def random_gl(n: int, p: int, seed: int) -> GLMatrix:
    """Deterministic-per-seed invertible matrix: uniform entries, rejection."""
    rng = random.Random(seed)
    while True:
        rows = [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
        if int_det_mod(rows, p) != 0:
            return GLMatrix(rows, p)


def gl_action(f: Poly, a: GLMatrix) -> Poly:
    """Substitute x_j -> sum_i a[i][j] x_i (the matrix acts on the column of
    variables); extends multiplicatively to all polynomials."""
    ring = f.ring
    if ring.arity != a.n or ring.p != a.p:
        raise RingMismatch("polynomial ring does not match the matrix")
    images = []
    for j in range(a.n):
        form = ring.zero()
        for i in range(a.n):
            if a.entries[i][j]:
                form = form + ring.monomial({i: 1}, a.entries[i][j])
        images.append(form)
    return f.compose(images, ring)


def verify_dickson(ctx: DicksonContext, trials: int = 50, seed: int = 0) -> VerificationReport:
    """Check the two invariant routes, the Moore factorization, and
    GL-invariance under seeded random matrices."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    checks = []

    def route_check(i):
        def run():
            lhs = dickson_c(ctx, i)
            rhs = dickson_c_from_f(ctx, i)
            if lhs == rhs:
                return True, ""
            return False, diff_detail(lhs, rhs)

        return run

    for i in range(ctx.n + 1):
        checks.append(timed_check(f"two-route-c{i}", route_check(i)))

    def factorization():
        lhs = delta_full(ctx)
        rhs = ctx.to_xring(delta_ni(ctx, ctx.n)) * f_n_product(ctx)
        if lhs == rhs:
            return True, ""
        return False, diff_detail(lhs, rhs)

    checks.append(timed_check("delta-factorization", factorization))

    def invariance():
        cs = [dickson_c(ctx, i) for i in range(ctx.n + 1)]
        for t in range(trials):
            a = random_gl(ctx.n, ctx.p, seed + t)
            for i, c in enumerate(cs):
                moved = gl_action(c, a)
                if moved != c:
                    return False, f"trial {t}: C_{{{ctx.n},{i}}} moved; " + diff_detail(
                        moved, c
                    )
        return True, f"{trials} random matrices fixed every C"

    checks.append(timed_check("gl-invariance", invariance))
    return VerificationReport(
        suite="dickson",
        params={"p": ctx.p, "n": ctx.n, "trials": trials},
        checks=checks,
        seed=seed,
    )
