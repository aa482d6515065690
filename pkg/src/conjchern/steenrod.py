"""The mod-p cohomology of a product of cyclic groups as a free
graded-commutative algebra, with Bockstein, reduced powers, and the Milnor
primitives Q_i.

Generators come in pairs: an exterior generator of degree 1 and a polynomial
generator of degree 2 linked by the Bockstein.  Reduced powers are realized
through the total operation, the ring endomorphism fixing the exterior
generators and sending each polynomial generator t to t + t^p; the degree-k
operation is the appropriate graded component.  No Adem-relation rewriting
is needed on this algebra.
"""

from __future__ import annotations

from itertools import product

from .errors import (
    ContextMismatch,
    DepthGuard,
    OddPartPresent,
    ParseError,
)
from .fp import check_modulus
from .poly import Poly, PolyRing, grlex_key
from .report import VerificationReport, timed_check

MAX_MILNOR_INDEX = 6


class CohAlgebra:
    """Lambda(a_1..a_m) tensor F_p[x_1..x_m] over an odd prime p.

    The exterior generator a_k has degree 1, the polynomial generator x_k
    degree 2, and the Bockstein sends a_k to x_k.
    """

    __slots__ = ("p", "m", "odd_names", "even_names", "_odd_index", "_even_index")

    def __init__(self, p: int, m: int, odd_names=None, even_names=None):
        check_modulus(p)
        if p == 2:
            raise ValueError("the algebra is defined here for odd primes")
        if m < 1:
            raise ValueError("need at least one generator pair")
        self.p = p
        self.m = m
        self.odd_names = tuple(odd_names) if odd_names else tuple(
            f"a{k}" for k in range(1, m + 1)
        )
        self.even_names = tuple(even_names) if even_names else tuple(
            f"x{k}" for k in range(1, m + 1)
        )
        if len(self.odd_names) != m or len(self.even_names) != m:
            raise ValueError("generator name lists must have length m")
        if set(self.odd_names) & set(self.even_names):
            raise ValueError("odd and even generator names must be disjoint")
        self._odd_index = {n: k for k, n in enumerate(self.odd_names, start=1)}
        self._even_index = {n: k for k, n in enumerate(self.even_names, start=1)}

    @classmethod
    def bv(cls, p: int, l: int) -> CohAlgebra:
        """The algebra for a rank-2l elementary abelian group: pair 2k-1 is
        (a_k, xi_k) and pair 2k is (b_k, eta_k)."""
        odd, even = [], []
        for k in range(1, l + 1):
            odd += [f"a{k}", f"b{k}"]
            even += [f"xi{k}", f"eta{k}"]
        return cls(p, 2 * l, odd_names=odd, even_names=even)

    def __eq__(self, other):
        if isinstance(other, CohAlgebra):
            return (
                self.p == other.p
                and self.m == other.m
                and self.odd_names == other.odd_names
                and self.even_names == other.even_names
            )
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.m, self.odd_names, self.even_names))

    def __repr__(self):
        return f"CohAlgebra(p={self.p}, m={self.m})"

    def zero(self) -> CohClass:
        return CohClass._raw(self, {})

    def one(self) -> CohClass:
        return self.constant(1)

    def constant(self, c: int) -> CohClass:
        c %= self.p
        if not c:
            return self.zero()
        return CohClass._raw(self, {((), (0,) * self.m): c})

    def odd_gen(self, k: int) -> CohClass:
        """a_k, 1-based."""
        if not 1 <= k <= self.m:
            raise ValueError(f"odd generator index {k} out of range")
        return CohClass._raw(self, {((k,), (0,) * self.m): 1})

    def even_gen(self, k: int) -> CohClass:
        """x_k, 1-based."""
        if not 1 <= k <= self.m:
            raise ValueError(f"even generator index {k} out of range")
        exps = [0] * self.m
        exps[k - 1] = 1
        return CohClass._raw(self, {((), tuple(exps)): 1})

    def term(self, odd, even, coeff: int = 1) -> CohClass:
        return CohClass(self, {(tuple(odd), tuple(even)): coeff})


def _merge_odd(s1: tuple, s2: tuple):
    """Merge two sorted exterior index tuples: (sign, merged) or None if a
    generator repeats."""
    if not s1:
        return 1, s2
    if not s2:
        return 1, s1
    if set(s1) & set(s2):
        return None
    crossings = 0
    merged = []
    i = j = 0
    while i < len(s1) and j < len(s2):
        if s1[i] < s2[j]:
            merged.append(s1[i])
            i += 1
        else:
            merged.append(s2[j])
            crossings += len(s1) - i
            j += 1
    merged.extend(s1[i:])
    merged.extend(s2[j:])
    return (-1 if crossings % 2 else 1), tuple(merged)


class CohClass:
    """An element of the algebra, a finite sum of signed monomial terms.

    A term is (S, e): S a sorted tuple of exterior indices, e the exponent
    vector of the polynomial part.  Topological degree: |S| + 2*sum(e).
    Classes may be inhomogeneous; operations act per homogeneous component.
    """

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: CohAlgebra, terms: dict):
        p = algebra.p
        m = algebra.m
        clean = {}
        for (odd, even), c in terms.items():
            odd = tuple(odd)
            even = tuple(even)
            if len(set(odd)) != len(odd) or tuple(sorted(odd)) != odd:
                raise ValueError(f"exterior part {odd} must be strictly increasing")
            if odd and not (1 <= odd[0] and odd[-1] <= m):
                raise ValueError(f"exterior index out of range in {odd}")
            if len(even) != m or any(e < 0 for e in even):
                raise ValueError(f"bad polynomial exponents {even}")
            c %= p
            if c:
                clean[(odd, even)] = c
        self.algebra = algebra
        self.terms = clean

    @staticmethod
    def _raw(algebra: CohAlgebra, terms: dict) -> CohClass:
        x = object.__new__(CohClass)
        x.algebra = algebra
        x.terms = terms
        return x

    def _check(self, other: CohClass):
        if self.algebra != other.algebra:
            raise ContextMismatch(f"{self.algebra!r} vs {other.algebra!r}")

    def __add__(self, other):
        if isinstance(other, int):
            other = self.algebra.constant(other)
        if not isinstance(other, CohClass):
            return NotImplemented
        self._check(other)
        p = self.algebra.p
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = (out.get(key, 0) + c) % p
            if v:
                out[key] = v
            elif key in out:
                del out[key]
        return CohClass._raw(self.algebra, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.algebra.p
        return CohClass._raw(self.algebra, {k: p - c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = self.algebra.constant(other)
        if not isinstance(other, CohClass):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            c = other % self.algebra.p
            if not c:
                return self.algebra.zero()
            p = self.algebra.p
            return CohClass._raw(
                self.algebra, {k: (v * c) % p for k, v in self.terms.items()}
            )
        if not isinstance(other, CohClass):
            return NotImplemented
        self._check(other)
        p = self.algebra.p
        out: dict = {}
        for (s1, e1), c1 in self.terms.items():
            for (s2, e2), c2 in other.terms.items():
                merged = _merge_odd(s1, s2)
                if merged is None:
                    continue
                sign, odd = merged
                even = tuple(a + b for a, b in zip(e1, e2))
                key = (odd, even)
                v = (out.get(key, 0) + sign * c1 * c2) % p
                if v:
                    out[key] = v
                elif key in out:
                    del out[key]
        return CohClass._raw(self.algebra, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            raise ValueError("negative power")
        out = self.algebra.one()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.algebra.constant(other)
        if not isinstance(other, CohClass):
            return NotImplemented
        return self.algebra == other.algebra and self.terms == other.terms

    def __hash__(self):
        return hash((self.algebra, frozenset(self.terms.items())))

    def is_zero(self) -> bool:
        return not self.terms

    # -- grading ---------------------------------------------------------

    def degrees(self) -> set:
        return {len(odd) + 2 * sum(even) for (odd, even) in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self):
        """Topological degree if homogeneous and nonzero, else None."""
        degs = self.degrees()
        return degs.pop() if len(degs) == 1 else None

    def graded_part(self, d: int) -> CohClass:
        return CohClass._raw(
            self.algebra,
            {
                key: c
                for key, c in self.terms.items()
                if len(key[0]) + 2 * sum(key[1]) == d
            },
        )

    def homogeneous_parts(self) -> dict:
        parts: dict = {}
        for key, c in self.terms.items():
            parts.setdefault(len(key[0]) + 2 * sum(key[1]), {})[key] = c
        return {
            d: CohClass._raw(self.algebra, t) for d, t in sorted(parts.items())
        }

    # -- text --------------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        alg = self.algebra

        def sort_key(key):
            odd, even = key
            return (len(odd) + 2 * sum(even), grlex_key(even), odd)

        bits = []
        for odd, even in sorted(self.terms, key=sort_key, reverse=True):
            c = self.terms[(odd, even)]
            factors = []
            if c != 1 or (not odd and not any(even)):
                factors.append(str(c))
            factors += [alg.odd_names[k - 1] for k in odd]
            for name, e in zip(alg.even_names, even):
                if e == 1:
                    factors.append(name)
                elif e > 1:
                    factors.append(f"{name}^{e}")
            bits.append("*".join(factors))
        return " + ".join(bits)

    def __repr__(self):
        return f"<CohClass {self.to_text()} (p={self.algebra.p})>"


# -- operations -------------------------------------------------------------


def bockstein(x: CohClass) -> CohClass:
    """The degree-(+1) differential: a_k -> x_k, x_k -> 0, extended as a
    derivation with the Koszul sign."""
    alg = x.algebra
    p = alg.p
    out: dict = {}
    for (odd, even), c in x.terms.items():
        for pos, k in enumerate(odd):
            sign = -1 if pos % 2 else 1
            new_odd = odd[:pos] + odd[pos + 1 :]
            new_even = list(even)
            new_even[k - 1] += 1
            key = (new_odd, tuple(new_even))
            v = (out.get(key, 0) + sign * c) % p
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    return CohClass._raw(alg, out)


def _binom_support(e: int, p: int):
    """All (k, C(e,k) mod p) with a nonzero binomial, via base-p digits."""
    digits = []
    rest = e
    while rest:
        rest, d = divmod(rest, p)
        digits.append(d)
    if not digits:
        yield 0, 1
        return
    from math import comb

    choices = [
        [(c, comb(d, c) % p) for c in range(d + 1)] for d in digits
    ]
    for picks in product(*choices):
        k = 0
        coeff = 1
        for pos, (c, b) in enumerate(picks):
            k += c * p**pos
            coeff = coeff * b % p
        yield k, coeff


def total_power(x: CohClass) -> CohClass:
    """The total reduced-power operation: the ring endomorphism fixing the
    exterior generators and sending each even generator t to t + t^p."""
    alg = x.algebra
    p = alg.p
    out: dict = {}
    for (odd, even), c in x.terms.items():
        options = []
        for e in even:
            if e:
                options.append(list(_binom_support(e, p)))
            else:
                options.append([(0, 1)])
        for picks in product(*options):
            coeff = c
            new_even = []
            for e, (k, b) in zip(even, picks):
                coeff = coeff * b % p
                new_even.append(e + k * (p - 1))
            if not coeff:
                continue
            key = (odd, tuple(new_even))
            v = (out.get(key, 0) + coeff) % p
            if v:
                out[key] = v
            elif key in out:
                del out[key]
    return CohClass._raw(alg, out)


def power_op(k: int, x: CohClass) -> CohClass:
    """The k-th reduced power: the component of the total operation raising
    topological degree by 2k(p-1), taken per homogeneous component."""
    if k < 0:
        raise ValueError("negative power operation index")
    if k == 0:
        return x
    p = x.algebra.p
    out = x.algebra.zero()
    for d, part in x.homogeneous_parts().items():
        out = out + total_power(part).graded_part(d + 2 * k * (p - 1))
    return out


class OperationWord:
    """A composite of Bockstein and reduced-power tokens, e.g. the words that
    appear when the Milnor recursion is unrolled.

    Tokens read left to right as written ("P^3 beta" means apply the
    Bockstein first, then the cube power operation); each token is the
    string "beta" or "P^k" with k >= 0.
    """

    __slots__ = ("tokens",)

    def __init__(self, tokens):
        parsed = []
        for tok in tokens:
            if tok == "beta":
                parsed.append(("beta", 0))
            elif isinstance(tok, str) and tok.startswith("P^"):
                k = int(tok[2:])
                if k < 0:
                    raise ValueError(f"negative power token {tok!r}")
                parsed.append(("P", k))
            else:
                raise ValueError(f"unknown operation token {tok!r}")
        self.tokens = tuple(parsed)

    def apply(self, x: CohClass) -> CohClass:
        for kind, k in reversed(self.tokens):
            x = bockstein(x) if kind == "beta" else power_op(k, x)
        return x

    def __repr__(self):
        bits = ["beta" if kind == "beta" else f"P^{k}" for kind, k in self.tokens]
        return f"OperationWord({' '.join(bits)})"


def milnor_q(i: int, x: CohClass) -> CohClass:
    """The i-th Milnor primitive via the recursion
    Q_0 = Bockstein, Q_i = P^{p^{i-1}} Q_{i-1} - Q_{i-1} P^{p^{i-1}}."""
    if i < 0:
        raise ValueError("negative Milnor index")
    if i > MAX_MILNOR_INDEX:
        raise DepthGuard(f"Milnor index {i} exceeds the depth guard {MAX_MILNOR_INDEX}")
    if i == 0:
        return bockstein(x)
    k = x.algebra.p ** (i - 1)
    return power_op(k, milnor_q(i - 1, x)) - milnor_q(i - 1, power_op(k, x))


def x_class(p: int, l: int) -> CohClass:
    """sum_j a_j eta_j - xi_j b_j: the canonical degree-3 class of BV^{2l}."""
    if l < 1:
        raise ValueError("l must be >= 1")
    alg = CohAlgebra.bv(p, l)
    out = alg.zero()
    for j in range(1, l + 1):
        a_slot, b_slot = 2 * j - 1, 2 * j
        eta = [0] * alg.m
        eta[b_slot - 1] = 1
        xi = [0] * alg.m
        xi[a_slot - 1] = 1
        out = out + alg.term((a_slot,), eta) - alg.term((b_slot,), xi)
    return out


def r_closed(p: int, i: int, l: int) -> CohClass:
    """sum_j xi_j^{p^i} eta_j - xi_j eta_j^{p^i}: the closed form of the i-th
    Milnor primitive applied to the canonical degree-3 class."""
    if i < 0:
        raise ValueError("i must be >= 0")
    if l < 1:
        raise ValueError("l must be >= 1")
    alg = CohAlgebra.bv(p, l)
    q = p**i
    out = alg.zero()
    for j in range(1, l + 1):
        xi_slot, eta_slot = 2 * j - 1, 2 * j
        hi = [0] * alg.m
        hi[xi_slot - 1] = q
        hi[eta_slot - 1] = 1
        lo = [0] * alg.m
        lo[xi_slot - 1] = 1
        lo[eta_slot - 1] = q
        out = out + alg.term((), hi) - alg.term((), lo)
    return out


def even_to_poly(x: CohClass, ring: PolyRing | None = None) -> Poly:
    """Rewrite a purely even class as a polynomial with degrees halved."""
    alg = x.algebra
    if ring is None:
        ring = PolyRing(alg.p, alg.even_names)
    if ring.arity != alg.m or ring.p != alg.p:
        raise ContextMismatch("target ring does not match the even generators")
    terms: dict = {}
    for (odd, even), c in x.terms.items():
        if odd:
            raise OddPartPresent(f"term with exterior factors {odd}")
        terms[even] = c
    return Poly(ring, terms)


def poly_to_even(f: Poly, algebra: CohAlgebra) -> CohClass:
    """The evident inverse embedding of even polynomials."""
    if f.ring.arity != algebra.m or f.ring.p != algebra.p:
        raise ContextMismatch("polynomial ring does not match the even generators")
    return CohClass(algebra, {((), m): c for m, c in f.terms.items()})


def parse_class(text: str, algebra: CohAlgebra) -> CohClass:
    """Parse the polynomial grammar extended with the exterior generators;
    squares of exterior generators parse to zero."""
    s = text
    n = len(s)
    pos = 0
    p = algebra.p

    def skip_ws():
        nonlocal pos
        while pos < n and s[pos] in " \t":
            pos += 1

    def read_int() -> int:
        nonlocal pos
        start = pos
        while pos < n and s[pos].isdigit():
            pos += 1
        if pos == start:
            raise ParseError("expected a number", start)
        return int(s[start:pos])

    def read_name() -> str:
        nonlocal pos
        start = pos
        if pos >= n or not (s[pos].isalpha() or s[pos] == "_"):
            raise ParseError("expected a generator name", pos)
        pos += 1
        while pos < n and (s[pos].isalnum() or s[pos] == "_"):
            pos += 1
        return s[start:pos]

    def read_term() -> CohClass:
        nonlocal pos
        acc = algebra.one()
        first = True
        while True:
            skip_ws()
            if pos < n and s[pos].isdigit():
                if not first:
                    raise ParseError("coefficient must come first in a term", pos)
                acc = acc * read_int()
            else:
                start = pos
                name = read_name()
                e = 1
                if pos < n and s[pos] == "^":
                    pos += 1
                    e = read_int()
                if name in algebra._odd_index:
                    gen = algebra.odd_gen(algebra._odd_index[name])
                elif name in algebra._even_index:
                    gen = algebra.even_gen(algebra._even_index[name])
                else:
                    raise ParseError(f"unknown generator {name!r}", start)
                acc = acc * gen**e
            first = False
            save = pos
            skip_ws()
            if pos < n and s[pos] == "*":
                pos += 1
                continue
            pos = save
            return acc

    skip_ws()
    if pos == n:
        raise ParseError("empty input", pos)
    total = algebra.zero()
    sign = 1
    if s[pos] in "+-":
        sign = -1 if s[pos] == "-" else 1
        pos += 1
    while True:
        skip_ws()
        term = read_term()
        total = total + term * sign
        skip_ws()
        if pos == n:
            break
        if s[pos] == "+":
            sign = 1
        elif s[pos] == "-":
            sign = -1
        else:
            raise ParseError(f"expected '+' or '-', found {s[pos]!r}", pos)
        pos += 1
    return total


# -- verification -------------------------------------------------------------


def verify_jacobian_independence(p: int, l: int) -> VerificationReport:
    """The closed forms r_1..r_{2l} have a nonzero Jacobian determinant with
    respect to (xi_1, eta_1, ..., xi_l, eta_l)."""
    from .poly import jacobian_det

    checks = []

    def run():
        ring = PolyRing(p, CohAlgebra.bv(p, l).even_names)
        rs = [even_to_poly(r_closed(p, i, l), ring) for i in range(1, 2 * l + 1)]
        det = jacobian_det(rs, range(2 * l))
        if det.is_zero():
            return False, "Jacobian determinant vanished"
        return True, f"nonzero, degree {det.degree()}"

    checks.append(timed_check("jacobian-nonzero", run))
    return VerificationReport(
        suite="steenrod", params={"p": p, "l": l}, checks=checks
    )


def random_homogeneous(rng, algebra: CohAlgebra, max_even_exp: int = 4) -> CohClass:
    """A small random homogeneous class, for property checks."""
    m = algebra.m
    for _ in range(64):
        odd = tuple(sorted(rng.sample(range(1, m + 1), rng.randrange(0, min(m, 2) + 1))))
        even = tuple(rng.randrange(0, max_even_exp + 1) for _ in range(m))
        degree = len(odd) + 2 * sum(even)
        if degree:
            break
    terms = {(odd, even): rng.randrange(1, algebra.p)}
    # sometimes add a second term of the same degree
    if rng.random() < 0.5:
        for _ in range(16):
            odd2 = tuple(
                sorted(rng.sample(range(1, m + 1), rng.randrange(0, min(m, 2) + 1)))
            )
            budget = degree - len(odd2)
            if budget < 0 or budget % 2:
                continue
            half = budget // 2
            cuts = sorted(rng.randrange(0, half + 1) for _ in range(m - 1))
            even2 = tuple(
                b - a for a, b in zip([0] + cuts, cuts + [half])
            )
            key = (odd2, even2)
            if key not in terms:
                terms[key] = rng.randrange(1, algebra.p)
                break
    return CohClass(algebra, terms)


def verify_steenrod(p: int, l: int, trials: int = 200, seed: int = 0) -> VerificationReport:
    """Closed forms of the Milnor primitives plus the structural laws:
    the Bockstein squares to zero, Q_i are anticommuting derivations, the
    total power is a ring endomorphism, and P^0 is the identity."""
    import random as _random

    alg = CohAlgebra.bv(p, l)
    rng = _random.Random(seed)
    checks = []

    def closed_form(i):
        def run():
            lhs = milnor_q(i, x_class(p, l))
            rhs = r_closed(p, i, l)
            return lhs == rhs

        return run

    for i in range(5):
        checks.append(timed_check(f"milnor-closed-form-q{i}", closed_form(i)))

    def bockstein_squared():
        for _ in range(trials):
            x = random_homogeneous(rng, alg)
            if not bockstein(bockstein(x)).is_zero():
                return False, f"failed on {x.to_text()}"
        return True, f"{trials} random classes"

    checks.append(timed_check("bockstein-squared", bockstein_squared))

    def derivations():
        for t in range(trials):
            x = random_homogeneous(rng, alg, max_even_exp=2)
            y = random_homogeneous(rng, alg, max_even_exp=2)
            sign = -1 if x.degree() % 2 else 1
            for i in range(4):
                lhs = milnor_q(i, x * y)
                rhs = milnor_q(i, x) * y + x * milnor_q(i, y) * sign
                if lhs != rhs:
                    return False, f"Q_{i} not a derivation on pair {t}"
        return True, f"{trials} random homogeneous pairs, Q_0..Q_3"

    checks.append(timed_check("milnor-derivation", derivations))

    def anticommute():
        for t in range(trials // 4 or 1):
            x = random_homogeneous(rng, alg, max_even_exp=2)
            for i in range(4):
                if not milnor_q(i, milnor_q(i, x)).is_zero():
                    return False, f"Q_{i}^2 != 0 on class {t}"
                for j in range(i + 1, 4):
                    anti = milnor_q(i, milnor_q(j, x)) + milnor_q(j, milnor_q(i, x))
                    if not anti.is_zero():
                        return False, f"Q_{i}Q_{j} + Q_{j}Q_{i} != 0 on class {t}"
        return True, "squares and anticommutators vanish, Q_0..Q_3"

    checks.append(timed_check("milnor-anticommute", anticommute))

    def total_hom():
        for t in range(trials):
            x = random_homogeneous(rng, alg, max_even_exp=3)
            y = random_homogeneous(rng, alg, max_even_exp=3)
            if total_power(x * y) != total_power(x) * total_power(y):
                return False, f"multiplicativity failed on pair {t}"
            if power_op(0, x) != x:
                return False, "P^0 is not the identity"
        return True, f"{trials} random pairs"

    checks.append(timed_check("total-power-endomorphism", total_hom))
    return VerificationReport(
        suite="steenrod",
        params={"p": p, "l": l, "trials": trials},
        checks=checks,
        seed=seed,
    )
