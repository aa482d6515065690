"""Shared generators and independent oracles for the test suite."""

from functools import reduce

from conjchern.poly import Poly


def random_poly(rng, ring, max_terms=4, max_exp=3):
    """A small random polynomial, possibly zero."""
    terms = {}
    for _ in range(rng.randrange(0, max_terms + 1)):
        mono = tuple(rng.randrange(0, max_exp + 1) for _ in range(ring.arity))
        terms[mono] = rng.randrange(0, ring.p)
    return Poly(ring, terms)


def random_nonzero_poly(rng, ring, max_terms=4, max_exp=3):
    while True:
        f = random_poly(rng, ring, max_terms, max_exp)
        if not f.is_zero():
            return f


def naive_pow(f, e):
    """Repeated-multiplication power, independent of Poly.__pow__."""
    out = f.ring.one()
    for _ in range(e):
        out = out * f
    return out


def naive_compose(f, images, ring):
    """Term-by-term substitution using only multiplication, as an oracle."""
    acc = ring.zero()
    for mono, coeff in f.terms.items():
        term = ring.constant(coeff)
        for i, e in enumerate(mono):
            term = term * naive_pow(images[i], e)
        acc = acc + term
    return acc


def det2(a, b, c, d):
    """Cofactor determinant of [[a, b], [c, d]]: the 2x2 oracle."""
    return a * d - b * c


def naive_product(factors):
    """Left-to-right product, an oracle for tree or graded accumulation."""
    return reduce(lambda x, y: x * y, factors)
