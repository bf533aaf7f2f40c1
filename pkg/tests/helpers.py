"""Shared test utilities: an independent brute-force polynomial action
for checking Weyl operators, and seeded random generators."""

from fractions import Fraction
from random import Random

from nclaurent.weyl import WeylOp, monomials_up_to

# polynomial = dict exponent-tuple -> Fraction


def poly_mul_x(poly, i):
    return {k[:i] + (k[i] + 1,) + k[i + 1:]: c for k, c in poly.items()}


def poly_diff(poly, i):
    out = {}
    for k, c in poly.items():
        if k[i]:
            key = k[:i] + (k[i] - 1,) + k[i + 1:]
            out[key] = out.get(key, Fraction(0)) + c * k[i]
    return {k: c for k, c in out.items() if c}


def op_on_poly(P: WeylOp, poly):
    """Action of a normal-ordered operator on a polynomial, computed
    term by term from first principles."""
    out = {}
    for (alpha, beta), c in P.terms.items():
        q = poly
        for i, e in enumerate(beta):
            for _ in range(e):
                q = poly_diff(q, i)
        for i, e in enumerate(alpha):
            for _ in range(e):
                q = poly_mul_x(q, i)
        for k, qc in q.items():
            s = out.get(k, Fraction(0)) + c * qc
            if s:
                out[k] = s
            else:
                out.pop(k, None)
    return out


def word_on_poly(word, poly, n):
    """Action of a generator word (applied right-to-left) on a polynomial."""
    for kind, i in reversed(list(word)):
        if kind == "x":
            poly = poly_mul_x(poly, i - 1)
        else:
            poly = poly_diff(poly, i - 1)
    return poly


def monomial_family(n, max_exp=3):
    """A spanning family of monomials to compare actions on."""
    from itertools import product
    return [{e: Fraction(1)} for e in product(range(max_exp + 1), repeat=n)]


def random_op(rng: Random, n: int, degree: int, density: float = 0.4,
              coeff_range: int = 3) -> WeylOp:
    op = WeylOp.zero(n)
    for M in monomials_up_to(n, degree):
        if rng.random() < density:
            c = rng.randint(-coeff_range, coeff_range)
            if c:
                op = op + M.scale(c)
    return op
