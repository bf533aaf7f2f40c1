"""Laurent expansion of (x_1 ... x_n)_+^lam at lam = -1, with exact
distribution coefficients.

The expansion is computed two independent ways: as a truncated series
product of one-variable expansions summed over the even-sign set, and by
the direct tensor formula for each coefficient.  Both routes share the
same one-variable building block h_j.
"""

from __future__ import annotations

import json
from fractions import Fraction
from itertools import product
from math import factorial

from .dist import Atom, Delta, Dist, Pf, apply, reflect_atom
from .weyl import WeylOp, multiply

SignVector = tuple[int, ...]


def sign_set(n: int) -> list[SignVector]:
    """All sign vectors in {1,-1}^n with product +1, in product order."""
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    out = []
    for sigma in product((1, -1), repeat=n):
        p = 1
        for s in sigma:
            p *= s
        if p == 1:
            out.append(sigma)
    return out


def h_atom(j: int, side: int) -> tuple[Fraction, Atom]:
    """The one-variable coefficient h_j as coeff * atom: delta for j = 0,
    Pf(-1, j-1, side)/(j-1)! for j >= 1."""
    if j == 0:
        return (Fraction(1), Delta(0))
    return (Fraction(1, factorial(j - 1)), Pf(-1, j - 1, side))


class LaurentDist:
    """Truncated Laurent series in eps = lam + 1 with Dist coefficients,
    degrees -n .. J."""

    __slots__ = ("n", "J", "coeffs")

    def __init__(self, n: int, J: int, coeffs: dict[int, Dist] | None = None):
        if n < 1:
            raise ValueError(f"dimension must be >= 1, got {n}")
        if J < 0:
            raise ValueError(f"truncation order must be >= 0, got {J}")
        clean: dict[int, Dist] = {}
        for d, u in (coeffs or {}).items():
            if not -n <= d <= J:
                raise ValueError(f"degree {d} outside [-{n}, {J}]")
            if u.n != n:
                raise ValueError("coefficient dimension mismatch")
            if not u.is_zero():
                clean[d] = u
        self.n = n
        self.J = J
        self.coeffs = clean

    def coeff(self, d: int) -> Dist:
        return self.coeffs.get(d, Dist.zero(self.n))

    def min_degree(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentDist):
            return NotImplemented
        return (self.n, self.J, self.coeffs) == (other.n, other.J, other.coeffs)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "J": self.J,
            "coeffs": {str(d): self.coeff(d).to_json()
                       for d in sorted(self.coeffs)},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def expand_one_var(side: int, J: int) -> LaurentDist:
    """Expansion of (side * t)_+^lam at lam = -1, degrees -1 .. J:
    eps^-1 delta(t) + sum_{j>=1} eps^(j-1) h_j, reflected for side -1."""
    if side not in (1, -1):
        raise ValueError("side must be +1 or -1")
    coeffs: dict[int, Dist] = {-1: Dist.from_atoms([Delta(0)])}
    for j in range(1, J + 2):
        c, atom = h_atom(j, 1)
        if side == -1:
            rc, atom = reflect_atom(atom)
            c *= rc
        coeffs[j - 1] = Dist.from_atoms([atom], c)
    return LaurentDist(1, J, coeffs)


def _tensor_product(series: list[LaurentDist], n: int, J: int) -> LaurentDist:
    """Convolve one-variable truncated series into an n-variable one,
    discarding degrees above J."""
    acc: dict[int, dict[tuple, Fraction]] = {0: {(): Fraction(1)}}
    for idx, s in enumerate(series):
        # factors still to come can each lower the degree by at most 1
        cap = J + (len(series) - idx - 1)
        nxt: dict[int, dict[tuple, Fraction]] = {}
        for d1, terms1 in acc.items():
            for d2, u2 in s.coeffs.items():
                d = d1 + d2
                if d > cap:
                    continue
                bucket = nxt.setdefault(d, {})
                for t1, c1 in terms1.items():
                    for t2, c2 in u2.terms.items():
                        key = t1 + t2
                        v = bucket.get(key, Fraction(0)) + c1 * c2
                        if v:
                            bucket[key] = v
                        else:
                            bucket.pop(key, None)
        acc = nxt
    coeffs = {d: Dist(n, terms) for d, terms in acc.items()
              if any(terms.values())}
    return LaurentDist(n, J, coeffs)


def expand_product(n: int, J: int = 2) -> LaurentDist:
    """Expansion of (x_1 ... x_n)_+^lam at lam = -1 via the sign
    decomposition and one-variable series products."""
    one_var_order = J + n - 1
    plus = expand_one_var(1, one_var_order)
    minus = expand_one_var(-1, one_var_order)
    total: LaurentDist | None = None
    for sigma in sign_set(n):
        factors = [plus if s == 1 else minus for s in sigma]
        term = _tensor_product(factors, n, J)
        if total is None:
            total = term
        else:
            merged = {d: total.coeff(d) + term.coeff(d)
                      for d in set(total.coeffs) | set(term.coeffs)}
            total = LaurentDist(n, J, merged)
    assert total is not None
    return total


def expand_product_direct(n: int, J: int = 2) -> LaurentDist:
    """Same expansion by the per-coefficient tensor formula
    u_{-n+k} = sum over even signs and |alpha| = k of h_alpha(sigma x)."""
    signs = sign_set(n)
    coeffs: dict[int, Dist] = {}
    for k in range(0, n + J + 1):
        u = Dist.zero(n)
        for alpha in _weak_compositions(k, n):
            for sigma in signs:
                c = Fraction(1)
                atoms = []
                for j, s in zip(alpha, sigma):
                    cj, atom = h_atom(j, 1)
                    if s == -1:
                        rc, atom = reflect_atom(atom)
                        cj *= rc
                    c *= cj
                    atoms.append(atom)
                u = u + Dist.from_atoms(atoms, c)
        coeffs[-n + k] = u
    return LaurentDist(n, J, coeffs)


def _weak_compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _weak_compositions(total - head, parts - 1):
            yield (head,) + rest


def shift_check(n: int, k: int) -> bool:
    """True iff d_i x_i u_{-k} = u_{-k-1} exactly for every coordinate i
    (0 <= k <= n-1)."""
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must be in [0, {n - 1}], got {k}")
    series = expand_product(n, 1)
    u_k = series.coeff(-k)
    u_k1 = series.coeff(-k - 1)
    for i in range(1, n + 1):
        theta_i = multiply(WeylOp.d(i, n), WeylOp.x(i, n))
        if apply(theta_i, u_k) != u_k1:
            return False
    return True
