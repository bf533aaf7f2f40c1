"""Exact arithmetic in the Weyl algebra: normal-ordered differential
operators with rational polynomial coefficients in n variables.

An operator is stored as a sparse map (alpha, beta) -> Fraction meaning
sum c * x^alpha * d^beta with every x to the left of every d (normal
order).  All arithmetic is exact; two operators are equal iff their term
maps are equal.
"""

from __future__ import annotations

import json
import math
import re
from fractions import Fraction
from itertools import product
from typing import Iterable, Iterator

MultiIndex = tuple[int, ...]
TermKey = tuple[MultiIndex, MultiIndex]


def index_sum(alpha: MultiIndex) -> int:
    return sum(alpha)


def index_max(alpha: MultiIndex) -> int:
    return max(alpha)


def term_order_key(key: TermKey):
    """Graded order: total degree first, then lex with the x-block
    sorting ahead of the d-block (so x1 precedes d1)."""
    alpha, beta = key
    return (sum(alpha) + sum(beta), tuple(-e for e in alpha + beta))


class DimensionMismatch(ValueError):
    pass


class WeylOp:
    """Normal-ordered differential operator sum c_{ab} x^a d^b."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[TermKey, Fraction] | None = None):
        if n < 1:
            raise ValueError(f"dimension must be >= 1, got {n}")
        clean: dict[TermKey, Fraction] = {}
        for (alpha, beta), c in (terms or {}).items():
            if len(alpha) != n or len(beta) != n:
                raise ValueError("multi-index length does not match dimension")
            c = Fraction(c)
            if c:
                clean[(tuple(alpha), tuple(beta))] = c
        self.n = n
        self.terms = clean

    # -- constructors ---------------------------------------------------

    @classmethod
    def zero(cls, n: int) -> "WeylOp":
        return cls(n, {})

    @classmethod
    def one(cls, n: int) -> "WeylOp":
        z = (0,) * n
        return cls(n, {(z, z): Fraction(1)})

    @classmethod
    def x(cls, i: int, n: int) -> "WeylOp":
        """The multiplication operator x_i (1-based index)."""
        cls._check_index(i, n)
        a = tuple(1 if j == i - 1 else 0 for j in range(n))
        return cls(n, {(a, (0,) * n): Fraction(1)})

    @classmethod
    def d(cls, i: int, n: int) -> "WeylOp":
        """The derivation d/dx_i (1-based index)."""
        cls._check_index(i, n)
        b = tuple(1 if j == i - 1 else 0 for j in range(n))
        return cls(n, {((0,) * n, b): Fraction(1)})

    @classmethod
    def monomial(cls, n: int, alpha: Iterable[int], beta: Iterable[int],
                 c=1) -> "WeylOp":
        return cls(n, {(tuple(alpha), tuple(beta)): Fraction(c)})

    @staticmethod
    def _check_index(i: int, n: int) -> None:
        if not 1 <= i <= n:
            raise IndexError(f"generator index {i} out of range 1..{n}")

    # -- basic structure ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Bernstein-filtration degree max(|a|+|b|); -1 for the zero op."""
        if not self.terms:
            return -1
        return max(sum(a) + sum(b) for a, b in self.terms)

    def sorted_terms(self) -> list[tuple[TermKey, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: term_order_key(kv[0]))

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def _require_same_dim(self, other: "WeylOp") -> None:
        if self.n != other.n:
            raise DimensionMismatch(f"dimensions differ: {self.n} vs {other.n}")

    # -- ring operations ------------------------------------------------

    def __add__(self, other: "WeylOp") -> "WeylOp":
        self._require_same_dim(other)
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, Fraction(0)) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return WeylOp(self.n, out)

    def __neg__(self) -> "WeylOp":
        return WeylOp(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "WeylOp") -> "WeylOp":
        return self + (-other)

    def scale(self, c) -> "WeylOp":
        c = Fraction(c)
        if not c:
            return WeylOp.zero(self.n)
        return WeylOp(self.n, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c) -> "WeylOp":
        return self.scale(c)

    def __mul__(self, other) -> "WeylOp":
        if not isinstance(other, WeylOp):
            return self.scale(other)
        return multiply(self, other)

    def transpose(self) -> "WeylOp":
        """Formal adjoint: x^a d^b -> (-d)^b x^a, re-normal-ordered."""
        out = WeylOp.zero(self.n)
        for (alpha, beta), c in self.terms.items():
            sign = -1 if sum(beta) % 2 else 1
            db = WeylOp(self.n, {((0,) * self.n, beta): Fraction(sign * c)})
            xa = WeylOp(self.n, {(alpha, (0,) * self.n): Fraction(1)})
            out = out + multiply(db, xa)
        return out

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "terms": [
                {"c": str(c), "a": list(a), "b": list(b)}
                for (a, b), c in self.sorted_terms()
            ],
        }

    @classmethod
    def from_json(cls, data: dict) -> "WeylOp":
        n = int(data["n"])
        terms: dict[TermKey, Fraction] = {}
        for t in data["terms"]:
            key = (tuple(int(e) for e in t["a"]), tuple(int(e) for e in t["b"]))
            terms[key] = terms.get(key, Fraction(0)) + Fraction(t["c"])
        return cls(n, terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (alpha, beta), c in self.sorted_terms():
            factors = []
            for i, e in enumerate(alpha):
                if e == 1:
                    factors.append(f"x{i + 1}")
                elif e > 1:
                    factors.append(f"x{i + 1}^{e}")
            for i, e in enumerate(beta):
                if e == 1:
                    factors.append(f"d{i + 1}")
                elif e > 1:
                    factors.append(f"d{i + 1}^{e}")
            body = " ".join(factors)
            if not body:
                text = str(abs(c))
            elif abs(c) == 1:
                text = body
            else:
                text = f"{abs(c)} {body}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    __repr__ = __str__


# -- products and normal ordering ---------------------------------------


def _reorder_1d(b: int, a: int) -> list[tuple[int, int, int]]:
    """d^b x^a = sum_k C(b,k) * a!/(a-k)! * x^(a-k) d^(b-k)."""
    out = []
    for k in range(min(a, b) + 1):
        out.append((math.comb(b, k) * math.perm(a, k), a - k, b - k))
    return out


def multiply(P: WeylOp, Q: WeylOp) -> WeylOp:
    """Noncommutative product P*Q in normal order."""
    P._require_same_dim(Q)
    n = P.n
    out: dict[TermKey, Fraction] = {}
    for (a1, b1), c1 in P.terms.items():
        for (a2, b2), c2 in Q.terms.items():
            c12 = c1 * c2
            per_coord = [_reorder_1d(b1[i], a2[i]) for i in range(n)]
            for choice in product(*per_coord):
                coeff = c12
                alpha = []
                beta = []
                for i, (m, ax, bx) in enumerate(choice):
                    coeff *= m
                    alpha.append(a1[i] + ax)
                    beta.append(bx + b2[i])
                key = (tuple(alpha), tuple(beta))
                s = out.get(key, Fraction(0)) + coeff
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
    return WeylOp(n, out)


def normal_order(n: int, word: Iterable[tuple[str, int]], c=1) -> WeylOp:
    """Fold a word of generators ('x'|'d', index) into canonical form."""
    op = WeylOp.one(n).scale(c)
    for kind, i in word:
        if kind == "x":
            op = multiply(op, WeylOp.x(i, n))
        elif kind == "d":
            op = multiply(op, WeylOp.d(i, n))
        else:
            raise ValueError(f"unknown generator kind {kind!r}")
    return op


# -- division by the theta operators d_i x_i ----------------------------


def theta(i: int, n: int) -> WeylOp:
    """d_i x_i = x_i d_i + 1 in normal order."""
    return multiply(WeylOp.d(i, n), WeylOp.x(i, n))


def divide_by_theta(P: WeylOp) -> tuple[list[WeylOp], WeylOp]:
    """Write P = Q_1 d_1 x_1 + ... + Q_n d_n x_n + R where every term
    (a, b) of R has a_i * b_i = 0 for all i.

    Rewrites x^a d^b = x^(a-e_i) d^(b-e_i) (d_i x_i) - b_i x^(a-e_i) d^(b-e_i)
    scanning coordinates in order, so quotients are reproducible.
    """
    n = P.n
    quotients: list[dict[TermKey, Fraction]] = [{} for _ in range(n)]
    remainder: dict[TermKey, Fraction] = {}
    work = dict(P.terms)
    while work:
        key = min(work, key=term_order_key)
        c = work.pop(key)
        alpha, beta = key
        pivot = next((i for i in range(n) if alpha[i] >= 1 and beta[i] >= 1),
                     None)
        if pivot is None:
            s = remainder.get(key, Fraction(0)) + c
            if s:
                remainder[key] = s
            else:
                remainder.pop(key, None)
            continue
        a2 = tuple(e - 1 if i == pivot else e for i, e in enumerate(alpha))
        b2 = tuple(e - 1 if i == pivot else e for i, e in enumerate(beta))
        q = quotients[pivot]
        s = q.get((a2, b2), Fraction(0)) + c
        if s:
            q[(a2, b2)] = s
        else:
            q.pop((a2, b2), None)
        leftover = -c * beta[pivot]
        if leftover:
            s = work.get((a2, b2), Fraction(0)) + leftover
            if s:
                work[(a2, b2)] = s
            else:
                work.pop((a2, b2), None)
    return [WeylOp(n, q) for q in quotients], WeylOp(n, remainder)


# -- monomial enumeration ----------------------------------------------


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _compositions(total - head, parts - 1):
            yield (head,) + rest


def monomials_up_to(n: int, d: int) -> list[WeylOp]:
    """All normal-ordered monomials x^a d^b with |a|+|b| <= d, in the
    fixed graded order."""
    if d < 0:
        raise ValueError("degree bound must be >= 0")
    keys: list[TermKey] = []
    for deg in range(d + 1):
        for combined in _compositions(deg, 2 * n):
            keys.append((combined[:n], combined[n:]))
    keys.sort(key=term_order_key)
    return [WeylOp.monomial(n, a, b) for a, b in keys]


# -- text grammar -------------------------------------------------------

_FACTOR_RE = re.compile(r"^(x|d)(\d+)(?:\^(\d+))?$")
_NUM_RE = re.compile(r"^-?\d+(?:/\d+)?$")


def parse(text: str, n: int) -> WeylOp:
    """Parse the rendered operator grammar, e.g. "x1^2 d1 + 2 x1 - 3/2".

    Factors inside a term are multiplied in written order and normal
    ordered, so non-canonical words like "d1 x1" are accepted too.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty operator text")
    if text == "0":
        return WeylOp.zero(n)
    tokens = re.findall(r"[+-]|[^+\-\s*]+", text)
    if not tokens or tokens[-1] in "+-":
        raise ValueError(f"cannot parse operator text: {text!r}")

    op = WeylOp.zero(n)
    coeff = Fraction(1)
    word: list[tuple[str, int]] = []
    seen_factor = False

    def flush():
        nonlocal op
        if seen_factor:
            op = op + normal_order(n, word, coeff)

    for tok in tokens:
        if tok in "+-":
            flush()
            coeff = Fraction(-1 if tok == "-" else 1)
            word = []
            seen_factor = False
            continue
        m = _FACTOR_RE.match(tok)
        if m:
            kind, idx, exp = m.group(1), int(m.group(2)), m.group(3)
            WeylOp._check_index(idx, n)
            word.extend([(kind, idx)] * (int(exp) if exp else 1))
        elif _NUM_RE.match(tok):
            coeff *= Fraction(tok)
        else:
            raise ValueError(f"bad factor {tok!r} in operator text")
        seen_factor = True
    flush()
    return op
