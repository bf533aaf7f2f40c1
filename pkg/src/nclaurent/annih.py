"""Annihilator generator sets for the Laurent coefficients, exact
verification, and bounded-degree completeness by rational linear algebra.

Completeness of a generator set is checked on the finite slice of
operators with polynomial coefficients and Bernstein degree <= d: a basis
of the annihilator space is computed as a null space over Q, and every
basis element is certified as a member of the left ideal by solving an
exact linear system over generator multiples up to a degree slack.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .dist import Dist, Pf, apply
from .laurent import expand_product
from .weyl import (TermKey, WeylOp, monomials_up_to, multiply, normal_order,
                   term_order_key)

SUBSET_PRODUCT = "subset-product"
EULER_DIFFERENCE = "euler-difference"
TRANSVERSAL_DERIVATIVE = "transversal-derivative"


@dataclass
class GeneratorSet:
    n: int
    ops: list[WeylOp]
    labels: list[str]

    def __iter__(self):
        return iter(self.ops)

    def __len__(self):
        return len(self.ops)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "generators": [
                {"label": lab, "op": str(op), "json": op.to_json()}
                for lab, op in zip(self.labels, self.ops)
            ],
        }


def generators(n: int, k: int) -> GeneratorSet:
    """Generators of the annihilator of u_{-n+k}: all (k+1)-fold
    coordinate products and the Euler differences x1 d1 - xi di."""
    if not 0 <= k <= n - 1:
        raise ValueError(f"k must be in [0, {n - 1}], got {k}")
    ops: list[WeylOp] = []
    labels: list[str] = []
    for subset in combinations(range(1, n + 1), k + 1):
        ops.append(normal_order(n, [("x", j) for j in subset]))
        labels.append(SUBSET_PRODUCT)
    for i in range(2, n + 1):
        euler = (multiply(WeylOp.x(1, n), WeylOp.d(1, n))
                 - multiply(WeylOp.x(i, n), WeylOp.d(i, n)))
        ops.append(euler)
        labels.append(EULER_DIFFERENCE)
    return GeneratorSet(n, ops, labels)


def generators_nc(n: int, m: int, k: int) -> GeneratorSet:
    """Normal-crossing generators in monomialized coordinates: subset
    products and Euler differences over x_1..x_m, plain derivatives in
    the transversal coordinates x_{m+1}..x_n."""
    if not 1 <= m <= n:
        raise ValueError(f"m must be in [1, {n}], got {m}")
    if not 0 <= k <= m - 1:
        raise ValueError(f"k must be in [0, {m - 1}], got {k}")
    ops: list[WeylOp] = []
    labels: list[str] = []
    for subset in combinations(range(1, m + 1), k + 1):
        ops.append(normal_order(n, [("x", j) for j in subset]))
        labels.append(SUBSET_PRODUCT)
    for i in range(2, m + 1):
        euler = (multiply(WeylOp.x(1, n), WeylOp.d(1, n))
                 - multiply(WeylOp.x(i, n), WeylOp.d(i, n)))
        ops.append(euler)
        labels.append(EULER_DIFFERENCE)
    for j in range(m + 1, n + 1):
        ops.append(WeylOp.d(j, n))
        labels.append(TRANSVERSAL_DERIVATIVE)
    return GeneratorSet(n, ops, labels)


def embedded_coefficient(n: int, m: int, k: int) -> Dist:
    """u_{-m+k} of (x_1 ... x_m)_+^lam viewed as a distribution in n
    variables: tensor with the constant 1 = Y(t) + Y(-t) in each
    transversal coordinate."""
    base = expand_product(m, max(0, k - m)).coeff(-m + k)
    if n == m:
        return base
    out = Dist.zero(n)
    tails = [()]
    for _ in range(n - m):
        tails = [t + (Pf(0, 0, s),) for t in tails for s in (1, -1)]
    for tensor, c in base.terms.items():
        for tail in tails:
            out = out + Dist(n, {tensor + tail: c})
    return out


def verify(n: int, k: int, gens: GeneratorSet | None = None,
           u: Dist | None = None) -> bool:
    """True iff every generator applied to u_{-n+k} is exactly zero."""
    if gens is None:
        gens = generators(n, k)
    if u is None:
        u = expand_product(n, 0).coeff(-n + k)
    return all(apply(g, u).is_zero() for g in gens)


def verify_nc(n: int, m: int, k: int) -> bool:
    """Normal-crossing variant against the embedded m-variable
    coefficient."""
    return verify(n, k, generators_nc(n, m, k), embedded_coefficient(n, m, k))


# -- exact linear algebra ----------------------------------------------


def _rref(matrix: list[list[Fraction]]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form in place; returns (matrix, pivot columns)."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if matrix[i][c]), None)
        if pivot is None:
            continue
        matrix[r], matrix[pivot] = matrix[pivot], matrix[r]
        inv = 1 / matrix[r][c]
        matrix[r] = [v * inv for v in matrix[r]]
        for i in range(rows):
            if i != r and matrix[i][c]:
                f = matrix[i][c]
                matrix[i] = [a - f * b for a, b in zip(matrix[i], matrix[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return matrix, pivots


def annihilator_space(u: Dist, d: int) -> list[WeylOp]:
    """Basis of {P : deg P <= d, P u = 0} over Q, via the null space of
    the monomial-to-atom-coefficient matrix, in RREF convention."""
    if d < 0:
        raise ValueError("degree bound must be >= 0")
    mons = monomials_up_to(u.n, d)
    images = [apply(M, u) for M in mons]
    tensors = sorted({t for img in images for t in img.terms},
                     key=lambda t: tuple(map(str, t)))
    tindex = {t: i for i, t in enumerate(tensors)}
    matrix = [[Fraction(0)] * len(mons) for _ in tensors]
    for col, img in enumerate(images):
        for t, c in img.terms.items():
            matrix[tindex[t]][col] = c
    matrix, pivots = _rref(matrix)
    pivot_set = set(pivots)
    basis: list[WeylOp] = []
    for free in range(len(mons)):
        if free in pivot_set:
            continue
        vec = [Fraction(0)] * len(mons)
        vec[free] = Fraction(1)
        for r, p in enumerate(pivots):
            vec[p] = -matrix[r][free]
        op = WeylOp.zero(u.n)
        for i, c in enumerate(vec):
            if c:
                op = op + mons[i].scale(c)
        basis.append(op)
    return basis


class _SparseEchelon:
    """Incremental echelon basis of sparse rational vectors keyed by
    normal-ordered monomials, leading key minimal in the graded order."""

    def __init__(self):
        self.rows: dict[TermKey, dict[TermKey, Fraction]] = {}

    def reduce(self, vec: dict[TermKey, Fraction]) -> dict[TermKey, Fraction]:
        v = dict(vec)
        out: dict[TermKey, Fraction] = {}
        while v:
            key = min(v, key=term_order_key)
            row = self.rows.get(key)
            if row is None:
                out[key] = v.pop(key)
                continue
            c = v.pop(key)
            for k2, c2 in row.items():
                if k2 == key:
                    continue
                s = v.get(k2, Fraction(0)) - c * c2
                if s:
                    v[k2] = s
                else:
                    v.pop(k2, None)
        return out

    def insert(self, vec: dict[TermKey, Fraction]) -> None:
        r = self.reduce(vec)
        if not r:
            return
        lead = min(r, key=term_order_key)
        inv = 1 / r[lead]
        self.rows[lead] = {k: c * inv for k, c in r.items()}

    def contains(self, vec: dict[TermKey, Fraction]) -> bool:
        return not self.reduce(vec)


class IdealSpan:
    """Span of {M * g : g generator, M monomial, deg(M g) <= max_degree},
    supporting exact membership queries."""

    def __init__(self, gens: GeneratorSet, max_degree: int):
        self.n = gens.n
        self.max_degree = max_degree
        self._echelon = _SparseEchelon()
        for g in gens:
            room = max_degree - g.degree()
            if room < 0:
                continue
            for M in monomials_up_to(gens.n, room):
                self._echelon.insert(multiply(M, g).terms)

    def contains(self, P: WeylOp) -> bool:
        if P.is_zero():
            return True
        if P.degree() > self.max_degree:
            raise ValueError("operator degree exceeds span degree bound")
        return self._echelon.contains(P.terms)


def ideal_membership(P: WeylOp, G: GeneratorSet, slack: int = 2) -> bool:
    """True iff P is an exhibited member of the left ideal generated by G
    within degree deg(P) + slack.  False means only "not found within
    slack"; it refutes membership only if P fails to annihilate."""
    if slack < 0:
        raise ValueError("slack must be >= 0")
    if P.is_zero():
        return True
    return IdealSpan(G, P.degree() + slack).contains(P)


@dataclass
class CompletenessReport:
    n: int
    k: int
    degree_bound: int
    slack_used: int
    annihilator_dim: int
    members: int
    unresolved: list[str] = field(default_factory=list)

    @property
    def passes(self) -> bool:
        return not self.unresolved

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "degree_bound": self.degree_bound,
            "slack_used": self.slack_used,
            "annihilator_dim": self.annihilator_dim,
            "members": self.members,
            "unresolved": list(self.unresolved),
            "passes": self.passes,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def completeness_report(n: int, k: int, d: int, slack: int = 2,
                        max_slack: int | None = None) -> CompletenessReport:
    """Certify that every degree <= d annihilating operator of u_{-n+k}
    lies in the ideal generated by the claimed generators, escalating the
    membership slack up to max_slack before reporting an element
    unresolved."""
    if d < 1:
        raise ValueError("degree bound must be >= 1")
    if max_slack is None:
        max_slack = max(slack, 4)
    u = expand_product(n, 0).coeff(-n + k)
    gens = generators(n, k)
    basis = annihilator_space(u, d)
    members = 0
    unresolved: list[str] = []
    slack_used = slack
    spans: dict[int, IdealSpan] = {}
    for P in basis:
        resolved = False
        s = slack
        while s <= max_slack:
            span = spans.get(s)
            if span is None:
                span = spans[s] = IdealSpan(gens, d + s)
            if span.contains(P):
                resolved = True
                slack_used = max(slack_used, s)
                break
            s += 1
        if resolved:
            members += 1
        else:
            unresolved.append(str(P))
    return CompletenessReport(n, k, d, slack_used, len(basis), members,
                              unresolved)
