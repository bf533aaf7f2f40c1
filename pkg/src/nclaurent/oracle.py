"""Floating-point verification layer: finite-part quadrature of atom
pairings, contour sampling of the local zeta function, Laurent
coefficient fitting, and symbolic-vs-numeric cross checks.

Test functions are separable polynomial-times-Gaussian, so every atom
pairs absolutely and all Taylor data at 0 is exact rational.  The (0, 1]
piece of each integral is computed after the substitution t = exp(-s),
which absorbs both the power and the log singularity; the Taylor tail of
the integrand is summed from exact coefficients, so the finite-part
subtraction loses no precision near 0.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.integrate import quad

from .dist import Atom, Delta, Dist, Pf
from .laurent import expand_product, sign_set
from .weyl import DimensionMismatch, WeylOp

Poly1 = tuple[Fraction, ...]

QUAD_TARGET = 1e-12
ATOM_ERROR_BOUND = 1e-10
TAYLOR_ORDER = 80


class QuadratureError(RuntimeError):
    """Raised when a quadrature cannot reach the target error bound."""

    def __init__(self, message: str, achieved: float):
        super().__init__(f"{message} (achieved error bound {achieved:.3e})")
        self.achieved = achieved


def _poly(coeffs) -> Poly1:
    p = tuple(Fraction(c) for c in coeffs)
    while len(p) > 1 and p[-1] == 0:
        p = p[:-1]
    return p


def poly_mirror(p: Poly1) -> Poly1:
    """p(-t)."""
    return tuple(c if i % 2 == 0 else -c for i, c in enumerate(p))


def _poly_eval_float(coeffs: tuple[float, ...], t: float) -> float:
    acc = 0.0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


@lru_cache(maxsize=None)
def gaussian_taylor(p: Poly1, order: int = TAYLOR_ORDER) -> Poly1:
    """Exact Taylor coefficients of p(t) exp(-t^2) up to t^order."""
    out = [Fraction(0)] * (order + 1)
    for i in range(0, order // 2 + 1):
        g = Fraction((-1) ** i, math.factorial(i))
        for k, c in enumerate(p):
            if 2 * i + k <= order:
                out[2 * i + k] += g * c
    return tuple(out)


def phi_deriv0(p: Poly1, i: int) -> Fraction:
    """Exact i-th derivative of p(t) exp(-t^2) at t = 0."""
    taylor = gaussian_taylor(p)
    if i > len(taylor) - 1:
        raise ValueError("derivative order beyond cached Taylor expansion")
    return taylor[i] * math.factorial(i)


@dataclass(frozen=True)
class TestFunction:
    """Separable test function prod_i p_i(x_i) exp(-x_i^2) with exact
    rational polynomial parts."""

    polys: tuple[Poly1, ...]

    __test__ = False  # not a pytest class despite the name

    @property
    def n(self) -> int:
        return len(self.polys)

    @classmethod
    def gaussian(cls, n: int) -> "TestFunction":
        return cls(tuple(_poly([1]) for _ in range(n)))

    @classmethod
    def separable(cls, coeff_lists) -> "TestFunction":
        return cls(tuple(_poly(c) for c in coeff_lists))

    def value_at_origin(self) -> Fraction:
        out = Fraction(1)
        for p in self.polys:
            out *= p[0]
        return out


@dataclass(frozen=True)
class ZetaSample:
    lam: complex
    value: complex
    error: float


# -- atom pairings ------------------------------------------------------


def _quad(f, a, b) -> tuple[float, float]:
    val, err = quad(f, a, b, epsabs=QUAD_TARGET, epsrel=QUAD_TARGET,
                    limit=400)
    return val, err


@lru_cache(maxsize=None)
def _pair_pf_plus(a: int, j: int, p: Poly1) -> tuple[float, float]:
    """<Pf(a, j, +), p(t) exp(-t^2)> with the canonical finite-part
    normalization; returns (value, error estimate)."""
    m = max(0, -a)
    taylor = gaussian_taylor(p)
    tail = tuple(float(c) for c in taylor[m:])
    decay = a + 1 + m  # >= 1 always

    def near(s: float) -> float:
        u = math.exp(-s)
        return (s ** j if j else 1.0) * math.exp(-decay * s) \
            * _poly_eval_float(tail, u)

    i1, e1 = _quad(near, 0.0, np.inf)
    if j % 2:
        i1 = -i1

    pf = tuple(float(c) for c in p)

    def far(t: float) -> float:
        lg = math.log(t)
        return t ** a * (lg ** j if j else 1.0) * _poly_eval_float(pf, t) \
            * math.exp(-t * t)

    i2, e2 = _quad(far, 1.0, np.inf)

    boundary = Fraction(0)
    sign = Fraction((-1) ** j * math.factorial(j))
    for i in range(0, m - 1):
        boundary += sign * taylor[i] / Fraction(a + i + 1) ** (j + 1)

    return i1 + i2 + float(boundary), e1 + e2


def pair_atom(atom: Atom, p) -> float:
    """Pairing of a one-variable atom against p(t) exp(-t^2)."""
    p = _poly(p)
    if isinstance(atom, Delta):
        sign = -1 if atom.m % 2 else 1
        return float(sign * phi_deriv0(p, atom.m))
    if atom.side == -1:
        return pair_atom(Pf(atom.a, atom.j, 1), poly_mirror(p))
    value, err = _pair_pf_plus(atom.a, atom.j, p)
    if err > ATOM_ERROR_BOUND:
        raise QuadratureError(
            f"pairing of Pf({atom.a},{atom.j}) did not converge", err)
    return value


def pair(u: Dist, phi: TestFunction) -> float:
    """<u, phi> for a separable test function."""
    if u.n != phi.n:
        raise DimensionMismatch(f"dimensions differ: {u.n} vs {phi.n}")
    total = 0.0
    for tensor, c in u.sorted_terms():
        prod = float(c)
        for atom, p in zip(tensor, phi.polys):
            prod *= pair_atom(atom, p)
        total += prod
    return total


# -- polynomial-Gaussian class closed under the Weyl action -------------


class GaussianPoly:
    """q(x) exp(-|x|^2) with q an exact rational polynomial; closed under
    multiplication by coordinates and differentiation."""

    __slots__ = ("n", "q")

    def __init__(self, n: int, q: dict[tuple[int, ...], Fraction]):
        self.n = n
        self.q = {k: Fraction(c) for k, c in q.items() if c}

    @classmethod
    def from_test_function(cls, phi: TestFunction) -> "GaussianPoly":
        n = phi.n
        q: dict[tuple[int, ...], Fraction] = {(0,) * n: Fraction(1)}
        for i, p in enumerate(phi.polys):
            nxt: dict[tuple[int, ...], Fraction] = {}
            for k, c in q.items():
                for e, pc in enumerate(p):
                    if not pc:
                        continue
                    key = k[:i] + (k[i] + e,) + k[i + 1:]
                    nxt[key] = nxt.get(key, Fraction(0)) + c * pc
            q = nxt
        return cls(n, q)

    def mul_x(self, i: int) -> "GaussianPoly":
        out: dict[tuple[int, ...], Fraction] = {}
        for k, c in self.q.items():
            key = k[:i - 1] + (k[i - 1] + 1,) + k[i:]
            out[key] = out.get(key, Fraction(0)) + c
        return GaussianPoly(self.n, out)

    def diff(self, i: int) -> "GaussianPoly":
        """d/dx_i (q e^{-|x|^2}) = (dq/dx_i - 2 x_i q) e^{-|x|^2}."""
        out: dict[tuple[int, ...], Fraction] = {}
        for k, c in self.q.items():
            e = k[i - 1]
            if e:
                key = k[:i - 1] + (e - 1,) + k[i:]
                out[key] = out.get(key, Fraction(0)) + c * e
            key = k[:i - 1] + (e + 1,) + k[i:]
            out[key] = out.get(key, Fraction(0)) - 2 * c
        return GaussianPoly(self.n, out)

    def apply_weyl(self, P: WeylOp) -> "GaussianPoly":
        if P.n != self.n:
            raise DimensionMismatch(f"dimensions differ: {P.n} vs {self.n}")
        acc: dict[tuple[int, ...], Fraction] = {}
        for (alpha, beta), c in P.terms.items():
            g = self
            for i, e in enumerate(beta):
                for _ in range(e):
                    g = g.diff(i + 1)
            for i, e in enumerate(alpha):
                for _ in range(e):
                    g = g.mul_x(i + 1)
            for k, qc in g.q.items():
                s = acc.get(k, Fraction(0)) + c * qc
                if s:
                    acc[k] = s
                else:
                    acc.pop(k, None)
        return GaussianPoly(self.n, acc)


def pair_gaussian_poly(u: Dist, g: GaussianPoly) -> float:
    """<u, q(x) exp(-|x|^2)> via per-monomial atom pairings."""
    if u.n != g.n:
        raise DimensionMismatch(f"dimensions differ: {u.n} vs {g.n}")
    total = 0.0
    for tensor, c in u.sorted_terms():
        for k, qc in sorted(g.q.items()):
            prod = float(c * qc)
            for atom, e in zip(tensor, k):
                mono = (Fraction(0),) * e + (Fraction(1),)
                prod *= pair_atom(atom, mono)
            total += prod
    return total


# -- local zeta function ------------------------------------------------


@lru_cache(maxsize=None)
def _zeta_one_var(lam: complex, p: Poly1) -> tuple[complex, float]:
    """int_0^inf t^lam p(t) exp(-t^2) dt via the subtracted finite-part
    form, valid for Re lam > -2, lam != -1."""
    taylor = gaussian_taylor(p)
    phi0 = float(taylor[0])
    tail = tuple(float(c) for c in taylor[1:])
    w = complex(lam) + 1.0

    def near(s: float) -> complex:
        u = math.exp(-s)
        return cmath.exp(-(w + 1.0) * s) * _poly_eval_float(tail, u)

    re1, er1 = _quad(lambda s: near(s).real, 0.0, np.inf)
    im1, ei1 = _quad(lambda s: near(s).imag, 0.0, np.inf)

    pf = tuple(float(c) for c in p)

    def far(t: float) -> complex:
        return cmath.exp(complex(lam) * math.log(t)) \
            * _poly_eval_float(pf, t) * math.exp(-t * t)

    re2, er2 = _quad(lambda t: far(t).real, 1.0, np.inf)
    im2, ei2 = _quad(lambda t: far(t).imag, 1.0, np.inf)

    value = complex(re1, im1) + phi0 / w + complex(re2, im2)
    return value, er1 + ei1 + er2 + ei2


def zeta(n: int, lam: complex, phi: TestFunction,
         pole_floor: float = 1e-6) -> ZetaSample:
    """Sample of the local zeta function <(x_1...x_n)_+^lam, phi>."""
    if phi.n != n:
        raise DimensionMismatch(f"dimensions differ: {n} vs {phi.n}")
    lam = complex(lam)
    if abs(lam + 1.0) < pole_floor:
        raise ValueError(f"lambda too close to the pole at -1: {lam}")
    total = 0.0 + 0.0j
    err = 0.0
    for sigma in sign_set(n):
        prod = 1.0 + 0.0j
        perr = 0.0
        for s, p in zip(sigma, phi.polys):
            v, e = _zeta_one_var(lam, p if s == 1 else poly_mirror(p))
            prod *= v
            perr += e * max(1.0, abs(v))
        total += prod
        err += perr
    return ZetaSample(lam, total, err)


def contour_samples(n: int, phi: TestFunction, radius: float = 0.25,
                    count: int = 16) -> list[ZetaSample]:
    """Equispaced zeta samples on the circle |lam + 1| = radius."""
    out = []
    for kk in range(count):
        theta = 2.0 * math.pi * kk / count
        lam = -1.0 + radius * cmath.exp(1j * theta)
        out.append(zeta(n, lam, phi))
    return out


def laurent_fit(samples: list[ZetaSample], pole_order: int, J: int,
                residual_tol: float | None = None,
                ) -> tuple[dict[int, complex], float]:
    """Least-squares fit Z(lam) = sum_d c_d (lam+1)^d over degrees
    -pole_order .. J; returns (coefficients, residual).

    On equispaced contour samples the columns are orthogonal, so the
    residual mostly measures the truncated degrees above J, not fit
    quality; pass residual_tol to flag an ill-conditioned fit anyway."""
    degrees = list(range(-pole_order, J + 1))
    if len(samples) < 2 * len(degrees):
        raise ValueError("not enough samples for a stable fit")
    eps = np.array([s.lam + 1.0 for s in samples], dtype=complex)
    A = np.column_stack([eps ** d for d in degrees])
    b = np.array([s.value for s in samples], dtype=complex)
    coef, *_ = np.linalg.lstsq(A, b, rcond=None)
    residual = float(np.linalg.norm(A @ coef - b))
    if residual_tol is not None and \
            residual > residual_tol * max(1.0, float(np.linalg.norm(b))):
        raise QuadratureError("Laurent fit residual above tolerance",
                              residual)
    return {d: complex(c) for d, c in zip(degrees, coef)}, residual


@dataclass
class CrossCheckEntry:
    degree: int
    fitted: complex
    symbolic: float
    abs_err: float
    rel_err: float
    ok: bool

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "fitted": [self.fitted.real, self.fitted.imag],
            "symbolic": self.symbolic,
            "abs_err": self.abs_err,
            "rel_err": self.rel_err,
            "ok": self.ok,
        }


@dataclass
class CrossCheckReport:
    n: int
    J: int
    tol: float
    radius: float
    residual: float
    entries: list[CrossCheckEntry]

    @property
    def passed(self) -> bool:
        return all(e.ok for e in self.entries)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "J": self.J,
            "tol": self.tol,
            "radius": self.radius,
            "residual": self.residual,
            "passed": self.passed,
            "entries": [e.to_json() for e in self.entries],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def cross_check(n: int, J: int = 2, phi: TestFunction | None = None,
                tol: float = 1e-6, radius: float = 0.25,
                count: int = 16,
                samples: list[ZetaSample] | None = None) -> CrossCheckReport:
    """Fit Laurent coefficients from contour samples and compare each
    degree d in [-n, min(0, J)] against the exact pairing <u_d, phi>."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if phi is None:
        phi = TestFunction.gaussian(n)
    if samples is None:
        samples = contour_samples(n, phi, radius, count)
    coeffs, residual = laurent_fit(samples, n, J)
    series = expand_product(n, max(0, J))
    entries = []
    for d in range(-n, min(0, J) + 1):
        fitted = coeffs[d]
        symbolic = pair(series.coeff(d), phi)
        abs_err = abs(fitted - symbolic)
        scale = max(1.0, abs(fitted))
        rel_err = abs_err / scale
        entries.append(CrossCheckEntry(d, fitted, symbolic, abs_err, rel_err,
                                       abs_err <= tol * scale))
    return CrossCheckReport(n, J, tol, radius, residual, entries)


def write_samples_csv(samples: list[ZetaSample], path: str) -> None:
    """Delimited dump of contour samples for external plotting."""
    import csv

    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["re_lambda", "im_lambda", "re_value", "im_value",
                    "error_estimate"])
        for s in samples:
            w.writerow([s.lam.real, s.lam.imag, s.value.real, s.value.imag,
                        s.error])
