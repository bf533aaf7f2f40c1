"""Exact calculus for distributions spanned by tensor products of
one-variable atoms.

Atoms are delta derivatives Delta(m) = delta^(m)(t) and canonical finite
parts Pf(a, j, side) = the finite part of t^a (log t)^j supported on
t > 0 (side +1) or its mirror image t -> -t (side -1).  Pf(a, j, +) is
normalized as j! times the coefficient of (lam - a)^j in the expansion
of t_+^lam at lam = a, which pins down every finite-part ambiguity and
makes multiplication by t exact.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .weyl import DimensionMismatch, WeylOp


@dataclass(frozen=True, order=True)
class Delta:
    """delta^(m)(t); the mirror image is folded in via parity (-1)^m."""
    m: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError("delta derivative order must be >= 0")


@dataclass(frozen=True, order=True)
class Pf:
    """Canonical finite part of t^a (log t)^j on t > 0 (side=+1) or its
    reflection (side=-1).  For a >= 0, j = 0, side +1 this is the
    truncated monomial t^a Y(t)."""
    a: int
    j: int
    side: int

    def __post_init__(self):
        if self.j < 0:
            raise ValueError("log power must be >= 0")
        if self.side not in (1, -1):
            raise ValueError("side must be +1 or -1")


Atom = Delta | Pf
Tensor = tuple[Atom, ...]


def atom_sort_key(atom: Atom):
    if isinstance(atom, Delta):
        return (0, atom.m, 0, 0)
    return (1, atom.a, atom.j, atom.side)


def tensor_sort_key(t: Tensor):
    return tuple(atom_sort_key(a) for a in t)


# -- one-variable atom rules -------------------------------------------

Combo = list[tuple[Fraction, Atom]]


def reflect_atom(atom: Atom) -> tuple[Fraction, Atom]:
    """Image of the atom under t -> -t, as coeff * atom."""
    if isinstance(atom, Delta):
        return (Fraction(-1 if atom.m % 2 else 1), atom)
    return (Fraction(1), Pf(atom.a, atom.j, -atom.side))


def _x_atom_plus(atom: Atom) -> Combo:
    if isinstance(atom, Delta):
        if atom.m == 0:
            return []
        return [(Fraction(-atom.m), Delta(atom.m - 1))]
    return [(Fraction(1), Pf(atom.a + 1, atom.j, 1))]


def _residue_atom(a: int) -> Combo:
    """Residue of t_+^lam at lam = a: (-1)^(m-1) delta^(m-1)/(m-1)! for
    a = -m <= -1, zero otherwise."""
    if a >= 0:
        return []
    m = -a
    sign = -1 if (m - 1) % 2 else 1
    fact = 1
    for i in range(2, m):
        fact *= i
    return [(Fraction(sign, fact), Delta(m - 1))]


def _d_atom_plus(atom: Atom) -> Combo:
    if isinstance(atom, Delta):
        return [(Fraction(1), Delta(atom.m + 1))]
    out: Combo = []
    if atom.a:
        out.append((Fraction(atom.a), Pf(atom.a - 1, atom.j, 1)))
    if atom.j:
        out.append((Fraction(atom.j), Pf(atom.a - 1, atom.j - 1, 1)))
    else:
        out.extend(_residue_atom(atom.a - 1))
    return out


def _via_reflection(rule, atom: Pf) -> Combo:
    """Apply a side + rule to a side - atom: if G(t) = F(-t) then both
    t*G and G' equal minus the reflection of the rule applied to F."""
    base = Pf(atom.a, atom.j, 1)
    out: Combo = []
    for c, res in rule(base):
        rc, ratom = reflect_atom(res)
        out.append((-c * rc, ratom))
    return out


def x_atom(atom: Atom) -> Combo:
    if isinstance(atom, Pf) and atom.side == -1:
        return _via_reflection(_x_atom_plus, atom)
    return _x_atom_plus(atom)


def d_atom(atom: Atom) -> Combo:
    if isinstance(atom, Pf) and atom.side == -1:
        return _via_reflection(_d_atom_plus, atom)
    return _d_atom_plus(atom)


# -- n-dimensional linear combinations ---------------------------------


class Dist:
    """Exact linear combination of atom tensor products in n variables."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: dict[Tensor, Fraction] | None = None):
        if n < 1:
            raise ValueError(f"dimension must be >= 1, got {n}")
        clean: dict[Tensor, Fraction] = {}
        for tensor, c in (terms or {}).items():
            if len(tensor) != n:
                raise ValueError("tensor length does not match dimension")
            c = Fraction(c)
            if c:
                clean[tuple(tensor)] = c
        self.n = n
        self.terms = clean

    @classmethod
    def zero(cls, n: int) -> "Dist":
        return cls(n, {})

    @classmethod
    def from_atoms(cls, atoms: Iterable[Atom], c=1) -> "Dist":
        atoms = tuple(atoms)
        return cls(len(atoms), {atoms: Fraction(c)})

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, Dist):
            return NotImplemented
        return self.n == other.n and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.n, frozenset(self.terms.items())))

    def __add__(self, other: "Dist") -> "Dist":
        if self.n != other.n:
            raise DimensionMismatch(f"dimensions differ: {self.n} vs {other.n}")
        out = dict(self.terms)
        for key, c in other.terms.items():
            s = out.get(key, Fraction(0)) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return Dist(self.n, out)

    def __neg__(self) -> "Dist":
        return Dist(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "Dist") -> "Dist":
        return self + (-other)

    def scale(self, c) -> "Dist":
        c = Fraction(c)
        if not c:
            return Dist.zero(self.n)
        return Dist(self.n, {k: c * v for k, v in self.terms.items()})

    def __rmul__(self, c) -> "Dist":
        return self.scale(c)

    def sorted_terms(self) -> list[tuple[Tensor, Fraction]]:
        return sorted(self.terms.items(), key=lambda kv: tensor_sort_key(kv[0]))

    # -- coordinate actions ---------------------------------------------

    def _act(self, i: int, rule) -> "Dist":
        if not 1 <= i <= self.n:
            raise IndexError(f"coordinate {i} out of range 1..{self.n}")
        out: dict[Tensor, Fraction] = {}
        for tensor, c in self.terms.items():
            for rc, atom in rule(tensor[i - 1]):
                key = tensor[:i - 1] + (atom,) + tensor[i:]
                s = out.get(key, Fraction(0)) + c * rc
                if s:
                    out[key] = s
                else:
                    out.pop(key, None)
        return Dist(self.n, out)

    def act_x(self, i: int) -> "Dist":
        """Multiply by x_i."""
        return self._act(i, x_atom)

    def act_d(self, i: int) -> "Dist":
        """Distributional derivative d/dx_i."""
        return self._act(i, d_atom)

    # -- serialization --------------------------------------------------

    def to_json(self) -> dict:
        terms = []
        for tensor, c in self.sorted_terms():
            atoms = []
            for atom in tensor:
                if isinstance(atom, Delta):
                    atoms.append({"k": "delta", "m": atom.m})
                else:
                    atoms.append({"k": "pf", "a": atom.a, "j": atom.j,
                                  "s": "+" if atom.side == 1 else "-"})
            terms.append({"c": str(c), "atoms": atoms})
        return {"n": self.n, "terms": terms}

    @classmethod
    def from_json(cls, data: dict) -> "Dist":
        n = int(data["n"])
        terms: dict[Tensor, Fraction] = {}
        for t in data["terms"]:
            atoms: list[Atom] = []
            for a in t["atoms"]:
                if a["k"] == "delta":
                    atoms.append(Delta(int(a["m"])))
                elif a["k"] == "pf":
                    atoms.append(Pf(int(a["a"]), int(a["j"]),
                                    1 if a["s"] == "+" else -1))
                else:
                    raise ValueError(f"unknown atom kind {a['k']!r}")
            key = tuple(atoms)
            terms[key] = terms.get(key, Fraction(0)) + Fraction(t["c"])
        return cls(n, terms)

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)

    def render(self, unicode: bool = False) -> str:
        if not self.terms:
            return "0"
        dsym = "δ" if unicode else "d"
        parts = []
        for tensor, c in self.sorted_terms():
            factors = []
            for i, atom in enumerate(tensor):
                var = f"x{i + 1}"
                if isinstance(atom, Delta):
                    sup = "" if atom.m == 0 else f"^({atom.m})"
                    factors.append(f"{dsym}{sup}({var})")
                else:
                    side = "+" if atom.side == 1 else "-"
                    body = f"{var}_{side}^{atom.a}"
                    if atom.j:
                        body += f" log^{atom.j}"
                    factors.append(f"Pf({body})")
            body = " ".join(factors)
            text = body if abs(c) == 1 else f"{abs(c)} {body}"
            parts.append(("-" if c < 0 else "+", text))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in parts[1:]:
            out += f" {sign} {text}"
        return out

    __str__ = render
    __repr__ = render


def is_zero(u: Dist) -> bool:
    return u.is_zero()


def equal(u: Dist, v: Dist) -> bool:
    return u == v


def apply(P: WeylOp, u: Dist) -> Dist:
    """Module action sum c x^a d^b u, derivatives first then coordinates."""
    if P.n != u.n:
        raise DimensionMismatch(f"dimensions differ: {P.n} vs {u.n}")
    out = Dist.zero(u.n)
    for (alpha, beta), c in P.terms.items():
        v = u
        for i, e in enumerate(beta):
            for _ in range(e):
                v = v.act_d(i + 1)
        for i, e in enumerate(alpha):
            for _ in range(e):
                v = v.act_x(i + 1)
        out = out + v.scale(c)
    return out
