"""Lie superalgebras: free ones with a super-Lyndon basis, and finite ones
given by structure constants.  Both expose the same small interface used by
the complexes:

    basis_of_grade(mode, grade)   basis_up_to(mode, bound)
    degree(z)  color(z)  name(z)  bracket(a, b)  bracket_basis(z, w)  d_basis(z)
    to_uea(elem)  from_uea(u)  uea

Lie elements are dicts {basis key: Fraction}.  Grades are tuples; ``mode``
is "color" (the color vector) or "degree" (a 1-tuple holding the degree).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Mapping, Sequence

from ..errors import BasisExpressionError, ConfigurationError, InvariantViolation
from ..exactla import add_to, axpy, frac, scaled
from .hopf import PBWHopf, TensorHopf


# -- Lyndon words ---------------------------------------------------------

def is_lyndon(w: Sequence) -> bool:
    w = tuple(w)
    if not w:
        return False
    return all(w < w[i:] for i in range(1, len(w)))


def standard_factorization(w: tuple) -> tuple[tuple, tuple]:
    """w = uv with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError("single letters have no factorization")


@dataclass(frozen=True, order=True)
class LieBasisElement:
    """b(word) for a Lyndon word, or [b(word), b(word)] when ``square``."""

    length: int
    word: tuple
    square: bool = False

    @classmethod
    def of(cls, word, square=False):
        word = tuple(word)
        return cls(len(word) * (2 if square else 1), word, square)


def sub_grades(bound: tuple):
    for g in iproduct(*(range(b + 1) for b in bound)):
        if any(g):
            yield tuple(g)


class LieAlgebra:
    """Common helpers."""

    uea = None

    def parity(self, z) -> int:
        return self.degree(z) & 1

    def grade(self, z, mode):
        return self.color(z) if mode == "color" else (self.degree(z),)

    def basis_up_to(self, mode, bound) -> list:
        out = []
        for g in sub_grades(tuple(bound)):
            out.extend(self.basis_of_grade(mode, g))
        return sorted(out)

    def bracket(self, a: Mapping, b: Mapping) -> dict:
        out: dict = {}
        for za, ca in a.items():
            for zb, cb in b.items():
                axpy(out, ca * cb, self.bracket_basis(za, zb))
        return out

    def d(self, a: Mapping) -> dict:
        out: dict = {}
        for z, c in a.items():
            axpy(out, c, self.d_basis(z))
        return out

    def element_name(self, a: Mapping) -> str:
        from ..exactla import fmt
        if not a:
            return "0"
        return " + ".join(f"{fmt(c)}*{self.name(z)}" for z, c in sorted(a.items()))

    def is_homogeneous(self, a: Mapping) -> bool:
        return len({self.degree(z) for z in a}) <= 1


class FreeLieAlgebra(LieAlgebra):
    """Free Lie superalgebra on graded generators.

    generators: sequence of (name, degree, color).  ``d`` optionally maps a
    generator name to a Lie element (dict over basis elements) giving a
    differential extended as a derivation.
    """

    free = True

    def __init__(self, generators: Sequence, d: Mapping | None = None):
        self.generators = [(str(g[0]), int(g[1]), tuple(g[2])) for g in generators]
        self.names_ = [g[0] for g in self.generators]
        if len(set(self.names_)) != len(self.names_):
            raise ConfigurationError("duplicate generator names")
        self.uea = TensorHopf(self.generators)
        self._poly: dict = {}
        self._br: dict = {}
        self._d: dict = {}
        self._basis: dict = {}
        if d:
            letter_d = {}
            for name, elem in d.items():
                i = self.index(name)
                letter_d[i] = self.to_uea(elem)
            self.uea.letter_d = {i: v for i, v in letter_d.items() if v}

    def index(self, name: str) -> int:
        try:
            return self.names_.index(name)
        except ValueError:
            raise ConfigurationError(f"unknown generator {name!r}") from None

    def generator(self, name_or_index) -> LieBasisElement:
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return LieBasisElement.of((i,))

    def gen(self, name) -> dict:
        return {self.generator(name): Fraction(1)}

    @property
    def color_rank(self):
        return self.uea.color_rank

    def degree(self, z: LieBasisElement) -> int:
        d = sum(self.generators[i][1] for i in z.word)
        return 2 * d if z.square else d

    def color(self, z: LieBasisElement) -> tuple:
        c = [0] * self.color_rank
        for i in z.word:
            for k, x in enumerate(self.generators[i][2]):
                c[k] += x
        m = 2 if z.square else 1
        return tuple(m * x for x in c)

    def name(self, z: LieBasisElement) -> str:
        def b(w):
            if len(w) == 1:
                return self.names_[w[0]]
            u, v = standard_factorization(w)
            return f"[{b(u)},{b(v)}]"
        s = b(z.word)
        return f"[{s},{s}]" if z.square else s

    def basis_of_grade(self, mode, grade) -> list:
        grade = tuple(grade)
        key = (mode, grade)
        if key in self._basis:
            return list(self._basis[key])
        out = [LieBasisElement.of(w) for w in self.uea.keys_of_grade(mode, grade) if is_lyndon(w)]
        if all(x % 2 == 0 for x in grade):
            half = tuple(x // 2 for x in grade)
            if any(half):
                for w in self.uea.keys_of_grade(mode, half):
                    if is_lyndon(w) and self.uea.degree(w) & 1:
                        out.append(LieBasisElement.of(w, square=True))
        out.sort()
        self._basis[key] = tuple(out)
        return list(out)

    def poly(self, z: LieBasisElement) -> dict:
        hit = self._poly.get(z)
        if hit is not None:
            return hit
        if z.square:
            p = self.poly(LieBasisElement.of(z.word))
            out = self.uea.commutator(p, p)
        elif len(z.word) == 1:
            out = {z.word: Fraction(1)}
        else:
            u, v = standard_factorization(z.word)
            out = self.uea.commutator(self.poly(LieBasisElement.of(u)), self.poly(LieBasisElement.of(v)))
        self._poly[z] = out
        return out

    def to_uea(self, a: Mapping) -> dict:
        out: dict = {}
        for z, c in a.items():
            axpy(out, c, self.poly(z))
        return out

    def from_uea(self, u: Mapping) -> dict:
        """Express a Lie polynomial in the basis by leading-word elimination."""
        r = dict(u)
        out: dict = {}
        while r:
            w = min(r, key=lambda k: (len(k), k))
            c = r[w]
            if is_lyndon(w):
                z, lead = LieBasisElement.of(w), 1
            else:
                h = len(w) // 2
                if len(w) % 2 == 0 and w[:h] == w[h:] and is_lyndon(w[:h]) and self.uea.degree(w[:h]) & 1:
                    z, lead = LieBasisElement.of(w[:h], square=True), 2
                else:
                    raise BasisExpressionError(
                        f"not a Lie element: leading word {self.uea.key_name(w)!r}", witness=w)
            x = c / lead
            add_to(out, z, x)
            axpy(r, -x, self.poly(z))
        return out

    def bracket_basis(self, a, b) -> dict:
        key = (a, b)
        hit = self._br.get(key)
        if hit is None:
            hit = self.from_uea(self.uea.commutator(self.poly(a), self.poly(b)))
            self._br[key] = hit
        return hit

    def d_basis(self, z) -> dict:
        hit = self._d.get(z)
        if hit is None:
            hit = self.from_uea(self.uea.d_vec(self.poly(z))) if self.uea.letter_d else {}
            self._d[z] = hit
        return hit

    def relabel(self, perm: Sequence[int], z: LieBasisElement) -> dict:
        """Image of a basis element under the generator substitution i -> perm[i]."""
        p = {tuple(perm[i] for i in w): c for w, c in self.poly(z).items()}
        return self.from_uea(p)

    def __repr__(self):
        return f"FreeLieAlgebra({', '.join(f'{n}:{d}' for n, d, _ in self.generators)})"


class StructureLieAlgebra(LieAlgebra):
    """Finite-dimensional Lie superalgebra from a bracket table.

    brackets maps (i, j) -> {k: c}; the (j, i) entries are filled in by graded
    antisymmetry.  ``d`` maps i -> {k: c}.
    """

    free = False

    def __init__(self, names, degrees, colors=None, brackets=None, d=None):
        self.names = [str(n) for n in names]
        self.dim = len(self.names)
        self.degrees = [int(x) for x in degrees]
        if colors is None:
            colors = [(1,)] * self.dim
        self.colors = [tuple(c) for c in colors]
        self.color_rank = len(self.colors[0]) if self.dim else 0
        table: dict = {}
        for (i, j), v in (brackets or {}).items():
            i, j = self._idx(i), self._idx(j)
            v = {self._idx(k): frac(c) for k, c in v.items() if frac(c)}
            s = -1 if (self.degrees[i] * self.degrees[j]) & 1 else 1
            for key, val in (((i, j), v), ((j, i), scaled(v, -s))):
                old = table.get(key)
                if old is not None and old != val:
                    raise ConfigurationError(f"inconsistent bracket entries for {key}")
                table[key] = val
        self.table = table
        self.dtable = {self._idx(i): {self._idx(k): frac(c) for k, c in v.items() if frac(c)}
                       for i, v in (d or {}).items()}
        self.uea = PBWHopf(self)

    def _idx(self, x):
        if isinstance(x, int):
            if not 0 <= x < self.dim:
                raise ConfigurationError(f"basis index {x} out of range")
            return x
        try:
            return self.names.index(x)
        except ValueError:
            raise ConfigurationError(f"unknown basis element {x!r}") from None

    def gen(self, name) -> dict:
        return {self._idx(name): Fraction(1)}

    def degree(self, z):
        return self.degrees[z]

    def color(self, z):
        return self.colors[z]

    def name(self, z):
        return self.names[z]

    def basis_of_grade(self, mode, grade):
        grade = tuple(grade)
        return [z for z in range(self.dim) if self.grade(z, mode) == grade]

    def bracket_basis(self, a, b):
        return self.table.get((a, b), {})

    def d_basis(self, z):
        return self.dtable.get(z, {})

    def to_uea(self, a):
        return {(z,): c for z, c in a.items() if c}

    def from_uea(self, u):
        out = {}
        for k, c in u.items():
            if len(k) != 1:
                raise BasisExpressionError(f"not a Lie element: PBW monomial {k}", witness=k)
            add_to(out, k[0], c)
        return out

    def validate(self):
        """Raise InvariantViolation on a failed Lie superalgebra axiom."""
        zs = range(self.dim)
        one = Fraction(1)
        for (i, j), v in self.table.items():
            for k in v:
                if self.degrees[k] != self.degrees[i] + self.degrees[j] or \
                        self.colors[k] != tuple(a + b for a, b in zip(self.colors[i], self.colors[j])):
                    raise InvariantViolation(f"bracket [{self.names[i]},{self.names[j]}] is not homogeneous")
        for x in zs:
            for y in zs:
                for z in zs:
                    lhs = self.bracket({x: one}, self.bracket({y: one}, {z: one}))
                    rhs = self.bracket(self.bracket({x: one}, {y: one}), {z: one})
                    s = -1 if (self.degrees[x] * self.degrees[y]) & 1 else 1
                    axpy(rhs, s, self.bracket({y: one}, self.bracket({x: one}, {z: one})))
                    if lhs != rhs:
                        raise InvariantViolation(
                            f"Jacobi fails on ({self.names[x]},{self.names[y]},{self.names[z]})")
        for x in zs:
            if self.d(self.d({x: one})):
                raise InvariantViolation(f"d^2 != 0 on {self.names[x]}")
            for y in zs:
                lhs = self.d(self.bracket({x: one}, {y: one}))
                rhs = self.bracket(self.d({x: one}), {y: one})
                s = -1 if self.degrees[x] & 1 else 1
                axpy(rhs, s, self.bracket({x: one}, self.d({y: one})))
                if lhs != rhs:
                    raise InvariantViolation(f"d is not a derivation on ({self.names[x]},{self.names[y]})")

    def __repr__(self):
        return f"StructureLieAlgebra(dim={self.dim})"


def abelian_lie(names, degrees, colors=None) -> StructureLieAlgebra:
    return StructureLieAlgebra(names, degrees, colors)
