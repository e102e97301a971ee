"""Cocommutative Hopf superalgebra backends.

Two concrete backends share one interface:

* ``TensorHopf``: tensor algebra on graded letters with primitive letters and
  a derivation differential.  Realises U(free Lie) and cobar constructions.
* ``PBWHopf``: U(g) for a finite structure-constant Lie superalgebra, with
  elements in ordered PBW monomials.

Basis keys are tuples of factor indices; the empty tuple is the unit.
Elements are sparse dicts ``{key: Fraction}``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from ..errors import InfiniteSliceError
from ..exactla import add_to, axpy
from .signs import koszul_sign, reversal_sign

ONE = Fraction(1)


class HopfBackend:
    """Shared machinery; subclasses provide factor data and normal forms."""

    unit: tuple = ()
    is_pbw = False

    # factor data ---------------------------------------------------------
    def factor_degree(self, f) -> int:
        raise NotImplementedError

    def factor_color(self, f) -> tuple:
        raise NotImplementedError

    def factor_count(self) -> int | None:
        """Number of factors, or None when the factor set is open-ended."""
        raise NotImplementedError

    def normalize(self, word: tuple) -> dict:
        raise NotImplementedError

    def factor_d(self, f) -> dict:
        raise NotImplementedError

    # derived -------------------------------------------------------------
    def degree(self, key) -> int:
        return sum(self.factor_degree(f) for f in key)

    def color(self, key) -> tuple:
        out = [0] * self.color_rank
        for f in key:
            for i, c in enumerate(self.factor_color(f)):
                out[i] += c
        return tuple(out)

    def hodge(self, key):
        return None

    def counit(self, key) -> Fraction:
        return ONE if not key else Fraction(0)

    def mul(self, a: dict, b: dict) -> dict:
        out: dict = {}
        for ka, ca in a.items():
            for kb, cb in b.items():
                axpy(out, ca * cb, self.mul_keys(ka, kb))
        return out

    def mul_keys(self, ka, kb) -> dict:
        return self.normalize(ka + kb)

    def commutator(self, y: dict, b: dict) -> dict:
        """[y, b] = yb - (-1)^{|y||b|} by, bilinear over homogeneous terms."""
        out: dict = {}
        for ky, cy in y.items():
            dy = self.degree(ky)
            for kb, cb in b.items():
                c = cy * cb
                axpy(out, c, self.mul_keys(ky, kb))
                s = -1 if (dy * self.degree(kb)) & 1 else 1
                axpy(out, -s * c, self.mul_keys(kb, ky))
        return out

    def coproduct(self, key, parts: int = 2) -> list:
        """Iterated coproduct as a list of (coefficient, tuple of part keys)."""
        return _coproduct(self, key, parts)

    def antipode(self, key) -> dict:
        degs = [self.factor_degree(f) for f in key]
        s = reversal_sign(degs) * (-1 if len(key) & 1 else 1)
        return {k: s * c for k, c in self.normalize(tuple(reversed(key))).items()}

    def antipode_vec(self, v: dict) -> dict:
        out: dict = {}
        for k, c in v.items():
            axpy(out, c, self.antipode(k))
        return out

    def d(self, key) -> dict:
        out: dict = {}
        deg = 0
        for j, f in enumerate(key):
            df = self.factor_d(f)
            if df:
                sign = -1 if deg & 1 else 1
                pre, post = key[:j], key[j + 1:]
                for w, c in df.items():
                    axpy(out, sign * c, self.normalize(pre + w + post))
            deg += self.factor_degree(f)
        return out

    def d_vec(self, v: dict) -> dict:
        out: dict = {}
        for k, c in v.items():
            axpy(out, c, self.d(k))
        return out

    # enumeration ---------------------------------------------------------
    def factor_grades(self, mode: str, bound: tuple) -> list:
        """(factor, grade) pairs with grade <= bound componentwise."""
        raise NotImplementedError

    def keys_of_grade(self, mode: str, grade: tuple) -> list:
        return list(self._keys_of_grade(mode, tuple(grade)))

    def _keys_of_grade(self, mode, grade):
        cache = self.__dict__.setdefault("_grade_cache", {})
        hit = cache.get((mode, grade))
        if hit is not None:
            return hit
        factors = self.factor_grades(mode, grade)
        out = []
        ordered = self.is_pbw
        degs = {f: self.factor_degree(f) for f, _ in factors}

        def rec(prefix, rem, start):
            if not any(rem):
                out.append(tuple(prefix))
                return
            for idx in range(start if ordered else 0, len(factors)):
                f, g = factors[idx]
                if any(a > b for a, b in zip(g, rem)):
                    continue
                if ordered and prefix and prefix[-1] == f and degs[f] & 1:
                    continue
                prefix.append(f)
                rec(prefix, tuple(b - a for a, b in zip(g, rem)), idx)
                prefix.pop()

        if any(x < 0 for x in grade):
            out = []
        else:
            rec([], grade, 0)
        out = tuple(out)
        cache[(mode, grade)] = out
        return out

    def check_grades(self, grades):
        for f, g in grades:
            if not any(g) or any(x < 0 for x in g):
                raise InfiniteSliceError(
                    f"factor {self.factor_name(f)} has grade {g}; slice is not finite")

    def factor_name(self, f) -> str:
        return str(f)

    def key_name(self, key) -> str:
        return "1" if not key else "*".join(self.factor_name(f) for f in key)


def _coproduct(h: HopfBackend, key, parts):
    if parts == 1:
        return [(ONE, (key,))]
    if parts == 0:
        return [(h.counit(key), ())] if not key else []
    cache = h.__dict__.setdefault("_cop_cache", {})
    hit = cache.get((key, parts))
    if hit is not None:
        return hit
    # first part against the rest, then recurse; equal terms are merged
    out: dict = {}
    for c, (u, v) in _binary(h, key):
        for c2, rest in _coproduct(h, v, parts - 1):
            add_to(out, (u,) + rest, c * c2)
    hit = [(c, k) for k, c in out.items()]
    cache[(key, parts)] = hit
    return hit


def _binary(h: HopfBackend, key):
    cache = h.__dict__.setdefault("_bin_cache", {})
    hit = cache.get(key)
    if hit is not None:
        return hit
    degs = [h.factor_degree(f) for f in key]
    out: dict = {}
    for mask in range(1 << len(key)):
        left = [p for p in range(len(key)) if mask >> p & 1]
        right = [p for p in range(len(key)) if not mask >> p & 1]
        s = koszul_sign(degs, left + right)
        add_to(out, (tuple(key[p] for p in left), tuple(key[p] for p in right)), Fraction(s))
    hit = [(c, k) for k, c in out.items()]
    cache[key] = hit
    return hit


class TensorHopf(HopfBackend):
    """Tensor algebra on letters; letters are primitive.

    letters: sequence of (name, degree, color).  letter_d maps a letter index
    to a polynomial (dict word -> coefficient); the differential is extended
    as a derivation.
    """

    def __init__(self, letters: Sequence, letter_d: dict | None = None):
        self.names = [l[0] for l in letters]
        self.degrees = [int(l[1]) for l in letters]
        self.colors = [tuple(l[2]) for l in letters]
        self.color_rank = len(self.colors[0]) if self.colors else 0
        self.letter_d = {i: dict(v) for i, v in (letter_d or {}).items() if v}

    def factor_degree(self, f):
        return self.degrees[f]

    def factor_color(self, f):
        return self.colors[f]

    def factor_count(self):
        return len(self.names)

    def factor_name(self, f):
        return self.names[f]

    def normalize(self, word):
        return {tuple(word): ONE}

    def mul_keys(self, ka, kb):
        return {ka + kb: ONE}

    def factor_d(self, f):
        return self.letter_d.get(f, {})

    def antipode(self, key):
        degs = [self.degrees[f] for f in key]
        s = reversal_sign(degs) * (-1 if len(key) & 1 else 1)
        return {tuple(reversed(key)): Fraction(s)}

    def factor_grades(self, mode, bound):
        out = []
        for f in range(len(self.names)):
            g = self.colors[f] if mode == "color" else (self.degrees[f],)
            out.append((f, g))
        self.check_grades(out)
        return [(f, g) for f, g in out if all(a <= b for a, b in zip(g, bound))]

    def key_name(self, key):
        return "1" if not key else " ".join(self.names[f] for f in key)


class PBWHopf(HopfBackend):
    """U(g) in PBW normal form for a finite Lie superalgebra.

    ``lie`` must expose ``dim``, ``degrees``, ``colors``, ``names``,
    ``bracket_basis(i, j)`` and ``d_basis(i)`` over integer basis indices.
    Normal monomials are nondecreasing index tuples with odd factors unrepeated.
    """

    is_pbw = True

    def __init__(self, lie):
        self.lie = lie
        self.color_rank = len(lie.colors[0]) if lie.dim else 0
        self._nf = lru_cache(maxsize=None)(self._normalize)

    def factor_degree(self, f):
        return self.lie.degrees[f]

    def factor_color(self, f):
        return self.lie.colors[f]

    def factor_count(self):
        return self.lie.dim

    def factor_name(self, f):
        return self.lie.names[f]

    def hodge(self, key):
        return len(key)

    def factor_d(self, f):
        return {(k,): c for k, c in self.lie.d_basis(f).items()}

    def normalize(self, word):
        return dict(self._nf(tuple(word)))

    def _normalize(self, word):
        degs = self.lie.degrees
        for i in range(len(word) - 1):
            a, b = word[i], word[i + 1]
            if a > b or (a == b and degs[a] & 1):
                break
        else:
            return ((word, ONE),)
        out: dict = {}
        pre, post = word[:i], word[i + 2:]
        br = self.lie.bracket_basis(a, b)
        if a == b:
            # z z = 1/2 [z, z] for odd z
            for k, c in br.items():
                for w, x in self._nf(pre + (k,) + post):
                    add_to(out, w, c * x / 2)
        else:
            s = -1 if (degs[a] * degs[b]) & 1 else 1
            for w, x in self._nf(pre + (b, a) + post):
                add_to(out, w, s * x)
            for k, c in br.items():
                for w, x in self._nf(pre + (k,) + post):
                    add_to(out, w, c * x)
        return tuple(out.items())

    def factor_grades(self, mode, bound):
        out = []
        for f in range(self.lie.dim):
            g = self.lie.colors[f] if mode == "color" else (self.lie.degrees[f],)
            out.append((f, g))
        self.check_grades(out)
        return [(f, g) for f, g in out if all(a <= b for a, b in zip(g, bound))]
