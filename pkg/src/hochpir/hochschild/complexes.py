"""Twisted tensor complexes M (x)_pi N and their graded slices.

Every complex here has the shape M (x) N with

    D(m (x) B) = d_M m (x) B + (-1)^{|m|} m (x) d_N B
                 + sum (-1)^{|m'|} m' (x) y(m'') . B

where m -> m' (x) m'' is the coaction and y(c) acts on N as a derivation:
the adjoint action of pi(c) for (Ug)^{(x)n} and S(H (x) g), or of the cobar
twisting element s^{-1}c for (Omega C)^{(x)n}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Mapping, Sequence

from ..coeffs import CoefficientSystem
from ..errors import (ConfigurationError, CutoffError, DifferentialSquareError, InfiniteSliceError)
from ..exactla import (EchelonBasis, SparseMatrix, add_to, axpy, fmt, image_basis, kernel_basis,
                       quotient_coordinates, quotient_representatives)
from ..superalg.hopf import TensorHopf
from ..superalg.lie import sub_grades
from ..superalg.pbw import sym_product

ONE = Fraction(1)


@dataclass(frozen=True)
class SliceSelector:
    degree: int
    color: tuple | None = None
    hodge: int | None = None
    hodge_max: int | None = None
    hodge_multi: tuple | None = None

    def __post_init__(self):
        if self.color is not None:
            object.__setattr__(self, "color", tuple(int(c) for c in self.color))
        if self.hodge_multi is not None:
            object.__setattr__(self, "hodge_multi", tuple(int(c) for c in self.hodge_multi))

    @property
    def uses_hodge(self):
        return self.hodge is not None or self.hodge_max is not None or self.hodge_multi is not None

    def shifted(self, dq: int) -> "SliceSelector":
        return SliceSelector(self.degree + dq, self.color, self.hodge, self.hodge_max, self.hodge_multi)

    def to_json(self):
        out = {"degree": self.degree}
        if self.color is not None:
            out["color"] = list(self.color)
        for k in ("hodge", "hodge_max"):
            if getattr(self, k) is not None:
                out[k] = getattr(self, k)
        if self.hodge_multi is not None:
            out["hodge_multi"] = list(self.hodge_multi)
        return out


def _faces(grade, parts):
    """All ways to write grade as an ordered sum of ``parts`` nonnegative vectors."""
    if parts == 1:
        yield (tuple(grade),)
        return
    zero = tuple(0 for _ in grade)
    for g in [zero] + list(sub_grades(tuple(grade))):
        rest = tuple(a - b for a, b in zip(grade, g))
        for tail in _faces(rest, parts - 1):
            yield (g,) + tail


# -- slot modules ---------------------------------------------------------

class TensorPowerModule:
    """(H)^{(x)n} for a Hopf backend H, with slot-wise adjoint action."""

    symmetric = False

    def __init__(self, hopf, n: int):
        self.H = hopf
        self.n = n
        self._cache: dict = {}

    def degree(self, B):
        return sum(self.H.degree(b) for b in B)

    def color(self, B):
        out = [0] * self.H.color_rank
        for b in B:
            for i, x in enumerate(self.H.color(b)):
                out[i] += x
        return tuple(out)

    def keys(self, mode, grade):
        grade = tuple(grade)
        hit = self._cache.get((mode, grade))
        if hit is not None:
            return hit
        self.H.factor_grades(mode, grade)  # finiteness check
        out = []
        for split in _faces(grade, self.n):
            pools = [self.H.keys_of_grade(mode, g) if any(g) else [()] for g in split]
            out.extend(iproduct(*pools))
        out.sort()
        self._cache[(mode, grade)] = out
        return out

    def d(self, B) -> dict:
        out: dict = {}
        deg = 0
        for j, b in enumerate(B):
            db = self.H.d(b)
            if db:
                s = -1 if deg & 1 else 1
                for w, c in db.items():
                    add_to(out, B[:j] + (w,) + B[j + 1:], s * c)
            deg += self.H.degree(b)
        return out

    def act(self, y: Mapping, B) -> dict:
        if not y:
            return {}
        dy = self.H.degree(next(iter(y)))
        out: dict = {}
        deg = 0
        for j, b in enumerate(B):
            br = self.H.commutator(y, {b: ONE})
            if br:
                s = -1 if (dy * deg) & 1 else 1
                for w, c in br.items():
                    add_to(out, B[:j] + (w,) + B[j + 1:], s * c)
            deg += self.H.degree(b)
        return out

    def slot_name(self, b):
        return self.H.key_name(b)


class SymmetricModule:
    """S(H (x) g) for a graded space H with basis ``classes`` [(name, degree)].

    A key is a tuple over classes of nondecreasing tuples of Lie basis keys;
    the factor h_a (x) z has degree deg(h_a) + |z|.  Class degrees are the
    cohomological placements (0 for circles, -p for a p-dimensional class).
    """

    symmetric = True

    def __init__(self, lie, classes: Sequence):
        self.lie = lie
        self.classes = [(str(a), int(p)) for a, p in classes]
        self.k = len(self.classes)
        self._cache: dict = {}

    def fdeg(self, a, z):
        return self.classes[a][1] + self.lie.degree(z)

    def flatten(self, B):
        return [(a, z) for a, zs in enumerate(B) for z in zs]

    def pack(self, factors) -> tuple:
        """Sorted product of factors: (sign, key) or (0, None)."""
        degs = [self.fdeg(a, z) for a, z in factors]
        s, mono = sym_product(list(factors), degs)
        if not s:
            return 0, None
        per = [[] for _ in range(self.k)]
        for a, z in mono:
            per[a].append(z)
        return s, tuple(tuple(p) for p in per)

    def degree(self, B):
        return sum(self.fdeg(a, z) for a, z in self.flatten(B))

    def color(self, B):
        out = [0] * self.lie.color_rank
        for a, z in self.flatten(B):
            for i, x in enumerate(self.lie.color(z)):
                out[i] += x
        return tuple(out)

    def hodge_multi(self, B):
        return tuple(len(p) for p in B)

    def keys(self, mode, grade):
        grade = tuple(grade)
        hit = self._cache.get((mode, grade))
        if hit is not None:
            return hit
        zs = self.lie.basis_up_to(mode if mode == "color" else "degree",
                                  grade if mode == "color" else (grade[0] - min([0] + [p for _, p in self.classes]),))
        factors = []
        for a in range(self.k):
            for z in zs:
                g = self.lie.color(z) if mode == "color" else (self.fdeg(a, z),)
                if not any(g) or any(x < 0 for x in g):
                    raise InfiniteSliceError(
                        f"factor {self.classes[a][0]}*{self.lie.name(z)} has grade {g}; slice is not finite")
                factors.append(((a, z), g))
        out = []

        def rec(prefix, rem, start):
            if not any(rem):
                s, key = self.pack(prefix)
                out.append(key)
                return
            for idx in range(start, len(factors)):
                f, g = factors[idx]
                if any(x > y for x, y in zip(g, rem)):
                    continue
                if prefix and prefix[-1] == f and self.fdeg(*f) & 1:
                    continue
                prefix.append(f)
                rec(prefix, tuple(y - x for x, y in zip(g, rem)), idx)
                prefix.pop()

        if not any(x < 0 for x in grade):
            rec([], grade, 0)
        out.sort()
        self._cache[(mode, grade)] = out
        return out

    def _replace(self, B, j, z_new: Mapping, sign) -> dict:
        fl = self.flatten(B)
        a = fl[j][0]
        out: dict = {}
        for w, c in z_new.items():
            s, key = self.pack(fl[:j] + [(a, w)] + fl[j + 1:])
            if s:
                add_to(out, key, s * sign * c)
        return out

    def d(self, B) -> dict:
        out: dict = {}
        deg = 0
        for j, (a, z) in enumerate(self.flatten(B)):
            dz = self.lie.d_basis(z)
            if dz:
                s = (-1 if deg & 1 else 1) * (-1 if self.classes[a][1] & 1 else 1)
                axpy(out, 1, self._replace(B, j, dz, s))
            deg += self.fdeg(a, z)
        return out

    def act(self, y: Mapping, B) -> dict:
        if not y:
            return {}
        dy = self.lie.degree(next(iter(y)))
        out: dict = {}
        deg = 0
        for j, (a, z) in enumerate(self.flatten(B)):
            br = self.lie.bracket(y, {z: ONE})
            if br:
                s = (-1 if (dy * deg) & 1 else 1) * (-1 if (dy * self.classes[a][1]) & 1 else 1)
                axpy(out, 1, self._replace(B, j, br, s))
            deg += self.fdeg(a, z)
        return out

    def slot_name(self, zs):
        return "1" if not zs else "*".join(self.lie.name(z) for z in zs)


# -- complexes ------------------------------------------------------------

class TwistedComplex:
    """M (x)_y N; ``kind`` is one of wedge, cobar, gr, suspension."""

    def __init__(self, cs: CoefficientSystem, N, twist: dict, kind: str, n: int | None = None):
        self.cs = cs
        self.N = N
        self.twist = twist
        self.kind = kind
        self.n = n
        self.M = cs.comodule

    @property
    def hodge_graded(self):
        return self.N.symmetric

    def degree(self, key):
        m, B = key
        return self.M.degrees[m] + self.N.degree(B)

    def color(self, key):
        m, B = key
        return tuple(a + b for a, b in zip(self.M.colors[m], self.N.color(B)))

    def hodge(self, key):
        if not self.N.symmetric:
            raise ConfigurationError("Hodge degree is a grading only on gr/suspension complexes")
        return sum(self.N.hodge_multi(key[1]))

    def d_key(self, key) -> dict:
        m, B = key
        out: dict = {}
        for j, c in self.M.d(m):
            add_to(out, (j, B), c)
        s = -1 if self.M.degrees[m] & 1 else 1
        for B2, c in self.N.d(B).items():
            add_to(out, (m, B2), s * c)
        for m1, coef, y in self.twist.get(m, ()):
            s1 = -1 if self.M.degrees[m1] & 1 else 1
            for B2, c in self.N.act(y, B).items():
                add_to(out, (m1, B2), s1 * coef * c)
        return out

    def d(self, v: Mapping) -> dict:
        out: dict = {}
        for k, c in v.items():
            axpy(out, c, self.d_key(k))
        return out

    def _mode(self, sel: SliceSelector):
        if sel.uses_hodge and not self.N.symmetric:
            raise ConfigurationError("Hodge selectors apply only to gr and suspension complexes")
        if sel.color is not None:
            if len(sel.color) != self.cs.color_rank:
                raise ConfigurationError(f"color {sel.color} has wrong length; expected {self.cs.color_rank}")
            self.cs.check_cutoff(sel.color)
            return "color"
        if self.cs.coalgebra.weight_cutoff is not None:
            raise CutoffError("truncated coefficient systems need a color selector")
        return "degree"

    def keys_of_color(self, color) -> list:
        out = []
        for m in range(self.M.dim):
            rem = tuple(a - b for a, b in zip(color, self.M.colors[m]))
            if any(x < 0 for x in rem):
                continue
            out.extend((m, B) for B in self.N.keys("color", rem))
        return out

    def basis(self, sel: SliceSelector) -> list:
        mode = self._mode(sel)
        q = sel.degree
        out = []
        if mode == "color":
            for key in self.keys_of_color(sel.color):
                if self.degree(key) == q:
                    out.append(key)
        else:
            for m in range(self.M.dim):
                r = q - self.M.degrees[m]
                if r < 0:
                    continue
                if r == 0:
                    out.append((m, self._unit_key()))
                    continue
                out.extend((m, B) for B in self.N.keys("degree", (r,)))
        if sel.uses_hodge:
            out = [k for k in out if self._hodge_ok(k, sel)]
        out.sort()
        return out

    def _unit_key(self):
        if self.N.symmetric:
            return tuple(() for _ in range(self.N.k))
        return tuple(() for _ in range(self.N.n))

    def _hodge_ok(self, key, sel):
        hm = self.N.hodge_multi(key[1])
        h = sum(hm)
        if sel.hodge is not None and h != sel.hodge:
            return False
        if sel.hodge_max is not None and h > sel.hodge_max:
            return False
        if sel.hodge_multi is not None and hm != sel.hodge_multi:
            return False
        return True

    def matrix(self, src: list, tgt: list, check=True) -> SparseMatrix:
        tset = set(tgt)
        cols = {}
        for k in src:
            col = self.d_key(k)
            if check:
                for r in col:
                    if r not in tset:
                        raise ConfigurationError(f"differential leaves the slice at {self.key_name(r)}")
            cols[k] = col
        return SparseMatrix(tgt, src, cols)

    def key_name(self, key) -> str:
        m, B = key
        parts = [self.M.names[m]]
        if self.N.symmetric:
            for (a, _), zs in zip(self.N.classes, B):
                parts.append(self.N.slot_name(zs))
        else:
            parts.extend(self.N.slot_name(b) for b in B)
        return " (x) ".join(parts)


def _twist_terms(cs: CoefficientSystem, convert) -> dict:
    out = {}
    for m in range(cs.comodule.dim):
        terms = []
        for m1, c, coef in cs.comodule.coaction[m]:
            y = convert(c)
            if y:
                terms.append((m1, coef, y))
        out[m] = terms
    return out


def wedge_complex(n: int, cs: CoefficientSystem) -> TwistedComplex:
    if n < 0:
        raise ConfigurationError("number of circles must be >= 0")
    lie = cs.lie
    N = TensorPowerModule(lie.uea, n)
    return TwistedComplex(cs, N, _twist_terms(cs, lambda c: lie.to_uea(cs.pi[c])), "wedge", n)


def cobar_hopf(cs: CoefficientSystem) -> TensorHopf:
    """Omega C: tensor algebra on s^{-1}c for c in the reduced part of C."""
    C = cs.coalgebra
    cbar = [i for i in range(C.dim) if i != C.unit]
    pos = {c: k for k, c in enumerate(cbar)}
    letters = [("s-" + C.names[c], C.degrees[c] - 1, C.colors[c]) for c in cbar]
    letter_d = {}
    for c in cbar:
        v: dict = {}
        for j, x in C.d(c):
            if j != C.unit:
                add_to(v, (pos[j],), -x)
        for a, b, x in C.coproduct[c]:
            if a == C.unit or b == C.unit:
                continue
            s = -1 if C.degrees[a] & 1 else 1
            add_to(v, (pos[a], pos[b]), -s * x)
        letter_d[pos[c]] = v
    h = TensorHopf(letters, letter_d)
    h.cbar_index = pos
    return h


def cobar_complex(n: int, cs: CoefficientSystem) -> TwistedComplex:
    H = cobar_hopf(cs)
    N = TensorPowerModule(H, n)
    unit = cs.coalgebra.unit
    twist = _twist_terms(cs, lambda c: {} if c == unit else {(H.cbar_index[c],): ONE})
    return TwistedComplex(cs, N, twist, "cobar", n)


@dataclass(frozen=True)
class SuspensionSignature:
    """Basis classes of the reduced homology of Y with their homology degrees."""

    classes: tuple

    @classmethod
    def from_dims(cls, dims: Mapping[int, int], prefix="h"):
        out = []
        for p in sorted(dims):
            if dims[p] < 0:
                raise ConfigurationError("negative dimension in signature")
            for i in range(dims[p]):
                out.append((f"{prefix}{p}_{i + 1}" if dims[p] > 1 or len(dims) > 1 else f"{prefix}{p}", int(p)))
        return cls(tuple(out))

    @classmethod
    def wedge_of_spheres(cls, n: int, p: int):
        return cls(tuple((f"h{i + 1}", p) for i in range(n)))

    @property
    def cohomological(self):
        return [(name, -p) for name, p in self.classes]


def suspension_complex(sig: SuspensionSignature, cs: CoefficientSystem) -> TwistedComplex:
    lie = cs.lie
    N = SymmetricModule(lie, sig.cohomological)
    twist = _twist_terms(cs, lambda c: dict(cs.pi[c]))
    return TwistedComplex(cs, N, twist, "suspension", len(sig.classes))


def gr_complex(n: int, cs: CoefficientSystem) -> TwistedComplex:
    cx = suspension_complex(SuspensionSignature.wedge_of_spheres(n, 0), cs)
    cx.kind = "gr"
    return cx


# -- slices and homology --------------------------------------------------

@dataclass
class ComplexSlice:
    complex: TwistedComplex
    selector: SliceSelector
    bases: dict        # degree -> ordered key list for q-1, q, q+1
    d_q: SparseMatrix  # C_q -> C_{q-1}
    d_q1: SparseMatrix  # C_{q+1} -> C_q

    @property
    def q(self):
        return self.selector.degree

    @property
    def basis(self):
        return self.bases[self.q]

    def dims(self):
        return {k: len(v) for k, v in sorted(self.bases.items())}


def build_slice(cx: TwistedComplex, sel: SliceSelector) -> ComplexSlice:
    q = sel.degree
    bases = {d: cx.basis(sel.shifted(d - q)) for d in (q - 1, q, q + 1)}
    d_q = cx.matrix(bases[q], bases[q - 1])
    d_q1 = cx.matrix(bases[q + 1], bases[q])
    return ComplexSlice(cx, sel, bases, d_q, d_q1)


def build_wedge_slice(n, cs, sel) -> ComplexSlice:
    return build_slice(wedge_complex(n, cs), sel)


def build_cobar_slice(n, cs, sel) -> ComplexSlice:
    return build_slice(cobar_complex(n, cs), sel)


def build_gr_slice(n, cs, sel) -> ComplexSlice:
    return build_slice(gr_complex(n, cs), sel)


def build_suspension_slice(sig, cs, sel) -> ComplexSlice:
    return build_slice(suspension_complex(sig, cs), sel)


@dataclass
class HomologyResult:
    slice: ComplexSlice
    kernel: EchelonBasis
    image: EchelonBasis
    representatives: EchelonBasis

    @property
    def dim(self):
        return self.representatives.rank

    def coordinates(self, v: Mapping) -> list[Fraction]:
        """Coordinates of the class of a cycle v in the representative basis."""
        if self.slice.d_q.apply(v):
            raise ValueError("not a cycle")
        return quotient_coordinates(v, self.representatives, self.image)

    def is_boundary(self, v: Mapping) -> bool:
        return self.image.contains(v)


def homology(sl: ComplexSlice) -> HomologyResult:
    comp = sl.d_q @ sl.d_q1
    if not comp.is_zero():
        c = next(iter(comp.columns))
        raise DifferentialSquareError(
            f"d^2 != 0 on {sl.complex.key_name(c)}", witness=c)
    ker = kernel_basis(sl.d_q)
    im = image_basis(sl.d_q1)
    reps = quotient_representatives(ker, im)
    return HomologyResult(sl, ker, im, reps)


def check_d_squared(cx: TwistedComplex, sel: SliceSelector) -> None:
    """Raise DifferentialSquareError unless d o d = 0 from degree q+1."""
    sl = build_slice(cx, sel)
    homology(sl)


def euler_characteristic(cx: TwistedComplex, colors: Sequence) -> dict:
    out = {}
    for c in colors:
        c = tuple(c)
        cx.cs.check_cutoff(c)
        chi = 0
        for key in cx.keys_of_color(c):
            chi += -1 if cx.degree(key) & 1 else 1
        out[c] = chi
    return out


def slice_to_json(sl: ComplexSlice, hom: HomologyResult | None = None) -> dict:
    cx = sl.complex
    idx = {k: i for i, k in enumerate(sl.basis)}
    low = {k: i for i, k in enumerate(sl.bases[sl.q - 1])}
    entries = []
    for c, col in sl.d_q.columns.items():
        for r, x in col.items():
            entries.append([low[r], idx[c], fmt(x)])
    entries.sort()
    out = {
        "complex": cx.kind,
        "selector": sl.selector.to_json(),
        "basis": [cx.key_name(k) for k in sl.basis],
        "dims": {str(k): v for k, v in sl.dims().items()},
        "d_matrix": entries,
    }
    if hom is not None:
        out["homology"] = {
            "dim": hom.dim,
            "kernel_dim": hom.kernel.rank,
            "image_dim": hom.image.rank,
            "representatives": [
                {cx.key_name(k): fmt(c) for k, c in sorted(v.items(), key=lambda kv: idx[kv[0]])}
                for v in hom.representatives.vectors],
        }
    return out
