"""Maps of suspensions and the induced maps of Hodge-split complexes.

A map of suspensions is encoded by rho: H(Y) -> FreeLie(H(Z)) on reduced
homology classes.  The induced map M (x) S(H(Z) (x) g) -> M (x) S(H(Y) (x) g)
is the identity on M and the coalgebra morphism whose corestriction pairs
each Lie term of rho against symmetric words in the (class (x) g) factors.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations, product as iproduct
from math import factorial
from typing import Mapping, Sequence

from .errors import ChainMapError, ConfigurationError, DegreeError, ParseError
from .exactla import SparseMatrix, add_to, axpy, fmt
from .hochschild.complexes import (SliceSelector, SuspensionSignature, build_slice,
                                   suspension_complex)
from .superalg.lie import FreeLieAlgebra, LieBasisElement, standard_factorization
from .superalg.pbw import pbw_decompose, pbw_map
from .superalg.signs import koszul_sign

ONE = Fraction(1)


# -- free Lie series ------------------------------------------------------

def class_lie(sig: SuspensionSignature) -> FreeLieAlgebra:
    """FreeLie on the classes of ``sig``; letter degree = homology degree, color = unit vector."""
    k = len(sig.classes)
    gens = []
    for i, (name, p) in enumerate(sig.classes):
        c = [0] * k
        c[i] = 1
        gens.append((name, p, tuple(c)))
    return FreeLieAlgebra(gens)


@dataclass
class FreeLieSeries:
    lie: FreeLieAlgebra
    terms: dict
    W: int | None = None          # weight cutoff; None = exact (polynomial)

    def __post_init__(self):
        self.terms = {z: Fraction(c) for z, c in self.terms.items() if c}
        if self.W is not None:
            self.terms = {z: c for z, c in self.terms.items() if self.weight(z) <= self.W}

    @staticmethod
    def weight(z) -> int:
        return 2 * len(z.word) if z.square else len(z.word)

    def component(self, n) -> dict:
        return {z: c for z, c in self.terms.items() if self.weight(z) == n}

    def __add__(self, other):
        out = dict(self.terms)
        axpy(out, 1, other.terms)
        return FreeLieSeries(self.lie, out, _minW(self.W, other.W))

    def scale(self, c):
        return FreeLieSeries(self.lie, {z: c * x for z, x in self.terms.items()}, self.W)

    def bracket(self, other):
        return FreeLieSeries(self.lie, self.lie.bracket(self.terms, other.terms), _minW(self.W, other.W))

    def __eq__(self, other):
        return self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for z in sorted(self.terms):
            c = self.terms[z]
            parts.append(f"{fmt(c)}*{self.lie.name(z)}" if c != 1 else self.lie.name(z))
        return " + ".join(parts)

    def to_json(self):
        return {"W": self.W, "terms": {self.lie.name(z): fmt(c) for z, c in sorted(self.terms.items())}}


def _minW(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _tmul(p, q, W):
    out: dict = {}
    for a, x in p.items():
        for b, y in q.items():
            if len(a) + len(b) <= W:
                add_to(out, a + b, x * y)
    return out


def _texp(p, W):
    out = {(): ONE}
    power = {(): ONE}
    for k in range(1, W + 1):
        power = _tmul(power, p, W)
        axpy(out, Fraction(1, factorial(k)), power)
    return out


def _tlog(p, W):
    """log(p) for p = 1 + X with X of positive weight."""
    X = dict(p)
    X.pop((), None)
    if p.get((), 0) != 1:
        raise ConfigurationError("log needs constant term 1")
    out: dict = {}
    power = {(): ONE}
    for k in range(1, W + 1):
        power = _tmul(power, X, W)
        axpy(out, Fraction((-1) ** (k + 1), k), power)
    return out


def bch_series(a: FreeLieSeries, b: FreeLieSeries, W: int) -> FreeLieSeries:
    """log(exp a . exp b) in the truncated tensor algebra, back in the Lyndon basis."""
    lie = a.lie
    pa, pb = lie.to_uea(a.terms), lie.to_uea(b.terms)
    if () in pa or () in pb:
        raise ConfigurationError("BCH arguments must have no weight-0 part")
    z = _tlog(_tmul(_texp(pa, W), _texp(pb, W), W), W)
    return FreeLieSeries(lie, lie.from_uea(z), _minW(W, _minW(a.W, b.W)))


def bch(a: str, b: str, W: int, lie: FreeLieAlgebra | None = None) -> FreeLieSeries:
    if W < 1:
        raise ConfigurationError("W must be >= 1")
    if lie is None:
        lie = class_lie(SuspensionSignature(((a, 0), (b, 0))))
    return bch_series(FreeLieSeries(lie, lie.gen(a)), FreeLieSeries(lie, lie.gen(b)), W)


def ead_series(a: FreeLieSeries, b: FreeLieSeries, W: int) -> FreeLieSeries:
    """e^{ad_a}(b) = sum_j ad_a^j(b)/j! through weight W."""
    out = FreeLieSeries(a.lie, {}, W)
    term = FreeLieSeries(a.lie, b.terms, W)
    j = 0
    while term.terms:
        out = out + term.scale(Fraction(1, factorial(j)))
        term = a.bracket(term)
        term = FreeLieSeries(a.lie, term.terms, W)
        j += 1
    return FreeLieSeries(a.lie, out.terms, _minW(W, _minW(a.W, b.W)))


# -- bracket trees --------------------------------------------------------

def tree(z: LieBasisElement):
    """Bracket tree: an int leaf or a pair (left, right)."""
    def b(w):
        if len(w) == 1:
            return w[0]
        u, v = standard_factorization(w)
        return (b(u), b(v))
    t = b(z.word)
    return (t, t) if z.square else t


def leaves(z: LieBasisElement) -> tuple:
    return z.word + z.word if z.square else z.word


def evaluate_tree(t, values: Sequence, bracket):
    """Substitute the leaves of t, in order, by ``values`` (vectors), bracketing with ``bracket``."""
    it = iter(values)

    def ev(node):
        if isinstance(node, int):
            return next(it)
        left = ev(node[0])
        right = ev(node[1])
        return bracket(left, right)

    return ev(t)


# -- map data -------------------------------------------------------------

@dataclass
class MapData:
    """rho: classes of Y -> FreeLie(classes of Z)."""

    name: str
    Z: SuspensionSignature
    Y: SuspensionSignature
    rho: dict                     # Y-class index -> FreeLieSeries over class_lie(Z)
    lie: FreeLieAlgebra = None
    degree_compatible: bool = field(init=False, default=True)

    def __post_init__(self):
        if self.lie is None:
            self.lie = class_lie(self.Z)
        bad = None
        for b, s in self.rho.items():
            p = self.Y.classes[b][1]
            for z in s.terms:
                if self.lie.degree(z) != p:
                    bad = (self.Y.classes[b][0], self.lie.name(z))
        self.degree_compatible = bad is None
        self._bad = bad

    @property
    def W(self):
        ws = [s.W for s in self.rho.values() if s.W is not None]
        return min(ws) if ws else None

    def check_degrees(self):
        if not self.degree_compatible:
            y, t = self._bad
            raise DegreeError(f"term {t} of rho({y}) has the wrong degree")

    def __str__(self):
        return "; ".join(f"{self.Y.classes[b][0]} -> {s}" for b, s in sorted(self.rho.items()))

    def to_json(self):
        return {
            "name": self.name,
            "Z": [list(c) for c in self.Z.classes],
            "Y": [list(c) for c in self.Y.classes],
            "W": self.W,
            "rho": {self.Y.classes[b][0]: s.to_json() for b, s in sorted(self.rho.items())},
        }


def builtin_map(name: str) -> MapData:
    """pinch(W), slide(W) or hopf."""
    m = re.fullmatch(r"\s*(pinch|slide|hopf)\s*(?:\(\s*(?:W\s*=\s*)?(\d+)\s*\))?\s*", name)
    if not m:
        raise NameError(f"unknown builtin map {name!r}")
    kind, W = m.group(1), int(m.group(2)) if m.group(2) else 4
    if kind == "pinch":
        Z = SuspensionSignature((("y1", 0), ("y2", 0)))
        Y = SuspensionSignature((("x", 0),))
        lie = class_lie(Z)
        rho = {0: bch("y1", "y2", W, lie)}
        return MapData(f"pinch({W})", Z, Y, rho, lie)
    if kind == "slide":
        Z = SuspensionSignature((("x", 0), ("y", 1)))
        Y = SuspensionSignature((("y", 1),))
        lie = class_lie(Z)
        rho = {0: ead_series(FreeLieSeries(lie, lie.gen("x")), FreeLieSeries(lie, lie.gen("y")), W)}
        return MapData(f"slide({W})", Z, Y, rho, lie)
    if m.group(2):
        raise NameError("hopf takes no weight argument")
    Z = SuspensionSignature((("x", 1),))
    Y = SuspensionSignature((("y", 2),))
    lie = class_lie(Z)
    x = lie.generator("x")
    rho = {0: FreeLieSeries(lie, {LieBasisElement.of(x.word, square=True): Fraction(1, 2)})}
    return MapData("hopf", Z, Y, rho, lie)


# -- parser ---------------------------------------------------------------

_TOK = re.compile(r"\s*(?:(\d+(?:/\d+)?)|([A-Za-z_][A-Za-z_0-9]*)|(->|[\[\](),*+\-=:]))")


def _tokens(text):
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        m = _TOK.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character at {text[pos:]!r}")
        pos = m.end()
        if m.group(1):
            out.append(("num", Fraction(m.group(1))))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            out.append(("op", m.group(3)))
    return out


class _Parser:
    def __init__(self, toks, lie):
        self.t, self.i, self.lie = toks, 0, lie

    def peek(self):
        return self.t[self.i] if self.i < len(self.t) else (None, None)

    def take(self, kind=None, val=None):
        k, v = self.peek()
        if k is None or (kind and k != kind) or (val is not None and v != val):
            raise ParseError(f"expected {val or kind}, got {v!r}")
        self.i += 1
        return v

    def expr(self):
        sign = ONE
        if self.peek() == ("op", "-"):
            self.take()
            sign = -ONE
        acc = self.term().scale(sign)
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()
            t = self.term()
            acc = acc + (t if op == "+" else t.scale(-ONE))
        return acc

    def term(self):
        c = ONE
        if self.peek()[0] == "num":
            c = self.take()
            if self.peek() == ("op", "*"):
                self.take()
            elif self.peek()[0] is None or self.peek() in (("op", "+"), ("op", "-"), ("op", ","), ("op", ")")):
                raise ParseError("a bare number is not a Lie element")
        return self.factor().scale(c)

    def _weight(self):
        if self.peek() == ("op", ","):
            self.take()
            if self.peek() == ("name", "W"):
                self.take()
                self.take("op", "=")
            return int(self.take("num"))
        return None

    def factor(self):
        k, v = self.peek()
        if k == "op" and v == "[":
            self.take()
            a = self.expr()
            self.take("op", ",")
            b = self.expr()
            self.take("op", "]")
            return a.bracket(b)
        if k == "op" and v == "(":
            self.take()
            a = self.expr()
            self.take("op", ")")
            return a
        if k == "name" and v in ("bch", "ead") and self.t[self.i + 1:self.i + 2] == [("op", "(")]:
            self.take()
            self.take("op", "(")
            a = self.expr()
            self.take("op", ",")
            b = self.expr()
            W = self._weight()
            self.take("op", ")")
            if W is None:
                raise ParseError(f"{v} needs a weight cutoff W=k")
            return bch_series(a, b, W) if v == "bch" else ead_series(a, b, W)
        if k == "name":
            self.take()
            try:
                return FreeLieSeries(self.lie, self.lie.gen(v))
            except ConfigurationError:
                raise ParseError(f"unknown class {v!r}") from None
        raise ParseError(f"unexpected token {v!r}")


def _decl(text):
    out = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)\s*:\s*(-?\d+)", part)
        if not m:
            raise ParseError(f"bad class declaration {part!r}")
        out.append((m.group(1), int(m.group(2))))
    return out


def parse_map(text: str) -> MapData:
    """``Z = x:1; Y = y:2; y -> 1/2*[x,x]`` or a builtin name.

    Undeclared Z classes have degree 0; undeclared Y classes take the degree
    of their image.
    """
    text = text.strip()
    try:
        return builtin_map(text)
    except NameError:
        pass
    stmts = [s.strip() for s in text.split(";") if s.strip()]
    zdecl, ydecl, maps = [], [], []
    for s in stmts:
        m = re.fullmatch(r"([ZY])\s*=\s*(.*)", s)
        if m:
            (zdecl if m.group(1) == "Z" else ydecl).extend(_decl(m.group(2)))
            continue
        if "->" not in s:
            raise ParseError(f"expected 'class -> series' in {s!r}")
        lhs, rhs = s.split("->", 1)
        lhs = lhs.strip()
        if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", lhs):
            raise ParseError(f"bad class name {lhs!r}")
        maps.append((lhs, rhs))
    if not maps:
        raise ParseError("no assignments in map")
    znames = [n for n, _ in zdecl]
    for _, rhs in maps:
        for k, v in _tokens(rhs):
            if k == "name" and v not in ("bch", "ead", "W") and v not in znames:
                znames.append(v)
                zdecl.append((v, 0))
    Z = SuspensionSignature(tuple(zdecl))
    lie = class_lie(Z)
    ydeg = dict(ydecl)
    rho, yclasses = {}, list(ydecl)
    for lhs, rhs in maps:
        p = _Parser(_tokens(rhs), lie)
        s = p.expr()
        if p.i != len(p.t):
            raise ParseError(f"trailing input in {rhs!r}")
        if lhs not in ydeg:
            degs = {lie.degree(z) for z in s.terms}
            if len(degs) > 1:
                raise DegreeError(f"image of {lhs} is not homogeneous")
            ydeg[lhs] = degs.pop() if degs else 0
            yclasses.append((lhs, ydeg[lhs]))
        idx = [n for n, _ in yclasses].index(lhs)
        if idx in rho:
            raise ParseError(f"{lhs} assigned twice")
        rho[idx] = s
    return MapData("custom", Z, SuspensionSignature(tuple(yclasses)), rho, lie)


# -- induced map ----------------------------------------------------------

class InducedMap:
    """Chain-level map M (x) S(H(Z) (x) g) -> M (x) S(H(Y) (x) g) for fixed coefficients."""

    def __init__(self, rho: MapData, cs):
        rho.check_degrees()
        self.rho = rho
        self.cs = cs
        self.src = suspension_complex(rho.Z, cs)
        self.tgt = suspension_complex(rho.Y, cs)
        self.g = cs.lie
        self._f1: dict = {}
        # per weight: list of (target class, coef, basis element)
        self.terms: dict = {}
        for b, s in rho.rho.items():
            for z, c in s.terms.items():
                self.terms.setdefault(FreeLieSeries.weight(z), []).append((b, c, z))

    def f1(self, factors: tuple) -> dict:
        """Corestriction on a product of (class, g-key) factors: {(class, g-key): coef}."""
        hit = self._f1.get(factors)
        if hit is not None:
            return hit
        n = len(factors)
        out: dict = {}
        Nz = self.src.N
        fdegs = [Nz.fdeg(a, z) for a, z in factors]
        hdeg = [Nz.classes[a][1] for a, _ in factors]
        gdeg = [self.g.degree(z) for _, z in factors]
        for b, c, ell in self.terms.get(n, ()):
            word = leaves(ell)
            t = tree(ell)
            lh = [-self.rho.Z.classes[i][1] for i in word]
            for sigma in permutations(range(n)):
                if any(factors[sigma[i]][0] != word[i] for i in range(n)):
                    continue
                s = koszul_sign(fdegs, sigma)
                e = 0
                for i in range(n):
                    for j in range(i + 1, n):
                        e += gdeg[sigma[i]] * hdeg[sigma[j]] + lh[j] * hdeg[sigma[i]]
                if e & 1:
                    s = -s
                vals = [{factors[sigma[i]][1]: ONE} for i in range(n)]
                v = evaluate_tree(t, vals, self.g.bracket)
                for w, x in v.items():
                    add_to(out, (b, w), s * c * x)
        self._f1[factors] = out
        return out

    def apply_key(self, key) -> dict:
        m, B = key
        fl = self.src.N.flatten(B)
        fdegs = [self.src.N.fdeg(a, z) for a, z in fl]
        out: dict = {}
        for blocks in set_partitions(len(fl)):
            order = [i for blk in blocks for i in blk]
            s = koszul_sign(fdegs, order)
            images = []
            for blk in blocks:
                im = self.f1(tuple(fl[i] for i in blk))
                if not im:
                    break
                images.append(list(im.items()))
            else:
                for combo in iproduct(*images):
                    c = s
                    fs = []
                    for f, x in combo:
                        c *= x
                        fs.append(f)
                    sg, packed = self.tgt.N.pack(fs)
                    if sg:
                        add_to(out, (m, packed), sg * c)
        return out

    def apply(self, v: Mapping) -> dict:
        out: dict = {}
        for k, c in v.items():
            axpy(out, c, self.apply_key(k))
        return out

    def matrix(self, src_basis, tgt_basis) -> SparseMatrix:
        tset = set(tgt_basis)
        cols = {}
        for k in src_basis:
            col = self.apply_key(k)
            for r in col:
                if r not in tset:
                    raise ConfigurationError("induced map leaves the target slice")
            cols[k] = col
        return SparseMatrix(tgt_basis, src_basis, cols)


def set_partitions(n: int):
    """Set partitions of range(n); blocks sorted by minimum, elements increasing."""
    if n == 0:
        yield []
        return
    for p in set_partitions(n - 1):
        for i in range(len(p)):
            yield p[:i] + [p[i] + [n - 1]] + p[i + 1:]
        yield p + [[n - 1]]


def target_selector(sel: SliceSelector) -> SliceSelector:
    return SliceSelector(sel.degree, sel.color)


def induced_map(rho: MapData, cs, sel: SliceSelector) -> SparseMatrix:
    F = InducedMap(rho, cs)
    src = F.src.basis(sel)
    tgt = F.tgt.basis(target_selector(sel))
    return F.matrix(src, tgt)


@dataclass
class ChainMapReport:
    commutes: bool
    checked: int
    failure: str | None = None

    def to_json(self):
        return {"commutes": self.commutes, "checked_columns": self.checked, "first_failure": self.failure}


def verify_chain_map(rho: MapData, cs, sel: SliceSelector, raise_on_failure=False) -> ChainMapReport:
    """D_Y o F = F o D_Z from the source slice at degree q to degree q-1."""
    F = InducedMap(rho, cs)
    s = build_slice(F.src, sel)
    tsel = target_selector(sel)
    t = build_slice(F.tgt, tsel)
    Fq = F.matrix(s.basis, t.basis)
    Flow = F.matrix(s.bases[sel.degree - 1], t.bases[sel.degree - 1])
    diff = t.d_q @ Fq - Flow @ s.d_q
    failure = None
    if not diff.is_zero():
        k = sorted(diff.columns)[0]
        failure = F.src.key_name(k)
        if raise_on_failure:
            raise ChainMapError(f"induced map does not commute with d at {failure}", witness=k)
    return ChainMapReport(failure is None, len(s.basis), failure)


# -- star product ---------------------------------------------------------

def star_product(A: Mapping, B: Mapping, lie) -> dict:
    """Associative product on S(g) transported from U(g) by symmetrisation."""
    ua: dict = {}
    ub: dict = {}
    for mono, c in A.items():
        axpy(ua, c, pbw_map(lie, mono))
    for mono, c in B.items():
        axpy(ub, c, pbw_map(lie, mono))
    return pbw_decompose(lie, lie.uea.mul(ua, ub))


def star_map_matrix(cs, sel: SliceSelector) -> SparseMatrix:
    """m (x) A (x) B -> m (x) A*B from the two-class to the one-class Hodge-split complex."""
    src = suspension_complex(SuspensionSignature((("y1", 0), ("y2", 0))), cs)
    tgt = suspension_complex(SuspensionSignature((("x", 0),)), cs)
    sb = src.basis(sel)
    tb = tgt.basis(target_selector(sel))
    tset = set(tb)
    cols = {}
    for m, (A, B) in sb:
        col = {(m, (mono,)): c for mono, c in star_product({A: ONE}, {B: ONE}, cs.lie).items()}
        for r in col:
            if r not in tset:
                raise ConfigurationError("star product leaves the target slice")
        cols[(m, (A, B))] = col
    return SparseMatrix(tb, sb, cols)


def wedge_pinch_matrix(cs, sel: SliceSelector) -> SparseMatrix:
    """x1 -> x1 x2 acting on the two-circle wedge complex, in PBW coordinates."""
    from .autf import FreeGroupEndo, act
    from .hochschild.complexes import wedge_complex
    from .hochschild.hodge import from_pbw, to_pbw
    src = suspension_complex(SuspensionSignature((("y1", 0), ("y2", 0))), cs)
    tgt = suspension_complex(SuspensionSignature((("x", 0),)), cs)
    w2, w1 = wedge_complex(2, cs), wedge_complex(1, cs)
    psi = FreeGroupEndo(2, (((0, 1), (1, 1)),))
    sb = src.basis(sel)
    tb = tgt.basis(target_selector(sel))
    cols = {k: to_pbw(w1, act(psi, from_pbw(w2, {k: ONE}), w2)) for k in sb}
    return SparseMatrix(tb, sb, cols)


def pinch_agreement(W: int, cs, sel: SliceSelector) -> dict:
    """Three-way comparison: rho-induced map, star product, wedge action."""
    F = induced_map(builtin_map(f"pinch({W})"), cs, sel)
    S = star_map_matrix(cs, sel)
    A = wedge_pinch_matrix(cs, sel)
    return {"induced_vs_star": F == S, "star_vs_wedge": S == A,
            "verdict": "AGREE" if F == S == A else "DISAGREE"}


# -- composition ----------------------------------------------------------

def substitute(series: FreeLieSeries, images: Mapping[int, FreeLieSeries], lie) -> FreeLieSeries:
    """Replace each letter i of ``series`` by images[i] (series over ``lie``)."""
    W = series.W
    for s in images.values():
        W = _minW(W, s.W)
    out = FreeLieSeries(lie, {}, W)
    for z, c in series.terms.items():
        vals = [images[i] for i in leaves(z)]
        v = evaluate_tree(tree(z), vals, lambda a, b: FreeLieSeries(lie, a.bracket(b).terms, W))
        out = out + v.scale(c)
    return FreeLieSeries(lie, out.terms, W)


def compose_maps(outer: MapData, inner: MapData) -> MapData:
    """rho for the composite: Y_outer -> FreeLie(Z_inner), with Z_outer = Y_inner.

    The induced maps compose as F_outer o F_inner.
    """
    if [p for _, p in outer.Z.classes] != [p for _, p in inner.Y.classes]:
        raise ConfigurationError("class degrees do not match for composition")
    images = {i: inner.rho.get(i, FreeLieSeries(inner.lie, {})) for i in range(len(inner.Y.classes))}
    rho = {b: substitute(s, images, inner.lie) for b, s in outer.rho.items()}
    return MapData(f"{outer.name}o{inner.name}", inner.Z, outer.Y, rho, inner.lie)
