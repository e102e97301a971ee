"""Shared fixtures, hypothesis strategies and independent oracles."""
from __future__ import annotations

from fractions import Fraction
from functools import cache
from itertools import permutations, product
from math import factorial

import sympy
from hypothesis import strategies as st

from hochpir.autf import FreeGroupEndo
from hochpir.coeffs import bead_coalgebra, chevalley_system, dual_numbers, trivial_comodule
from hochpir.exactla import add_to
from hochpir.hochschild.complexes import (SliceSelector, SuspensionSignature, cobar_complex, gr_complex,
                                          suspension_complex, wedge_complex)
from hochpir.superalg.lie import FreeLieAlgebra
from hochpir.superalg.signs import koszul_sign

ONE = Fraction(1)


# -- coefficient systems ---------------------------------------------------

@cache
def system(name: str):
    if name == "dual":
        return dual_numbers()
    if name == "dual4":
        return dual_numbers(4)
    if name == "bead2":
        return bead_coalgebra(2)
    if name == "bead2_24":
        return bead_coalgebra(2, [2, 4])
    if name == "bead3":
        return bead_coalgebra(3)
    if name == "chev_ab":
        g = FreeLieAlgebra([("a", 1, (1, 0)), ("b", 2, (0, 1))])
        return chevalley_system(g, 3)
    if name == "chev_a":
        g = FreeLieAlgebra([("a", 1, (1,))])
        return chevalley_system(g, 4)
    if name == "chev_dg":
        g = FreeLieAlgebra([("a", 1, (1,)), ("b", 2, (1,))])
        g = FreeLieAlgebra([("a", 1, (1,)), ("b", 2, (1,))], {"b": {g.generator("a"): ONE}})
        return chevalley_system(g, 3)
    if name == "dual_trivial":
        return trivial_comodule(dual_numbers())
    raise KeyError(name)


SYSTEMS = ["dual", "dual4", "bead2", "bead2_24", "bead3", "chev_ab", "chev_a", "chev_dg", "dual_trivial"]
# systems whose comodule is the coalgebra itself (M = C)
MC_SYSTEMS = ["dual", "bead2", "bead2_24", "chev_ab", "chev_a"]


def color_budget(name: str, n: int) -> int:
    cs = system(name)
    cut = cs.coalgebra.weight_cutoff
    b = 3 if n >= 3 else 4
    return b if cut is None else min(b, cut)


def colors_upto(rank: int, total: int):
    return [c for c in product(range(total + 1), repeat=rank) if 0 < sum(c) <= total]


def make_complex(kind: str, cs, n: int = 1, classes=None):
    if kind == "wedge":
        return wedge_complex(n, cs)
    if kind == "cobar":
        return cobar_complex(n, cs)
    if kind == "gr":
        return gr_complex(n, cs)
    return suspension_complex(SuspensionSignature(tuple(classes)), cs)


@st.composite
def slices(draw, kinds=("wedge", "cobar", "gr", "suspension"), systems=SYSTEMS, max_n=3):
    """(complex, selector) with a nonempty degree-q basis."""
    name = draw(st.sampled_from(systems))
    cs = system(name)
    kind = draw(st.sampled_from(kinds))
    n = draw(st.integers(1, max_n))
    classes = None
    if kind == "suspension":
        ps = draw(st.lists(st.integers(0, 3), min_size=1, max_size=max_n))
        classes = [(f"h{i + 1}", p) for i, p in enumerate(ps)]
        n = len(ps)
    cx = make_complex(kind, cs, n, classes)
    color = draw(st.sampled_from(colors_upto(cs.color_rank, color_budget(name, n))))
    degs = sorted({cx.degree(k) for k in cx.keys_of_color(color)})
    if not degs:
        degs = [0]
    q = draw(st.sampled_from(degs))
    hodge = None
    if kind in ("gr", "suspension") and draw(st.booleans()):
        hodge = draw(st.integers(0, sum(color)))
    return cx, SliceSelector(q, color, hodge)


@st.composite
def words(draw, n: int, max_len: int = 4):
    letters = st.tuples(st.integers(0, n - 1), st.sampled_from([1, -1]))
    w = draw(st.lists(letters, max_size=max_len))
    if draw(st.booleans()):
        # splice in a cancelling pair x_j x_j^{-1} (or x_j^{-1} x_j)
        j = draw(st.integers(0, n - 1))
        e = draw(st.sampled_from([1, -1]))
        pos = draw(st.integers(0, len(w)))
        w = w[:pos] + [(j, e), (j, -e)] + w[pos:]
    return tuple(w)


@st.composite
def endos(draw, n: int, max_len: int = 3):
    return FreeGroupEndo(n, tuple(draw(words(n, max_len)) for _ in range(n)))


def unreduced(n: int, raw_words) -> FreeGroupEndo:
    """An endomorphism object that keeps letters exactly as given."""
    psi = FreeGroupEndo(n, tuple(() for _ in range(n)))
    object.__setattr__(psi, "words", tuple(tuple(w) for w in raw_words))
    return psi


@st.composite
def chains(draw, cx, basis):
    coeffs = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    picked = draw(st.lists(st.sampled_from(basis), min_size=1, max_size=6)) if basis else []
    out: dict = {}
    for k in picked:
        add_to(out, k, draw(coeffs))
    return out


# -- oracles ---------------------------------------------------------------

def sympy_matrix(M):
    rows = {r: i for i, r in enumerate(M.row_keys)}
    cols = {c: j for j, c in enumerate(M.col_keys)}
    out = sympy.zeros(len(rows), len(cols))
    for c, col in M.columns.items():
        for r, x in col.items():
            out[rows[r], cols[c]] = sympy.Rational(x.numerator, x.denominator)
    return out


def sympy_rank(M) -> int:
    if not M.row_keys or not M.col_keys:
        return 0
    return sympy_matrix(M).rank()


def oracle_homology_dim(sl) -> int:
    return len(sl.basis) - sympy_rank(sl.d_q) - sympy_rank(sl.d_q1)


def ssyt_count(shape, content) -> int:
    """Brute-force count of semistandard tableaux of ``shape`` with ``content``."""
    cells = [(i, j) for i, row in enumerate(shape) for j in range(row)]
    letters = [a + 1 for a, m in enumerate(content) for _ in range(m)]
    if len(letters) != len(cells):
        return 0
    seen = set()
    for perm in set(permutations(letters)):
        t = dict(zip(cells, perm))
        ok = all(t[(i, j)] <= t[(i, j + 1)] for i, j in cells if (i, j + 1) in t)
        ok = ok and all(t[(i, j)] < t[(i + 1, j)] for i, j in cells if (i + 1, j) in t)
        if ok:
            seen.add(perm)
    return len(seen)


def dynkin_bch(W: int):
    """log(e^a e^b) through weight W by Dynkin's formula, as {word over 'ab': coefficient}.

    Brackets are expanded as commutators [u, v] = uv - vu of words.
    """
    def bracket_word(seq):
        # right-nested [s1, [s2, [..., sk]]] expanded as a polynomial
        poly = {(seq[-1],): ONE}
        for x in reversed(seq[:-1]):
            new: dict = {}
            for w, c in poly.items():
                add_to(new, (x,) + w, c)
                add_to(new, w + (x,), -c)
            poly = {k: v for k, v in new.items() if v}
        return poly

    out: dict = {}
    for k in range(1, W + 1):
        pairs = [(r, s) for r in range(W + 1) for s in range(W + 1) if 0 < r + s <= W]
        for choice in product(pairs, repeat=k):
            total = sum(r + s for r, s in choice)
            if total > W:
                continue
            seq = []
            denom = 1
            for r, s in choice:
                seq += ["a"] * r + ["b"] * s
                denom *= factorial(r) * factorial(s)
            c = Fraction((-1) ** (k - 1), k) / (total * denom)
            for w, x in bracket_word(seq).items():
                add_to(out, "".join(w), c * x)
    return {w: c for w, c in out.items() if c}


def hopf_oracle(F, key) -> dict:
    """Direct S_{2k} expansion of the Hopf-map formula on a source key.

    s^-1 g_1 ... s^-1 g_2k -> (1/(2^k k!)) sum_sigma eps
    prod_j s^-2 [g_sigma(2j-1), g_sigma(2j)], where eps is the Koszul sign of
    sigma on the shifted factors times (-1)^{|s^-1 g|} for each pair head.
    """
    src, tgt, g = F.src, F.tgt, F.g
    m, B = key
    fl = src.N.flatten(B)
    L = len(fl)
    if L % 2:
        return {}
    k = L // 2
    degs = [src.N.fdeg(a, z) for a, z in fl]
    out: dict = {}
    for s in permutations(range(L)):
        terms = [((), Fraction(koszul_sign(degs, list(s))))]
        for j in range(k):
            a, b = fl[s[2 * j]][1], fl[s[2 * j + 1]][1]
            e = -1 if (g.degree(a) + 1) & 1 else 1
            br = g.bracket({a: ONE}, {b: ONE})
            terms = [(t + ((0, z),), c * x * e) for t, c in terms for z, x in br.items()]
        for t, c in terms:
            sg, packed = tgt.N.pack(list(t))
            if sg:
                add_to(out, (m, packed), sg * c / (2 ** k * factorial(k)))
    return {a: b for a, b in out.items() if b}
