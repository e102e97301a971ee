"""Chain-level right action of free-group homomorphisms on wedge complexes.

A homomorphism F_k -> F_n, x_i -> w_i, acts contravariantly on the wedge
complexes: M (x) H^{(x)n} -> M (x) H^{(x)k}.  Each slot b_a is split by the
iterated coproduct over all occurrences of x_a^{+-1} in the words, parts are
routed in reading order, inverse letters apply the antipode, and each target
slot multiplies its parts in word order.  The Koszul sign is the sign of
moving the parts from source order to target order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Mapping, Sequence

from .errors import (AbelianizationMismatchError, ConfigurationError, ParseError,
                     SliceInstabilityError)
from .exactla import SparseMatrix, add_to, axpy, induced_operator
from .superalg.signs import koszul_sign

ONE = Fraction(1)


def reduce_word(word) -> tuple:
    out: list = []
    for i, e in word:
        if out and out[-1] == (i, -e):
            out.pop()
        else:
            out.append((i, e))
    return tuple(out)


def invert_word(word) -> tuple:
    return tuple((i, -e) for i, e in reversed(word))


@dataclass(frozen=True)
class FreeGroupEndo:
    """x_i -> words[i]; letters are (index, +-1) with 0-based indices < rank."""

    rank: int
    words: tuple

    def __post_init__(self):
        words = tuple(reduce_word(tuple((int(i), int(e)) for i, e in w)) for w in self.words)
        for w in words:
            for i, e in w:
                if not 0 <= i < self.rank or e not in (1, -1):
                    raise ConfigurationError(f"bad letter {(i, e)} for rank {self.rank}")
        object.__setattr__(self, "words", words)

    @property
    def source_rank(self):
        return len(self.words)

    @property
    def is_endo(self):
        return self.source_rank == self.rank

    def __str__(self):
        return ", ".join(f"x{i + 1}->{word_str(w)}" for i, w in enumerate(self.words))


def word_str(w) -> str:
    if not w:
        return "1"
    return " ".join(f"x{i + 1}" + ("^-1" if e < 0 else "") for i, e in w)


def identity(n: int) -> FreeGroupEndo:
    return FreeGroupEndo(n, tuple(((i, 1),) for i in range(n)))


def compose(a: FreeGroupEndo, b: FreeGroupEndo) -> FreeGroupEndo:
    """a o b by substitution: x_i -> a(b(x_i))."""
    if b.rank != a.source_rank:
        raise ConfigurationError("ranks do not match for composition")
    words = []
    for w in b.words:
        out: list = []
        for i, e in w:
            out.extend(a.words[i] if e > 0 else invert_word(a.words[i]))
        words.append(tuple(out))
    return FreeGroupEndo(a.rank, tuple(words))


def abelianization(psi: FreeGroupEndo) -> list[list[int]]:
    """A[j][i] = signed count of x_j in psi(x_i)."""
    A = [[0] * psi.source_rank for _ in range(psi.rank)]
    for i, w in enumerate(psi.words):
        for j, e in w:
            A[j][i] += e
    return A


def conjugation(w, n: int) -> FreeGroupEndo:
    w = reduce_word(w)
    return FreeGroupEndo(n, tuple(w + ((i, 1),) + invert_word(w) for i in range(n)))


def power_map(r: int, i: int, n: int) -> FreeGroupEndo:
    """x_i -> x_i^r, other generators fixed (0-based i)."""
    words = [((k, 1),) for k in range(n)]
    words[i] = ((i, 1 if r > 0 else -1),) * abs(r)
    return FreeGroupEndo(n, tuple(words))


_NIELSEN = [
    (re.compile(r"^id$"), lambda m, n: identity(n)),
    (re.compile(r"^E_?(\d)b_?(\d)b$|^E_(\d+)b_(\d+)b$"), "Ebar"),
    (re.compile(r"^E_?(\d)(\d)$|^E_(\d+)_(\d+)$"), "E"),
    (re.compile(r"^swap_?(\d)(\d)$|^swap_(\d+)_(\d+)$"), "swap"),
    (re.compile(r"^invert_?(\d+)$"), "invert"),
    (re.compile(r"^power_?(-?\d+)_(\d+)$"), "power"),
]


def nielsen(name: str, n: int) -> FreeGroupEndo:
    """E12, E1b2b (opposite order), swap12, invert1, power3_1 (x1 -> x1^3), id."""
    name = name.strip()
    for rx, kind in _NIELSEN:
        m = rx.match(name)
        if not m:
            continue
        if callable(kind):
            return kind(m, n)
        g = [x for x in m.groups() if x is not None]
        if kind == "power":
            return power_map(int(g[0]), _gen(int(g[1]), n), n)
        if kind == "invert":
            i = _gen(int(g[0]), n)
            words = [((k, 1),) for k in range(n)]
            words[i] = ((i, -1),)
            return FreeGroupEndo(n, tuple(words))
        i, j = _gen(int(g[0]), n), _gen(int(g[1]), n)
        if i == j:
            raise NameError(f"{name}: indices must differ")
        words = [((k, 1),) for k in range(n)]
        if kind == "E":
            words[i] = ((i, 1), (j, 1))
        elif kind == "Ebar":
            words[i] = ((j, 1), (i, 1))
        else:
            words[i], words[j] = ((j, 1),), ((i, 1),)
        return FreeGroupEndo(n, tuple(words))
    raise NameError(f"unknown Nielsen generator {name!r}")


def _gen(i, n):
    if not 1 <= i <= n:
        raise NameError(f"generator index {i} out of range for n={n}")
    return i - 1


_TOKEN = re.compile(r"\s*(?:([xX])(\d+)(?:\^(-?\d+))?|(1))\s*")


def parse_word(text: str, n: int) -> tuple:
    pos, out = 0, []
    text = text.strip()
    if text in ("", "1", "e"):
        return ()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse word at {text[pos:]!r}")
        pos = m.end()
        if m.group(4):
            continue
        i = int(m.group(2))
        if not 1 <= i <= n:
            raise ParseError(f"generator x{i} out of range for n={n}")
        p = int(m.group(3)) if m.group(3) else 1
        if m.group(1) == "X":
            p = -p
        out.extend([(i - 1, 1 if p > 0 else -1)] * abs(p))
    return reduce_word(out)


def parse_endo(text: str, n: int) -> FreeGroupEndo:
    """``x1->x1 x2, x2->x2^-1 x1``; unassigned generators are fixed; X1 = x1^-1."""
    text = text.strip()
    if not text or text == "id":
        return identity(n)
    if "->" not in text:
        try:
            return nielsen(text, n)
        except NameError as exc:
            raise ParseError(str(exc)) from None
    words = [((k, 1),) for k in range(n)]
    seen = set()
    for part in text.split(","):
        if "->" not in part:
            raise ParseError(f"expected 'xi->word' in {part!r}")
        lhs, rhs = part.split("->", 1)
        m = re.fullmatch(r"\s*x(\d+)\s*", lhs)
        if not m:
            raise ParseError(f"bad left-hand side {lhs!r}")
        i = int(m.group(1))
        if not 1 <= i <= n:
            raise ParseError(f"generator x{i} out of range for n={n}")
        if i in seen:
            raise ParseError(f"x{i} assigned twice")
        seen.add(i)
        words[i - 1] = parse_word(rhs, n)
    return FreeGroupEndo(n, tuple(words))


# -- action ---------------------------------------------------------------

def act_key(psi: FreeGroupEndo, key, H) -> dict:
    m, B = key
    if len(B) != psi.rank:
        raise ConfigurationError(f"chain has {len(B)} slots, homomorphism targets rank {psi.rank}")
    occ = [[] for _ in range(psi.rank)]      # per letter: list of (slot, position)
    for i, w in enumerate(psi.words):
        for j, (a, e) in enumerate(w):
            occ[a].append((i, j))
    choices = []
    for a in range(psi.rank):
        r = len(occ[a])
        if r == 0:
            if B[a]:
                return {}
            choices.append([(ONE, ())])
        else:
            choices.append(H.coproduct(B[a], r))
    # position of each part in the original order
    reading = [(i, j) for i, w in enumerate(psi.words) for j in range(len(w))]
    part_of = {}
    base = 0
    for a in range(psi.rank):
        for p, ij in enumerate(occ[a]):
            part_of[ij] = base + p
        base += len(occ[a])
    order = [part_of[ij] for ij in reading]
    out: dict = {}
    for combo in iproduct(*choices):
        coef = ONE
        parts = []
        for c, ps in combo:
            coef *= c
            parts.extend(ps)
        if not coef:
            continue
        degs = [H.degree(p) for p in parts]
        coef *= koszul_sign(degs, order)
        slots = []
        for i, w in enumerate(psi.words):
            acc = {(): ONE}
            for j, (a, e) in enumerate(w):
                p = parts[part_of[(i, j)]]
                f = {p: ONE} if e > 0 else H.antipode(p)
                acc = H.mul(acc, f)
                if not acc:
                    break
            slots.append(acc)
            if not acc:
                break
        else:
            for combo_keys in iproduct(*[list(s.items()) for s in slots]):
                c = coef
                ks = []
                for k, x in combo_keys:
                    c *= x
                    ks.append(k)
                add_to(out, (m, tuple(ks)), c)
    return out


def act(psi: FreeGroupEndo, v: Mapping, cx) -> dict:
    """Psi^* applied to a chain of a wedge or cobar complex ``cx``."""
    H = cx.N.H
    out: dict = {}
    for k, c in v.items():
        axpy(out, c, act_key(psi, k, H))
    return out


def action_matrix(psi: FreeGroupEndo, sl, target=None) -> SparseMatrix:
    """Matrix of Psi^* from slice ``sl`` to ``target`` (default: sl itself)."""
    tgt = sl if target is None else target
    if sl.complex.N.symmetric:
        raise ConfigurationError("chain-level action needs a wedge or cobar slice")
    rows = tgt.basis
    rset = set(rows)
    H = sl.complex.N.H
    cols = {}
    for k in sl.basis:
        col = act_key(psi, k, H)
        for r in col:
            if r not in rset:
                raise SliceInstabilityError(
                    f"action leaves the slice at {tgt.complex.key_name(r)}", witness=r)
        cols[k] = col
    return SparseMatrix(rows, sl.basis, cols)


def induced_on_homology(psi: FreeGroupEndo, hom, target=None) -> SparseMatrix:
    thom = hom if target is None else target
    op = action_matrix(psi, hom.slice, thom.slice)
    return induced_operator(op, hom.kernel, hom.image, thom.kernel, thom.image)


def chain_map_defect(psi: FreeGroupEndo, sl, target=None) -> SparseMatrix:
    """d o Psi^* - Psi^* o d on the slice's degree-q basis (zero for a chain map)."""
    from .hochschild.complexes import build_slice
    tgt = sl if target is None else target
    low_src = build_slice(sl.complex, sl.selector.shifted(-1))
    low_tgt = build_slice(tgt.complex, tgt.selector.shifted(-1))
    a_q = action_matrix(psi, sl, tgt)
    a_low = action_matrix(psi, low_src, low_tgt)
    return tgt.d_q @ a_q - a_low @ sl.d_q


# -- associated graded ----------------------------------------------------

def gr_action_key(psi: FreeGroupEndo, key, N) -> dict:
    """Abelianised substitution h_a -> sum_i A[a][i] h_i on S(H^1 (x) g)."""
    A = abelianization(psi)
    m, B = key
    factors = N.flatten(B)
    opts = []
    for a, z in factors:
        row = [(i, A[a][i]) for i in range(psi.source_rank) if A[a][i]]
        if not row:
            return {}
        opts.append([((i, z), c) for i, c in row])
    out: dict = {}
    target_k = psi.source_rank
    for combo in iproduct(*opts):
        c = ONE
        fs = []
        for f, x in combo:
            c *= x
            fs.append(f)
        s, packed = _pack_for(N, fs, target_k)
        if s:
            add_to(out, (m, packed), s * c)
    return out


def _pack_for(N, factors, k):
    from .superalg.pbw import sym_product
    degs = [N.lie.degree(z) for _, z in factors]
    s, mono = sym_product(list(factors), degs)
    if not s:
        return 0, None
    per = [[] for _ in range(k)]
    for a, z in mono:
        per[a].append(z)
    return s, tuple(tuple(p) for p in per)


def gr_action_matrix(psi: FreeGroupEndo, gr_slice, target=None) -> SparseMatrix:
    tgt = gr_slice if target is None else target
    N = gr_slice.complex.N
    if not N.symmetric or any(p for _, p in N.classes):
        raise ConfigurationError("gr_action_matrix needs a gr slice (circle classes)")
    rows = tgt.basis
    rset = set(rows)
    cols = {}
    for k in gr_slice.basis:
        col = gr_action_key(psi, k, N)
        for r in col:
            if r not in rset:
                raise SliceInstabilityError("gr action leaves the slice", witness=r)
        cols[k] = col
    return SparseMatrix(rows, gr_slice.basis, cols)


@dataclass
class FiltrationReport:
    preserved: bool
    layers_match: bool
    checked: int
    leak: object = None
    mismatch: object = None

    @property
    def ok(self):
        return self.preserved and self.layers_match

    def to_json(self):
        return {"filtration_preserved": self.preserved, "layers_match_gr": self.layers_match,
                "checked": self.checked, "leak": None if self.leak is None else str(self.leak),
                "mismatch": None if self.mismatch is None else str(self.mismatch)}


def hodge_filtration_check(psi: FreeGroupEndo, sl, layers=True) -> FiltrationReport:
    """Check F_m -> F_m and, per Hodge layer, agreement with the gr action.

    Works in PBW coordinates: each symmetric basis element of the slice's
    color and degree is mapped to the wedge complex, acted on, and decomposed
    again.  Components above the source Hodge degree are leaks; the component
    of equal Hodge degree must equal ``gr_action_key``.
    """
    from .hochschild.complexes import gr_complex
    from .hochschild.hodge import from_pbw, to_pbw
    cx = sl.complex
    gr = gr_complex(cx.n, cx.cs)
    gr_target = gr_complex(psi.source_rank, cx.cs)
    keys = gr.basis(sl.selector)
    preserved = matched = True
    leak = mismatch = None
    for k in keys:
        h = gr.hodge(k)
        w = to_pbw(cx, act(psi, from_pbw(cx, {k: ONE}), cx))
        top = {}
        for kk, c in w.items():
            hk = gr_target.hodge(kk)
            if hk > h:
                preserved = False
                leak = leak or (gr.key_name(k), gr_target.key_name(kk))
            elif hk == h:
                top[kk] = c
        if layers and top != gr_action_key(psi, k, gr.N):
            matched = False
            mismatch = mismatch or gr.key_name(k)
    return FiltrationReport(preserved, matched, len(keys), leak, mismatch)


# -- factoring test -------------------------------------------------------

@dataclass
class FactoringVerdict:
    verdict: str
    matrices: tuple
    witness_index: int | None = None
    witness_chain: dict | None = None
    difference: list | None = None
    difference_chain: dict | None = None

    def to_json(self, cx=None):
        from .exactla import fmt
        name = cx.key_name if cx is not None else str
        out = {"verdict": self.verdict}
        if self.witness_index is not None:
            out["witness_class"] = self.witness_index
            out["witness_chain"] = {name(k): fmt(c) for k, c in sorted(self.witness_chain.items())}
            out["difference_coordinates"] = [fmt(c) for c in self.difference]
            out["difference_chain"] = {name(k): fmt(c) for k, c in sorted(self.difference_chain.items())}
        return out


def gl_factoring_test(pair: Sequence[FreeGroupEndo], hom) -> FactoringVerdict:
    a, b = pair
    if abelianization(a) != abelianization(b):
        raise AbelianizationMismatchError("the two endomorphisms have different abelianizations")
    Ma = induced_on_homology(a, hom)
    Mb = induced_on_homology(b, hom)
    if Ma == Mb:
        return FactoringVerdict("INCONCLUSIVE", (Ma, Mb))
    D = Ma - Mb
    j = min(D.columns)
    diff = [D.entry(i, j) for i in range(hom.dim)]
    reps = hom.representatives.vectors
    chain: dict = {}
    for i, c in enumerate(diff):
        axpy(chain, c, reps[i])
    return FactoringVerdict("NOT_FACTORING", (Ma, Mb), j, reps[j], diff, chain)


@dataclass
class InnerReport:
    trivial_on_homology: bool
    trivial_on_chains: bool
    counterexample: object = None

    def to_json(self):
        return {"trivial_on_homology": self.trivial_on_homology,
                "trivial_on_chains": self.trivial_on_chains,
                "counterexample": self.counterexample}


def inner_triviality_check(w, sl, hom) -> InnerReport:
    n = sl.complex.n
    psi = conjugation(w, n)
    M = induced_on_homology(psi, hom)
    ident = SparseMatrix(range(hom.dim), range(hom.dim), {i: {i: ONE} for i in range(hom.dim)})
    chains = action_matrix(psi, sl)
    cid = SparseMatrix(sl.basis, sl.basis, {k: {k: ONE} for k in sl.basis})
    bad = None
    if M != ident:
        bad = min((M - ident).columns)
    return InnerReport(M == ident, chains == cid, bad)
