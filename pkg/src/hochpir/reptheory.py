"""GL(n) and S_N bookkeeping: Weyl dimensions, Kostka numbers, Schur
decomposition of weight characters, symmetric-group characters and
isotypic projectors for the color-permutation action on bead complexes.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product as iproduct
from math import factorial, prod
from typing import Mapping, Sequence

from .errors import (ConfigurationError, IncompleteFamilyError, LengthError,
                     NegativeMultiplicityError, SizeMismatchError)
from .exactla import SparseMatrix, add_to, axpy, induced_operator, rank

ONE = Fraction(1)


# -- partitions -----------------------------------------------------------

def partition(parts) -> tuple:
    p = tuple(int(x) for x in parts if int(x) != 0)
    if any(x < 0 for x in p) or list(p) != sorted(p, reverse=True):
        raise ConfigurationError(f"{parts} is not a partition")
    return p


def parse_partition(text: str) -> tuple:
    try:
        return partition(x for x in text.replace(" ", "").split(",") if x)
    except ValueError as exc:
        raise ConfigurationError(f"bad partition {text!r}") from exc


@lru_cache(maxsize=None)
def partitions(N: int, max_len: int | None = None, max_part: int | None = None) -> tuple:
    """Partitions of N in reverse lexicographic order."""
    if max_part is None:
        max_part = N
    if N == 0:
        return ((),)
    if max_len == 0:
        return ()
    out = []
    for k in range(min(N, max_part), 0, -1):
        for rest in partitions(N - k, None if max_len is None else max_len - 1, k):
            out.append((k,) + rest)
    return tuple(out)


def pad(lam, n) -> tuple:
    lam = tuple(lam)
    if len(lam) > n:
        raise LengthError(f"partition {lam} has more than {n} parts")
    return lam + (0,) * (n - len(lam))


def dominates(a, b) -> bool:
    sa = sb = 0
    for x, y in zip(pad(a, max(len(a), len(b))), pad(b, max(len(a), len(b)))):
        sa, sb = sa + x, sb + y
        if sa < sb:
            return False
    return True


# -- GL(n) ----------------------------------------------------------------

def weyl_dim(lam, n: int) -> int:
    lam = pad(partition(lam), n)
    num = den = 1
    for i in range(n):
        for j in range(i + 1, n):
            num *= lam[i] - lam[j] + j - i
            den *= j - i
    return num // den


def _horizontal_strips(lam: tuple, k: int):
    """Shapes mu with lam/mu a horizontal strip of size k."""
    lam = list(lam)
    out = []

    def rec(i, left, mu):
        if i == len(lam):
            if left == 0:
                out.append(tuple(x for x in mu if x))
            return
        nxt = lam[i + 1] if i + 1 < len(lam) else 0
        for r in range(min(left, lam[i] - nxt) + 1):
            mu.append(lam[i] - r)
            rec(i + 1, left - r, mu)
            mu.pop()

    rec(0, k, [])
    return out


@lru_cache(maxsize=None)
def _kostka(lam: tuple, mu: tuple) -> int:
    if not mu:
        return 1 if not lam else 0
    return sum(_kostka(nu, mu[:-1]) for nu in _horizontal_strips(lam, mu[-1]))


def kostka(lam, mu) -> int:
    """Semistandard tableaux of shape lam and content mu (a composition)."""
    lam = partition(lam)
    mu = tuple(int(x) for x in mu)
    if sum(lam) != sum(mu):
        raise SizeMismatchError(f"|{lam}| != |{mu}|")
    return _kostka(lam, mu)


WeightCharacter = dict   # padded dominant weight -> weight-space dimension
SchurExpansion = dict    # partition -> multiplicity


def _orbit_size(w) -> int:
    counts: dict = {}
    for x in w:
        counts[x] = counts.get(x, 0) + 1
    return factorial(len(w)) // prod(factorial(c) for c in counts.values())


def schur_decompose(chi: Mapping, n: int | None = None) -> dict:
    """Multiplicities of V_lambda in the polynomial character chi.

    chi maps dominant weights (padded to length n) to dimensions.  Each
    total degree is peeled in reverse lexicographic order, which extends
    dominance, using the unitriangular Kostka matrix.
    """
    chi = {tuple(w): int(c) for w, c in chi.items() if c}
    if n is None:
        n = max((len(w) for w in chi), default=0)
    chi = {pad(partition(w), n): c for w, c in chi.items()}
    out: dict = {}
    for total in sorted({sum(w) for w in chi}):
        rem = {w: c for w, c in chi.items() if sum(w) == total}
        for lam in partitions(total, n):
            m = rem.get(pad(lam, n), 0)
            if m < 0:
                raise NegativeMultiplicityError(
                    f"negative multiplicity {m} for {lam}; not a character", witness=lam)
            if m == 0:
                continue
            out[lam] = m
            for mu in partitions(total, n):
                k = _kostka(lam, mu)
                if k:
                    w = pad(mu, n)
                    rem[w] = rem.get(w, 0) - m * k
        left = {w: c for w, c in rem.items() if c}
        if left:
            w = next(iter(left))
            raise NegativeMultiplicityError(f"residual weight {w} after decomposition", witness=w)
    total_dim = sum(_orbit_size(w) * c for w, c in chi.items())
    if sum(m * weyl_dim(l, n) for l, m in out.items()) != total_dim:
        raise NegativeMultiplicityError("Schur expansion does not reproduce the total dimension")
    return dict(sorted(out.items(), reverse=True))


def character_of(expansion: Mapping, n: int) -> dict:
    """Dominant-weight character of sum mult * V_lambda."""
    out: dict = {}
    for lam, m in expansion.items():
        lam = partition(lam)
        for mu in partitions(sum(lam), n):
            k = _kostka(lam, mu)
            if k:
                w = pad(mu, n)
                out[w] = out.get(w, 0) + m * k
    return out


def weight_character(family: Mapping, n: int, totals: Sequence[int]) -> dict:
    """Collect dimensions per dominant weight; every weight of each total is required.

    ``family`` maps padded dominant weights to a homology result or integer.
    """
    out = {}
    for t in totals:
        for lam in partitions(t, n):
            w = pad(lam, n)
            if w not in family:
                raise IncompleteFamilyError(f"missing weight slice {w}")
            v = family[w]
            d = v if isinstance(v, int) else v.dim
            if d:
                out[w] = d
    return out


def gr_weight_character(cs, n: int, degree: int, color, totals: Sequence[int] | None = None,
                        projector=None) -> dict:
    """Homology dimensions of gr slices, per dominant Hodge multidegree."""
    from .hochschild.complexes import SliceSelector, build_slice, gr_complex, homology
    cx = gr_complex(n, cs)
    color = tuple(color)
    if totals is None:
        totals = range(0, sum(color) + 1)
    family = {}
    for t in totals:
        for lam in partitions(t, n):
            w = pad(lam, n)
            sl = build_slice(cx, SliceSelector(degree, color, hodge_multi=w))
            hom = homology(sl)
            family[w] = hom.dim if projector is None else projector(sl, hom)
    return weight_character(family, n, totals)


# -- symmetric groups -----------------------------------------------------

def cycle_type(perm: Sequence[int]) -> tuple:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            j, L = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                L += 1
            out.append(L)
    return tuple(sorted(out, reverse=True))


@lru_cache(maxsize=None)
def _mn(beta: frozenset, cls: tuple) -> int:
    if not cls:
        return 1
    r, rest = cls[0], cls[1:]
    total = 0
    for b in beta:
        if b - r >= 0 and b - r not in beta:
            between = sum(1 for x in beta if b - r < x < b)
            total += (-1) ** between * _mn(frozenset(beta - {b} | {b - r}), rest)
    return total


def sn_character(lam, cls) -> int:
    """Irreducible S_N character by the Murnaghan-Nakayama rule (rim hooks on beta-numbers)."""
    lam = partition(lam)
    cls = partition(cls)
    if sum(lam) != sum(cls):
        raise SizeMismatchError(f"|{lam}| != |{cls}|")
    L = len(lam)
    beta = frozenset(lam[i] + L - 1 - i for i in range(L))
    return _mn(beta, cls)


def sn_dim(lam) -> int:
    return sn_character(lam, (1,) * sum(partition(lam)))


# -- color permutations ---------------------------------------------------

def permute_key(cx, perm: Sequence[int], key) -> dict:
    """Action of a color permutation (generator i -> perm[i]) on a bead chain key."""
    m, B = key
    m2 = 0 if m == 0 else perm[m - 1] + 1
    N = cx.N
    if not N.symmetric:
        if getattr(N.H, "is_pbw", False):
            raise ConfigurationError("color permutation needs the free-Lie wedge complex")
        return {(m2, tuple(tuple(perm[i] for i in b) for b in B)): ONE}
    lie = N.lie
    opts = [[(a, w, c) for w, c in lie.relabel(perm, z).items()] for a, z in N.flatten(B)]
    out: dict = {}
    for combo in iproduct(*opts):
        c = ONE
        fs = []
        for a, w, x in combo:
            c *= x
            fs.append((a, w))
        s, packed = N.pack(fs)
        if s:
            add_to(out, (m2, packed), s * c)
    return out


def permutation_matrix(cx, perm, basis) -> SparseMatrix:
    bset = set(basis)
    cols = {}
    for k in basis:
        col = permute_key(cx, perm, k)
        if any(r not in bset for r in col):
            raise ConfigurationError("color permutation does not preserve the slice")
        cols[k] = col
    return SparseMatrix(basis, basis, cols)


def isotypic_projector(cx, basis, lam) -> SparseMatrix:
    """e_lambda = (dim V_lambda / N!) sum_sigma chi_lambda(sigma) sigma."""
    lam = partition(lam)
    N = sum(lam)
    cols: dict = {}
    scale = Fraction(sn_dim(lam), factorial(N))
    for perm in permutations(range(N)):
        ch = sn_character(lam, cycle_type(perm))
        if not ch:
            continue
        P = permutation_matrix(cx, perm, basis)
        for k, col in P.columns.items():
            axpy(cols.setdefault(k, {}), scale * ch, col)
    return SparseMatrix(basis, basis, {k: v for k, v in cols.items() if v})


def projected_homology_dim(P: SparseMatrix, hom) -> int:
    """Rank of a chain-level projector on homology."""
    ind = induced_operator(P, hom.kernel, hom.image)
    return rank(ind)


# -- bead tables ----------------------------------------------------------

@dataclass
class BeadRow:
    degree: int
    slot: str                 # "I" (cokernel) or "II" (kernel)
    total_dim: int
    isotypic_dim: int
    multiplicity: int         # dim U_lambda = isotypic_dim / dim V_lambda
    schur: dict = field(default_factory=dict)
    euler: int | None = None


@dataclass
class BeadTable:
    lam: tuple
    n: int
    rows: list
    shuffle_seed: int | None = None
    flag: str = "CONJECTURAL"

    def to_json(self):
        return {
            "flag": self.flag,
            "partition": list(self.lam),
            "n": self.n,
            "shuffle_seed": self.shuffle_seed,
            "rows": [{
                "degree": r.degree, "slot": r.slot, "total_dim": r.total_dim,
                "isotypic_dim": r.isotypic_dim, "dim_U": r.multiplicity,
                "schur": {",".join(map(str, k)): v for k, v in r.schur.items()},
            } for r in self.rows],
        }


def _shuffled_slice(cx, sel, rng):
    from .hochschild.complexes import ComplexSlice, build_slice
    sl = build_slice(cx, sel)
    bases = {}
    for q, b in sl.bases.items():
        b = list(b)
        rng.shuffle(b)
        bases[q] = b
    q = sel.degree
    return ComplexSlice(cx, sel, bases, cx.matrix(bases[q], bases[q - 1]),
                        cx.matrix(bases[q + 1], bases[q]))


def bead_table(lam, n: int, window: Sequence[int] | None = None, shuffle_seed: int | None = None,
               degrees: Sequence[int] | None = None, with_schur: bool = True) -> BeadTable:
    """Isotypic homology of the multilinear color slice of the bead system.

    ``window`` lists the homological degrees to report; by default every
    degree carrying chains in the (1,...,1) slice.  The lowest degree is the
    cokernel slot (I), the next the kernel slot (II).
    """
    from .coeffs import bead_coalgebra
    from .hochschild.complexes import SliceSelector, build_slice, gr_complex, homology, wedge_complex
    lam = partition(lam)
    N = sum(lam)
    cs = bead_coalgebra(N, degrees)
    cx = wedge_complex(n, cs)
    color = (1,) * N
    keys = cx.keys_of_color(color)
    present = sorted({cx.degree(k) for k in keys})
    if window is None:
        window = present
    rng = random.Random(shuffle_seed) if shuffle_seed is not None else None
    dimV = sn_dim(lam)
    gr = gr_complex(n, cs) if with_schur else None
    rows = []
    for idx, q in enumerate(window):
        sel = SliceSelector(q, color)
        sl = _shuffled_slice(cx, sel, rng) if rng else build_slice(cx, sel)
        hom = homology(sl)
        P = isotypic_projector(cx, sl.basis, lam)
        iso = projected_homology_dim(P, hom)
        if iso % dimV:
            raise NegativeMultiplicityError(f"isotypic dimension {iso} not divisible by {dimV}")
        schur = {}
        if with_schur:
            def proj(gsl, ghom):
                r = projected_homology_dim(isotypic_projector(gr, gsl.basis, lam), ghom)
                if r % dimV:
                    raise NegativeMultiplicityError("gr isotypic dimension not divisible")
                return r // dimV
            chi = gr_weight_character(cs, n, q, color, range(0, N + 1), projector=proj)
            schur = schur_decompose(chi, n)
        slot = "I" if q == min(present) else ("II" if q == min(present) + 1 else f"deg{q}")
        rows.append(BeadRow(q, slot, hom.dim, iso, iso // dimV, schur))
    return BeadTable(lam, n, rows, shuffle_seed)
