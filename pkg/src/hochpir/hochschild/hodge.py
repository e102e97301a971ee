"""Hodge decomposition of wedge chains through slot-wise PBW coordinates.

For the wedge of n circles, M (x) U(g)^{(x)n} is identified with the gr
complex M (x) S(g)^{(x)n} = M (x) S(H^1 (x) g) by symmetrisation in every
slot, and the Hodge degree of a chain is the total symmetric length.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from typing import Mapping

from ..errors import ConfigurationError, HodgeBoundError, SliceInstabilityError
from ..exactla import SparseMatrix, add_to, axpy, inverse
from ..superalg.pbw import pbw_decompose, pbw_map

ONE = Fraction(1)


def _lie(cx):
    if cx.kind != "wedge":
        raise ConfigurationError("PBW coordinates are defined on wedge complexes")
    return cx.cs.lie


def to_pbw(cx, v: Mapping) -> dict:
    """Wedge chain -> gr chain (keys (m, per-slot symmetric monomials))."""
    lie = _lie(cx)
    out: dict = {}
    cache: dict = {}
    for (m, B), c in v.items():
        slots = []
        for b in B:
            if b not in cache:
                cache[b] = sorted(pbw_decompose(lie, {b: ONE}).items())
            slots.append(cache[b])
        for combo in iproduct(*slots):
            x = c
            ks = []
            for k, y in combo:
                x *= y
                ks.append(k)
            add_to(out, (m, tuple(ks)), x)
    return out


def from_pbw(cx, v: Mapping) -> dict:
    lie = _lie(cx)
    out: dict = {}
    for (m, B), c in v.items():
        slots = [sorted(pbw_map(lie, mono).items()) for mono in B]
        for combo in iproduct(*slots):
            x = c
            ks = []
            for k, y in combo:
                x *= y
                ks.append(k)
            add_to(out, (m, tuple(ks)), x)
    return out


def hodge_components(v: Mapping, cx) -> dict:
    """{Hodge degree: wedge chain}; the pieces sum to v."""
    parts: dict = {}
    for k, c in to_pbw(cx, v).items():
        h = sum(len(s) for s in k[1])
        parts.setdefault(h, {})[k] = c
    return {h: from_pbw(cx, p) for h, p in sorted(parts.items())}


def hodge_multidegree(v: Mapping, cx) -> dict:
    """{per-circle Hodge multidegree: gr chain}."""
    parts: dict = {}
    for k, c in to_pbw(cx, v).items():
        parts.setdefault(tuple(len(s) for s in k[1]), {})[k] = c
    return dict(sorted(parts.items()))


class ProjectorResult:
    """Projectors e_m built from power maps on a union of slices."""

    def __init__(self, keys, projectors, powers, check_power):
        self.keys = keys
        self.projectors = projectors    # m -> SparseMatrix
        self.powers = powers            # r values used
        self.check_power = check_power

    def apply(self, m, v):
        return self.projectors[m].apply(v)


def power_map_projectors(cx, keys, m_max: int) -> ProjectorResult:
    """Solve Psi_r = sum_m r^m e_m for r = 1 .. m_max+1 on span(keys).

    Psi_r is x1 -> x1^r on the one-circle wedge complex.  The result is
    checked against Psi_{m_max+2}; a mismatch means the Hodge degree on the
    window exceeds m_max.  Hodge degree 0 is the identity component.
    """
    from ..autf import act_key, power_map
    if cx.kind != "wedge" or cx.n != 1:
        raise ConfigurationError("power-map projectors are built on the one-circle wedge complex")
    keys = list(keys)
    kset = set(keys)
    H = cx.N.H
    rs = list(range(1, m_max + 2))
    mats = {}
    for r in rs + [m_max + 2]:
        psi = power_map(r, 0, 1)
        cols = {}
        for k in keys:
            col = act_key(psi, k, H)
            for row in col:
                if row not in kset:
                    raise SliceInstabilityError("power map leaves the chosen window", witness=row)
            cols[k] = col
        mats[r] = SparseMatrix(keys, keys, cols)
    # e_m = sum_r Vinv[m][r] Psi_r with V[r][m] = r^m
    V = SparseMatrix.from_dense([[Fraction(r) ** m for m in range(m_max + 1)] for r in rs])
    Vinv = inverse(V)
    proj = {}
    for m in range(m_max + 1):
        acc = SparseMatrix(keys, keys, {})
        for ri, r in enumerate(rs):
            c = Vinv.entry(m, ri)
            if c:
                acc = _axpy_mat(acc, c, mats[r])
        proj[m] = acc
    r = m_max + 2
    pred = SparseMatrix(keys, keys, {})
    for m in range(m_max + 1):
        pred = _axpy_mat(pred, Fraction(r) ** m, proj[m])
    if pred != mats[r]:
        bad = next(iter((pred - mats[r]).columns))
        raise HodgeBoundError(f"Hodge degree exceeds {m_max} on the window", witness=bad)
    return ProjectorResult(keys, proj, rs, r)


def _axpy_mat(acc: SparseMatrix, c, m: SparseMatrix) -> SparseMatrix:
    cols = {k: dict(v) for k, v in acc.columns.items()}
    for k, col in m.columns.items():
        tgt = cols.setdefault(k, {})
        axpy(tgt, c, col)
        if not tgt:
            del cols[k]
    return SparseMatrix(acc.row_keys, acc.col_keys, cols)
