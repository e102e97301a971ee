"""Symmetrisation isomorphism S(g) -> U(g) and its inverse.

Symmetric monomials are nondecreasing tuples of Lie basis keys with odd keys
unrepeated; the number of factors is the Hodge (PBW) weight.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Mapping

from ..errors import ConfigurationError
from ..exactla import SparseMatrix, add_to, axpy, inverse
from .signs import koszul_sign


def sym_product(factors, degrees):
    """Sort a product of symmetric generators: (sign, monomial) or (0, None)."""
    order = sorted(range(len(factors)), key=lambda i: factors[i])
    mono = tuple(factors[i] for i in order)
    for a, b, i in zip(mono, mono[1:], order):
        if a == b and degrees[i] & 1:
            return 0, None
    return koszul_sign(degrees, order), mono


def sym_monomials(lie, mode, grade) -> list:
    grade = tuple(grade)
    cache = lie.__dict__.setdefault("_sym_cache", {})
    hit = cache.get((mode, grade))
    if hit is not None:
        return list(hit)
    factors = [(z, lie.grade(z, mode)) for z in lie.basis_up_to(mode, grade)]
    out = []

    def rec(prefix, rem, start):
        if not any(rem):
            out.append(tuple(prefix))
            return
        for idx in range(start, len(factors)):
            z, g = factors[idx]
            if any(a > b for a, b in zip(g, rem)):
                continue
            if prefix and prefix[-1] == z and lie.parity(z):
                continue
            prefix.append(z)
            rec(prefix, tuple(b - a for a, b in zip(g, rem)), idx)
            prefix.pop()

    if not any(x < 0 for x in grade):
        rec([], grade, 0)
    cache[(mode, grade)] = tuple(out)
    return out


def pbw_map(lie, mono: tuple) -> dict:
    """(1/k!) sum over orderings, with Koszul signs, of the products in U(g)."""
    cache = lie.__dict__.setdefault("_pbw_map_cache", {})
    hit = cache.get(mono)
    if hit is not None:
        return hit
    uea = lie.uea
    k = len(mono)
    degs = [lie.degree(z) for z in mono]
    polys = [lie.to_uea({z: Fraction(1)}) for z in mono]
    seqs: dict = {}
    for order in permutations(range(k)):
        seq = tuple(mono[i] for i in order)
        if seq not in seqs:
            seqs[seq] = [koszul_sign(degs, order), order, 0]
        seqs[seq][2] += 1
    out: dict = {}
    for s, order, count in seqs.values():
        acc = {uea.unit: Fraction(1)}
        for i in order:
            acc = uea.mul(acc, polys[i])
        axpy(out, Fraction(s * count, factorial(k)), acc)
    cache[mono] = out
    return out


def _inverse_at(lie, color):
    cache = lie.__dict__.setdefault("_pbw_inv_cache", {})
    hit = cache.get(color)
    if hit is None:
        rows = lie.uea.keys_of_grade("color", color)
        cols = sym_monomials(lie, "color", color)
        if len(rows) != len(cols):
            raise ConfigurationError(f"PBW dimension mismatch in color {color}")
        m = SparseMatrix(rows, cols, {c: pbw_map(lie, c) for c in cols})
        hit = inverse(m)
        cache[color] = hit
    return hit


def pbw_decompose(lie, u: Mapping) -> dict:
    """Coordinates of a U(g) element in the symmetrised monomial basis."""
    uea = lie.uea
    by_color: dict = {}
    for k, c in u.items():
        by_color.setdefault(uea.color(k), {})[k] = c
    out: dict = {}
    for color, part in by_color.items():
        if not any(color):
            for k, c in part.items():
                add_to(out, (), c)
            continue
        inv = _inverse_at(lie, color)
        axpy(out, 1, inv.apply(part))
    return out


def hodge_parts(lie, u: Mapping) -> dict:
    """{hodge weight: U(g) element} splitting u by symmetric length."""
    parts: dict = {}
    for mono, c in pbw_decompose(lie, u).items():
        parts.setdefault(len(mono), {})
        axpy(parts[len(mono)], c, pbw_map(lie, mono))
    return parts
