"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts ``{key: Fraction}`` with zero entries omitted.  Keys
are opaque; every routine that needs an order takes it from an explicit key
list, so results are deterministic for a fixed basis enumeration.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Hashable, Iterable, Mapping, Sequence

Key = Hashable
SparseVector = dict


class WellDefinednessError(ArithmeticError):
    """An operator does not descend to the quotient it was asked about."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)


def fmt(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# -- vector helpers -------------------------------------------------------

def add_to(acc: dict, key, c) -> None:
    if not c:
        return
    v = acc.get(key, 0) + c
    if v:
        acc[key] = v
    else:
        acc.pop(key, None)


def axpy(acc: dict, c, v: Mapping) -> None:
    """acc += c * v"""
    if not c:
        return
    for k, x in v.items():
        add_to(acc, k, c * x)


def scaled(v: Mapping, c) -> dict:
    if not c:
        return {}
    return {k: c * x for k, x in v.items()}


def vsum(*vs: Mapping) -> dict:
    out: dict = {}
    for v in vs:
        axpy(out, 1, v)
    return out


def clean(v: Mapping) -> dict:
    return {k: Fraction(x) for k, x in v.items() if x}


# -- matrices -------------------------------------------------------------

class SparseMatrix:
    """Column-sparse matrix with explicit row and column key orders."""

    def __init__(self, row_keys: Sequence, col_keys: Sequence, columns: Mapping | None = None):
        self.row_keys = list(row_keys)
        self.col_keys = list(col_keys)
        self.row_index = {k: i for i, k in enumerate(self.row_keys)}
        self.col_index = {k: i for i, k in enumerate(self.col_keys)}
        if len(self.row_index) != len(self.row_keys) or len(self.col_index) != len(self.col_keys):
            raise ValueError("duplicate basis keys")
        self.columns: dict = {}
        for c, col in (columns or {}).items():
            if c not in self.col_index:
                raise KeyError(f"unknown column key {c!r}")
            col = clean(col)
            for r in col:
                if r not in self.row_index:
                    raise KeyError(f"unknown row key {r!r}")
            if col:
                self.columns[c] = col

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence], row_keys=None, col_keys=None):
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        row_keys = list(range(nr)) if row_keys is None else row_keys
        col_keys = list(range(nc)) if col_keys is None else col_keys
        cols: dict = {}
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if x:
                    cols.setdefault(col_keys[j], {})[row_keys[i]] = frac(x)
        return cls(row_keys, col_keys, cols)

    @property
    def shape(self):
        return len(self.row_keys), len(self.col_keys)

    def column(self, c) -> dict:
        return self.columns.get(c, {})

    def entry(self, r, c) -> Fraction:
        return self.columns.get(c, {}).get(r, Fraction(0))

    def apply(self, v: Mapping) -> dict:
        out: dict = {}
        for c, x in v.items():
            if c not in self.col_index:
                raise KeyError(f"vector key {c!r} outside the column basis")
            axpy(out, x, self.columns.get(c, {}))
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        return SparseMatrix(self.row_keys, other.col_keys,
                            {c: self.apply(col) for c, col in other.columns.items()})

    def __sub__(self, other: "SparseMatrix") -> "SparseMatrix":
        cols = {c: dict(v) for c, v in self.columns.items()}
        for c, v in other.columns.items():
            axpy(cols.setdefault(c, {}), -1, v)
        return SparseMatrix(self.row_keys, self.col_keys, cols)

    def transpose(self) -> "SparseMatrix":
        cols: dict = {}
        for c, col in self.columns.items():
            for r, x in col.items():
                cols.setdefault(r, {})[c] = x
        return SparseMatrix(self.col_keys, self.row_keys, cols)

    def rows(self) -> dict:
        return self.transpose().columns

    def is_zero(self) -> bool:
        return not self.columns

    def nnz(self) -> int:
        return sum(len(c) for c in self.columns.values())

    def to_dense(self) -> list[list[Fraction]]:
        out = [[Fraction(0)] * len(self.col_keys) for _ in self.row_keys]
        for c, col in self.columns.items():
            j = self.col_index[c]
            for r, x in col.items():
                out[self.row_index[r]][j] = x
        return out

    def __eq__(self, other):
        if not isinstance(other, SparseMatrix):
            return NotImplemented
        return (self.row_keys == other.row_keys and self.col_keys == other.col_keys
                and self.columns == other.columns)

    def __repr__(self):
        return f"SparseMatrix({len(self.row_keys)}x{len(self.col_keys)}, nnz={self.nnz()})"


# -- echelon bases --------------------------------------------------------

class EchelonBasis:
    """Reduced row echelon basis of a subspace.

    Each vector has pivot = its first key in ``keys`` order, normalised to 1,
    and no vector contains another's pivot.  Vectors are sorted by pivot.
    """

    def __init__(self, keys: Sequence, vectors: Iterable[Mapping] = ()):
        self.keys = list(keys)
        self.index = {k: i for i, k in enumerate(self.keys)}
        self._by_pivot: dict = {}
        for v in vectors:
            self.insert(v)

    # pivots are tracked by key; ordering uses self.index
    def _lead(self, v: Mapping):
        try:
            return min(v, key=self.index.__getitem__)
        except KeyError as exc:
            raise KeyError(f"vector key {exc.args[0]!r} outside the ambient basis") from None

    def reduce(self, v: Mapping) -> dict:
        r = dict(v)
        for p in [k for k in r if k in self._by_pivot]:
            c = r.get(p)
            if c:
                axpy(r, -c, self._by_pivot[p])
        return r

    def insert(self, v: Mapping) -> bool:
        r = self.reduce(clean(v))
        if not r:
            return False
        p = self._lead(r)
        r = scaled(r, 1 / r[p])
        for q, w in self._by_pivot.items():
            c = w.get(p)
            if c:
                axpy(w, -c, r)
        self._by_pivot[p] = r
        return True

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    @property
    def pivots(self) -> list:
        return sorted(self._by_pivot, key=self.index.__getitem__)

    @property
    def vectors(self) -> list[dict]:
        return [self._by_pivot[p] for p in self.pivots]

    def __len__(self):
        return len(self._by_pivot)

    @property
    def rank(self) -> int:
        return len(self._by_pivot)

    def coordinates(self, v: Mapping) -> list[Fraction]:
        """Coefficients of v in this basis; raises if v is outside the span."""
        r = dict(v)
        out = []
        for p in self.pivots:
            c = r.get(p, Fraction(0))
            out.append(c)
            if c:
                axpy(r, -c, self._by_pivot[p])
        if r:
            raise ValueError("vector is not in the span")
        return out

    def __repr__(self):
        return f"EchelonBasis(rank={self.rank}, ambient={len(self.keys)})"


def rref(m: SparseMatrix) -> EchelonBasis:
    """Row space of m as a reduced echelon basis over the column keys."""
    eb = EchelonBasis(m.col_keys)
    rows = m.rows()
    for r in m.row_keys:
        if r in rows:
            eb.insert(rows[r])
    return eb


def rank(m: SparseMatrix) -> int:
    return rref(m).rank


def kernel_basis(m: SparseMatrix) -> EchelonBasis:
    rs = rref(m)
    pivots = set(rs.pivots)
    vecs = []
    for f in m.col_keys:
        if f in pivots:
            continue
        v = {f: Fraction(1)}
        for p, row in rs._by_pivot.items():
            c = row.get(f)
            if c:
                v[p] = -c
        vecs.append(v)
    return EchelonBasis(m.col_keys, vecs)


def image_basis(m: SparseMatrix) -> EchelonBasis:
    eb = EchelonBasis(m.row_keys)
    for c in m.col_keys:
        col = m.columns.get(c)
        if col:
            eb.insert(col)
    return eb


def quotient_reduce(v: Mapping, im: EchelonBasis) -> dict:
    return im.reduce(v)


def solve(m: SparseMatrix, v: Mapping) -> dict | None:
    """Some x with m x = v, or None if v is not in the column space."""
    # eliminate on columns while tracking combinations
    basis: dict = {}   # pivot row -> (reduced column, combination)
    index = m.row_index
    for c in m.col_keys:
        col = dict(m.columns.get(c, {}))
        comb = {c: Fraction(1)}
        for p in [k for k in col if k in basis]:
            x = col.get(p)
            if x:
                bcol, bcomb = basis[p]
                axpy(col, -x, bcol)
                axpy(comb, -x, bcomb)
        if not col:
            continue
        p = min(col, key=index.__getitem__)
        s = 1 / col[p]
        col, comb = scaled(col, s), scaled(comb, s)
        for q, (bcol, bcomb) in basis.items():
            x = bcol.get(p)
            if x:
                axpy(bcol, -x, col)
                axpy(bcomb, -x, comb)
        basis[p] = (col, comb)
    r = clean(v)
    for k in r:
        if k not in index:
            raise KeyError(f"right-hand side key {k!r} outside the row basis")
    x: dict = {}
    for p in [k for k in list(r) if k in basis]:
        c = r.get(p)
        if c:
            bcol, bcomb = basis[p]
            axpy(r, -c, bcol)
            axpy(x, c, bcomb)
    if r:
        return None
    return x


def inverse(m: SparseMatrix) -> SparseMatrix:
    if len(m.row_keys) != len(m.col_keys):
        raise ValueError("inverse of a non-square matrix")
    cols = {}
    for r in m.row_keys:
        x = solve(m, {r: Fraction(1)})
        if x is None:
            raise ZeroDivisionError("matrix is singular")
        cols[r] = x
    return SparseMatrix(m.col_keys, m.row_keys, cols)


def quotient_representatives(ker: EchelonBasis, im: EchelonBasis) -> EchelonBasis:
    """Canonical complement of im inside ker: reduced kernel vectors, echelonised."""
    eb = EchelonBasis(ker.keys)
    for v in ker.vectors:
        r = im.reduce(v)
        if r:
            eb.insert(r)
    return eb


def quotient_coordinates(v: Mapping, reps: EchelonBasis, im: EchelonBasis) -> list[Fraction]:
    return reps.coordinates(im.reduce(v))


def induced_operator(op: SparseMatrix, ker: EchelonBasis, im: EchelonBasis,
                     target_ker: EchelonBasis | None = None,
                     target_im: EchelonBasis | None = None) -> SparseMatrix:
    """Matrix of op on ker/im in the canonical quotient representatives.

    By default op is an endomorphism; pass target_ker/target_im when it maps
    into a different subquotient.  Raises WellDefinednessError when op does
    not preserve the kernel or the image.
    """
    tker = ker if target_ker is None else target_ker
    tim = im if target_im is None else target_im
    reps = quotient_representatives(ker, im)
    treps = quotient_representatives(tker, tim)
    for v in im.vectors:
        w = op.apply(v)
        if tim.reduce(w):
            raise WellDefinednessError("operator does not preserve the image", witness=v)
    cols = {}
    for j, v in enumerate(reps.vectors):
        w = op.apply(v)
        if tker.reduce(w):
            raise WellDefinednessError("operator does not preserve the kernel", witness=v)
        r = tim.reduce(w)
        col = {}
        for i, p in enumerate(treps.pivots):
            c = r.get(p)
            if c:
                col[i] = c
                axpy(r, -c, treps._by_pivot[p])
        if r:
            raise WellDefinednessError("image escapes the quotient representatives", witness=v)
        cols[j] = col
    return SparseMatrix(range(treps.rank), range(reps.rank), cols)
