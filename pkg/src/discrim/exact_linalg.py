"""Exact rational linear algebra on sparse row-major matrices.

Matrices act on row vectors: a linear map V -> W with bases of sizes r and c
is an r x c matrix whose i-th row is the image of the i-th basis vector.
All arithmetic is done with :class:`fractions.Fraction` or Python integers.
"""

from __future__ import annotations

import json
from fractions import Fraction
from math import gcd
from typing import Iterable, Mapping, Sequence

Vector = dict[int, Fraction]


class DimensionError(ValueError):
    """Raised when matrix or vector shapes do not fit together."""


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def _clean(row: Mapping[int, object]) -> Vector:
    out = {}
    for c, v in row.items():
        q = as_fraction(v)
        if q:
            out[int(c)] = q
    return out


class RationalMatrix:
    """Immutable sparse matrix of rationals with fixed dimensions."""

    __slots__ = ("_nrows", "_ncols", "_rows")

    def __init__(self, nrows: int, ncols: int, rows: Sequence[Mapping[int, object]] | None = None):
        if nrows < 0 or ncols < 0:
            raise DimensionError(f"negative dimensions {nrows}x{ncols}")
        self._nrows = nrows
        self._ncols = ncols
        if rows is None:
            self._rows: tuple[Vector, ...] = tuple({} for _ in range(nrows))
            return
        if len(rows) != nrows:
            raise DimensionError(f"expected {nrows} rows, got {len(rows)}")
        cleaned = []
        for row in rows:
            r = _clean(row)
            if r and (min(r) < 0 or max(r) >= ncols):
                raise DimensionError(f"column index out of range for {ncols} columns")
            cleaned.append(r)
        self._rows = tuple(cleaned)

    # construction -----------------------------------------------------

    @classmethod
    def from_dense(cls, data: Sequence[Sequence[object]], ncols: int | None = None) -> "RationalMatrix":
        nrows = len(data)
        if ncols is None:
            ncols = len(data[0]) if nrows else 0
        for row in data:
            if len(row) != ncols:
                raise DimensionError("ragged dense matrix")
        return cls(nrows, ncols, [dict(enumerate(row)) for row in data])

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Iterable[tuple[int, int, object]]) -> "RationalMatrix":
        rows: list[dict[int, Fraction]] = [{} for _ in range(nrows)]
        for i, j, v in entries:
            if not (0 <= i < nrows and 0 <= j < ncols):
                raise DimensionError(f"entry ({i}, {j}) outside {nrows}x{ncols}")
            rows[i][j] = rows[i].get(j, Fraction(0)) + as_fraction(v)
        return cls(nrows, ncols, rows)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "RationalMatrix":
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, size: int) -> "RationalMatrix":
        return cls(size, size, [{i: 1} for i in range(size)])

    @classmethod
    def diagonal(cls, values: Sequence[object]) -> "RationalMatrix":
        return cls(len(values), len(values), [{i: v} for i, v in enumerate(values)])

    # access -----------------------------------------------------------

    @property
    def nrows(self) -> int:
        return self._nrows

    @property
    def ncols(self) -> int:
        return self._ncols

    @property
    def shape(self) -> tuple[int, int]:
        return (self._nrows, self._ncols)

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        i, j = key
        if not (0 <= i < self._nrows and 0 <= j < self._ncols):
            raise IndexError(f"entry ({i}, {j}) outside {self._nrows}x{self._ncols}")
        return self._rows[i].get(j, Fraction(0))

    def row(self, i: int) -> Vector:
        if not 0 <= i < self._nrows:
            raise IndexError(f"row {i} outside {self._nrows} rows")
        return dict(self._rows[i])

    def rows(self) -> list[Vector]:
        return [dict(r) for r in self._rows]

    def nonzeros(self) -> Iterable[tuple[int, int, Fraction]]:
        for i, r in enumerate(self._rows):
            for j in sorted(r):
                yield i, j, r[j]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def to_dense(self) -> list[list[Fraction]]:
        out = []
        for r in self._rows:
            dense = [Fraction(0)] * self._ncols
            for j, v in r.items():
                dense[j] = v
            out.append(dense)
        return out

    def is_zero(self) -> bool:
        return not any(self._rows)

    # arithmetic -------------------------------------------------------

    def transpose(self) -> "RationalMatrix":
        cols: list[dict[int, Fraction]] = [{} for _ in range(self._ncols)]
        for i, r in enumerate(self._rows):
            for j, v in r.items():
                cols[j][i] = v
        return RationalMatrix(self._ncols, self._nrows, cols)

    @property
    def T(self) -> "RationalMatrix":
        return self.transpose()

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self._ncols != other._nrows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        for r in self._rows:
            acc: dict[int, Fraction] = {}
            for k, a in r.items():
                for j, b in other._rows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.append(acc)
        return RationalMatrix(self._nrows, other._ncols, out)

    def _combine(self, other: "RationalMatrix", sign: int) -> "RationalMatrix":
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        if self.shape != other.shape:
            raise DimensionError(f"shape mismatch {self.shape} vs {other.shape}")
        out = []
        for a, b in zip(self._rows, other._rows):
            acc = dict(a)
            for j, v in b.items():
                acc[j] = acc.get(j, 0) + sign * v
            out.append(acc)
        return RationalMatrix(self._nrows, self._ncols, out)

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self._combine(other, 1)

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        return self._combine(other, -1)

    def __neg__(self) -> "RationalMatrix":
        return self.scale(-1)

    def scale(self, c) -> "RationalMatrix":
        c = as_fraction(c)
        return RationalMatrix(self._nrows, self._ncols, [{j: c * v for j, v in r.items()} for r in self._rows])

    def __mul__(self, c) -> "RationalMatrix":
        if isinstance(c, RationalMatrix):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def apply_row(self, v: Sequence[object] | Mapping[int, object]) -> Vector:
        """Return ``v @ self`` for a row vector given densely or sparsely."""
        vec = _to_sparse(v, self._nrows)
        acc: dict[int, Fraction] = {}
        for i, a in vec.items():
            for j, b in self._rows[i].items():
                acc[j] = acc.get(j, 0) + a * b
        return {j: x for j, x in acc.items() if x}

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.shape == other.shape and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(tuple(sorted(r.items())) for r in self._rows)))

    def __repr__(self) -> str:
        if self._nrows * self._ncols <= 64:
            body = [[str(x) for x in r] for r in self.to_dense()]
            return f"RationalMatrix({body})"
        return f"RationalMatrix<{self._nrows}x{self._ncols}, nnz={self.nnz()}>"

    # serialization ----------------------------------------------------

    def to_json_obj(self) -> dict:
        return {
            "rows": self._nrows,
            "cols": self._ncols,
            "entries": [[i, j, format_fraction(v)] for i, j, v in self.nonzeros()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "RationalMatrix":
        return cls.from_entries(int(obj["rows"]), int(obj["cols"]),
                                ((int(i), int(j), v) for i, j, v in obj["entries"]))

    @classmethod
    def from_json(cls, text: str) -> "RationalMatrix":
        return cls.from_json_obj(json.loads(text))


def _to_sparse(v: Sequence[object] | Mapping[int, object], length: int) -> Vector:
    if isinstance(v, Mapping):
        out = _clean(v)
        if out and (min(out) < 0 or max(out) >= length):
            raise DimensionError(f"vector index outside length {length}")
        return out
    if len(v) != length:
        raise DimensionError(f"vector of length {len(v)}, expected {length}")
    return _clean(dict(enumerate(v)))


def dense_vector(v: Mapping[int, Fraction], length: int) -> list[Fraction]:
    out = [Fraction(0)] * length
    for j, x in v.items():
        out[j] = x
    return out


# elimination ---------------------------------------------------------------


def _primitive(row: Mapping[int, Fraction]) -> dict[int, int]:
    """Scale a rational row to coprime integers with positive leading entry."""
    den = 1
    for v in row.values():
        den = den * v.denominator // gcd(den, v.denominator)
    ints = {j: int(v * den) for j, v in row.items()}
    return _normalize_int(ints)


def _normalize_int(row: dict[int, int]) -> dict[int, int]:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        row = {j: v // g for j, v in row.items()}
    return row


def rank(M: RationalMatrix) -> int:
    """Rank over Q by fraction-free sparse elimination.

    The pivot row is the sparsest remaining row and the pivot column its entry
    of smallest magnitude; every updated row is divided by its content.
    """
    active = [_primitive(r) for r in M._rows if r]
    r = 0
    while active:
        p = min(range(len(active)), key=lambda i: len(active[i]))
        prow = active.pop(p)
        col = min(prow, key=lambda c: (abs(prow[c]), c))
        a = prow[col]
        r += 1
        survivors = []
        for row in active:
            b = row.get(col)
            if b is not None:
                new = {j: a * v for j, v in row.items()}
                for j, v in prow.items():
                    x = new.get(j, 0) - b * v
                    if x:
                        new[j] = x
                    else:
                        new.pop(j, None)
                row = _normalize_int(new)
            if row:
                survivors.append(row)
        active = survivors
    return r


class RowReducer:
    """Incrementally maintained reduced row echelon basis of a subspace of Q^n.

    Each stored row has a unit pivot and is zero in every other pivot column,
    so ``reduce`` returns the canonical representative of ``v`` modulo the span.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._pivots: dict[int, Vector] = {}

    @property
    def rank(self) -> int:
        return len(self._pivots)

    @property
    def pivot_columns(self) -> list[int]:
        return sorted(self._pivots)

    def pivot_rows(self) -> list[tuple[int, Vector]]:
        return [(c, dict(self._pivots[c])) for c in sorted(self._pivots)]

    def reduce(self, v: Mapping[int, object]) -> Vector:
        w = _clean(v)
        for c in [c for c in w if c in self._pivots]:
            coeff = w.get(c)
            if not coeff:
                continue
            for j, x in self._pivots[c].items():
                y = w.get(j, 0) - coeff * x
                if y:
                    w[j] = y
                else:
                    w.pop(j, None)
        return w

    def add(self, v: Mapping[int, object]) -> bool:
        """Insert ``v``; return True if it enlarged the span."""
        w = self.reduce(v)
        if not w:
            return False
        col = min(w)
        inv = 1 / w[col]
        w = {j: x * inv for j, x in w.items()}
        for c, row in self._pivots.items():
            coeff = row.get(col)
            if coeff:
                for j, x in w.items():
                    y = row.get(j, 0) - coeff * x
                    if y:
                        row[j] = y
                    else:
                        row.pop(j, None)
        self._pivots[col] = w
        return True

    def contains(self, v: Mapping[int, object]) -> bool:
        return not self.reduce(v)

    def copy(self) -> "RowReducer":
        out = RowReducer(self.ncols)
        out._pivots = {c: dict(r) for c, r in self._pivots.items()}
        return out


def row_space_reducer(M: RationalMatrix) -> RowReducer:
    red = RowReducer(M.ncols)
    for r in M._rows:
        if r:
            red.add(r)
    return red


def right_kernel_basis(M: RationalMatrix) -> list[list[Fraction]]:
    """Basis of {x : M x = 0}, first nonzero entry of each vector equal to 1."""
    red = row_space_reducer(M)
    pivots = red._pivots
    basis = []
    for free in range(M.ncols):
        if free in pivots:
            continue
        vec = [Fraction(0)] * M.ncols
        vec[free] = Fraction(1)
        for c, row in pivots.items():
            x = row.get(free)
            if x:
                vec[c] = -x
        lead = next(x for x in vec if x)
        basis.append([x / lead for x in vec])
    return basis


def left_kernel_basis(M: RationalMatrix) -> list[list[Fraction]]:
    """Basis of {v : v M = 0}; ``len(result) == M.nrows - rank(M)``."""
    return right_kernel_basis(M.transpose())


def solve_rowspan_membership(v: Sequence[object] | Mapping[int, object], M: RationalMatrix) -> bool:
    """True iff the row vector ``v`` lies in the row span of ``M``."""
    vec = _to_sparse(v, M.ncols)
    return row_space_reducer(M).contains(vec)


def span_rank(vectors: Iterable[Mapping[int, object]], ncols: int) -> int:
    red = RowReducer(ncols)
    for v in vectors:
        red.add(v)
    return red.rank
