"""Weight spaces of tensor products of sl2 Verma and irreducible modules.

Basis vectors of a weight space are multi-indices J = (j_1, ..., j_n) standing
for f^{j_1} v_{m_1} (x) ... (x) f^{j_n} v_{m_n} (or its dual).  Bases are
listed in strictly descending lexicographic order, and every operator matrix
acts on row vectors: row J holds the image of basis vector J.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, wraps
from math import comb, factorial
from typing import Sequence

from .exact_linalg import RationalMatrix, left_kernel_basis, rank, span_rank
from .multiplicity import w_via_recursion, w_via_tensor

MultiIndex = tuple[int, ...]

DUAL_VERMA = "dual-verma"
IRREDUCIBLE = "irreducible"

RESONANT = "resonant"
NONRESONANT_LOW = "nonresonant-low"
NONRESONANT_HIGH = "nonresonant-high"


class RegimeError(ValueError):
    pass


def _memo(fn):
    cached = lru_cache(maxsize=4096)(fn)

    @wraps(fn)
    def wrapper(m, *args, **kwargs):
        return cached(_weights(m), *args, **kwargs)

    wrapper.cache_clear = cached.cache_clear
    return wrapper


def _weights(m: Sequence[int]) -> tuple[int, ...]:
    m = tuple(int(x) for x in m)
    if any(x < 0 for x in m):
        raise ValueError(f"highest weights must be nonnegative, got {m}")
    return m


def compositions(n: int, k: int, caps: Sequence[int] | None = None) -> list[MultiIndex]:
    """Length-n tuples of nonnegative integers summing to k, descending lex.

    With ``caps`` each entry is additionally bounded by the matching cap.
    """
    out: list[MultiIndex] = []
    if n == 0:
        return [()] if k == 0 else []
    suffix_room = [0] * (n + 1)
    if caps is not None:
        for i in range(n - 1, -1, -1):
            suffix_room[i] = suffix_room[i + 1] + caps[i]

    prefix: list[int] = []

    def rec(i: int, left: int) -> None:
        if i == n - 1:
            if caps is None or left <= caps[i]:
                out.append(tuple(prefix) + (left,))
            return
        hi = left if caps is None else min(left, caps[i])
        lo = 0 if caps is None else max(0, left - suffix_room[i + 1])
        for x in range(hi, lo - 1, -1):
            prefix.append(x)
            rec(i + 1, left - x)
            prefix.pop()

    if k >= 0:
        rec(0, k)
    return out


@dataclass(frozen=True)
class WeightBasis:
    m: tuple[int, ...]
    degree: int
    kind: str
    indices: tuple[MultiIndex, ...]
    position: dict = field(compare=False, repr=False, hash=False)

    def __len__(self) -> int:
        return len(self.indices)

    def __iter__(self):
        return iter(self.indices)

    def __getitem__(self, i: int) -> MultiIndex:
        return self.indices[i]

    def index(self, J: MultiIndex) -> int:
        return self.position[J]


@_memo
def weight_basis(m: Sequence[int], k: int, kind: str = DUAL_VERMA) -> WeightBasis:
    m = _weights(m)
    if k < 0:
        raise ValueError("degree must be nonnegative")
    if kind == DUAL_VERMA:
        idx = compositions(len(m), k)
    elif kind == IRREDUCIBLE:
        idx = compositions(len(m), k, caps=m)
    else:
        raise ValueError(f"unknown basis kind {kind!r}")
    idx = tuple(idx)
    return WeightBasis(m, k, kind, idx, {J: i for i, J in enumerate(idx)})


def _bump(J: MultiIndex, i: int, delta: int) -> MultiIndex:
    return J[:i] + (J[i] + delta,) + J[i + 1:]


@_memo
def f_matrix_dual(m: Sequence[int], k: int) -> RationalMatrix:
    """Matrix A_k(m) of f on the restricted dual, degree k-1 -> degree k.

    Entry (J, J + 1_i) is (j_i + 1)(m_i - j_i).
    """
    m = _weights(m)
    if k < 1:
        raise ValueError("k must be at least 1")
    src = weight_basis(m, k - 1)
    tgt = weight_basis(m, k)
    rows = []
    for J in src:
        row = {}
        for i in range(len(m)):
            c = (J[i] + 1) * (m[i] - J[i])
            if c:
                row[tgt.index(_bump(J, i, 1))] = c
        rows.append(row)
    return RationalMatrix(len(src), len(tgt), rows)


@_memo
def e_matrix_dual(m: Sequence[int], k: int) -> RationalMatrix:
    """Matrix of e on the restricted dual, degree k -> degree k-1."""
    m = _weights(m)
    if k < 1:
        raise ValueError("k must be at least 1")
    src = weight_basis(m, k)
    tgt = weight_basis(m, k - 1)
    rows = []
    for J in src:
        rows.append({tgt.index(_bump(J, i, -1)): 1 for i in range(len(m)) if J[i]})
    return RationalMatrix(len(src), len(tgt), rows)


def h_scalar(m: Sequence[int], k: int) -> int:
    return sum(_weights(m)) - 2 * k


@_memo
def f_matrix_irreducible(m: Sequence[int], k: int) -> RationalMatrix:
    """f on L^{(x) m}: irreducible basis of degree k-1 -> degree k.

    Terms with j_i + 1 > m_i vanish in L_{m_i} and are dropped.
    """
    m = _weights(m)
    if k < 1:
        raise ValueError("k must be at least 1")
    src = weight_basis(m, k - 1, IRREDUCIBLE)
    tgt = weight_basis(m, k, IRREDUCIBLE)
    rows = []
    for J in src:
        rows.append({tgt.index(_bump(J, i, 1)): 1 for i in range(len(m)) if J[i] < m[i]})
    return RationalMatrix(len(src), len(tgt), rows)


def shapovalov_coefficient(m: Sequence[int], J: MultiIndex) -> int:
    """c_J = prod_i j_i! * m_i (m_i - 1) ... (m_i - j_i + 1)."""
    c = 1
    for mi, ji in zip(m, J):
        c *= factorial(ji)
        for t in range(ji):
            c *= mi - t
    return c


def shapovalov_diagonal(m: Sequence[int], k: int) -> list[Fraction]:
    m = _weights(m)
    return [Fraction(shapovalov_coefficient(m, J)) for J in weight_basis(m, k)]


def shapovalov_matrix(m: Sequence[int], k: int) -> RationalMatrix:
    """Shapovalov map from the irreducible basis into the dual Verma basis."""
    m = _weights(m)
    src = weight_basis(m, k, IRREDUCIBLE)
    tgt = weight_basis(m, k)
    rows = [{tgt.index(J): shapovalov_coefficient(m, J)} for J in src]
    return RationalMatrix(len(src), len(tgt), rows)


def kernel_cokernel_dims(m: Sequence[int], k: int) -> tuple[int, int]:
    A = f_matrix_dual(m, k)
    r = rank(A)
    return A.nrows - r, A.ncols - r


def regime(m: Sequence[int], k: int) -> str:
    j = sum(m) - k + 1
    if j < 0:
        return NONRESONANT_LOW
    if j >= k:
        return NONRESONANT_HIGH
    return RESONANT


@dataclass(frozen=True)
class PredictedDims:
    kernel: int
    cokernel: int
    regime: str


def predicted_dims(m: Sequence[int], k: int, check_oracle: bool = False) -> PredictedDims:
    """Kernel and cokernel dimensions of A_k(m) predicted by multiplicities."""
    m = _weights(m)
    if k < 1:
        raise ValueError("k must be at least 1")
    reg = regime(m, k)
    kernel = 0
    if reg == RESONANT:
        j = sum(m) - k + 1
        kernel = w_via_recursion(m, j)
        if check_oracle and kernel != w_via_tensor(m, j):
            raise AssertionError(f"multiplicity routes disagree for m={m}, j={j}")
    return PredictedDims(kernel, kernel + comb(len(m) + k - 2, k), reg)


def lowest_weight_kernel_irreducible(m: Sequence[int], k: int) -> list[list[Fraction]]:
    return left_kernel_basis(f_matrix_irreducible(m, k))


def shapovalov_embeds_kernel(m: Sequence[int], k: int) -> bool:
    """Whether S maps ker(f on L^{(x) m}) onto ker A_k(m)."""
    m = _weights(m)
    if regime(m, k) != RESONANT:
        raise RegimeError(f"need 0 <= |m|-k+1 < k, got m={m}, k={k}")
    S = shapovalov_matrix(m, k - 1)
    A = f_matrix_dual(m, k)
    images = [S.apply_row(v) for v in lowest_weight_kernel_irreducible(m, k)]
    if any(A.apply_row(img) for img in images):
        return False
    return span_rank(images, S.ncols) == A.nrows - rank(A)


def commutator_identity_holds(m: Sequence[int], k: int) -> bool:
    """ef - fe == (|m| - 2k + 2) I on the degree k-1 dual Verma space."""
    F = f_matrix_dual(m, k)
    lhs = F @ e_matrix_dual(m, k)
    if k > 1:
        lhs = lhs - e_matrix_dual(m, k - 1) @ f_matrix_dual(m, k - 1)
    return lhs == RationalMatrix.identity(F.nrows).scale(h_scalar(m, k - 1))


def shapovalov_intertwines(m: Sequence[int], k: int) -> bool:
    """S f_irr == f_dual S between degrees k-1 and k (row convention)."""
    return (shapovalov_matrix(m, k - 1) @ f_matrix_dual(m, k)
            == f_matrix_irreducible(m, k) @ shapovalov_matrix(m, k))
