"""The discriminantal arrangement A_{k,n}, its weights and its dense edges.

Hyperplanes live in Q^k with coordinates t_1..t_k.  For edge computations
the arrangement is coned: a coordinate t_0 is adjoined, every affine form is
homogenized and the hyperplane at infinity {t_0 = 0} is added.  Edges of the
projective closure are then the flats of rank 1..k of this central
arrangement.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Sequence

from .exact_linalg import RowReducer, as_fraction, format_fraction

POINTWISE = "pointwise"
DIAGONAL = "diagonal"
INFINITY = "infinity"

MAX_CONED_HYPERPLANES = 20
MAX_K_BRUTEFORCE = 4


class ScaleError(RuntimeError):
    """Raised when a brute-force computation exceeds its size guard."""


@dataclass(frozen=True)
class Hyperplane:
    """A hyperplane of A_{k,n} or the hyperplane at infinity.

    ``functional`` holds (c_0, c_1, ..., c_k) for the form c_0 + sum c_i t_i;
    read as a linear form in (t_0, ..., t_k) it is the homogenization.
    """

    kind: str
    indices: tuple[int, ...]
    functional: tuple[Fraction, ...] = field(compare=False)

    @property
    def label(self) -> str:
        if self.kind == POINTWISE:
            i, j = self.indices
            return f"H_{i}^{j}"
        if self.kind == DIAGONAL:
            p, q = self.indices
            return f"H_{p},{q}"
        return "H_inf"

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class ArrangementSpec:
    k: int
    n: int
    z: tuple[Fraction, ...]
    hyperplanes: tuple[Hyperplane, ...]

    @property
    def N(self) -> int:
        return len(self.hyperplanes)

    def index(self, kind: str, *indices: int) -> int:
        return _index_map(self)[(kind, tuple(indices))]

    def pointwise(self, i: int, j: int) -> int:
        """Position of H_i^j = {t_i = z_j} (1-based i, j)."""
        return self.index(POINTWISE, i, j)

    def diagonal(self, p: int, q: int) -> int:
        """Position of H_{p,q} = {t_p = t_q} (1-based, order-insensitive)."""
        return self.index(DIAGONAL, min(p, q), max(p, q))

    def labels(self) -> list[str]:
        return [h.label for h in self.hyperplanes]

    def coned(self) -> tuple[Hyperplane, ...]:
        inf = Hyperplane(INFINITY, (), (Fraction(1),) + (Fraction(0),) * self.k)
        return self.hyperplanes + (inf,)


@lru_cache(maxsize=None)
def _index_map(spec: ArrangementSpec) -> dict:
    return {(h.kind, h.indices): pos for pos, h in enumerate(spec.hyperplanes)}


def build(k: int, n: int, z: Sequence[object] | None = None) -> ArrangementSpec:
    """A_{k,n} with points z (default 0, 1, ..., n-1).

    Order: H_i^j lexicographic in (j, i), then H_{p,q} lexicographic in (p, q).
    """
    if k < 1 or n < 1:
        raise ValueError(f"need k >= 1 and n >= 1, got k={k}, n={n}")
    zs = tuple(as_fraction(x) for x in (range(n) if z is None else z))
    if len(zs) != n:
        raise ValueError(f"expected {n} points, got {len(zs)}")
    if len(set(zs)) != n:
        raise ValueError(f"points must be distinct, got {[str(x) for x in zs]}")
    hyps = []
    for j in range(1, n + 1):
        for i in range(1, k + 1):
            f = [Fraction(0)] * (k + 1)
            f[0] = -zs[j - 1]
            f[i] = Fraction(1)
            hyps.append(Hyperplane(POINTWISE, (i, j), tuple(f)))
    for p in range(1, k + 1):
        for q in range(p + 1, k + 1):
            f = [Fraction(0)] * (k + 1)
            f[p], f[q] = Fraction(1), Fraction(-1)
            hyps.append(Hyperplane(DIAGONAL, (p, q), tuple(f)))
    return ArrangementSpec(k, n, zs, tuple(hyps))


# weights ------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class SymbolicWeight:
    """The value constant + kappa_inverse / kappa for a generic parameter kappa."""

    constant: Fraction = Fraction(0)
    kappa_inverse: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "constant", as_fraction(self.constant))
        object.__setattr__(self, "kappa_inverse", as_fraction(self.kappa_inverse))

    def __add__(self, other: "SymbolicWeight") -> "SymbolicWeight":
        return SymbolicWeight(self.constant + other.constant, self.kappa_inverse + other.kappa_inverse)

    def __neg__(self) -> "SymbolicWeight":
        return SymbolicWeight(-self.constant, -self.kappa_inverse)

    def __sub__(self, other: "SymbolicWeight") -> "SymbolicWeight":
        return self + (-other)

    def __mul__(self, c) -> "SymbolicWeight":
        c = as_fraction(c)
        return SymbolicWeight(c * self.constant, c * self.kappa_inverse)

    __rmul__ = __mul__

    def is_integer(self) -> bool:
        """Integral for generic kappa: no 1/kappa part and integral constant."""
        return self.kappa_inverse == 0 and self.constant.denominator == 1

    def is_nonnegative_integer(self) -> bool:
        return self.is_integer() and self.constant >= 0

    def is_positive_integer(self) -> bool:
        return self.is_integer() and self.constant > 0

    def to_json_obj(self) -> dict:
        return {"q0": format_fraction(self.constant), "q1": format_fraction(self.kappa_inverse)}

    def __str__(self) -> str:
        parts = []
        if self.constant:
            parts.append(str(self.constant))
        if self.kappa_inverse:
            parts.append(f"{self.kappa_inverse}/kappa")
        return " + ".join(parts) if parts else "0"


def _zero() -> SymbolicWeight:
    return SymbolicWeight(Fraction(0), Fraction(0))


def master_weights(m: Sequence[int], spec: ArrangementSpec, a: Sequence[int] | None = None) -> list[SymbolicWeight]:
    """Weights of the hyperplanes of ``spec`` in arrangement order.

    H_i^j gets a_j - m_j/kappa and H_{p,q} gets 2/kappa; ``a`` defaults to 0.
    """
    if len(m) != spec.n:
        raise ValueError(f"need {spec.n} highest weights, got {len(m)}")
    a = tuple(a) if a is not None else (0,) * spec.n
    if len(a) != spec.n:
        raise ValueError(f"need {spec.n} shifts, got {len(a)}")
    out = []
    for h in spec.hyperplanes:
        if h.kind == POINTWISE:
            j = h.indices[1]
            out.append(SymbolicWeight(a[j - 1], -m[j - 1]))
        else:
            out.append(SymbolicWeight(0, 2))
    return out


def infinity_weight(weights: Iterable[SymbolicWeight]) -> SymbolicWeight:
    total = _zero()
    for w in weights:
        total = total + w
    return -total


# dense edges ---------------------------------------------------------------


@dataclass(frozen=True)
class DenseEdge:
    kind: str
    params: tuple[tuple[str, object], ...]
    codim: int
    hyperplanes: tuple[str, ...]
    weight: SymbolicWeight
    dense: bool = True

    def to_json_obj(self) -> dict:
        return {
            "kind": self.kind,
            "codim": self.codim,
            "hyperplanes": list(self.hyperplanes),
            "weight": self.weight.to_json_obj(),
            "dense": self.dense,
        }


def _labels_for(k: int, n: int, I: Sequence[int], points: Sequence[int], diag: bool, inf: bool) -> tuple[str, ...]:
    spec = build(k, n)
    idx = []
    for j in points:
        idx.extend(spec.pointwise(i, j) for i in I)
    if diag:
        idx.extend(spec.diagonal(p, q) for p, q in itertools.combinations(I, 2))
    labels = [spec.hyperplanes[x].label for x in sorted(idx)]
    if inf:
        labels.append("H_inf")
    return tuple(labels)


def dense_edges_formula(k: int, n: int, m: Sequence[int], a: Sequence[int] | None = None) -> list[DenseEdge]:
    """Closed-form list of dense edges of the projective closure with weights.

    Weights use the shifted vector mu_i^j = a_j - m_j/kappa, mu_{p,q} = 2/kappa.
    Families:
      (a) L_I = {t_p = t_q, p,q in I}, 2 <= |I| = l <= k:  l(l-1)/kappa
      (b) L_I^j = {t_i = z_j, i in I}, 1 <= l <= k:          l a_j + l(l-m_j-1)/kappa
      (c) H_inf:                                              k(|m|-k+1)/kappa - k|a|
      (d) H_inf with t_i finite, n >= 2:                      (k-1)(|m|-k)/kappa - (k-1)|a|
      (e) H_inf with t_i finite for i in I, 2 <= l < k, n >= 2:
                                                  (k-l)(|m|-k-l+1)/kappa - (k-l)|a|
    """
    m = tuple(int(x) for x in m)
    if len(m) != n:
        raise ValueError(f"need {n} highest weights, got {len(m)}")
    a = tuple(int(x) for x in (a if a is not None else (0,) * n))
    if len(a) != n:
        raise ValueError(f"need {n} shifts, got {len(a)}")
    M, A = sum(m), sum(a)
    out: list[DenseEdge] = []
    coords = range(1, k + 1)
    for l in range(2, k + 1):
        for I in itertools.combinations(coords, l):
            out.append(DenseEdge("a", (("I", I),), l - 1, _labels_for(k, n, I, (), True, False),
                                 SymbolicWeight(0, l * (l - 1))))
    for j in range(1, n + 1):
        for l in range(1, k + 1):
            for I in itertools.combinations(coords, l):
                out.append(DenseEdge("b", (("I", I), ("j", j)), l, _labels_for(k, n, I, (j,), True, False),
                                     SymbolicWeight(l * a[j - 1], l * (l - m[j - 1] - 1))))
    out.append(DenseEdge("c", (), 1, ("H_inf",), SymbolicWeight(-k * A, k * (M - k + 1))))
    if n >= 2:
        every = tuple(range(1, n + 1))
        for l in range(1, k):
            kind = "d" if l == 1 else "e"
            for I in itertools.combinations(coords, l):
                out.append(DenseEdge(kind, (("I", I),), l + 1, _labels_for(k, n, I, every, True, True),
                                     SymbolicWeight(-(k - l) * A, (k - l) * (M - k - l + 1))))
    return out


class _ConedMatroid:
    """Rank and flats of the coned arrangement, memoized per subset."""

    def __init__(self, spec: ArrangementSpec):
        self.spec = spec
        self.hyps = spec.coned()
        self.vectors = [dict(enumerate(h.functional)) for h in self.hyps]
        self._rank: dict[frozenset, int] = {}
        self._irreducible: dict[frozenset, bool] = {}

    def rank(self, S: Iterable[int]) -> int:
        key = frozenset(S)
        r = self._rank.get(key)
        if r is None:
            red = RowReducer(self.spec.k + 1)
            for x in key:
                red.add(self.vectors[x])
            r = self._rank[key] = red.rank
        return r

    def closure(self, S: Iterable[int]) -> frozenset:
        red = RowReducer(self.spec.k + 1)
        for x in S:
            red.add(self.vectors[x])
        closed = frozenset(i for i, v in enumerate(self.vectors) if red.contains(v))
        self._rank.setdefault(closed, red.rank)
        return closed

    def flats(self) -> list[frozenset]:
        """All flats of rank 1..k, i.e. the edges of the projective closure."""
        k = self.spec.k
        seen: set[frozenset] = set()
        frontier = {self.closure([i]) for i in range(len(self.hyps))}
        while frontier:
            seen |= frontier
            nxt = set()
            for F in frontier:
                if self.rank(F) >= k:
                    continue
                for i in range(len(self.hyps)):
                    if i not in F:
                        G = self.closure(F | {i})
                        if self.rank(G) <= k and G not in seen:
                            nxt.add(G)
            frontier = nxt
        return sorted(seen, key=lambda F: (self.rank(F), sorted(F)))

    def irreducible(self, F: frozenset) -> bool:
        """No bipartition P | Q of F with rank P + rank Q = rank F."""
        got = self._irreducible.get(F)
        if got is not None:
            return got
        elems = sorted(F)
        total = self.rank(elems)
        first, rest = elems[0], elems[1:]
        result = True
        for size in range(0, len(rest)):
            for extra in itertools.combinations(rest, size):
                P = (first,) + extra
                Q = [x for x in elems if x not in P]
                if self.rank(P) + self.rank(Q) == total:
                    result = False
                    break
            if not result:
                break
        self._irreducible[F] = result
        return result


@lru_cache(maxsize=64)
def _edge_structure(spec: ArrangementSpec) -> tuple[tuple[frozenset, int, bool], ...]:
    if len(spec.hyperplanes) + 1 > MAX_CONED_HYPERPLANES or spec.k > MAX_K_BRUTEFORCE:
        raise ScaleError(
            f"brute-force edges limited to {MAX_CONED_HYPERPLANES} coned hyperplanes and k <= "
            f"{MAX_K_BRUTEFORCE}; got {spec.N + 1} hyperplanes, k={spec.k}")
    mat = _ConedMatroid(spec)
    return tuple((F, mat.rank(F), mat.irreducible(F)) for F in mat.flats())


def edges_bruteforce(spec: ArrangementSpec, m: Sequence[int] | None = None,
                     a: Sequence[int] | None = None) -> list[DenseEdge]:
    """Every edge of the projective closure with its density flag.

    Weights are the sums of the (shifted) master weights of the hyperplanes
    through the edge, the hyperplane at infinity carrying minus the total.
    """
    m = tuple(m) if m is not None else (0,) * spec.n
    weights = master_weights(m, spec, a)
    weights.append(infinity_weight(weights))
    labels = [h.label for h in spec.coned()]
    out = []
    for F, r, dense in _edge_structure(spec):
        total = _zero()
        for x in sorted(F):
            total = total + weights[x]
        out.append(DenseEdge("bruteforce", (), r, tuple(labels[x] for x in sorted(F)), total, dense))
    return out


def dense_edges_bruteforce(spec: ArrangementSpec, m: Sequence[int] | None = None,
                           a: Sequence[int] | None = None) -> list[DenseEdge]:
    return [e for e in edges_bruteforce(spec, m, a) if e.dense]


def weight_multiset(edges: Iterable[DenseEdge]) -> list[SymbolicWeight]:
    return sorted(e.weight for e in edges)


def edge_signature(edges: Iterable[DenseEdge]) -> list[tuple[tuple[str, ...], SymbolicWeight]]:
    return sorted((tuple(sorted(e.hyperplanes)), e.weight) for e in edges)


NONRES = "nonres"
COMB = "comb"


def nonresonance_verdict(edges: Iterable[DenseEdge], mode: str = NONRES) -> bool:
    """True iff no dense-edge weight is forbidden for generic kappa.

    ``comb`` forbids positive integers, ``nonres`` forbids nonnegative ones.
    """
    if mode == NONRES:
        bad = SymbolicWeight.is_nonnegative_integer
    elif mode == COMB:
        bad = SymbolicWeight.is_positive_integer
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return not any(bad(e.weight) for e in edges)


def find_shift(m: Sequence[int], k: int) -> tuple[int, ...]:
    """Integer shift a with every dense-edge weight outside Z_{>=0}.

    Takes a_j = -1 when m_j <= k - 1 and a_j = 0 otherwise.
    """
    m = tuple(int(x) for x in m)
    if sum(m) - k + 1 < k:
        raise ValueError(f"need |m|-k+1 >= k, got |m|={sum(m)}, k={k}")
    a = tuple(-1 if mj <= k - 1 else 0 for mj in m)
    if not nonresonance_verdict(dense_edges_formula(k, len(m), m, a), NONRES):
        raise AssertionError(f"shift {a} fails for m={m}, k={k}")
    return a


def euler_characteristic_magnitude(k: int, n: int) -> int:
    """|chi(X(A_{k,n}))| = (n+k-2)!/(n-2)!."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    return factorial(n + k - 2) // factorial(n - 2)
