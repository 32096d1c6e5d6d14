"""Orlik-Solomon algebra of A_{k,n}, the Aomoto complex and its skew part.

The algebra is computed as the quotient of the exterior algebra on the
hyperplane classes a_H by the ideal generated by

* the boundaries of circuits (minimal dependent sets with nonempty
  intersection), and
* the monomials of minimal sets with empty intersection,

by spanning the ideal in each degree and row reducing.  Monomials are sorted
tuples of hyperplane positions.  Linear maps use the row-vector convention of
:mod:`discrim.exact_linalg`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Iterable, Mapping, Sequence

from . import sl2_weight
from .arrangement import POINTWISE, ArrangementSpec
from .exact_linalg import RationalMatrix, RowReducer, as_fraction, left_kernel_basis, rank, span_rank

Monomial = tuple[int, ...]


def permutation_sign(perm: Sequence[int]) -> int:
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def sort_with_sign(indices: Sequence[int]) -> tuple[int, Monomial | None]:
    """Sort a wedge of generators; sign of the sort, or None on a repeat."""
    if len(set(indices)) != len(indices):
        return 0, None
    inversions = sum(1 for x, y in itertools.combinations(indices, 2) if x > y)
    return (-1) ** inversions, tuple(sorted(indices))


class OSElement:
    """Sparse rational combination of exterior monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            q = as_fraction(c)
            if q:
                self.terms[tuple(mono)] = q

    @classmethod
    def generator(cls, h: int, coeff=1) -> "OSElement":
        return cls({(h,): coeff})

    @classmethod
    def one(cls) -> "OSElement":
        return cls({(): 1})

    @classmethod
    def linear(cls, coeffs: Sequence[object]) -> "OSElement":
        return cls({(h,): c for h, c in enumerate(coeffs)})

    def degrees(self) -> set[int]:
        return {len(m) for m in self.terms}

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, OSElement):
            return NotImplemented
        return self.terms == other.terms

    def __add__(self, other: "OSElement") -> "OSElement":
        out = dict(self.terms)
        for mono, c in other.terms.items():
            out[mono] = out.get(mono, 0) + c
        return OSElement(out)

    def __neg__(self) -> "OSElement":
        return self.scale(-1)

    def __sub__(self, other: "OSElement") -> "OSElement":
        return self + (-other)

    def scale(self, c) -> "OSElement":
        c = as_fraction(c)
        return OSElement({mono: c * x for mono, x in self.terms.items()})

    __rmul__ = scale

    def wedge(self, other: "OSElement") -> "OSElement":
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                sign, mono = sort_with_sign(m1 + m2)
                if mono is not None:
                    out[mono] = out.get(mono, 0) + sign * c1 * c2
        return OSElement(out)

    __xor__ = wedge

    def map_generators(self, image: Sequence[int]) -> "OSElement":
        """Apply the algebra map a_h -> a_{image[h]}."""
        out: dict[Monomial, Fraction] = {}
        for mono, c in self.terms.items():
            sign, new = sort_with_sign([image[h] for h in mono])
            if new is not None:
                out[new] = out.get(new, 0) + sign * c
        return OSElement(out)

    def __repr__(self) -> str:
        if not self.terms:
            return "OSElement(0)"
        parts = [f"{c}*a{list(m)}" for m, c in sorted(self.terms.items())]
        return "OSElement(" + " + ".join(parts) + ")"


def boundary(mono: Monomial) -> OSElement:
    """Alternating boundary of e_{H_1} ... e_{H_p}."""
    return OSElement({mono[:t] + mono[t + 1:]: (-1) ** t for t in range(len(mono))})


# matroid data of the affine arrangement ------------------------------------


def _rank_of(spec: ArrangementSpec, S: Iterable[int], affine: bool) -> int:
    red = RowReducer(spec.k + 1)
    for x in S:
        f = spec.hyperplanes[x].functional
        red.add({i: c for i, c in enumerate(f) if affine or i > 0})
    return red.rank


def has_common_point(spec: ArrangementSpec, S: Sequence[int]) -> bool:
    return _rank_of(spec, S, affine=True) == _rank_of(spec, S, affine=False)


def _scale_guard(spec: ArrangementSpec, limit: int = 40):
    if spec.N > limit:
        raise ValueError(f"arrangement with {spec.N} hyperplanes exceeds the brute-force limit {limit}")


@lru_cache(maxsize=64)
def circuits(spec: ArrangementSpec) -> tuple[Monomial, ...]:
    """Minimal dependent sets with a common point, sizes 3..k+1."""
    _scale_guard(spec)
    out = []
    for size in range(2, spec.k + 2):
        for S in itertools.combinations(range(spec.N), size):
            if not has_common_point(spec, S):
                continue
            if _rank_of(spec, S, affine=True) == size:
                continue
            if all(_rank_of(spec, T, affine=True) == size - 1 for T in itertools.combinations(S, size - 1)):
                out.append(S)
    return tuple(out)


@lru_cache(maxsize=64)
def empty_intersections(spec: ArrangementSpec) -> tuple[Monomial, ...]:
    """Minimal sets of hyperplanes with no common point."""
    _scale_guard(spec)
    out = []
    for size in range(2, spec.k + 2):
        for S in itertools.combinations(range(spec.N), size):
            if has_common_point(spec, S):
                continue
            if all(has_common_point(spec, T) for T in itertools.combinations(S, size - 1)):
                out.append(S)
    return tuple(out)


def poincare_coefficients(k: int, n: int) -> list[int]:
    """Coefficients of prod_{i<k} (1 + (n+i) t): e_q(n, n+1, ..., n+k-1)."""
    coeffs = [1]
    for i in range(k):
        nxt = coeffs + [0]
        for q in range(len(coeffs)):
            nxt[q + 1] += (n + i) * coeffs[q]
        coeffs = nxt
    return coeffs


def nbc_count(spec: ArrangementSpec, q: int) -> int:
    """Number of degree-q monomials containing no broken circuit.

    A broken circuit is a circuit minus its smallest element; monomials of
    sets without a common point are excluded.
    """
    broken = [frozenset(C[1:]) for C in circuits(spec)]
    count = 0
    for S in itertools.combinations(range(spec.N), q):
        if q and not has_common_point(spec, S):
            continue
        s = frozenset(S)
        if not any(b <= s for b in broken):
            count += 1
    return count


@dataclass
class GradedQuotientBasis:
    """Basis of A^q together with the reduction of arbitrary monomials."""

    degree: int
    monomials: tuple[Monomial, ...]
    all_monomials: tuple[Monomial, ...]
    _column: dict
    _reducer: RowReducer
    _basis_position: dict

    def __len__(self) -> int:
        return len(self.monomials)

    def coordinates(self, element: OSElement | Mapping[Monomial, object]) -> dict[int, Fraction]:
        """Coordinates of a degree-q element in this basis."""
        terms = element.terms if isinstance(element, OSElement) else element
        vec = {}
        for mono, c in terms.items():
            if len(mono) != self.degree:
                raise ValueError(f"monomial {mono} is not of degree {self.degree}")
            col = self._column[tuple(mono)]
            vec[col] = vec.get(col, 0) + as_fraction(c)
        residue = self._reducer.reduce(vec)
        return {self._basis_position[c]: x for c, x in residue.items()}

    def element(self, coords: Mapping[int, object] | Sequence[object]) -> OSElement:
        items = coords.items() if isinstance(coords, Mapping) else enumerate(coords)
        return OSElement({self.monomials[i]: c for i, c in items})

    def reduce(self, element: OSElement) -> OSElement:
        return self.element(self.coordinates(element))


class OrlikSolomonAlgebra:
    def __init__(self, spec: ArrangementSpec):
        self.spec = spec
        self.k = spec.k
        self.N = spec.N
        self._bases: dict[int, GradedQuotientBasis] = {}

    def relations(self, q: int) -> Iterable[OSElement]:
        """Spanning set of the degree-q part of the Orlik-Solomon ideal."""
        gens = [boundary(C) for C in circuits(self.spec)]
        gens += [OSElement({S: 1}) for S in empty_intersections(self.spec)]
        for g in gens:
            d = next(iter(g.degrees()))
            if d > q:
                continue
            for T in itertools.combinations(range(self.N), q - d):
                yield OSElement({T: 1}).wedge(g)

    def graded_basis(self, q: int) -> GradedQuotientBasis:
        if q in self._bases:
            return self._bases[q]
        if q < 0:
            raise ValueError("degree must be nonnegative")
        monos = tuple(itertools.combinations(range(self.N), q))
        column = {m: i for i, m in enumerate(monos)}
        red = RowReducer(len(monos))
        for rel in self.relations(q):
            if rel:
                red.add({column[m]: c for m, c in rel.terms.items()})
        pivots = set(red.pivot_columns)
        basis_cols = [c for c in range(len(monos)) if c not in pivots]
        basis = GradedQuotientBasis(q, tuple(monos[c] for c in basis_cols), monos, column, red,
                                    {c: i for i, c in enumerate(basis_cols)})
        self._bases[q] = basis
        return basis

    def dim(self, q: int) -> int:
        return len(self.graded_basis(q))

    def reduce(self, element: OSElement) -> OSElement:
        out = OSElement()
        for q in sorted(element.degrees()):
            part = OSElement({m: c for m, c in element.terms.items() if len(m) == q})
            out = out + self.graded_basis(q).reduce(part)
        return out

    def multiplication_matrix(self, left: OSElement, q: int) -> RationalMatrix:
        """Matrix of x -> left ^ x from A^q to A^{q+d}, d the degree of ``left``."""
        degs = left.degrees()
        if len(degs) != 1:
            raise ValueError("left factor must be homogeneous and nonzero")
        d = degs.pop()
        src, tgt = self.graded_basis(q), self.graded_basis(q + d)
        rows = [tgt.coordinates(left.wedge(OSElement({b: 1}))) for b in src.monomials]
        return RationalMatrix(len(src), len(tgt), rows)

    def hyperplane_permutation(self, sigma: Sequence[int]) -> list[int]:
        """Image positions of the hyperplanes under t_i -> t_{sigma(i)}.

        ``sigma`` is 0-based: sigma[i-1] + 1 is the image of coordinate i.
        """
        spec = self.spec
        if sorted(sigma) != list(range(self.k)):
            raise ValueError(f"{sigma} is not a permutation of {self.k} coordinates")
        image = []
        for h in spec.hyperplanes:
            if h.kind == POINTWISE:
                i, j = h.indices
                image.append(spec.pointwise(sigma[i - 1] + 1, j))
            else:
                p, q = h.indices
                image.append(spec.diagonal(sigma[p - 1] + 1, sigma[q - 1] + 1))
        return image

    def sigma_action_matrix(self, sigma: Sequence[int], q: int) -> RationalMatrix:
        image = self.hyperplane_permutation(sigma)
        src = self.graded_basis(q)
        rows = [src.coordinates(OSElement({b: 1}).map_generators(image)) for b in src.monomials]
        return RationalMatrix(len(src), len(src), rows)

    def skew_projector(self, q: int) -> RationalMatrix:
        """(1/k!) sum_sigma sign(sigma) sigma on A^q."""
        total = RationalMatrix.zeros(self.dim(q), self.dim(q))
        for sigma in itertools.permutations(range(self.k)):
            total = total + self.sigma_action_matrix(sigma, q).scale(permutation_sign(sigma))
        return total.scale(Fraction(1, factorial(self.k)))

    def skew_basis(self, q: int) -> list[dict[int, Fraction]]:
        """Basis of the image of the skew projector, in A^q coordinates."""
        P = self.skew_projector(q)
        red = RowReducer(P.ncols)
        for r in P.rows():
            red.add(r)
        return [row for _, row in red.pivot_rows()]

    def skew_element(self, element: OSElement) -> OSElement:
        """Plain signed sum over the symmetric group (no 1/k! factor)."""
        total = OSElement()
        for sigma in itertools.permutations(range(self.k)):
            image = self.hyperplane_permutation(sigma)
            total = total + element.map_generators(image).scale(permutation_sign(sigma))
        return self.reduce(total)


@lru_cache(maxsize=32)
def algebra(spec: ArrangementSpec) -> OrlikSolomonAlgebra:
    """Shared algebra instance per arrangement; bases are computed lazily."""
    return OrlikSolomonAlgebra(spec)


# weights and the Aomoto complex --------------------------------------------


def integer_weights(m: Sequence[int], spec: ArrangementSpec) -> tuple[int, ...]:
    """kappa times the master weights: -m_j on H_i^j and 2 on H_{p,q}."""
    if len(m) != spec.n:
        raise ValueError(f"need {spec.n} highest weights, got {len(m)}")
    return tuple(-int(m[h.indices[1] - 1]) if h.kind == POINTWISE else 2 for h in spec.hyperplanes)


def graded_basis(spec: ArrangementSpec, q: int) -> GradedQuotientBasis:
    if not 0 <= q <= spec.k:
        raise ValueError(f"degree {q} outside 0..{spec.k}")
    return algebra(spec).graded_basis(q)


def aomoto_matrix(spec: ArrangementSpec, weights: Sequence[object], q: int) -> RationalMatrix:
    """Matrix of a_lambda ^ : A^q -> A^{q+1}."""
    if not 0 <= q < spec.k:
        raise ValueError(f"degree {q} outside 0..{spec.k - 1}")
    if len(weights) != spec.N:
        raise ValueError(f"need {spec.N} weights, got {len(weights)}")
    A = algebra(spec)
    a_lambda = OSElement.linear(weights)
    if not a_lambda:
        return RationalMatrix.zeros(A.dim(q), A.dim(q + 1))
    return A.multiplication_matrix(a_lambda, q)


def _cohomology(dims: Sequence[int], ranks: Sequence[int]) -> list[int]:
    out = []
    for q, d in enumerate(dims):
        r_out = ranks[q] if q < len(ranks) else 0
        r_in = ranks[q - 1] if q > 0 else 0
        out.append(d - r_out - r_in)
    return out


def aomoto_cohomology_dims(spec: ArrangementSpec, weights: Sequence[object]) -> list[int]:
    A = algebra(spec)
    dims = [A.dim(q) for q in range(spec.k + 1)]
    ranks = [rank(aomoto_matrix(spec, weights, q)) for q in range(spec.k)]
    return _cohomology(dims, ranks)


def sigma_action_matrix(spec: ArrangementSpec, sigma: Sequence[int], q: int) -> RationalMatrix:
    return algebra(spec).sigma_action_matrix(sigma, q)


def skew_cohomology_dims(spec: ArrangementSpec, weights: Sequence[object]) -> list[int]:
    A = algebra(spec)
    bases = [A.skew_basis(q) for q in range(spec.k + 1)]
    ranks = []
    for q in range(spec.k):
        D = aomoto_matrix(spec, weights, q)
        ranks.append(span_rank((D.apply_row(b) for b in bases[q]), D.ncols))
    return _cohomology([len(b) for b in bases], ranks)


def class_rank(spec: ArrangementSpec, weights: Sequence[object], q: int,
               cocycles: Iterable[OSElement]) -> int:
    """Dimension of the span of the classes of ``cocycles`` in H^q.

    Raises ValueError if some element is not a cocycle.
    """
    A = algebra(spec)
    basis = A.graded_basis(q)
    vecs = [basis.coordinates(c) for c in cocycles]
    if q < spec.k:
        D = aomoto_matrix(spec, weights, q)
        if any(D.apply_row(v) for v in vecs):
            raise ValueError("element is not a cocycle")
    red = RowReducer(len(basis))
    if q > 0:
        for r in aomoto_matrix(spec, weights, q - 1).rows():
            red.add(r)
    base = red.rank
    for v in vecs:
        red.add(v)
    return red.rank - base


def is_cocycle(spec: ArrangementSpec, weights: Sequence[object], element: OSElement) -> bool:
    a_lambda = OSElement.linear(weights)
    return not algebra(spec).reduce(a_lambda.wedge(element))


# forms ---------------------------------------------------------------------


def edge_closure(spec: ArrangementSpec, hyperplanes: Iterable[int]) -> tuple[frozenset, int]:
    """All hyperplanes through the intersection of the given ones, and its codim."""
    S = list(hyperplanes)
    if not S:
        return frozenset(), 0
    if not has_common_point(spec, S):
        raise ValueError(f"hyperplanes {S} have no common point")
    r = _rank_of(spec, S, affine=True)
    through = frozenset(h for h in range(spec.N) if _rank_of(spec, S + [h], affine=True) == r)
    return through, r


def flag_form(spec: ArrangementSpec, flag: Sequence[Iterable[int]], weights: Sequence[object]) -> OSElement:
    """Omega_F = lambda_{F_1} a_{F_1} ^ sum_{F_2 in H} lambda_H a_H ^ ... .

    ``flag`` lists F_1, F_2, ..., F_q, each edge given by hyperplanes whose
    intersection it is; F_j must have codimension j and contain F_{j+1}.
    """
    lam = [as_fraction(x) for x in weights]
    result = OSElement.one()
    previous: frozenset = frozenset()
    for depth, edge in enumerate(flag, start=1):
        through, codim = edge_closure(spec, edge)
        if codim != depth:
            raise ValueError(f"flag member {depth} has codimension {codim}")
        if not previous <= through:
            raise ValueError(f"flag member {depth} is not contained in member {depth - 1}")
        previous = through
        if depth == 1:
            (h,) = tuple(through)
            factor = OSElement.generator(h, lam[h])
        else:
            factor = OSElement({(h,): lam[h] for h in through})
        result = result.wedge(factor)
    return algebra(spec).reduce(result)


def eta_form(J: Sequence[int], spec: ArrangementSpec) -> OSElement:
    """alpha_J times the wedge over i of a_{H_s^i} for s in the i-th block of J."""
    J = tuple(int(x) for x in J)
    if len(J) != spec.n:
        raise ValueError(f"multi-index of length {len(J)} for n={spec.n}")
    if any(x < 0 for x in J) or sum(J) > spec.k:
        raise ValueError(f"multi-index {J} invalid for k={spec.k}")
    alpha = Fraction(1)
    gens: list[int] = []
    s = 0
    for i, ji in enumerate(J, start=1):
        alpha /= factorial(ji)
        for _ in range(ji):
            s += 1
            gens.append(spec.pointwise(s, i))
    return _ordered_wedge(gens).scale(alpha)


def _ordered_wedge(gens: Sequence[int]) -> OSElement:
    sign, mono = sort_with_sign(gens)
    return OSElement({mono: sign}) if mono is not None else OSElement()


def skew_form_omega(J: Sequence[int], spec: ArrangementSpec) -> OSElement:
    """Signed sum over Sigma_k of the images of eta_J, reduced."""
    return algebra(spec).skew_element(eta_form(J, spec))


def omega_map_matrix(spec: ArrangementSpec, degree: int) -> RationalMatrix:
    """Rows: omega_J in A^degree coordinates for J in the dual Verma basis."""
    m_len = spec.n
    basis = algebra(spec).graded_basis(degree)
    Js = sl2_weight.weight_basis((0,) * m_len, degree)
    rows = [basis.coordinates(skew_form_omega(J, spec)) for J in Js]
    return RationalMatrix(len(Js), len(basis), rows)


# main theorem ----------------------------------------------------------------


@dataclass
class Check:
    name: str
    lhs: object
    rhs: object

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def to_json_obj(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}


@dataclass
class MainTheoremReport:
    k: int
    n: int
    m: tuple[int, ...]
    skew_dims: list[int]
    kernel: int
    cokernel: int
    predicted: sl2_weight.PredictedDims
    checks: list[Check]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_json_obj(self) -> dict:
        return {
            "k": self.k,
            "n": self.n,
            "m": list(self.m),
            "skew_dims": list(self.skew_dims),
            "kernel": self.kernel,
            "cokernel": self.cokernel,
            "predicted": {"kernel": self.predicted.kernel, "cokernel": self.predicted.cokernel,
                          "regime": self.predicted.regime},
            "pass": self.passed,
            "checks": [c.to_json_obj() for c in self.checks],
        }


def verify_main_theorem(spec: ArrangementSpec, m: Sequence[int]) -> MainTheoremReport:
    """Compare skew Aomoto cohomology with ker/coker of A_k(m) and the prediction."""
    m = tuple(int(x) for x in m)
    k = spec.k
    skew = skew_cohomology_dims(spec, integer_weights(m, spec))
    kernel, cokernel = sl2_weight.kernel_cokernel_dims(m, k)
    pred = sl2_weight.predicted_dims(m, k)
    checks = [Check(f"H^{q}_- = 0", skew[q], 0) for q in range(k + 1) if q not in (k - 1, k)]
    checks += [
        Check(f"H^{k - 1}_- = dim ker f", skew[k - 1], kernel),
        Check(f"H^{k}_- = dim coker f", skew[k], cokernel),
        Check("dim ker f = predicted", kernel, pred.kernel),
        Check("dim coker f = predicted", cokernel, pred.cokernel),
    ]
    return MainTheoremReport(k, spec.n, m, skew, kernel, cokernel, pred, checks)



def flags(spec: ArrangementSpec, q: int) -> list[tuple[frozenset, ...]]:
    """All flags F_1 > F_2 > ... > F_q of edges with codim F_j = j.

    Each edge is represented by the set of hyperplanes through it.
    """
    out: list[tuple[frozenset, ...]] = []
    if q == 0:
        return [()]

    def extend(chain: list[frozenset]) -> None:
        if len(chain) == q:
            out.append(tuple(chain))
            return
        last = chain[-1]
        seen = set()
        for h in range(spec.N):
            if h in last:
                continue
            S = sorted(last | {h})
            if not has_common_point(spec, S):
                continue
            through, codim = edge_closure(spec, S)
            if codim == len(chain) + 1 and through not in seen:
                seen.add(through)
                chain.append(through)
                extend(chain)
                chain.pop()

    for h in range(spec.N):
        extend([frozenset([h])])
    return out


def omega_chain_scalar(spec: ArrangementSpec, m: Sequence[int]) -> Fraction | None:
    """The c with omega_{k-1} (a_lambda ^) = c A_k(m) omega_k, or None if none exists.

    Rows of both sides are indexed by the degree k-1 dual Verma basis; the
    weights are the integral ones of :func:`integer_weights`.
    """
    k = spec.k
    left = omega_map_matrix(spec, k - 1) @ aomoto_matrix(spec, integer_weights(m, spec), k - 1)
    right = sl2_weight.f_matrix_dual(m, k) @ omega_map_matrix(spec, k)
    if right.is_zero():
        return Fraction(0) if left.is_zero() else None
    i, j, v = next(iter(right.nonzeros()))
    c = left[i, j] / v
    return c if left == right.scale(c) else None


def skew_flag_class_rank(spec: ArrangementSpec, m: Sequence[int]) -> int:
    """Dimension of the part of H^{k-1}_- represented by skew-symmetrized flag forms.

    Takes the span of the skew-symmetrizations of all degree k-1 flag forms,
    keeps its cocycles and counts their independent classes.
    """
    A = algebra(spec)
    lam = integer_weights(m, spec)
    q = spec.k - 1
    basis = A.graded_basis(q)
    vecs = [basis.coordinates(A.skew_element(flag_form(spec, [sorted(e) for e in F], lam)))
            for F in flags(spec, q)]
    V = RationalMatrix(len(vecs), len(basis), vecs)
    D = aomoto_matrix(spec, lam, q)
    cocycles = [V.apply_row(c) for c in left_kernel_basis(V @ D)]
    return class_rank(spec, lam, q, [basis.element(c) for c in cocycles])
