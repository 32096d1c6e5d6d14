import itertools
from math import factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from discrim.arrangement import build
from discrim.exact_linalg import RationalMatrix, left_kernel_basis, rank
from discrim.orlik_solomon import (
    OSElement,
    algebra,
    aomoto_cohomology_dims,
    aomoto_matrix,
    circuits,
    class_rank,
    empty_intersections,
    flag_form,
    flags,
    graded_basis,
    integer_weights,
    is_cocycle,
    nbc_count,
    omega_chain_scalar,
    permutation_sign,
    poincare_coefficients,
    sigma_action_matrix,
    skew_cohomology_dims,
    skew_flag_class_rank,
    skew_form_omega,
    verify_main_theorem,
)
from discrim.sl2_weight import f_matrix_dual, kernel_cokernel_dims, weight_basis

DESK = [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2)]


def test_circuit_examples():
    spec = build(2, 2, (0, 1))
    C = set(circuits(spec))
    triple = tuple(sorted((spec.pointwise(1, 1), spec.pointwise(2, 1), spec.diagonal(1, 2))))
    assert triple in C
    parallel = (spec.pointwise(1, 1), spec.pointwise(1, 2))
    assert parallel in set(empty_intersections(spec))
    assert parallel not in C


def test_rank_one_has_only_parallel_relations():
    spec = build(1, 3)
    assert circuits(spec) == ()
    assert set(empty_intersections(spec)) == set(itertools.combinations(range(3), 2))


@pytest.mark.parametrize("k, n", DESK)
def test_graded_dims(k, n):
    spec = build(k, n)
    expected = poincare_coefficients(k, n)
    assert [algebra(spec).dim(q) for q in range(k + 1)] == expected
    assert expected[0] == 1 and expected[1] == spec.N
    assert [nbc_count(spec, q) for q in range(k + 1)] == expected


def test_graded_dim_examples():
    assert len(graded_basis(build(2, 2), 2)) == 6
    assert len(graded_basis(build(2, 3), 1)) == 7
    assert len(graded_basis(build(2, 3), 2)) == 12


def test_degree_zero_differential_is_weight_row():
    spec = build(2, 2)
    lam = integer_weights((1, 3), spec)
    D = aomoto_matrix(spec, lam, 0)
    assert D.to_dense() == [list(lam)]


def test_aomoto_examples():
    assert aomoto_cohomology_dims(build(1, 2), integer_weights((1, 1), build(1, 2))) == [0, 1]
    assert aomoto_cohomology_dims(build(1, 3), integer_weights((1, 1, 1), build(1, 3))) == [0, 2]
    spec = build(2, 2)
    assert aomoto_cohomology_dims(spec, integer_weights((3, 3), spec)) == [0, 0, 2]


@pytest.mark.parametrize("k, n", DESK)
def test_euler_characteristic(k, n):
    spec = build(k, n)
    dims = aomoto_cohomology_dims(spec, integer_weights((1,) * n, spec))
    chi = sum((-1) ** q * d for q, d in enumerate(dims))
    assert chi == (-1) ** k * factorial(n + k - 2) // factorial(n - 2)


@pytest.mark.parametrize("k, n", DESK)
def test_square_zero(k, n):
    spec = build(k, n)
    lam = integer_weights(tuple(range(1, n + 1)), spec)
    for q in range(k - 1):
        assert (aomoto_matrix(spec, lam, q) @ aomoto_matrix(spec, lam, q + 1)).is_zero()


@given(st.integers(-3, 3).filter(bool))
def test_cohomology_invariant_under_scaling(c):
    spec = build(2, 2)
    lam = integer_weights((1, 2), spec)
    assert aomoto_cohomology_dims(spec, [c * x for x in lam]) == aomoto_cohomology_dims(spec, lam)


def test_zero_weights_give_the_algebra():
    spec = build(2, 2)
    assert aomoto_cohomology_dims(spec, [0] * spec.N) == poincare_coefficients(2, 2)


@pytest.mark.parametrize("k, n", [(2, 2), (2, 3), (3, 2)])
def test_symmetric_group_action(k, n):
    spec = build(k, n)
    lam = integer_weights((1,) * n, spec)
    perms = list(itertools.permutations(range(k)))
    for q in range(k + 1):
        ident = sigma_action_matrix(spec, tuple(range(k)), q)
        assert ident == RationalMatrix.identity(ident.nrows)
        for s, t in itertools.product(perms, repeat=2):
            st_ = tuple(s[t[i]] for i in range(k))
            assert sigma_action_matrix(spec, st_, q) == (
                sigma_action_matrix(spec, t, q) @ sigma_action_matrix(spec, s, q))
        if q < k:
            D = aomoto_matrix(spec, lam, q)
            for s in perms:
                assert sigma_action_matrix(spec, s, q) @ D == D @ sigma_action_matrix(spec, s, q + 1)


@pytest.mark.parametrize("k, n", [(2, 2), (3, 2)])
def test_skew_projector_idempotent(k, n):
    A = algebra(build(k, n))
    for q in range(k + 1):
        P = A.skew_projector(q)
        assert P @ P == P


def test_permutation_sign():
    assert permutation_sign((0, 1, 2)) == 1
    assert permutation_sign((1, 0, 2)) == -1
    assert permutation_sign((2, 0, 1)) == 1


def test_skew_form_examples():
    spec = build(1, 2)
    assert skew_form_omega((1, 0), spec) == algebra(spec).reduce(OSElement.generator(spec.pointwise(1, 1)))
    spec = build(2, 2)
    mono = tuple(sorted((spec.pointwise(1, 1), spec.pointwise(2, 1))))
    assert skew_form_omega((2, 0), spec) == algebra(spec).reduce(OSElement({mono: 1}))


@pytest.mark.parametrize("m, expected", [((1, 1), [0, 1, 2]), ((0, 0), [0, 0, 1])])
def test_skew_examples_n2(m, expected):
    spec = build(2, 2)
    assert skew_cohomology_dims(spec, integer_weights(m, spec)) == expected


def test_skew_example_n3():
    spec = build(2, 3)
    assert skew_cohomology_dims(spec, integer_weights((1, 1, 1), spec)) == [0, 0, 3]


@pytest.mark.parametrize("k, n, m, kernel", [(2, 2, (1, 1), 1), (2, 3, (1, 1, 1), 0), (3, 2, (2, 2), 1)])
def test_main_theorem_examples(k, n, m, kernel):
    report = verify_main_theorem(build(k, n), m)
    assert report.passed
    assert report.kernel == kernel
    obj = report.to_json_obj()
    assert obj["pass"] and obj["skew_dims"][k - 1] == kernel


def test_main_theorem_top_degree_k3():
    assert verify_main_theorem(build(3, 2), (2, 2)).skew_dims == [0, 0, 1, 2]


@pytest.mark.parametrize("k, n, m", [(1, 2, (1, 2)), (2, 2, (1, 1)), (2, 2, (2, 3)), (2, 3, (1, 1, 1)),
                                     (3, 2, (2, 2)), (3, 2, (1, 3))])
def test_chain_map_scalar(k, n, m):
    assert omega_chain_scalar(build(k, n), m) == (-1) ** k


@pytest.mark.parametrize("k, n, m", [(2, 2, (1, 1)), (3, 2, (2, 2)), (2, 3, (1, 1, 0)), (3, 3, (1, 1, 1))])
def test_kernel_vectors_give_independent_classes(k, n, m):
    spec = build(k, n)
    lam = integer_weights(m, spec)
    A = algebra(spec)
    basis = A.graded_basis(k - 1)
    Js = weight_basis(m, k - 1)
    forms = [skew_form_omega(J, spec) for J in Js]
    classes = []
    for v in left_kernel_basis(f_matrix_dual(m, k)):
        total = OSElement()
        for c, form in zip(v, forms):
            total = total + form.scale(c)
        assert is_cocycle(spec, lam, total)
        classes.append(total)
    kernel, _ = kernel_cokernel_dims(m, k)
    assert class_rank(spec, lam, k - 1, classes) == kernel
    assert len(basis) > 0


@pytest.mark.parametrize("k, n, m, expected", [(2, 2, (1, 1), 1), (3, 2, (2, 2), 1), (2, 3, (1, 1, 0), 1)])
def test_flag_forms_span(k, n, m, expected):
    spec = build(k, n)
    assert skew_flag_class_rank(spec, m) == expected
    assert skew_cohomology_dims(spec, integer_weights(m, spec))[k - 1] == expected


def test_flag_form_degree_one():
    spec = build(2, 2)
    lam = integer_weights((1, 2), spec)
    h = spec.pointwise(2, 2)
    assert flag_form(spec, [[h]], lam) == OSElement.generator(h, -2)


def test_flag_form_rejects_bad_codimension():
    spec = build(2, 2)
    lam = integer_weights((1, 1), spec)
    with pytest.raises(ValueError):
        flag_form(spec, [[0], [0]], lam)


def test_flags_and_products_reduce():
    spec = build(2, 2)
    lam = integer_weights((1, 1), spec)
    a_lam = OSElement.linear(lam)
    for F in flags(spec, 2):
        form = flag_form(spec, [sorted(e) for e in F], lam)
        algebra(spec).reduce(a_lam.wedge(form))
    assert len(flags(spec, 1)) == spec.N


def test_aomoto_rank_bounded_by_dims():
    spec = build(3, 2)
    lam = integer_weights((1, 2), spec)
    for q in range(3):
        D = aomoto_matrix(spec, lam, q)
        assert rank(D) <= min(D.shape)


def test_weight_length_checked():
    with pytest.raises(ValueError):
        aomoto_matrix(build(2, 2), [1, 2], 0)
