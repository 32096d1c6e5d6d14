"""Acceptance criteria 1-8, all checked exactly (zero tolerance).

Run with ``pytest tests/test_acceptance.py -s`` to see one PASS/FAIL line per
criterion; the lines are also emitted with output capture disabled.
"""

import itertools
from math import comb, factorial, prod

from discrim.arrangement import (
    NONRES,
    build,
    dense_edges_bruteforce,
    dense_edges_formula,
    find_shift,
    nonresonance_verdict,
    weight_multiset,
)
from discrim.multiplicity import decomposition_vector, dimension_sum, w_via_recursion, w_via_tensor
from discrim.orlik_solomon import (
    aomoto_cohomology_dims,
    aomoto_matrix,
    algebra,
    integer_weights,
    nbc_count,
    poincare_coefficients,
    sigma_action_matrix,
    verify_main_theorem,
)
from discrim.sl2_weight import (
    commutator_identity_holds,
    kernel_cokernel_dims,
    predicted_dims,
    shapovalov_intertwines,
)

MAIN_GRID = [(2, 2), (2, 3), (3, 2), (3, 3)]


def weight_vectors(n_max, m_max):
    for n in range(1, n_max + 1):
        yield from itertools.product(range(m_max + 1), repeat=n)


def kernel_grid():
    """(m, k) with n <= 4, m_i <= 4, 1 <= k <= 5 and source dim <= 2000."""
    for m in weight_vectors(4, 4):
        for k in range(1, 6):
            if comb(len(m) + k - 2, k - 1) <= 2000:
                yield m, k


def report(capsys, number, failures, checked):
    status = "PASS" if not failures else "FAIL"
    line = f"criterion {number}: {status} ({checked} cases, {len(failures)} failures)"
    if failures:
        line += f" first failure: {failures[0]}"
    with capsys.disabled():
        print(f"\n{line}")
    assert not failures, line


def test_criterion_1_kernel_grid(capsys):
    failures, checked = [], 0
    for m, k in kernel_grid():
        checked += 1
        pred = predicted_dims(m, k)
        if kernel_cokernel_dims(m, k) != (pred.kernel, pred.cokernel):
            failures.append((m, k))
        j = sum(m) - k + 1
        if j >= 0 and w_via_tensor(m, j) != w_via_recursion(m, j):
            failures.append((m, k, "w"))
    report(capsys, 1, failures, checked)


def test_criterion_2_main_theorem(capsys):
    failures, checked = [], 0
    for k, n in MAIN_GRID:
        spec = build(k, n)
        for m in itertools.product(range(4), repeat=n):
            checked += 1
            if not verify_main_theorem(spec, m).passed:
                failures.append((k, n, m))
    report(capsys, 2, failures, checked)


def test_criterion_3_nonresonance(capsys):
    failures, checked = [], 0
    for k, n in MAIN_GRID:
        spec = build(k, n)
        top = factorial(n + k - 2) // factorial(n - 2)
        for m in itertools.product(range(4), repeat=n):
            if sum(m) - k + 1 < k:
                continue
            checked += 1
            if aomoto_cohomology_dims(spec, integer_weights(m, spec)) != [0] * k + [top]:
                failures.append((k, n, m))
    assert checked > 0
    report(capsys, 3, failures, checked)


def test_criterion_4_multiplicity_oracles(capsys):
    failures, checked = [], 0
    for m in weight_vectors(5, 6):
        checked += 1
        if decomposition_vector(m, "tensor") != decomposition_vector(m, "recursion"):
            failures.append(m)
        if dimension_sum(m) != prod(x + 1 for x in m):
            failures.append((m, "dimension"))
    report(capsys, 4, failures, checked)


def test_criterion_5_sl2_structure(capsys):
    failures, checked = [], 0
    for m, k in kernel_grid():
        checked += 1
        if not commutator_identity_holds(m, k):
            failures.append((m, k, "commutator"))
        if not shapovalov_intertwines(m, k):
            failures.append((m, k, "intertwining"))
    report(capsys, 5, failures, checked)


def test_criterion_6_dense_edges(capsys):
    failures, checked = [], 0
    for k in range(1, 4):
        for n in range(1, 4):
            spec = build(k, n)
            for m in itertools.product(range(4), repeat=n):
                for a in itertools.product((0, -1), repeat=n):
                    checked += 1
                    brute = weight_multiset(dense_edges_bruteforce(spec, m, a))
                    if brute != weight_multiset(dense_edges_formula(k, n, m, a)):
                        failures.append((k, n, m, a))
                if sum(m) - k + 1 >= k:
                    shift = find_shift(m, k)
                    if not nonresonance_verdict(dense_edges_bruteforce(spec, m, shift), NONRES):
                        failures.append((k, n, m, "shift"))
    report(capsys, 6, failures, checked)


def test_criterion_7_orlik_solomon(capsys):
    failures, checked = [], 0
    for k in range(1, 4):
        for n in range(1, 5):
            checked += 1
            spec = build(k, n)
            A = algebra(spec)
            dims = [A.dim(q) for q in range(k + 1)]
            if dims != poincare_coefficients(k, n):
                failures.append((k, n, "dims"))
            lam = integer_weights(tuple(range(1, n + 1)), spec)
            if n >= 2:
                chi = sum((-1) ** q * d for q, d in enumerate(aomoto_cohomology_dims(spec, lam)))
                if chi != (-1) ** k * factorial(n + k - 2) // factorial(n - 2):
                    failures.append((k, n, "euler"))
            D = [aomoto_matrix(spec, lam, q) for q in range(k)]
            if any(not (D[q] @ D[q + 1]).is_zero() for q in range(k - 1)):
                failures.append((k, n, "square"))
            for sigma in itertools.permutations(range(k)):
                P = [sigma_action_matrix(spec, sigma, q) for q in range(k + 1)]
                if any(P[q] @ D[q] != D[q] @ P[q + 1] for q in range(k)):
                    failures.append((k, n, sigma))
    report(capsys, 7, failures, checked)


def test_criterion_7_broken_circuit_count():
    for k in range(1, 4):
        for n in range(1, 5):
            spec = build(k, n)
            assert [nbc_count(spec, q) for q in range(k + 1)] == [algebra(spec).dim(q) for q in range(k + 1)]


def test_criterion_8_vanishing(capsys):
    failures, checked = [], 0
    for m, k in kernel_grid():
        j = sum(m) - k + 1
        if 0 <= j < k and any(x >= k for x in m):
            checked += 1
            if w_via_recursion(m, j) != 0 or kernel_cokernel_dims(m, k)[0] != 0:
                failures.append((m, k))
    assert checked > 0
    report(capsys, 8, failures, checked)
