from fractions import Fraction

import pytest

from gwci.ifunction import one_point, validate_target
from gwci.twopoint import (FROZEN_CALIBRATION, IncompleteTableError, TwoPointTable, calibrate,
                           equivalence_suite, formula_one_tail, identity_suite, matrix_two_point,
                           mixed_matrices, mixed_matrix, polynomiality_witness, psi_index,
                           shift_matrix, two_point)


@pytest.mark.parametrize("a,b,k,d,value", [
    (1, 5, 0, 1, 600),
    (5, 1, 0, 1, 600),
    (2, 4, 0, 1, 3850),
    (3, 3, 0, 1, 6725),      # 1345 = <H^3, H^3>_1 / 5
    (4, 4, 0, 2, 5 * 692500 // 2),
    (5, 5, 0, 3, 52200000),
])
def test_quintic_values(quintic, a, b, k, d, value):
    assert two_point(quintic, a, b, k, d) == value


@pytest.mark.parametrize("n", range(2, 7))
def test_line_through_two_points(n):
    # one line through two points of P^n
    assert two_point(validate_target(n), n, n, 0, 1) == 1


def test_dimension_filter(quintic):
    assert psi_index(quintic, 5, 5, 3) == 0
    assert two_point(quintic, 5, 5, 1, 3) == 0
    assert psi_index(quintic, 0, 0, 1) == 6
    assert two_point(quintic, 0, 0, 5, 1) == 0
    # string equation: <1, psi^6>_1 = <psi^5>_1
    assert two_point(quintic, 0, 0, 6, 1) == one_point(quintic, 0, 5, 1) == 5 * -5240


def test_values_are_graded_and_symmetric(quintic):
    t = TwoPointTable(quintic).fill(3)
    for (d, a, b, k), v in t.values.items():
        assert a + b + k == quintic.r + d * quintic.f - 1
        if k == 0:
            assert t.get(b, a, 0, d) == v


def test_get_requires_filled_degree(quintic):
    t = TwoPointTable(quintic)
    with pytest.raises(IncompleteTableError):
        t.get(1, 1, 0, 1)
    assert t.get(1, 1, 0, 0) == 0
    with pytest.raises(ValueError):
        t.value(6, 0, 0, 1)


def test_tail_cancels_every_negative_power(quintic):
    t = TwoPointTable(quintic).fill(4)
    for d in range(1, 5):
        for a in range(6):
            for b in range(6):
                assert polynomiality_witness(a, b, d, t) == []


def test_witness_detects_tampering(quintic):
    t = TwoPointTable(quintic).fill(2)
    t.values[(2, 4, 4, 0)] += 1
    assert polynomiality_witness(4, 4, 2, t) == [-1]


def test_tail_is_laurent_in_one_variable(quintic):
    t = TwoPointTable(quintic).fill(1)
    tail = formula_one_tail(2, 4, 1, t)
    assert tail.nvars == 1
    assert -tail.coeff((-1,)) == 3850


@pytest.mark.parametrize("X", [validate_target(6, (5,)), validate_target(4), validate_target(7, (3, 2)),
                               validate_target(5, (2, 2))], ids=str)
def test_identity_suite(X):
    for d in range(1, X.d_max + 2):
        rep = identity_suite(X, d)
        assert rep.ok, rep.first_failure.describe()


def test_identity_suite_detects_tampering(quintic):
    t = TwoPointTable(quintic).fill(1)
    t.values[(1, 3, 1, 0)] = Fraction(1)
    rep = identity_suite(quintic, 1, t)
    assert not rep.ok
    names = {c.name for c in rep.failures}
    assert {"divisor", "symmetry"} <= names


def test_shift_matrix():
    X = validate_target(4)
    assert shift_matrix(X, 3) == [[3, 0, 0, 0, 0], [1, 3, 0, 0, 0], [0, 1, 3, 0, 0],
                                  [0, 0, 1, 3, 0], [0, 0, 0, 1, 3]]


def test_mixed_matrix_degree_one(quintic):
    M1 = mixed_matrix(quintic, 1, [])
    # row 0 is a = r; column 1 is b = H
    assert FROZEN_CALIBRATION.value(quintic, M1, 5, 1) == 600
    for row in range(6):
        for b in range(6):
            assert M1.mask[row][b] == (psi_index(quintic, 5 - row, b, 1) < 0)
            if M1.mask[row][b]:
                assert M1.entries[row][b] == 0


def test_mixed_matrix_needs_lower_degrees(quintic):
    with pytest.raises(IncompleteTableError):
        mixed_matrix(quintic, 2, [])


def test_calibration_readings(quintic):
    cal = calibrate(quintic, TwoPointTable(quintic).fill(1))
    assert cal.sign0 == -1 == FROZEN_CALIBRATION.sign0
    assert cal.readings == {"dimension": -1, "printed": 1}


def test_matrix_route_matches_formula_route(quintic):
    t = TwoPointTable(quintic).fill(3)
    values, _ = matrix_two_point(quintic, 3, t)
    assert values == {k: v for k, v in t.values.items() if v}
    assert len(mixed_matrices(quintic, 3)) == 3
    assert equivalence_suite(quintic, t).ok


def test_equivalence_suite_locates_corruption(quintic):
    t = TwoPointTable(quintic).fill(3)
    t.values[(3, 5, 5, 0)] = Fraction(1, 7)
    failures = [c for c in equivalence_suite(quintic, t).failures]
    assert [(c.name, c.indices["d"], c.indices["a"], c.indices["b"]) for c in failures] == \
        [("matrix vs formula", 3, 5, 5)]
    assert failures[0].lhs == 52200000
