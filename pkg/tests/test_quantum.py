from fractions import Fraction

import pytest

from gwci.ifunction import validate_target
from gwci.quantum import (DimensionConditionError, QSeries, QuantumRing, algebra_suite,
                          parse_table_document, product, render_table, render_vector,
                          table_document, two_point_count)

QUINTIC_TABLE = """\
H*1 = H
H*H = H^2 + 120q
H*H^2 = H^3 + 770qH
H*H^3 = H^4 + 1345qH^2 + 211200q^2
H*H^4 = H^5 + 770qH^3 + 692500q^2H
H*H^5 = 120qH^4 + 211200q^2H^2 + 31320000q^3"""


def test_quintic_table(quintic):
    assert render_table(QuantumRing(quintic)) == QUINTIC_TABLE


def test_quintic_products(quintic):
    ring = QuantumRing(quintic)
    assert render_vector(ring.product(2, 2)) == "H^4 + 1995qH^2 + 303600q^2"
    # not truncated at q^3: higher q-powers come from composing H-multiplications
    assert render_vector(ring.product(5, 5)) == \
        "31320000q^3H^4 + 73249200000q^4H^2 + 10349640000000q^5"


@pytest.mark.parametrize("n", range(2, 7))
def test_projective_space_ring(n):
    ring = QuantumRing(validate_target(n))
    for a in range(n + 1):
        for b in range(n + 1):
            v = ring.product(a, b)
            expect = [QSeries() for _ in range(n + 1)]
            if a + b <= n:
                expect[a + b] = QSeries.const(1)
            else:
                expect[a + b - n - 1] = QSeries.monomial(1)
            assert v == expect


def test_projective_table_rendering():
    assert render_table(QuantumRing(validate_target(4))).splitlines()[-1] == "H*H^4 = q"


def test_render_signs_and_fractions():
    v = [QSeries([Fraction(-1, 2)]), QSeries([0, -1]), QSeries([1])]
    assert render_vector(v) == "H^2 - qH - 1/2"
    assert render_vector([QSeries([0, Fraction(3, 4)])]) == "(3/4)q"
    assert render_vector([QSeries()]) == "0"


def test_machine_round_trip(quintic):
    ring = QuantumRing(quintic)
    doc = table_document(ring)
    assert doc["target"] == {"ambient": 6, "degrees": [5]}
    assert parse_table_document(doc, ring.rank) == ring.product_table()


@pytest.mark.parametrize("X", [validate_target(6, (5,)), validate_target(5, (3,)),
                               validate_target(8, (3, 2, 2)), validate_target(3)], ids=str)
def test_algebra_suite(X):
    rep = algebra_suite(QuantumRing(X))
    assert rep.ok, rep.first_failure.describe()
    assert rep.counts["associativity"] == (X.r + 1) ** 3


def test_product_bounds(quintic):
    with pytest.raises(ValueError):
        product(quintic, 6, 0)


def test_qseries_arithmetic():
    a = QSeries([1, 2])
    assert a * a == QSeries([1, 4, 4])
    assert a - a == QSeries()
    assert (a + 1).coeffs == (2, 2)
    assert QSeries.monomial(3, 5).degree == 3


def test_twisted_cubics(quintic):
    assert two_point_count(quintic, 3) == 2088000


def test_conics_on_cubic_threefold():
    assert two_point_count(validate_target(4, (3,)), 2) == 6


def test_count_needs_dimension_condition(quintic):
    with pytest.raises(DimensionConditionError):
        two_point_count(quintic, 2)


def test_linear_factor_is_harmless():
    # a hyperplane section of P^7 is P^6, so X_{1,5} in P^7 is the quintic again
    assert render_table(QuantumRing(validate_target(7, (1, 5)))) == QUINTIC_TABLE
