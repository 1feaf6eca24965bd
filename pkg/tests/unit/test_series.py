import pytest

import isogeny2
from isogeny2.core.errors import NoSolutionError, OddValuationError, PrecisionTooLowError, ZeroConstantTermError
from isogeny2.core.example_data import example_data
from isogeny2.series import (
    Poly,
    RationalFraction,
    TruncatedSeries,
    hermite_pade,
    laurent_div,
    pade,
    poly_gcd,
    poly_roots,
    rational_sqrt,
)


def test_inverse_times_series_is_one(k101) -> None:
    f = TruncatedSeries.from_ints(k101, [3, 1, 4, 1, 5, 9, 2, 6], precision=8)
    assert f * f.inverse() == TruncatedSeries.one(k101, 8)


def test_inverse_of_nonunit_raises(k101) -> None:
    with pytest.raises(ZeroConstantTermError):
        TruncatedSeries.from_ints(k101, [0, 1], precision=4).inverse()


def test_sqrt_with_branch(k101) -> None:
    f = TruncatedSeries.from_ints(k101, [4, 1, 0, 7], precision=6)
    root = f.sqrt(k101(99))
    assert root[0] == 99
    assert root * root == f


def test_sqrt_of_even_valuation_series(k101) -> None:
    f = TruncatedSeries.from_ints(k101, [0, 0, 9, 3], precision=8)
    root = f.sqrt()
    assert root.valuation() == 1
    assert (root * root).agrees_with(f, 7)


def test_sqrt_of_odd_valuation_raises(k101) -> None:
    with pytest.raises(OddValuationError):
        TruncatedSeries.from_ints(k101, [0, 2], precision=4).sqrt()


def test_laurent_division_shifts_valuation(k101) -> None:
    a = TruncatedSeries.from_ints(k101, [1, 2, 3], precision=6)
    b = TruncatedSeries.from_ints(k101, [0, 0, 1, 1], precision=6)
    q, shift = laurent_div(a, b)
    assert shift == -2
    assert (q * b.divide_by_z(2)).agrees_with(a, q.precision)


def test_pade_recovers_example_fraction() -> None:
    s = example_data.s
    series = s.to_series(20)
    assert pade(series, 6, 6) == s


def test_pade_needs_enough_terms() -> None:
    with pytest.raises(PrecisionTooLowError):
        pade(example_data.s.to_series(10), 6, 6)


def test_pade_without_solution(k101) -> None:
    # c/(d0 + d1 z) = z mod z^2 forces d0 = 0
    with pytest.raises(NoSolutionError):
        pade(TruncatedSeries.from_ints(k101, [0, 1], precision=2), 0, 1)


def test_hermite_pade_finds_quadratic_relation(k101) -> None:
    # f = 1/(1 - z) satisfies (1 - z) f - 1 = 0
    f = TruncatedSeries.from_ints(k101, [1] * 10, precision=10)
    one = TruncatedSeries.one(k101, 10)
    p0, p1 = hermite_pade([f, one], [1, 0])
    assert not p0.is_zero()
    assert p0[0] == -p0[1]
    assert (f * p0.to_series(10) + one * p1.to_series(10)).is_zero()


def test_taylor_shift_is_composition(k101) -> None:
    f = Poly.from_ints(k101, [5, 0, 3, 1])
    shifted = f.taylor_shift(k101(7))
    assert shifted(k101(2)) == f(k101(9))


def test_gcd_and_roots(k101) -> None:
    x = Poly.x(k101)
    f = (x - 3) * (x - 5) * (x * x + 2)
    g = (x - 5) * (x - 8)
    assert poly_gcd(f, g) == x - 5
    assert [int(r[0]) for r in poly_roots(g)] == [5, 8]


def test_rational_sqrt(k101) -> None:
    x = Poly.x(k101)
    f = RationalFraction(x + 3, x * x + 1)
    assert rational_sqrt(f * f) in (f, -f)
    assert rational_sqrt(RationalFraction(x, x + 1)) is None


def test_naive_and_fast_products_agree(k101) -> None:
    a = TruncatedSeries.from_ints(k101, list(range(1, 40)), precision=39)
    b = TruncatedSeries.from_ints(k101, list(range(40, 1, -1)), precision=39)
    fast = a * b
    isogeny2.options.set_option("naive_series_product", True)
    assert a * b == fast
