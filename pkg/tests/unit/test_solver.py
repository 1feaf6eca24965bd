import time
from dataclasses import replace

import numpy as np
import pytest

from isogeny2.core.errors import EqualRootsError, NonInvertibleLeadingError, ResidualNonzeroError
from isogeny2.core.example_data import example_data
from isogeny2.core.random import random_curve
from isogeny2.curves import find_base_point
from isogeny2.jacobian_oracle import conjugate_pair
from isogeny2.series import TruncatedSeries
from isogeny2.solver import (
    check_system_residual,
    compute_conjugate_lift,
    compute_lift,
    dac_ode_solve,
    initialize_lift,
    naive_ode_solve,
    newton_lift,
    normalizing_matrix,
    system_residuals,
)
from isogeny2.tangent import endomorphism_tangent


def _random_system(field, rng, d):
    def series(constant: bool) -> TruncatedSeries:
        coeffs = field.random_raw(rng, (d,))
        if not constant:
            coeffs[0] = 0
        return TruncatedSeries(field, coeffs)

    a = [[series(constant=False) for _ in range(2)] for _ in range(2)]
    b = [series(constant=True) for _ in range(2)]
    return a, b


@pytest.mark.parametrize("d", [1, 2, 7, 16])
def test_divide_and_conquer_matches_naive_solver(k101, rng, d) -> None:
    a, b = _random_system(k101, rng, d)
    assert dac_ode_solve(a, b, 3, d) == naive_ode_solve(a, b, 3, d)


def test_singular_leading_matrix(k101, rng) -> None:
    a, b = _random_system(k101, rng, 4)
    # A(0) = 0, so A(0) + k is singular when k = p
    with pytest.raises(NonInvertibleLeadingError):
        naive_ode_solve(a, b, 101, 1)


@pytest.fixture()
def identity_lift(k10007):
    curve = random_curve(k10007, seed=1)
    dphi = endomorphism_tangent(k10007, 1).matrix
    base = find_base_point(curve, dphi, curve)
    return curve, compute_lift(curve, curve, dphi, base, 20)


def test_identity_lift_follows_the_point(identity_lift) -> None:
    curve, lift = identity_lift
    assert not lift.base.P.is_weierstrass
    assert lift.x1.agrees_with(lift.chart.u, 20)
    assert lift.x2 == TruncatedSeries.constant(curve.field, lift.base.P.u.raw, 20)
    check_system_residual(lift, curve)


def test_lift_below_the_characteristic(k101) -> None:
    curve = random_curve(k101, seed=4)
    dphi = endomorphism_tangent(k101, 1).matrix
    base = find_base_point(curve, dphi, curve)
    lift = initialize_lift(curve, curve, dphi, base, 120)
    with pytest.raises(NonInvertibleLeadingError):
        newton_lift(lift, curve, 101)


def test_damaged_lift_fails_the_residual_check(identity_lift) -> None:
    curve, lift = identity_lift
    bumped = lift.x1.coeffs.copy()
    bumped[10] = (bumped[10] + 1) % curve.field.p
    damaged = replace(lift, x1=TruncatedSeries(curve.field, bumped))
    assert min(system_residuals(damaged, curve)) < 19
    with pytest.raises(ResidualNonzeroError):
        check_system_residual(damaged, curve)


@pytest.mark.slow
def test_example_lift_gives_the_symmetric_functions(standard_curve, curve_prime, alpha_field) -> None:
    source, target = standard_curve.embed(alpha_field), curve_prime.embed(alpha_field)
    dphi = example_data.tangent
    base = find_base_point(source, dphi, target, allow_extension=False)
    lift = compute_lift(source, target, dphi, base, 35)
    check_system_residual(lift, target)

    s = example_data.s.embed(alpha_field)
    u = lift.chart.u
    assert (lift.x1 + lift.x2) * s.den.compose_series(u) == s.num.compose_series(u)
    p = example_data.p.embed(alpha_field)
    assert (lift.x1 * lift.x2) * p.den.compose_series(u) == p.num.compose_series(u)
    assert not np.any((lift.x1 + lift.x2).coeffs[1::2])


@pytest.mark.parametrize(("x2_start", "slope"), [(3, 5), (4, 1)])
def test_normalizing_matrix_inverts_m(k101, x2_start, slope) -> None:
    xs = [TruncatedSeries.from_ints(k101, [3, 1, 4, 1, 5], 5), TruncatedSeries.from_ints(k101, [x2_start, slope, 2], 5)]
    ys = [TruncatedSeries.from_ints(k101, [2, 7, 1, 8], 5), TruncatedSeries.from_ints(k101, [9, 2, 6], 5)]
    inv = normalizing_matrix(xs, ys)
    precision = inv[0][0].precision
    m = [[xs[0] * ys[0].inverse(), xs[1] * ys[1].inverse()], [ys[0].inverse(), ys[1].inverse()]]
    z = TruncatedSeries.variable(k101, precision)
    zero = TruncatedSeries.zero(k101, precision)
    for i in range(2):
        for j in range(2):
            entry = inv[i][0] * m[0][j] + inv[i][1] * m[1][j]
            assert entry.agrees_with(z if i == j else zero, precision)


def test_normalizing_matrix_needs_valuation_at_most_one(k101) -> None:
    xs = [TruncatedSeries.from_ints(k101, [3, 1, 4], 5), TruncatedSeries.from_ints(k101, [3, 1, 2], 5)]
    ys = [TruncatedSeries.from_ints(k101, [2, 7], 5), TruncatedSeries.from_ints(k101, [9, 2], 5)]
    with pytest.raises(EqualRootsError):
        normalizing_matrix(xs, ys)


def test_conjugate_lift_starts_at_the_pair(k10007) -> None:
    dphi = endomorphism_tangent(k10007, 2).matrix
    for seed in range(10):
        curve = random_curve(k10007, seed=seed, weierstrass=True)
        base = find_base_point(curve, dphi, curve)
        pair = conjugate_pair(curve, base.P, 2)
        if pair is not None:
            break
    assert pair is not None
    lift = compute_conjugate_lift(curve, curve, dphi, base, pair, 24)
    check_system_residual(lift, curve)
    assert lift.base.P == base.P.involution()
    assert lift.x1[0] + lift.x2[0] == pair[0].u + pair[1].u
    assert lift.x1[0] * lift.x2[0] == pair[0].u * pair[1].u


@pytest.mark.slow
def test_divide_and_conquer_outpaces_naive_solver(k10007) -> None:
    d = 2**12
    a, b = _random_system(k10007, np.random.default_rng(7), d)
    start = time.perf_counter()
    fast = dac_ode_solve(a, b, 1, d)
    dac_seconds = time.perf_counter() - start
    start = time.perf_counter()
    slow = naive_ode_solve(a, b, 1, d)
    naive_seconds = time.perf_counter() - start
    assert fast == slow
    assert dac_seconds < naive_seconds
