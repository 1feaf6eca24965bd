from dataclasses import replace

import pytest

from isogeny2.core.errors import PrecisionTooLowError
from isogeny2.core.random import random_curve
from isogeny2.curves import find_base_point, random_point
from isogeny2.field import PrimeField
from isogeny2.reconstruct import (
    DegreeBounds,
    FunctionFieldElement,
    function_field_sqrt,
    morphism_degree,
    power_sums,
    reconstruct,
    reconstruct_sp,
    verify_rational_rep,
)
from isogeny2.series import Poly, RationalFraction
from isogeny2.jacobian_oracle import conjugate_pair
from isogeny2.solver import compute_conjugate_lift, compute_lift
from isogeny2.tangent import endomorphism_tangent


def test_degree_bounds() -> None:
    assert DegreeBounds.for_path("siegel", 2).as_dict() == {"s": 8, "p": 8, "q": 24, "r": 16}
    assert DegreeBounds.for_path("hilbert-q5", 7).precision == 35
    assert DegreeBounds.for_path("endo", 3).precision == 8 * 9 + 7
    assert DegreeBounds.siegel(2).generic_precision == 3 * 8 + 1
    assert DegreeBounds.siegel(2).precision_at("generic") == 25
    assert DegreeBounds.siegel(2).precision_at("generic", conjugate=True) == 23
    assert DegreeBounds.siegel(2).precision_at("weierstrass") == 23
    with pytest.raises(ValueError, match="positive"):
        DegreeBounds.for_path("siegel", 0)


@pytest.fixture()
def e(k101) -> Poly:
    return Poly.from_ints(k101, [1, 0, 0, 0, 0, 1, 1])


def test_function_field_sqrt(e, k101) -> None:
    x = Poly.x(k101)
    f = FunctionFieldElement(e, RationalFraction(x + 3, x * x + 1), RationalFraction(x))
    root = function_field_sqrt(f * f)
    assert root is not None
    assert root * root == f * f
    assert function_field_sqrt(FunctionFieldElement.v(e)) is None


def test_morphism_degrees(e, k101) -> None:
    x = Poly.x(k101)
    assert morphism_degree(FunctionFieldElement.from_fraction(e, RationalFraction(x * x + 1, x + 2))) == 4
    assert morphism_degree(FunctionFieldElement.v(e) * x) == 8


def test_power_sums(e, k101) -> None:
    s = FunctionFieldElement.from_fraction(e, 5)
    p = FunctionFieldElement.from_fraction(e, 6)
    # roots 2 and 3
    assert [int(f.even.num[0]) for f in power_sums(s, p, 4)] == [2, 5, 13, 35, 97]


@pytest.fixture(scope="module")
def identity():
    k = PrimeField(10007)
    curve = random_curve(k, seed=1)
    dphi = endomorphism_tangent(k, 1).matrix
    base = find_base_point(curve, dphi, curve)
    bounds = DegreeBounds.endomorphism(1)
    lift = compute_lift(curve, curve, dphi, base, bounds.generic_precision)
    return curve, lift, bounds


def test_identity_representation(identity) -> None:
    curve, lift, bounds = identity
    rep = reconstruct(lift, curve, bounds)
    k = curve.field
    u0, v0 = lift.base.P.u, lift.base.P.v
    e = curve.poly
    assert rep.s == Poly.from_elements(k, [u0, 1])
    assert rep.p == Poly.from_elements(k, [0, u0])
    # the pair is {(u, v), (u0, -v0)}
    assert rep.q == FunctionFieldElement(e, RationalFraction.constant(k, 0), RationalFraction.constant(k, -v0))
    assert rep.degrees()["s"] == 2


def test_identity_image_pairs(identity, rng) -> None:
    curve, lift, bounds = identity
    rep = reconstruct(lift, curve, bounds)
    point = random_point(curve, rng)
    pair = rep.image_pair(point)
    assert {tuple(q.u.coeffs) for q in pair} == {tuple(point.u.coeffs), tuple(lift.base.P.u.coeffs)}
    assert all(curve.contains(q) for q in pair)


def test_identity_representation_verifies(identity) -> None:
    curve, lift, bounds = identity
    report = verify_rational_rep(reconstruct(lift, curve, bounds))
    assert report.passed, report.to_dict()
    assert set(report.checks) == {"rr1", "rr2", "intercept", "degrees", "differential", "points"}


def test_wrong_representation_fails_verification(identity) -> None:
    curve, lift, bounds = identity
    rep = reconstruct(lift, curve, bounds)
    report = verify_rational_rep(replace(rep, s=rep.s + 1))
    assert not report.passed
    assert "rr1" in report.failures


def test_short_lift_is_rejected(identity) -> None:
    curve, lift, _ = identity
    with pytest.raises(PrecisionTooLowError):
        reconstruct_sp(lift, DegreeBounds.endomorphism(2))


def test_representation_to_dict(identity) -> None:
    curve, lift, bounds = identity
    document = reconstruct(lift, curve, bounds).to_dict()
    assert {"s", "s_odd", "p", "p_odd", "q_even", "q_odd", "r_even", "r_odd", "t_even", "t_odd"} <= set(document)
    assert document["precision"] == bounds.generic_precision
    assert document["s"]["den"] == [1]


def test_second_lift_must_sit_at_the_conjugate(identity) -> None:
    curve, _, bounds = identity
    dphi = endomorphism_tangent(curve.field, 1).matrix
    base = find_base_point(curve, dphi, curve)
    lift = compute_lift(curve, curve, dphi, base, bounds.precision)
    again = compute_lift(curve, curve, dphi, base, bounds.precision)
    with pytest.raises(ValueError, match="conjugate"):
        reconstruct_sp(lift, bounds, lift_ip=again)


@pytest.mark.slow
def test_conjugate_lift_gives_the_single_lift_functions() -> None:
    k = PrimeField(10007)
    dphi = endomorphism_tangent(k, 2).matrix
    bounds = DegreeBounds.endomorphism(2)
    for seed in range(10):
        curve = random_curve(k, seed=seed, weierstrass=True)
        base = find_base_point(curve, dphi, curve)
        pair = conjugate_pair(curve, base.P, 2)
        if pair is not None:
            break
    assert pair is not None
    assert base.kind == "generic"
    lift_p = compute_lift(curve, curve, dphi, base, bounds.precision)
    lift_ip = compute_conjugate_lift(curve, curve, dphi, base, pair, bounds.precision)
    two_lifts = reconstruct(lift_p, curve, bounds, lift_ip)
    one_lift = reconstruct(compute_lift(curve, curve, dphi, base, bounds.generic_precision), curve, bounds)
    assert two_lifts.s == one_lift.s
    assert two_lifts.p == one_lift.p
    assert verify_rational_rep(two_lifts).passed
