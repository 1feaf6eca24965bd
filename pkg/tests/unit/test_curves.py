import numpy as np
import pytest

from isogeny2.core import linalg
from isogeny2.core.errors import (
    ExtensionFieldReconstructionError,
    NoGenericPointError,
    NonSquareBranchError,
    PointAtInfinityError,
    SingularCurveError,
)
from isogeny2.core.example_data import example_data
from isogeny2.core.random import random_curve
from isogeny2.curves import (
    CurveModel,
    CurvePoint,
    find_base_point,
    gl2_transform,
    image_point,
    local_expansion,
    mestre_reconstruct,
    move_weierstrass_to_origin,
    random_point,
    to_odd_model,
    transform_point,
    weierstrass_points,
)
from isogeny2.series import TruncatedSeries


def test_singular_model_is_rejected(k) -> None:
    with pytest.raises(SingularCurveError):
        CurveModel.from_ints(k, [0, 0, 1, 0, 0, 0, 1])


def test_standard_model_of_example_curve(curve, standard_curve) -> None:
    new, factor = gl2_transform(curve, example_data.change)
    assert new == standard_curve
    assert linalg.to_ints(factor) == [[44206, 18649], [0, 7615]]
    assert new.invariants() == curve.invariants()


def test_move_weierstrass_to_origin(curve, k) -> None:
    roots = [int(w.u) for w in weierstrass_points(curve)]
    assert 36392 in roots
    moved, _ = move_weierstrass_to_origin(curve, k(36392))
    assert moved.poly[0] == 0
    assert moved.poly[1] == 1
    assert moved.invariants() == curve.invariants()


def test_to_odd_model_is_quintic(curve, k) -> None:
    odd, _ = to_odd_model(curve, k(36392))
    assert odd.degree == 5
    assert odd.invariants() == curve.invariants()


def test_transform_point_lands_on_new_model(curve, rng) -> None:
    r = linalg.matrix(curve.field, [[3, 1], [7, 2]])
    new, _ = gl2_transform(curve, r)
    for _ in range(5):
        point = random_point(curve, rng)
        try:
            image = transform_point(point, r)
        except PointAtInfinityError:
            continue
        assert new.contains(image)


def test_random_points_are_generic(curve, rng) -> None:
    point = random_point(curve, rng)
    assert curve.contains(point)
    assert not point.is_weierstrass


def test_mestre_round_trip(curve, curve_prime) -> None:
    for c in (curve, curve_prime):
        j = c.invariants()
        assert mestre_reconstruct(j, seed=3).invariants() == j


@pytest.mark.slow
@pytest.mark.parametrize("seed", range(50))
def test_mestre_round_trip_on_random_curves(k10007, seed) -> None:
    j = random_curve(k10007, seed=seed).invariants()
    assert mestre_reconstruct(j, seed=seed).invariants() == j


def test_mestre_needs_a_prime_field(curve, alpha_field) -> None:
    with pytest.raises(ExtensionFieldReconstructionError):
        mestre_reconstruct(curve.embed(alpha_field).invariants())


def test_generic_local_expansion_satisfies_the_curve(curve, rng) -> None:
    point = random_point(curve, rng)
    chart = local_expansion(curve, point, 12)
    assert chart.kind == "generic"
    assert chart.v * chart.v == curve.poly.compose_series(chart.u)


def test_weierstrass_local_expansion(standard_curve) -> None:
    k = standard_curve.field
    chart = local_expansion(standard_curve, CurvePoint(k(0), k(0)), 12)
    assert chart.kind == "weierstrass"
    assert chart.u == TruncatedSeries.from_ints(k, [0, 0, 1], precision=12)
    assert (chart.v * chart.v).agrees_with(standard_curve.poly.compose_series(chart.u), 12)


def test_weierstrass_chart_needs_a_square_slope(k) -> None:
    nonsquare = int(k.element(k.find_nonsquare()))
    curve = CurveModel.from_ints(k, [0, nonsquare, 3, 0, 1, 0, 1])
    with pytest.raises(NonSquareBranchError):
        local_expansion(curve, CurvePoint(k(0), k(0)), 6)


def test_image_of_origin_under_example_tangent(standard_curve, curve_prime, alpha_field) -> None:
    dphi = example_data.tangent
    target = curve_prime.embed(alpha_field)
    q = image_point(target, dphi, CurvePoint(alpha_field(0), alpha_field(0)))
    assert q is not None
    assert q.u == 34318
    # E'(34318) is not a square in the prime field
    assert not curve_prime.poly(example_data.field(34318)).is_square()


def test_example_base_point_is_the_origin(standard_curve, curve_prime, alpha_field) -> None:
    base = find_base_point(
        standard_curve.embed(alpha_field), example_data.tangent, curve_prime.embed(alpha_field), allow_extension=False
    )
    assert base.kind == "weierstrass"
    assert base.P.u == 0
    assert base.Q.u == 34318


def test_singular_tangent_has_no_base_point(standard_curve, curve_prime, k) -> None:
    with pytest.raises(NoGenericPointError):
        find_base_point(standard_curve, np.zeros((2, 2, 1), dtype=np.int64), curve_prime)
