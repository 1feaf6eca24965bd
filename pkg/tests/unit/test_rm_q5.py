import numpy as np
import pytest

from isogeny2 import rm_q5
from isogeny2.core import linalg
from isogeny2.core.errors import (
    DegenerateGundlachError,
    InconsistentChainRuleError,
    NotOnHumbertError,
    ZeroG1Error,
)
from isogeny2.core.example_data import example_data
from isogeny2.core.random import random_curve
from isogeny2.curves import CurveModel


def test_dtg_matrices_of_example_curves(curve, curve_prime) -> None:
    assert linalg.to_ints(rm_q5.dtG_matrix(curve)) == [[43658, 17394], [16028, 26556]]
    assert linalg.to_ints(rm_q5.dtG_matrix(curve_prime)) == [[15131, 739], [50692, 49952]]


def test_dtg_matrix_with_supplied_invariants(curve) -> None:
    assert linalg.to_ints(rm_q5.dtG_matrix(curve, example_data.gundlach)) == [[43658, 17394], [16028, 26556]]


def test_sqrt5_and_beta(k) -> None:
    assert rm_q5.sqrt5(k) == 52419
    beta, beta_bar = rm_q5.beta_pair(k, 11, 7)
    assert (beta, beta_bar) == (26213, 30105)
    assert beta * beta_bar == 11
    assert beta + beta_bar == 7


def test_beta_pair_needs_an_element_of_the_ring(k) -> None:
    with pytest.raises(ValueError, match="norm 2 and trace 1"):
        rm_q5.beta_pair(k, 2, 1)


@pytest.mark.parametrize(
    ("g", "j"),
    [((23, 56260), (14030, 9041, 56122)), ((8, 36073), (13752, 42980, 12538))],
)
def test_gundlach_igusa_round_trip(k, g, j) -> None:
    point = rm_q5.GundlachPoint.from_ints(k, *g)
    assert rm_q5.gundlach_to_igusa(point) == j
    back = rm_q5.igusa_to_gundlach([k(x) for x in j])
    assert (back.g1, back.g2) == g


def test_zero_g1_is_rejected(k) -> None:
    with pytest.raises(ZeroG1Error):
        rm_q5.gundlach_to_igusa(rm_q5.GundlachPoint.from_ints(k, 0, 5))


@pytest.mark.parametrize(
    ("g", "coefficients"),
    [
        ((23, 56260), [14336, 1, 0, 20717, 0, 34667, 24637]),
        ((8, 36073), [13792, 1, 0, 2917, 0, 36343, 3706]),
    ],
)
def test_hilbert_normalized_reconstruction(k, g, coefficients) -> None:
    point = rm_q5.GundlachPoint.from_ints(k, *g)
    curve = rm_q5.hilb_curve_reconstruct(point)
    assert curve == CurveModel.from_ints(k, coefficients)
    assert curve.invariants() == rm_q5.gundlach_to_igusa(point)
    assert rm_q5.is_hilbert_normalized(curve)


def test_pullback_identities_match_reconstruction(k) -> None:
    b3_squared, b1_b5, b0_b6 = rm_q5.pullback_identities(example_data.gundlach)
    assert b3_squared == k(20717) ** 2
    assert b1_b5 == 34667
    assert b0_b6 == k(14336) * 24637


def test_example_curves_are_hilbert_normalized(curve, curve_prime) -> None:
    assert rm_q5.is_hilbert_normalized(curve)
    assert rm_q5.is_hilbert_normalized(curve_prime)


def test_generic_curve_is_not_hilbert_normalized(k) -> None:
    assert not rm_q5.is_hilbert_normalized(random_curve(k, seed=1))


def test_gundlach_jacobian_shape(k) -> None:
    jacobian = rm_q5.gundlach_jacobian(example_data.gundlach)
    assert jacobian.shape == (3, 2, 1)
    assert linalg.rank(k, jacobian) == 2


def test_igusa_gundlach_round_trip_on_random_points(k) -> None:
    rng = np.random.default_rng(5)
    checked = 0
    while checked < 100:
        g1, g2 = (int(x) for x in rng.integers(1, k.p, size=2))
        if (3 * g2 * g2 - 2 * g1) % k.p == 0:
            continue
        point = rm_q5.GundlachPoint.from_ints(k, g1, g2)
        assert rm_q5.igusa_to_gundlach(rm_q5.gundlach_to_igusa(point)) == point
        checked += 1


def test_invariants_off_the_humbert_surface(k) -> None:
    j1, j2, j3 = rm_q5.gundlach_to_igusa(example_data.gundlach)
    with pytest.raises(NotOnHumbertError):
        rm_q5.igusa_to_gundlach([j1 + 1, j2, j3])
    with pytest.raises(NotOnHumbertError, match="j2 or j3"):
        rm_q5.igusa_to_gundlach([j1, k(0), j3])


def test_random_curve_fails_the_chain_rule(k) -> None:
    with pytest.raises(InconsistentChainRuleError):
        rm_q5.dtG_matrix(random_curve(k, seed=1), example_data.gundlach)


def test_choice_of_b1_keeps_the_invariants(k) -> None:
    point = rm_q5.GundlachPoint.from_ints(k, 23, 56260)
    curve = rm_q5.hilb_curve_reconstruct(point, b1=4)
    assert curve.poly[1] == 4
    assert curve.invariants() == rm_q5.gundlach_to_igusa(point)


def test_vanishing_i2_pullback(k) -> None:
    # 3 g2^2 = 2 g1 at (6, 2)
    point = rm_q5.GundlachPoint.from_ints(k, 6, 2)
    assert rm_q5.gundlach_to_igusa_clebsch(point) == (0, 0, 0)
    assert rm_q5.gundlach_to_igusa(point) == (k(-861) / k(128), 0, k(36) / k(16384))
    with pytest.raises(DegenerateGundlachError):
        rm_q5.hilb_curve_reconstruct(point)


@pytest.mark.parametrize(
    ("g", "product", "closed_form"),
    [((23, 56260), 54434, 56182), ((8, 36073), 36240, 23609)],
)
def test_quartic_closed_form_does_not_hold(k, g, product, closed_form) -> None:
    point = rm_q5.GundlachPoint.from_ints(k, *g)
    curve = rm_q5.hilb_curve_reconstruct(point)
    assert rm_q5.quartic_product(curve) == product
    assert rm_q5.quartic_closed_form(point) == closed_form
