import numpy as np
import pytest

from isogeny2.core import linalg
from isogeny2.core.errors import SingularCurveError
from isogeny2.covariants import (
    BinaryForm,
    clebsch_from_igusa,
    dtau_j_matrix,
    generator_covariants,
    gl2_action,
    igusa_from_clebsch,
    igusa_invariants,
    sextic_discriminant,
    sym2,
    sym_action,
    transvectant,
)
from isogeny2.field import PrimeField


@pytest.mark.parametrize("p", [56311, 10007])
def test_skew_invariant_anchor_coefficient(p) -> None:
    # a1^5 a4^10 is the only monomial of R supported on a1 and a4
    k = PrimeField(p)
    r = generator_covariants(BinaryForm.from_ints(k, [0, 1, 0, 0, 1, 0, 0])).R
    assert r == k(1) / (k(2) ** 2 * k(3) ** 6 * k(5) ** 10)


def test_igusa_invariants_of_example_curves(k) -> None:
    assert igusa_invariants(BinaryForm.from_ints(k, [11111, 54150, 0, 102, 0, 34724, 13425])) == (14030, 9041, 56122)
    assert igusa_invariants(BinaryForm.from_ints(k, [40502, 24699, 0, 40476, 0, 35850, 47601])) == (
        13752,
        42980,
        12538,
    )


def test_clebsch_from_igusa_represents_the_class(curve) -> None:
    j = curve.invariants()
    assert igusa_from_clebsch(*clebsch_from_igusa(j)) == j


def test_singular_sextic_has_zero_i10(k) -> None:
    sextic = BinaryForm.from_ints(k, [0, 0, 1, 0, 0, 0, 1])
    assert not generator_covariants(sextic).I10
    with pytest.raises(SingularCurveError):
        dtau_j_matrix(sextic)


def test_discriminant_vanishes_exactly_on_repeated_roots(k) -> None:
    assert sextic_discriminant(BinaryForm.from_ints(k, [11111, 54150, 0, 102, 0, 34724, 13425]))
    assert not sextic_discriminant(BinaryForm.from_ints(k, [0, 0, 1, 0, 0, 0, 1]))


def test_transvectant_orders(k) -> None:
    f = BinaryForm.from_ints(k, [11111, 54150, 0, 102, 0, 34724, 13425])
    assert transvectant(f, f, 4).order == 4
    assert transvectant(f, f, 6).order == 0
    assert transvectant(transvectant(f, f, 4), f, 4).order == 2


def test_sym_action_composes(k101) -> None:
    f = BinaryForm.from_ints(k101, [3, 1, 4, 1, 5, 9, 2])
    r1 = linalg.matrix(k101, [[1, 2], [3, 4]])
    r2 = linalg.matrix(k101, [[5, 0], [7, 1]])
    assert sym_action(sym_action(f, r1), r2) == sym_action(f, linalg.matmul(k101, r2, r1))


def test_sym2_of_identity(k101) -> None:
    assert linalg.to_ints(sym2(k101, linalg.identity(k101, 2))) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


def test_invariants_are_invariant(curve, k) -> None:
    r = linalg.matrix(k, [[3, 1], [7, 2]])
    assert igusa_invariants(gl2_action(curve.sextic, r)) == curve.invariants()


def test_dtau_j_covariance(curve, k) -> None:
    r = linalg.matrix(k, [[44206, 0], [18649, 7615]])
    left = dtau_j_matrix(gl2_action(curve.sextic, r))
    right = linalg.matmul(k, dtau_j_matrix(curve.sextic), sym2(k, linalg.transpose(r)))
    assert np.array_equal(left, right)
