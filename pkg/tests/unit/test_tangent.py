import numpy as np
import pytest

from isogeny2.core import linalg
from isogeny2.core.errors import NonDiagonalSolutionError, SingularMatrixError
from isogeny2.core.example_data import example_data
from isogeny2.covariants import dtau_j_matrix, gl2_action, sym2
from isogeny2.modeq import evaluate_and_differentiate, identity_correspondence
from isogeny2.tangent import (
    endomorphism_tangent,
    tangent_candidates_hilbert,
    tangent_candidates_siegel,
    tangent_from_matrix,
)

# diag(x00, x11) = Diag(1/beta, 1/beta_bar) dphi^2 for the example candidates
EXAMPLE_RATIO = (35136, 18901)
DTG_C = [[43658, 17394], [16028, 26556]]
DTG_CP = [[15131, 739], [50692, 49952]]


def _identity_derivatives(curve, curve_p):
    j, jp = curve.invariants(), curve_p.invariants()
    _, derivatives = evaluate_and_differentiate(identity_correspondence("siegel"), j, jp)
    return derivatives


@pytest.mark.parametrize(("ell", "scalar"), [(1, 1), (4, 2)])
def test_siegel_candidate_of_identity_correspondence(curve, ell, scalar) -> None:
    k = curve.field
    derivatives = _identity_derivatives(curve, curve)
    dtau = dtau_j_matrix(curve.sextic)
    (candidate,) = tangent_candidates_siegel(derivatives.d_left, derivatives.d_right, dtau, dtau, ell, k)
    assert candidate.field == k
    assert linalg.to_ints(candidate.matrix) == [[scalar, 0], [0, scalar]]


def test_siegel_candidate_of_change_of_variables(curve) -> None:
    k = curve.field
    r = linalg.matrix(k, [[3, 1], [7, 2]])
    derivatives = _identity_derivatives(curve, curve)
    dtau_c = dtau_j_matrix(curve.sextic)
    dtau_cp = dtau_j_matrix(gl2_action(curve.sextic, r))
    (candidate,) = tangent_candidates_siegel(derivatives.d_left, derivatives.d_right, dtau_c, dtau_cp, 1, k)
    expected = linalg.inverse(k, linalg.transpose(r))
    assert np.array_equal(sym2(k, candidate.matrix), sym2(k, expected))


def test_siegel_singular_left_matrix(curve) -> None:
    k = curve.field
    dtau = dtau_j_matrix(curve.sextic)
    with pytest.raises(SingularMatrixError, match="DL"):
        tangent_candidates_siegel(k.zeros((3, 3)), linalg.identity(k, 3), dtau, dtau, 2, k)


def _hilbert_inputs(k):
    dtg_c, dtg_cp = linalg.matrix(k, DTG_C), linalg.matrix(k, DTG_CP)
    x = linalg.diagonal(k, [k.raw(v) for v in EXAMPLE_RATIO])
    d_left = k.neg(linalg.matmul(k, dtg_cp, linalg.matmul(k, x, linalg.inverse(k, dtg_c))))
    return d_left, linalg.identity(k, 2), dtg_c, dtg_cp


def test_hilbert_candidates_of_example(k, alpha_field) -> None:
    candidates = tangent_candidates_hilbert(*_hilbert_inputs(k), k(26213), k(30105), extension=alpha_field)
    assert len(candidates) == 4
    assert all(c.field == alpha_field for c in candidates)
    found = [c.matrix for c in candidates]
    for expected in example_data.candidates.values():
        assert any(np.array_equal(m, expected) or np.array_equal(m, alpha_field.neg(expected)) for m in found)


def test_hilbert_tags(k, alpha_field) -> None:
    candidates = tangent_candidates_hilbert(*_hilbert_inputs(k), k(26213), k(30105), extension=alpha_field)
    assert sorted(c.tag for c in candidates) == ["beta,+", "beta,-", "beta_bar,+", "beta_bar,-"]


def test_hilbert_rejects_non_diagonal_solution(k) -> None:
    d_left, d_right, dtg_c, _ = _hilbert_inputs(k)
    with pytest.raises(NonDiagonalSolutionError):
        tangent_candidates_hilbert(d_left, d_right, dtg_c, dtg_c, k(26213), k(30105))


def test_supplied_tangent(alpha_field) -> None:
    candidate = tangent_from_matrix(alpha_field, [[[1, 2], 0], [0, 3]])
    assert candidate.tag == "supplied"
    assert candidate.entries()[0][0] == alpha_field([1, 2])
    with pytest.raises(SingularMatrixError):
        tangent_from_matrix(alpha_field, [[1, 2], [2, 4]])


def test_endomorphism_tangent(k10007) -> None:
    candidate = endomorphism_tangent(k10007, 3)
    assert candidate.tag == "[3]"
    assert linalg.to_ints(candidate.matrix) == [[3, 0], [0, 3]]
