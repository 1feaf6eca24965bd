import numpy as np
import pytest

from isogeny2.core import linalg
from isogeny2.core.errors import ModeqParseError, WrongArityError
from isogeny2.core.example_data import example_data
from isogeny2.modeq import (
    clear_denominator,
    evaluate_and_differentiate,
    evaluate_dual,
    from_string,
    identity_correspondence,
    load_modeq,
)


def test_packaged_files_load() -> None:
    files = example_data.files
    siegel = load_modeq(files["identity_siegel.txt"])
    assert (siegel.kind, siegel.ell, siegel.count) == ("siegel", 1, 3)
    hilbert = load_modeq(files["identity_hilbert_q5.txt"])
    assert (hilbert.kind, hilbert.level, hilbert.count) == ("hilbert_q5", (1, 2), 2)


def test_text_round_trip() -> None:
    modeq = load_modeq(example_data.files["cleared_hilbert_q5.txt"])
    again = from_string(modeq.to_text())
    assert again.level == modeq.level
    assert again.terms.equals(modeq.terms)


def test_identity_correspondence_derivatives(curve) -> None:
    j = curve.invariants()
    values, derivatives = evaluate_and_differentiate(identity_correspondence("siegel"), j, j)
    assert all(not v for v in values)
    k = curve.field
    assert np.array_equal(derivatives.d_left, linalg.scale(k, linalg.identity(k, 3), k.raw(-1)))
    assert np.array_equal(derivatives.d_right, linalg.identity(k, 3))


def test_cleared_equations_have_scaled_derivatives() -> None:
    g = example_data.gundlach
    k = g.field
    plain = load_modeq(example_data.files["identity_hilbert_q5.txt"])
    cleared = load_modeq(example_data.files["cleared_hilbert_q5.txt"])
    point = [g.g1, g.g2]
    _, d_plain = evaluate_and_differentiate(plain, point, point)
    values, d_cleared = evaluate_and_differentiate(cleared, point, point)
    assert all(not v for v in values)
    factor = k.raw(g.g1 + 1)
    assert np.array_equal(d_cleared.d_left, linalg.scale(k, d_plain.d_left, factor))
    assert np.array_equal(d_cleared.d_right, linalg.scale(k, d_plain.d_right, factor))


def _term_set(modeq) -> set[tuple[int, ...]]:
    return {tuple(int(x) for x in row) for row in modeq.terms.itertuples(index=False)}


def test_clear_denominator_matches_packaged_file() -> None:
    plain = load_modeq(example_data.files["identity_hilbert_q5.txt"])
    cleared = clear_denominator(plain, {(1, 0, 0, 0): 1, (0, 0, 0, 0): 1})
    expected = load_modeq(example_data.files["cleared_hilbert_q5.txt"])
    assert _term_set(cleared) == _term_set(expected)


def test_dual_numbers_agree_with_jacobian(k, rng) -> None:
    modeq = load_modeq(example_data.files["cleared_hilbert_q5.txt"])
    left = [k.random_element(rng) for _ in range(2)]
    right = [k.random_element(rng) for _ in range(2)]
    direction = [k.random_element(rng) for _ in range(4)]
    values, derivatives = evaluate_and_differentiate(modeq, left, right)
    jacobian = np.concatenate([derivatives.d_left, derivatives.d_right], axis=1)
    expected = linalg.matmul(k, jacobian, np.stack([d.raw for d in direction]))
    duals = evaluate_dual(modeq, left, right, direction)
    assert [d.a for d in duals] == values
    assert [d.b.coeffs for d in duals] == [list(map(int, e)) for e in expected]


def test_wrong_arity_is_rejected() -> None:
    with pytest.raises(WrongArityError):
        from_string("kind hilbert_q5 1 2\nvars 3\n")


@pytest.mark.parametrize(
    "text",
    [
        "vars 2\nkind hilbert_q5 1 2\n",
        "kind elliptic 2\nvars 1\n",
        "kind siegel 2 3\nvars 3\n",
        "kind hilbert_q5 1 2\nvars 2\npoly 2 1\n0 0 1 0 1\n",
        "kind hilbert_q5 1 2\nvars 2\npoly 1 1\n0 0 1 x 1\npoly 2 1\n0 0 0 1 1\n",
        "kind hilbert_q5 1 2\nvars 2\npoly 1 1\n0 0 -1 0 1\npoly 2 1\n0 0 0 1 1\n",
    ],
)
def test_malformed_files_are_rejected(text) -> None:
    with pytest.raises(ModeqParseError):
        from_string(text)


def test_polynomial_vanishing_mod_p_is_rejected() -> None:
    modeq = from_string("kind hilbert_q5 1 2\nvars 2\npoly 1 1\n0 0 1 0 101\npoly 2 1\n0 0 0 1 1\n")
    with pytest.raises(ModeqParseError, match="vanish modulo 101"):
        modeq.reduced(101)
