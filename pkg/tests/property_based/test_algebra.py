import hypothesis.strategies as st
import numpy as np
import pytest
from hypothesis import HealthCheck, given, settings

from isogeny2.core import linalg
from isogeny2.core.random import random_curve
from isogeny2.covariants import dtau_j_matrix, generator_covariants, gl2_action, sym2, sym_action
from isogeny2.series import Poly, RationalFraction, TruncatedSeries, pade
from isogeny2.solver import dac_ode_solve, naive_ode_solve

from tests.property_based.hypothesis_helper import (
    K101,
    K10007,
    alpha_elements,
    covariance_examples,
    dac_examples,
    deadline,
    exhaustive,
    invertible_matrices,
    max_examples,
    pade_examples,
    seeds,
    small_coefficients,
)

# det exponent k of the weight det^k Sym^n of each generator
GENERATOR_WEIGHTS = {"I2": 2, "I4": 4, "I6": 6, "I6p": 6, "I10": 10, "R": 15, "y1": 2, "y2": 4, "y3": 6}


@settings(max_examples=max_examples, deadline=deadline, suppress_health_check=HealthCheck.all())
@given(a=alpha_elements(), b=alpha_elements(), c=alpha_elements(nonzero=True))
def test_field_axioms(a, b, c) -> None:
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert (a - b) + b == a
    assert (a / c) * c == a
    assert c * c.inverse() == 1
    assert (a * b).frobenius() == a.frobenius() * b.frobenius()


@settings(exhaustive, max_examples=pade_examples)
@given(num=small_coefficients, den=small_coefficients, den_constant=st.integers(min_value=1, max_value=100))
def test_pade_recovers_fraction(num, den, den_constant) -> None:
    f = RationalFraction(Poly.from_ints(K101, [*num, 1]), Poly.from_ints(K101, [den_constant, *den]))
    dn, dd = len(num), len(den) + 1
    assert pade(f.to_series(dn + dd + 1), dn, dd) == f


@pytest.mark.slow
@settings(exhaustive, max_examples=dac_examples)
@given(seed=seeds, d=st.integers(min_value=1, max_value=24), kappa=st.integers(min_value=1, max_value=40))
def test_divide_and_conquer_solver(seed, d, kappa) -> None:
    rng = np.random.default_rng(seed)

    def series(*, constant: bool) -> TruncatedSeries:
        coeffs = K10007.random_raw(rng, (d,))
        if not constant:
            coeffs[0] = 0
        return TruncatedSeries(K10007, coeffs)

    a = [[series(constant=False) for _ in range(2)] for _ in range(2)]
    b = [series(constant=True) for _ in range(2)]
    assert dac_ode_solve(a, b, kappa, d) == naive_ode_solve(a, b, kappa, d)


@pytest.mark.slow
@settings(exhaustive, max_examples=covariance_examples)
@given(seed=seeds, entries=invertible_matrices())
def test_dtau_j_covariance(seed, entries) -> None:
    sextic = random_curve(K10007, seed=seed).sextic
    r = linalg.matrix(K10007, entries)
    moved = gl2_action(sextic, r)
    left = dtau_j_matrix(moved)
    right = linalg.matmul(K10007, dtau_j_matrix(sextic), sym2(K10007, linalg.transpose(r)))
    assert np.array_equal(left, right)


@pytest.mark.slow
@settings(exhaustive, max_examples=covariance_examples)
@given(seed=seeds, entries=invertible_matrices())
def test_generator_covariance(seed, entries) -> None:
    sextic = random_curve(K10007, seed=seed).sextic
    r = linalg.matrix(K10007, entries)
    det = K10007.element(linalg.det(K10007, r))
    before = generator_covariants(sextic)
    after = generator_covariants(gl2_action(sextic, r))
    for name, k in GENERATOR_WEIGHTS.items():
        old, new = getattr(before, name), getattr(after, name)
        expected = sym_action(old, r) * det**k if name.startswith("y") else old * det**k
        assert new == expected, name
