import numpy as np
import pytest

from isogeny2.core.errors import NonGenericPositionError
from isogeny2.core.random import random_curve
from isogeny2.curves import random_point
from isogeny2.jacobian_oracle import OddModel, oracle_rational_rep
from isogeny2.pipeline import RunConfig, run

from tests.property_based.hypothesis_helper import K10007

POINTS_PER_CURVE = 20


@pytest.mark.slow
@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("seed", range(10))
def test_multiplication_agrees_with_cantor(seed, m) -> None:
    curve = random_curve(K10007, seed=seed, weierstrass=True)
    config = RunConfig(p=K10007.p, path="endo", curve=[c[0] for c in curve.coefficients()], m=m, seed=seed)
    (outcome,) = run(config).accepted
    rep = outcome.representation
    model = OddModel.from_curve(rep.curve)
    rng = np.random.default_rng(seed)
    compared = 0
    for _ in range(4 * POINTS_PER_CURVE):
        point = random_point(rep.curve, rng)
        try:
            expected = oracle_rational_rep(rep.curve, rep.base.P, m, point, model)
            got = tuple(f(point) for f in (rep.s, rep.p, rep.q, rep.r))
        except (NonGenericPositionError, ZeroDivisionError):
            continue
        assert got == expected
        compared += 1
        if compared == POINTS_PER_CURVE:
            break
    assert compared == POINTS_PER_CURVE
