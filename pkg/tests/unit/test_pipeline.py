import json

import pytest

import isogeny2
from isogeny2.core.errors import ModularEquationNonzeroError, SingularMatrixError
from isogeny2.core.example_data import example_data
from isogeny2.core.random import random_curve
from isogeny2.curves import weierstrass_points
from isogeny2.pipeline import RunConfig, field_tower, run


def test_config_validation() -> None:
    curve = [1, 2, 3, 4, 5, 6, 1]
    with pytest.raises(ValueError, match="Unknown configuration keys"):
        RunConfig.from_dict({"p": 10007, "path": "endo", "curve": curve, "mu": 2})
    with pytest.raises(ValueError, match="at least 7"):
        RunConfig(p=5, path="endo", curve=curve, m=2).validate()
    with pytest.raises(ValueError, match="exactly one of j, g, curve"):
        RunConfig(p=10007, path="endo", curve=curve, j=[1, 2, 3], m=2).validate()
    with pytest.raises(ValueError, match="only meaningful on the hilbert-q5 path"):
        RunConfig(p=10007, path="siegel", g=[1, 2], curve_prime=curve, ell=2, modeq="identity_siegel.txt").validate()
    with pytest.raises(ValueError, match="needs beta_norm"):
        RunConfig(p=10007, path="hilbert-q5", curve=curve, curve_prime=curve, beta_trace=1, modeq="x").validate()
    with pytest.raises(ValueError, match="neither a modular equation"):
        RunConfig(p=10007, path="endo", curve=curve, m=2, modeq="identity_siegel.txt").validate()
    with pytest.raises(ValueError, match="exactly one of modeq, tangent"):
        RunConfig(p=10007, path="siegel", curve=curve, curve_prime=curve, ell=2).validate()


def test_config_updated(tmp_path) -> None:
    config = example_data.run_config
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config.to_dict()))
    loaded = RunConfig.from_json(path)
    assert loaded == config
    assert loaded.updated(seed=5, precision=None).seed == 5
    assert loaded.updated(seed=5).precision is None
    assert loaded.level == 7


def test_field_tower() -> None:
    assert field_tower(example_data.field) == []
    assert field_tower(example_data.alpha_field) == [[[2], [1], [1]]]


@pytest.fixture(scope="module")
def identity_run():
    curve = [c[0] for c in random_curve(10007, seed=1).coefficients()]
    return run(RunConfig(p=10007, path="endo", curve=curve, m=1))


def test_identity_run_accepted(identity_run) -> None:
    assert len(identity_run.candidates) == 1
    outcome = identity_run.accepted[0]
    assert outcome.tag == "[1]"
    assert outcome.report.passed
    assert outcome.representation.degrees()["s"] == 2
    assert identity_run.curve == identity_run.curve_p
    assert identity_run.config.seed == 0


def test_identity_run_json(identity_run) -> None:
    document = json.loads(identity_run.to_json())
    assert list(document) == ["field", "curves", "base_point", "candidates", "timings_ms"]
    assert document["field"] == {"p": 10007, "tower": []}
    assert document["curves"]["C"] == document["curves"]["Cprime"]
    candidate = document["candidates"][0]
    assert candidate["status"] == "accepted"
    assert candidate["verification"]["passed"]
    assert {"s", "p", "q_even", "r_odd", "t_even", "degrees", "timings_ms"} <= set(candidate)
    assert "total" in document["timings_ms"]


def test_singular_tangent_stops_the_run() -> None:
    curve = [c[0] for c in random_curve(10007, seed=1).coefficients()]
    config = RunConfig(p=10007, path="siegel", curve=curve, curve_prime=curve, ell=1, tangent=[[1, 0], [0, 0]])
    with pytest.raises(SingularMatrixError, match="singular"):
        run(config)


def test_rejected_candidate_is_recorded() -> None:
    curve = [c[0] for c in random_curve(10007, seed=1).coefficients()]
    # [2] does not fit the degree bounds of a level-one isogeny
    output = run(RunConfig(p=10007, path="siegel", curve=curve, curve_prime=curve, ell=1, tangent=[[2, 0], [0, 2]]))
    assert output.accepted == []
    (outcome,) = output.candidates
    assert outcome.status == "rejected"
    assert outcome.reason
    assert outcome.condition
    assert json.loads(output.to_json())["candidates"][0]["reason"] == outcome.reason


@pytest.fixture(scope="module")
def example_run():
    return run(example_data.run_config)


@pytest.mark.slow
def test_example_run(example_run) -> None:
    (outcome,) = example_run.accepted
    rep = outcome.representation
    k = example_data.alpha_field
    assert outcome.base_point.u == 0
    assert outcome.base_point.v == 0
    assert outcome.precision == 35
    assert rep.s.is_even()
    assert rep.s.even == example_data.s.embed(k)
    assert rep.p.even == example_data.p.embed(k)
    assert outcome.report.failures == []


@pytest.mark.slow
def test_example_run_with_direct_qr() -> None:
    isogeny2.options.set_option("direct_pade_qr", True)
    try:
        output = run(example_data.run_config)
    finally:
        isogeny2.options.reset_options()
    (outcome,) = output.accepted
    assert outcome.report.passed


@pytest.mark.slow
def test_parallel_run_matches_sequential(identity_run) -> None:
    isogeny2.options.set_option("nb_cpu", 2)
    try:
        output = run(identity_run.config)
    finally:
        isogeny2.options.reset_options()
    assert output.accepted[0].representation.s == identity_run.accepted[0].representation.s


def test_identity_without_rational_weierstrass_point() -> None:
    for seed in range(50):
        curve = random_curve(29, seed=seed)
        if not weierstrass_points(curve):
            break
    assert not weierstrass_points(curve)
    output = run(RunConfig(p=29, path="endo", curve=[c[0] for c in curve.coefficients()], m=1))
    (outcome,) = output.accepted
    assert outcome.base_point.v
    assert outcome.precision == 13


def test_siegel_identity_from_invariants() -> None:
    j = [14030, 9041, 56122]
    modeq = str(example_data.files["identity_siegel.txt"])
    config = RunConfig(p=56311, path="siegel", j=j, j_prime=j, ell=1, modeq=modeq)
    output = run(config)
    assert output.curve == output.curve_p
    assert [outcome.status for outcome in output.candidates] == ["accepted"]
    assert output.accepted[0].representation.degrees()["s"] == 2


def test_hilbert_identity_from_gundlach() -> None:
    g = [23, 56260]
    config = RunConfig(
        p=56311,
        path="hilbert-q5",
        g=g,
        g_prime=g,
        beta_norm=1,
        beta_trace=2,
        modeq=str(example_data.files["identity_hilbert_q5.txt"]),
    )
    output = run(config)
    status = {outcome.tag: outcome.status for outcome in output.candidates}
    assert status["beta,+"] == "accepted"
    assert status["beta_bar,+"] == "accepted"
    assert status["beta,-"] == "rejected"


def test_modular_equations_must_vanish() -> None:
    config = RunConfig(
        p=56311,
        path="siegel",
        j=[14030, 9041, 56122],
        j_prime=[13752, 42980, 12538],
        ell=1,
        modeq=str(example_data.files["identity_siegel.txt"]),
    )
    with pytest.raises(ModularEquationNonzeroError, match="do not vanish"):
        run(config)
