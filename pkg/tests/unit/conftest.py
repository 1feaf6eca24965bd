import numpy as np
import pytest

from isogeny2.core.example_data import example_data
from isogeny2.curves import CurveModel
from isogeny2.field import ExtField, PrimeField


def pytest_configure(config) -> None:
    config.addinivalue_line("markers", "explore: functionality not ready for prime-time")


@pytest.fixture(autouse=True)
def add_np(doctest_namespace) -> None:
    doctest_namespace["np"] = np


@pytest.fixture()
def rng() -> np.random.Generator:
    return np.random.default_rng(42)


@pytest.fixture()
def k101() -> PrimeField:
    return PrimeField(101)


@pytest.fixture()
def k10007() -> PrimeField:
    return PrimeField(10007)


@pytest.fixture()
def k() -> PrimeField:
    return example_data.field


@pytest.fixture()
def alpha_field() -> ExtField:
    return example_data.alpha_field


@pytest.fixture()
def curve() -> CurveModel:
    return example_data.curve


@pytest.fixture()
def curve_prime() -> CurveModel:
    return example_data.curve_prime


@pytest.fixture()
def standard_curve() -> CurveModel:
    return example_data.standard_curve
