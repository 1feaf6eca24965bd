import pytest

from isogeny2.core.parallelism import run_in_parallel


def _power(x: int, e: int, *, offset: int = 0) -> int:
    return x**e + offset


def test_run_in_sequence():
    assert run_in_parallel(_power, [1, 2, 3], 1, 2, offset=1) == [2, 5, 10]


@pytest.mark.slow
def test_run_in_parallel():
    items = list(range(20))
    assert run_in_parallel(_power, items, 2, 3) == [x**3 for x in items]
