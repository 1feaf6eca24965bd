from collections.abc import Callable, Iterable
from typing import Any


def run_in_parallel(function: Callable, items: Iterable[Any], nb_cpu: int, *args, **kwargs) -> list[Any]:
    """Run a function on every item, in worker processes when nb_cpu > 1."""
    if nb_cpu <= 1:
        return [function(item, *args, **kwargs) for item in items]

    from joblib import Parallel, delayed

    return Parallel(n_jobs=nb_cpu)(delayed(function)(item, *args, **kwargs) for item in items)  # type: ignore[return-value]
