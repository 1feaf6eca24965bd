import numpy as np

from isogeny2.core.errors import SingularCurveError
from isogeny2.core.names import SEXTIC_DEGREE
from isogeny2.curves import CurveModel, CurvePoint, random_point, weierstrass_points
from isogeny2.field import FiniteField, PrimeField

# attempts at drawing a nonsingular sextic before giving up
MAX_CURVE_DRAWS = 100


def random_curve(
    field: FiniteField | int,
    seed: int | np.random.Generator | None = None,
    *,
    weierstrass: bool = False,
) -> CurveModel:
    """Return a random genus-2 curve ``v^2 = E(u)`` with ``deg E = 6``.

    Parameters
    ----------
    field : FiniteField or int
        Field of definition, or a prime.

    seed : int or Generator, default None
        Seed for random number generator.

    weierstrass : bool, default False
        Draw until the curve has a rational Weierstrass point.

    Examples
    --------
    >>> C = random_curve(10007, seed=1)
    >>> C.degree, str(C.field)
    (6, 'F_10007')
    >>> len(weierstrass_points(random_curve(101, seed=2, weierstrass=True))) > 0
    True

    """
    field = PrimeField(field) if isinstance(field, int) else field
    rng = np.random.default_rng(seed=seed)
    for _ in range(MAX_CURVE_DRAWS):
        coeffs = field.random_raw(rng, (SEXTIC_DEGREE + 1,))
        if not np.any(coeffs[-1]):
            continue
        try:
            curve = CurveModel.from_elements(field, [field.element(c) for c in coeffs])
        except SingularCurveError:
            continue
        if weierstrass and not weierstrass_points(curve):
            continue
        return curve
    msg = f"No suitable curve over {field} in {MAX_CURVE_DRAWS} draws."
    raise ValueError(msg)


def random_points(curve: CurveModel, n: int = 10, seed: int | np.random.Generator | None = None) -> list[CurvePoint]:
    """Return n random affine non-Weierstrass points of ``curve``.

    Examples
    --------
    >>> C = random_curve(10007, seed=1)
    >>> points = random_points(C, 3, seed=5)
    >>> all(C.contains(P) and not P.is_weierstrass for P in points)
    True

    """
    rng = np.random.default_rng(seed=seed)
    return [random_point(curve, rng) for _ in range(n)]
