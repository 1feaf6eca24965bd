"""Local lift of an isogeny at a base point, by Newton iteration on a differential system.

Let ``v^2 = E(u)`` be C, ``y^2 = F(x)`` be C', z a uniformizer at P with ``u = U(z)`` and ``du/v = D(z) dz``, and
``dphi = (m_ij)``. The series ``(x1, x2, y1, y2)`` of the pair of points attached to a point of C near P satisfy

    x1 x1'/y1 + x2 x2'/y2 = (m11 U + m12) D
          x1'/y1 + x2'/y2 = (m21 U + m22) D
               y_i^2      = F(x_i)

At ``z = 0`` the pair is ``{Q, i(Q)}``: ``x_i(0) = x0``, ``y1(0) = y0`` and ``y2(0) = -y0``. The y_i are recomputed
from the x_i by series square roots, so only ``x1, x2`` are unknowns of the linearized system
``M dx' + N dx = R``.
"""

import logging
from dataclasses import dataclass, replace

import numpy as np

from isogeny2.core import linalg
from isogeny2.core.errors import EqualRootsError, NonInvertibleLeadingError, PrecisionTooLowError, ResidualNonzeroError
from isogeny2.core.names import UNIFORMIZER_WEIERSTRASS
from isogeny2.curves import BasePoint, CurveModel, CurvePoint, LocalExpansion, local_expansion
from isogeny2.field import FieldElement, FiniteField, Raw
from isogeny2.series import TruncatedSeries

logging.basicConfig(level=logging.INFO)
LOGGER = logging.getLogger(__name__)
LOGGER.setLevel(logging.INFO)

SeriesVector = list[TruncatedSeries]
SeriesMatrix = list[list[TruncatedSeries]]


@dataclass(frozen=True)
class LocalLift:
    """Series ``x1, x2, y1, y2`` known modulo ``z**precision``, with the source curve, chart and tangent matrix."""

    base: BasePoint
    curve: CurveModel
    chart: LocalExpansion
    dphi: Raw
    x1: TruncatedSeries
    x2: TruncatedSeries
    y1: TruncatedSeries
    y2: TruncatedSeries

    @property
    def field(self) -> FiniteField:
        return self.base.field

    @property
    def precision(self) -> int:
        return self.x1.precision

    @property
    def xs(self) -> tuple[TruncatedSeries, TruncatedSeries]:
        return self.x1, self.x2

    @property
    def ys(self) -> tuple[TruncatedSeries, TruncatedSeries]:
        return self.y1, self.y2

    def __repr__(self) -> str:
        return f"LocalLift(precision={self.precision}, base={self.base.P}, image={self.base.Q})"


@dataclass(frozen=True)
class LinearizedSystem:
    """``M dx' + N dx = R``, whose solution starts at ``z**kappa``."""

    m: SeriesMatrix
    n: SeriesMatrix
    r: SeriesVector
    kappa: int
    normalizer: SeriesMatrix


def _entries(field: FiniteField, dphi: Raw) -> list[list[FieldElement]]:
    return [[field.element(x) for x in row] for row in dphi]


def _over(curve: CurveModel, field: FiniteField) -> CurveModel:
    return curve if curve.field == field else curve.embed(field)


def right_hand_side(lift: LocalLift, precision: int) -> SeriesVector:
    """``((m11 U + m12) D, (m21 U + m22) D)`` modulo ``z**precision``."""
    (m11, m12), (m21, m22) = _entries(lift.field, lift.dphi)
    u = lift.chart.u.truncate(precision)
    d = lift.chart.d.truncate(precision)
    return [(u * m11 + m12) * d, (u * m21 + m22) * d]


def _refresh_ys(curve_p: CurveModel, xs: SeriesVector, ys: tuple[TruncatedSeries, ...], precision: int) -> SeriesVector:
    """``y_i = sqrt(F(x_i))`` with the constant terms of the previous ``y_i``."""
    poly = curve_p.poly
    return [poly.compose_series(x.truncate(precision)).sqrt(y.constant_term()) for x, y in zip(xs, ys, strict=True)]


def initialize_lift(
    curve: CurveModel, curve_p: CurveModel, dphi: Raw, base: BasePoint, chart_precision: int = 2
) -> LocalLift:
    """The lift modulo ``z**2``.

    With ``x1 = x0 + a z`` and ``x2 = x0 + b z``, the constant term of the second row gives ``a - b = s`` where
    ``s = y0 (m21 u0 + m22) d0``, and the z-coefficient of ``row1 - x0 row2`` gives ``a^2 - b^2 = y0 r1``.

    Raises
    ------
    EqualRootsError
        If ``s = 0``: then ``x1 - x2`` would not have valuation one and dphi is not a tangent matrix.

    """
    field = base.field
    curve, curve_p = _over(curve, field), _over(curve_p, field)
    chart = local_expansion(curve, base.P, max(chart_precision, 2))
    x0, y0 = base.Q.u, base.Q.v
    (m11, m12), (m21, m22) = _entries(field, dphi)

    u, d = chart.u, chart.d
    s = y0 * (m21 * u[0] + m22) * d[0]  # type: ignore[operator]
    if not s:
        msg = f"The two tangent directions at {base.Q} coincide (s = 0)."
        raise EqualRootsError(msg)
    combined = ((u * m11 + m12) - (u * m21 + m22) * x0) * d
    quotient = y0 * combined[1] / s  # type: ignore[operator]
    two = field(2)
    a = (s + quotient) / two
    b = (quotient - s) / two

    x1 = TruncatedSeries.from_elements(field, [x0, a], 2)  # type: ignore[list-item]
    x2 = TruncatedSeries.from_elements(field, [x0, b], 2)  # type: ignore[list-item]
    starts = tuple(TruncatedSeries.constant(field, c, 1) for c in (y0, -y0))  # type: ignore[operator]
    y1, y2 = _refresh_ys(curve_p, [x1, x2], starts, 2)
    LOGGER.debug("initial slopes %s, %s at %s", a, b, base.Q)
    return LocalLift(base, curve, chart, dphi, x1, x2, y1, y2)


def initialize_pair_lift(
    curve: CurveModel,
    curve_p: CurveModel,
    dphi: Raw,
    point: CurvePoint,
    pair: tuple[CurvePoint, CurvePoint],
    chart_precision: int = 2,
) -> LocalLift:
    """The lift modulo ``z**2`` at ``point`` when the pair there is made of two distinct affine points.

    The slopes ``(a, b)`` solve ``M(0) (a, b) = ((m11 u0 + m12) d0, (m21 u0 + m22) d0)`` with
    ``M = ((x1/y1, x2/y2), (1/y1, 1/y2))``, which is invertible for such a pair.

    Raises
    ------
    EqualRootsError
        If the two points share their abscissa or one of them is a Weierstrass point.

    """
    (x10, y10), (x20, y20) = ((q.u, q.v) for q in pair)
    field = x10.field  # type: ignore[union-attr]
    if x10 == x20 or not y10 or not y20:
        msg = f"The pair {pair} is not made of two distinct non-Weierstrass points."
        raise EqualRootsError(msg)
    curve, curve_p = _over(curve, field), _over(curve_p, field)
    chart = local_expansion(curve, point, max(chart_precision, 2))
    (m11, m12), (m21, m22) = _entries(field, dphi)
    u0, d0 = chart.u[0], chart.d[0]
    lead = linalg.matrix(field, [[x10 / y10, x20 / y20], [y10.inverse(), y20.inverse()]])  # type: ignore[operator, union-attr]
    rhs = np.stack([field.raw((m11 * u0 + m12) * d0), field.raw((m21 * u0 + m22) * d0)])
    a, b = (field.element(t) for t in linalg.solve(field, lead, rhs))

    x1 = TruncatedSeries.from_elements(field, [x10, a], 2)  # type: ignore[list-item]
    x2 = TruncatedSeries.from_elements(field, [x20, b], 2)  # type: ignore[list-item]
    starts = tuple(TruncatedSeries.constant(field, y.raw, 1) for y in (y10, y20))  # type: ignore[union-attr]
    y1, y2 = _refresh_ys(curve_p, [x1, x2], starts, 2)
    LOGGER.debug("initial slopes %s, %s at %s", a, b, pair)
    return LocalLift(BasePoint(field, point, pair[0]), curve, chart, dphi, x1, x2, y1, y2)


def linearize(lift: LocalLift, curve_p: CurveModel, precision: int) -> LinearizedSystem:
    """The system satisfied by the correction ``dx``, which starts at ``z**n`` for a lift known to ``z**n``.

    ``M = ((x1/y1, x2/y2), (1/y1, 1/y2))``; with ``w_i = F'(x_i)/(2 y_i^3)``, N has rows
    ``(x_i'/y_i - x_i x_i' w_i)`` and ``(-x_i' w_i)``. R is the residual of the first two rows.
    """
    curve_p = _over(curve_p, lift.field)
    padded = [x.padded(precision + 1) for x in lift.xs]
    ys = _refresh_ys(curve_p, padded, lift.ys, precision)
    dxs = [x.derivative() for x in padded]
    xs = [x.truncate(precision) for x in padded]
    inv_ys = [y.inverse() for y in ys]
    slope = curve_p.poly.derivative()
    ws = [slope.compose_series(x) * inv_y**3 / lift.field(2) for x, inv_y in zip(xs, inv_ys, strict=True)]

    m = [[xs[0] * inv_ys[0], xs[1] * inv_ys[1]], [inv_ys[0], inv_ys[1]]]
    n = [
        [dx * inv_y - x * dx * w for x, dx, inv_y, w in zip(xs, dxs, inv_ys, ws, strict=True)],
        [-(dx * w) for dx, w in zip(dxs, ws, strict=True)],
    ]
    lhs = [
        xs[0] * dxs[0] * inv_ys[0] + xs[1] * dxs[1] * inv_ys[1],
        dxs[0] * inv_ys[0] + dxs[1] * inv_ys[1],
    ]
    r = [rhs - left for rhs, left in zip(right_hand_side(lift, precision), lhs, strict=True)]
    return LinearizedSystem(m, n, r, lift.precision, normalizing_matrix(padded, ys))


def normalizing_matrix(xs: SeriesVector, ys: SeriesVector) -> SeriesMatrix:
    """``I = z M^-1 = z ((y1, -x2 y1), (-y2, x1 y2)) / (x1 - x2)``, so that ``I M = z Id``.

    ``x1 - x2`` has valuation one for a lift starting at ``{Q, i(Q)}`` and valuation zero for one starting at a pair
    of distinct points.

    Raises
    ------
    EqualRootsError
        If ``x1 - x2`` has any other valuation.

    """
    difference = xs[0] - xs[1]
    valuation = difference.valuation()
    if valuation == 1:
        inv_w = difference.divide_by_z(1).inverse()
    elif valuation == 0:
        inv_w = difference.inverse().shift(1).truncate(difference.precision - 1)
    else:
        msg = f"x1 - x2 has valuation {valuation}, expected 0 or 1."
        raise EqualRootsError(msg)
    precision = inv_w.precision
    x1, x2 = (x.truncate(precision) for x in xs)
    y1, y2 = (y.truncate(precision) for y in ys)
    return [[y1 * inv_w, -(x2 * y1 * inv_w)], [-(y2 * inv_w), x1 * y2 * inv_w]]


def _matvec(a: SeriesMatrix, b: SeriesVector) -> SeriesVector:
    return [a[i][0] * b[0] + a[i][1] * b[1] for i in range(2)]


def _matmul(a: SeriesMatrix, b: SeriesMatrix) -> SeriesMatrix:
    return [[a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2)] for i in range(2)]


def _z_derivative(s: TruncatedSeries) -> TruncatedSeries:
    """``z s'`` at the precision of s."""
    return TruncatedSeries(s.field, (s.coeffs * np.arange(s.precision)[:, None]) % s.field.p)


def _leading_solve(a: SeriesMatrix, b: list[FieldElement], shift: int, field: FiniteField) -> list[FieldElement]:
    """Solve ``(A(0) + shift) theta = b`` over the field."""
    lead = linalg.matrix(field, [[a[i][j][0] + (shift if i == j else 0) for j in range(2)] for i in range(2)])
    if not np.any(linalg.det(field, lead)):
        msg = f"A(0) + {shift} is not invertible (characteristic {field.p})."
        raise NonInvertibleLeadingError(msg)
    theta = linalg.solve(field, lead, np.stack([field.raw(x) for x in b]))
    return [field.element(t) for t in theta]


def _ode_residual(a: SeriesMatrix, b: SeriesVector, kappa: int, theta: SeriesVector, d: int) -> SeriesVector:
    """``B - z theta' - (A + kappa) theta`` modulo ``z**d``."""
    theta = [t.padded(d) for t in theta]
    a_theta = _matvec([[x.truncate(d) for x in row] for row in a], theta)
    return [
        bi.truncate(d) - _z_derivative(t) - at - t * kappa for bi, t, at in zip(b, theta, a_theta, strict=True)
    ]


def dac_ode_solve(a: SeriesMatrix, b: SeriesVector, kappa: int, d: int) -> SeriesVector:
    """Solve ``z theta' + (A + kappa) theta = B`` modulo ``z**d`` by divide and conquer.

    With ``d1 = d // 2`` and ``theta = theta1 + z**d1 theta2``, theta1 solves the same equation modulo ``z**d1`` and
    theta2 solves it with offset ``kappa + d1`` and the residual of theta1 divided by ``z**d1``.

    Raises
    ------
    NonInvertibleLeadingError
        If ``A(0) + k`` is singular for some offset k met in the recursion.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(101)
    >>> zero = TruncatedSeries.zero(k, 4)
    >>> z = TruncatedSeries.variable(k, 4)
    >>> dac_ode_solve([[zero, zero], [zero, zero]], [z, zero], 1, 4)[0]
    51*z + O(z^4)

    """
    field = b[0].field
    if d <= 0:
        return [TruncatedSeries.zero(field, 0)] * 2
    if d == 1:
        theta0 = _leading_solve(a, [bi[0] for bi in b], kappa, field)
        return [TruncatedSeries.from_elements(field, [t], 1) for t in theta0]
    d1 = d // 2
    low = dac_ode_solve(a, b, kappa, d1)
    residual = _ode_residual(a, b, kappa, low, d)
    high = dac_ode_solve(a, [r.divide_by_z(d1) for r in residual], kappa + d1, d - d1)
    return [t.padded(d) + h.shift(d1) for t, h in zip(low, high, strict=True)]


def naive_ode_solve(a: SeriesMatrix, b: SeriesVector, kappa: int, d: int) -> SeriesVector:
    """Coefficient-by-coefficient solve of ``z theta' + (A + kappa) theta = B`` modulo ``z**d``."""
    field = b[0].field
    theta: list[list[FieldElement]] = [[], []]
    for k in range(d):
        rhs = [b[i][k] for i in range(2)]
        for j in range(1, k + 1):
            for i in range(2):
                rhs[i] = rhs[i] - a[i][0][j] * theta[0][k - j] - a[i][1][j] * theta[1][k - j]
        solved = _leading_solve(a, rhs, kappa + k, field)
        for i in range(2):
            theta[i].append(solved[i])
    return [TruncatedSeries.from_elements(field, t, d) for t in theta]  # type: ignore[arg-type]


def newton_step(lift: LocalLift, curve_p: CurveModel, precision: int) -> LocalLift:
    """Raise the precision of ``lift`` from n to ``precision <= 2n - 1``."""
    n = lift.precision
    if precision > 2 * n - 1:
        msg = f"A Newton step from precision {n} reaches at most {2 * n - 1}, not {precision}."
        raise PrecisionTooLowError(msg)
    system = linearize(lift, curve_p, precision)
    transform = system.normalizer
    a = _matmul(transform, system.n)
    b = _matvec(transform, system.r)
    if any(np.any(bi.coeffs[:n]) for bi in b):
        msg = f"The residual at precision {n} does not vanish to order {n}."
        raise ResidualNonzeroError(msg)
    correction = dac_ode_solve(a, [bi.divide_by_z(n) for bi in b], n, precision - n)

    xs = [x.padded(precision) + c.shift(n) for x, c in zip(lift.xs, correction, strict=True)]
    ys = _refresh_ys(_over(curve_p, lift.field), xs, lift.ys, precision)
    return replace(lift, x1=xs[0], x2=xs[1], y1=ys[0], y2=ys[1])


def newton_lift(lift: LocalLift, curve_p: CurveModel, target: int) -> LocalLift:
    """Newton iteration from the current precision to ``target``; each step goes from n to ``2n - 1``.

    Raises
    ------
    NonInvertibleLeadingError
        If the characteristic does not exceed ``target``.

    PrecisionTooLowError
        If the chart of the base point is known to less than ``target``.

    """
    if lift.field.p <= target:
        msg = f"The characteristic {lift.field.p} must exceed the precision {target}."
        raise NonInvertibleLeadingError(msg)
    if lift.chart.precision < target:
        msg = f"The chart at the base point is known to z^{lift.chart.precision}, below {target}."
        raise PrecisionTooLowError(msg)
    while lift.precision < target:
        precision = min(2 * lift.precision - 1, target)
        lift = newton_step(lift, curve_p, precision)
        LOGGER.debug("lift known to z^%d", precision)
    return lift


def compute_lift(curve: CurveModel, curve_p: CurveModel, dphi: Raw, base: BasePoint, precision: int) -> LocalLift:
    """Initialization followed by Newton iteration to ``precision``."""
    lift = initialize_lift(curve, curve_p, dphi, base, precision)
    lift = newton_lift(lift, curve_p, precision)
    LOGGER.info("local lift at %s computed to z^%d", base.P, precision)
    return lift


def compute_conjugate_lift(
    curve: CurveModel,
    curve_p: CurveModel,
    dphi: Raw,
    base: BasePoint,
    pair: tuple[CurvePoint, CurvePoint],
    precision: int,
) -> LocalLift:
    """The lift of the same map at ``i(P)``, where its pair is ``pair``, in the uniformizer ``u = u0 + z``."""
    lift = initialize_pair_lift(curve, curve_p, dphi, base.P.involution(), pair, precision)
    lift = newton_lift(lift, curve_p, precision)
    LOGGER.info("local lift at %s computed to z^%d", lift.base.P, precision)
    return lift


def system_residuals(lift: LocalLift, curve_p: CurveModel) -> tuple[int, int, int, int]:
    """Valuations of the residuals of the four equations of the system."""
    curve_p = _over(curve_p, lift.field)
    n = lift.precision
    dxs = [x.derivative() for x in lift.xs]
    xs = [x.truncate(n - 1) for x in lift.xs]
    inv_ys = [y.truncate(n - 1).inverse() for y in lift.ys]
    rows = right_hand_side(lift, n - 1)
    first = rows[0] - (xs[0] * dxs[0] * inv_ys[0] + xs[1] * dxs[1] * inv_ys[1])
    second = rows[1] - (dxs[0] * inv_ys[0] + dxs[1] * inv_ys[1])
    curves = [y * y - curve_p.poly.compose_series(x) for x, y in zip(lift.xs, lift.ys, strict=True)]
    return first.valuation(), second.valuation(), curves[0].valuation(), curves[1].valuation()


def check_system_residual(lift: LocalLift, curve_p: CurveModel) -> None:
    """Check that the first two rows hold modulo ``z**(n-1)`` and the curve equations modulo ``z**n``.

    At Weierstrass base points ``x1 + x2`` and ``x1 x2`` must also be even in z.

    Raises
    ------
    ResidualNonzeroError
        If any of these fails.

    """
    n = lift.precision
    valuations = system_residuals(lift, curve_p)
    if min(valuations[:2]) < n - 1 or min(valuations[2:]) < n:
        msg = f"Residual valuations {valuations} at precision {n}."
        raise ResidualNonzeroError(msg)
    if lift.chart.kind == UNIFORMIZER_WEIERSTRASS:
        for name, series in (("x1 + x2", lift.x1 + lift.x2), ("x1 x2", lift.x1 * lift.x2)):
            if np.any(series.coeffs[1::2]):
                msg = f"{name} is not even in z at a Weierstrass base point."
                raise ResidualNonzeroError(msg)


def local_chart(curve: CurveModel, base: BasePoint, precision: int) -> LocalExpansion:
    """The chart of C at the base point, over the working field."""
    return local_expansion(_over(curve, base.field), base.P, precision)
