"""Rational representation of an isogeny from its local lift.

A point ``R`` of C near the base point P is sent to the pair ``{(x1, y1), (x2, y2)}`` on C'. The four functions

    s = x1 + x2,    p = x1 x2,    q = y1 y2,    r = (y2 - y1)/(x2 - x1)

live in the function field ``k(u) + v k(u)`` of C. Only s and p are reconstructed from series; q and r follow from
the equation ``y^2 = F(x)`` of C', and the intercept ``t = y1 - r x1`` gives the pair back from a point:
``x1, x2`` are the roots of ``X^2 - s X + p`` and ``y_i = r x_i + t``.
"""

import logging
from dataclasses import dataclass, field as dataclass_field
from typing import Any

import numpy as np

from isogeny2.core.errors import (
    CandidateRejectedError,
    NoGenericPointError,
    NonGenericPositionError,
    NoSolutionError,
    NotAPerfectSquareError,
    PrecisionTooLowError,
    SignMismatchError,
)
from isogeny2.core.names import (
    PATH_ENDO,
    PATH_HILBERT_Q5,
    PATH_SIEGEL,
    SEXTIC_DEGREE,
    UNIFORMIZER_WEIERSTRASS,
    VALID_PATH_TYPE,
)
from isogeny2.core.options import option_manager
from isogeny2.curves import BasePoint, CurveModel, CurvePoint, LocalExpansion, local_expansion, random_point
from isogeny2.field import FieldElement, FiniteField, Raw, adjoin_sqrt
from isogeny2.series import Poly, RationalFraction, TruncatedSeries, hermite_pade, laurent_div, pade, rational_sqrt
from isogeny2.solver import LocalLift

logging.basicConfig(level=logging.INFO)
LOGGER = logging.getLogger(__name__)
LOGGER.setLevel(logging.INFO)

Laurent = tuple[TruncatedSeries, int]

@dataclass(frozen=True)
class DegreeBounds:
    """Degrees of s, p, q and r as morphisms from C to the projective line.

    Examples
    --------
    >>> DegreeBounds.hilbert(7)
    DegreeBounds(ds=14, dp=14, dq=42, dr=28)
    >>> DegreeBounds.hilbert(7).precision
    35
    >>> DegreeBounds.endomorphism(2).precision
    39

    """

    ds: int
    dp: int
    dq: int
    dr: int

    @classmethod
    def siegel(cls, ell: int) -> "DegreeBounds":
        return cls(4 * ell, 4 * ell, 12 * ell, 8 * ell)

    @classmethod
    def hilbert(cls, trace: int) -> "DegreeBounds":
        return cls(2 * trace, 2 * trace, 6 * trace, 4 * trace)

    @classmethod
    def endomorphism(cls, m: int) -> "DegreeBounds":
        return cls.siegel(m * m)

    @classmethod
    def for_path(cls, path: VALID_PATH_TYPE, level: int) -> "DegreeBounds":
        """Bounds for a run: ``level`` is ell, the trace of beta or m depending on the path."""
        if level < 1:
            msg = f"The level must be positive, got {level}."
            raise ValueError(msg)
        if path == PATH_SIEGEL:
            return cls.siegel(level)
        if path == PATH_HILBERT_Q5:
            return cls.hilbert(level)
        if path == PATH_ENDO:
            return cls.endomorphism(level)
        msg = f"Unknown path {path}."
        raise ValueError(msg)

    @property
    def precision(self) -> int:
        """Precision of the lifts needed for s and p, at a Weierstrass base point or with the conjugate lift."""
        return 2 * self.ds + 7

    @property
    def generic_precision(self) -> int:
        """Precision needed at a generic base point from its own lift.

        ``C s = A + v B`` with ``deg C, deg A <= d`` and ``deg B <= d - 3``; the difference of two such relations
        has at most 3d poles, so they agree once the series is known to ``z**(3d + 1)``.
        """
        return 3 * self.ds + 1

    @property
    def direct_precision(self) -> int:
        """Precision needed to reconstruct q and r from their own series."""
        return 2 * self.dq + 7

    def precision_at(self, kind: str, *, conjugate: bool = False) -> int:
        if kind == UNIFORMIZER_WEIERSTRASS or conjugate:
            return self.precision
        return self.generic_precision

    def as_dict(self) -> dict[str, int]:
        return {"s": self.ds, "p": self.dp, "q": self.dq, "r": self.dr}


def required_precision(path: VALID_PATH_TYPE, level: int) -> int:
    """Precision of the lifts at a Weierstrass base point, or at a generic one with the lift at its conjugate.

    Examples
    --------
    >>> required_precision("hilbert-q5", 7), required_precision("siegel", 2), required_precision("endo", 2)
    (35, 23, 39)

    """
    return DegreeBounds.for_path(path, level).precision


def generic_precision(path: VALID_PATH_TYPE, level: int) -> int:
    return DegreeBounds.for_path(path, level).generic_precision


# functions on the curve


def _fraction(f: FieldElement | int | Poly | RationalFraction, field: FiniteField) -> RationalFraction:
    if isinstance(f, RationalFraction):
        return f
    if isinstance(f, Poly):
        return RationalFraction(f)
    return RationalFraction.constant(field, f)


class FunctionFieldElement:
    """``even(u) + v odd(u)`` in the function field of ``v^2 = E(u)``.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(101)
    >>> e = Poly.from_ints(k, [1, 0, 0, 0, 0, 1, 1])
    >>> v = FunctionFieldElement.v(e)
    >>> v * v == FunctionFieldElement.from_fraction(e, RationalFraction(e))
    True
    >>> (v + 1) * (v + 1).inverse() == FunctionFieldElement.one(e)
    True

    """

    __slots__ = ("e", "even", "odd")

    def __init__(self, e: Poly, even: RationalFraction, odd: RationalFraction | None = None) -> None:
        self.e = e
        self.even = even
        self.odd = RationalFraction.constant(e.field, 0) if odd is None else odd

    @classmethod
    def from_fraction(cls, e: Poly, f: FieldElement | int | Poly | RationalFraction) -> "FunctionFieldElement":
        return cls(e, _fraction(f, e.field))

    @classmethod
    def one(cls, e: Poly) -> "FunctionFieldElement":
        return cls.from_fraction(e, 1)

    @classmethod
    def v(cls, e: Poly) -> "FunctionFieldElement":
        return cls(e, RationalFraction.constant(e.field, 0), RationalFraction.constant(e.field, 1))

    @property
    def field(self) -> FiniteField:
        return self.e.field

    def is_zero(self) -> bool:
        return self.even.is_zero() and self.odd.is_zero()

    def is_even(self) -> bool:
        return self.odd.is_zero()

    def is_odd(self) -> bool:
        return self.even.is_zero()

    def _coerce(self, other: Any) -> "FunctionFieldElement":
        if isinstance(other, FunctionFieldElement):
            return other
        return FunctionFieldElement.from_fraction(self.e, other)

    def __add__(self, other: Any) -> "FunctionFieldElement":
        other = self._coerce(other)
        return FunctionFieldElement(self.e, self.even + other.even, self.odd + other.odd)

    __radd__ = __add__

    def __neg__(self) -> "FunctionFieldElement":
        return FunctionFieldElement(self.e, -self.even, -self.odd)

    def __sub__(self, other: Any) -> "FunctionFieldElement":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "FunctionFieldElement":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "FunctionFieldElement":
        other = self._coerce(other)
        even = self.even * other.even + self.odd * other.odd * self.e
        odd = self.even * other.odd + self.odd * other.even
        return FunctionFieldElement(self.e, even, odd)

    __rmul__ = __mul__

    def conjugate(self) -> "FunctionFieldElement":
        """Image under the hyperelliptic involution ``v -> -v``."""
        return FunctionFieldElement(self.e, self.even, -self.odd)

    def norm(self) -> RationalFraction:
        return self.even * self.even - self.odd * self.odd * self.e

    def inverse(self) -> "FunctionFieldElement":
        norm = self.norm()
        if norm.is_zero():
            msg = "Inverse of the zero function."
            raise ZeroDivisionError(msg)
        return FunctionFieldElement(self.e, self.even / norm, -self.odd / norm)

    def __truediv__(self, other: Any) -> "FunctionFieldElement":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: Any) -> "FunctionFieldElement":
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int) -> "FunctionFieldElement":
        if e < 0:
            return self.inverse() ** (-e)
        result, base = FunctionFieldElement.one(self.e), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement | int | Poly | RationalFraction):
            other = self._coerce(other)
        if not isinstance(other, FunctionFieldElement):
            return NotImplemented
        return self.even == other.even and self.odd == other.odd

    __hash__ = None  # type: ignore[assignment]

    def __call__(self, point: CurvePoint) -> FieldElement:
        """Value at an affine point; ZeroDivisionError at a pole of either part."""
        value = self.even(point.u)  # type: ignore[arg-type]
        if self.odd.is_zero():
            return value
        return value + point.v * self.odd(point.u)  # type: ignore[arg-type, operator]

    def to_laurent(self, chart: LocalExpansion) -> Laurent:
        """Expansion ``z**shift * series`` in the uniformizer of ``chart``."""
        parts = []
        if not self.even.is_zero():
            parts.append(_fraction_laurent(self.even, chart.u))
        if not self.odd.is_zero():
            series, shift = _fraction_laurent(self.odd, chart.u)
            parts.append((series * chart.v, shift))
        if not parts:
            return TruncatedSeries.zero(chart.u.field, chart.precision), 0
        total = parts[0]
        for part in parts[1:]:
            total = _laurent_add(total, part)
        return _normalized(total)

    def to_series(self, chart: LocalExpansion) -> TruncatedSeries:
        series, shift = self.to_laurent(chart)
        if shift < 0:
            msg = f"Pole of order {-shift} at {chart.point}."
            raise ZeroDivisionError(msg)
        return series.shift(shift) if shift else series

    def embed(self, target: FiniteField) -> "FunctionFieldElement":
        return FunctionFieldElement(self.e.embed(target), self.even.embed(target), self.odd.embed(target))

    def to_dict(self) -> dict[str, dict[str, list]]:
        return {"even": _fraction_dict(self.even), "odd": _fraction_dict(self.odd)}

    def __repr__(self) -> str:
        even, odd = self.even.format("u"), self.odd.format("u")
        if self.odd.is_zero():
            return even
        if self.even.is_zero():
            return f"v*({odd})"
        return f"{even} + v*({odd})"


def _fraction_laurent(f: RationalFraction, u: TruncatedSeries) -> Laurent:
    return laurent_div(f.num.compose_series(u), f.den.compose_series(u))


def _normalized(laurent: Laurent) -> Laurent:
    series, shift = laurent
    v = series.valuation()
    if v in (0, series.precision):
        return series, shift
    return series.divide_by_z(v), shift + v


def _laurent_add(a: Laurent, b: Laurent) -> Laurent:
    (sa, ka), (sb, kb) = a, b
    low = min(ka, kb)
    return sa.shift(ka - low) + sb.shift(kb - low), low


def laurent_agree(a: Laurent, b: Laurent) -> bool:
    """Equality of two Laurent expansions to their common precision."""
    (sa, ka), (sb, kb) = _normalized(a), _normalized(b)
    if sa.is_zero() or sb.is_zero():
        return sa.is_zero() and sb.is_zero()
    return ka == kb and sa.agrees_with(sb)


def _poly_list(poly: Poly) -> list:
    if poly.field.degree == 1:
        return poly.to_ints()
    return [[int(c) for c in coeff] for coeff in poly.coeffs]


def _fraction_dict(f: RationalFraction) -> dict[str, list]:
    return {"num": _poly_list(f.num), "den": _poly_list(f.den)}


def function_field_sqrt(f: FunctionFieldElement) -> FunctionFieldElement | None:
    """A square root of ``f`` in the function field, or None.

    For ``f = a + v b`` with ``b != 0`` the root ``c + v d`` has ``c^2 = (a +- sqrt(a^2 - E b^2))/2`` and
    ``d = b/(2c)``.
    """
    e = f.e
    if f.is_zero():
        return f
    if f.is_even():
        root = rational_sqrt(f.even)
        if root is not None:
            return FunctionFieldElement(e, root)
        root = rational_sqrt(f.even / e)
        return None if root is None else FunctionFieldElement(e, RationalFraction.constant(e.field, 0), root)
    norm_root = rational_sqrt(f.norm())
    if norm_root is None:
        return None
    half = f.field(2).inverse()
    for sign in (1, -1):
        c = rational_sqrt((f.even + norm_root * sign) * half)
        if c is None or c.is_zero():
            continue
        candidate = FunctionFieldElement(e, c, f.odd * half / c)
        if candidate * candidate == f:
            return candidate
    return None


def morphism_degree(f: FunctionFieldElement, trials: int = 3) -> int:
    """Degree of ``f`` as a map from the curve to the projective line.

    ``N(f - c)`` has degree ``deg f`` in u whenever no zero of ``f - c`` is a pole of its conjugate.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(101)
    >>> e = Poly.from_ints(k, [1, 0, 0, 0, 0, 1, 1])
    >>> morphism_degree(FunctionFieldElement.from_fraction(e, Poly.x(k)))
    2
    >>> morphism_degree(FunctionFieldElement.v(e))
    6

    """
    if f.is_even():
        return 2 * f.even.degree
    return max((f - c).norm().degree for c in range(trials))


# symmetric functions of the pair


def power_sums(s: FunctionFieldElement, p: FunctionFieldElement, n: int) -> list[FunctionFieldElement]:
    """``x1**k + x2**k`` for ``k = 0..n`` by Newton's identities."""
    sums = [FunctionFieldElement.from_fraction(s.e, 2), s]
    for _ in range(2, n + 1):
        sums.append(s * sums[-1] - p * sums[-2])
    return sums[: n + 1]


def symmetric_product(curve_p: CurveModel, s: FunctionFieldElement, p: FunctionFieldElement) -> FunctionFieldElement:
    """``F(x1) F(x2)`` written in ``s`` and ``p``, with ``F`` the sextic of C'."""
    coeffs = [curve_p.poly[j] for j in range(SEXTIC_DEGREE + 1)]
    sums = power_sums(s, p, SEXTIC_DEGREE)
    p_powers = [FunctionFieldElement.one(s.e)]
    for _ in range(SEXTIC_DEGREE):
        p_powers.append(p_powers[-1] * p)
    total = FunctionFieldElement.from_fraction(s.e, 0)
    for j, ej in enumerate(coeffs):
        if not ej:
            continue
        total = total + p_powers[j] * (ej * ej)
        for k in range(j + 1, SEXTIC_DEGREE + 1):
            if coeffs[k]:
                total = total + p_powers[j] * sums[k - j] * (ej * coeffs[k])
    return total


def symmetric_sum(curve_p: CurveModel, s: FunctionFieldElement, p: FunctionFieldElement) -> FunctionFieldElement:
    """``F(x1) + F(x2)`` written in ``s`` and ``p``."""
    sums = power_sums(s, p, SEXTIC_DEGREE)
    total = FunctionFieldElement.from_fraction(s.e, 0)
    for k in range(SEXTIC_DEGREE + 1):
        coeff = curve_p.poly[k]
        if coeff:
            total = total + sums[k] * coeff
    return total


# series of the lift


def _over(curve: CurveModel, field: FiniteField) -> CurveModel:
    return curve if curve.field == field else curve.embed(field)


def lift_series(lift: LocalLift) -> dict[str, Laurent]:
    """Laurent expansions of ``s, p, q, r`` and ``y1 + y2`` along the lift."""
    x1, x2, y1, y2 = lift.x1, lift.x2, lift.y1, lift.y2
    return {
        "s": (x1 + x2, 0),
        "p": (x1 * x2, 0),
        "q": (y1 * y2, 0),
        "r": laurent_div(y2 - y1, x2 - x1),
        "y": (y1 + y2, 0),
    }


def _match_sign(
    candidate: FunctionFieldElement, target: Laurent, chart: LocalExpansion, name: str
) -> FunctionFieldElement:
    for signed in (candidate, -candidate):
        if laurent_agree(signed.to_laurent(chart), target):
            return signed
    msg = f"Neither sign of the deduced {name} matches the series of the lift."
    raise SignMismatchError(msg)


def _pade_even(series: TruncatedSeries, degree: int, u0: FieldElement, name: str) -> RationalFraction:
    """Fraction ``g(u)`` of degree at most ``degree`` with ``series(z) = g(u0 + z^2)``."""
    if not series.subsample(2, 1).is_zero():
        msg = f"The series of {name} has odd terms at a Weierstrass base point."
        raise CandidateRejectedError(msg)
    halved = series.subsample(2)
    try:
        fraction = pade(halved, degree, degree)
    except NoSolutionError as error:
        msg = f"The series of {name} is not a fraction of degree {degree} in u."
        raise CandidateRejectedError(msg) from error
    if not fraction.to_series(halved.precision).agrees_with(halved):
        msg = f"The fraction found for {name} does not re-expand to its series."
        raise CandidateRejectedError(msg)
    return fraction.taylor_shift(-u0)


def _hermite_pade_part(
    series: TruncatedSeries, chart: LocalExpansion, e: Poly, degree: int, name: str
) -> FunctionFieldElement:
    """``(A + v B)/C`` with ``C f = A + v B``, ``deg C, deg A <= d`` and ``deg B <= d - 3``."""
    field = series.field
    n = series.precision
    one = TruncatedSeries.one(field, n)
    v = chart.v.truncate(n)
    columns, bounds = [series, -one], [degree, degree]
    if degree >= 3:  # noqa: PLR2004
        columns.append(-v)
        bounds.append(degree - 3)
    try:
        c, a, *rest = hermite_pade(columns, bounds)
    except NoSolutionError as error:
        msg = f"No relation of the prescribed degrees for {name}."
        raise CandidateRejectedError(msg) from error
    if c.is_zero():
        msg = f"The relation found for {name} has no denominator."
        raise CandidateRejectedError(msg)
    b = rest[0] if rest else Poly.zero(field)
    u0 = chart.point.u
    c, a, b = (poly.taylor_shift(-u0) for poly in (c, a, b))  # type: ignore[operator]
    return FunctionFieldElement(e, RationalFraction(a, c), RationalFraction(b, c))


def _pade_part(series: TruncatedSeries, degree: int, u0: FieldElement, name: str) -> RationalFraction:
    """Fraction ``g(u)`` of degree at most ``degree`` with ``series(z) = g(u0 + z)``."""
    try:
        fraction = pade(series, degree, degree)
    except NoSolutionError as error:
        msg = f"The series of {name} is not a fraction of degree {degree} in u."
        raise CandidateRejectedError(msg) from error
    return fraction.taylor_shift(-u0)


def _conjugate_part(
    series: TruncatedSeries, conjugate: TruncatedSeries, chart: LocalExpansion, e: Poly, degree: int, name: str
) -> FunctionFieldElement:
    """``X + v Y`` from ``f(u, v) + f(u, -v) = 2X(u)`` and ``f(u, v) - f(u, -v) = 2v Y(u)``.

    X has degree at most d and Y at most d + 3 as fractions in u.
    """
    half = series.field(2).inverse()
    u0 = chart.point.u
    x = _pade_part((series + conjugate) * half, degree, u0, f"the even part of {name}")  # type: ignore[arg-type]
    odd = (series - conjugate) * half / chart.v.truncate(series.precision)
    y = _pade_part(odd, degree + 3, u0, f"the odd part of {name}")  # type: ignore[arg-type]
    return FunctionFieldElement(e, x, y)


def reconstruct_sp(
    lift_p: LocalLift, bounds: DegreeBounds, lift_ip: LocalLift | None = None
) -> tuple[FunctionFieldElement, FunctionFieldElement]:
    """``s`` and ``p`` as functions on C from the series of a lift.

    At a Weierstrass base point ``u = u0 + z^2`` and s, p are even in z: Pade in ``z^2``. At a generic base point
    P the lift at ``i(P)``, in the uniformizer sent to z by the involution, gives the series of ``s(u, -v)``: the
    even and odd parts of s follow by Pade on the half sum and the half difference divided by v. Without it both
    parts are found at once from a Hermite-Pade relation, at a higher precision.

    Raises
    ------
    PrecisionTooLowError
        If a lift is shorter than the bounds require.

    CandidateRejectedError
        If the series do not come from fractions of the prescribed degrees.

    """
    chart = lift_p.chart
    generic = chart.kind != UNIFORMIZER_WEIERSTRASS
    lifts = [lift_p] if lift_ip is None or not generic else [lift_p, lift_ip]
    needed = bounds.precision_at(chart.kind, conjugate=len(lifts) == 2)  # noqa: PLR2004
    for lift in lifts:
        if lift.precision < needed:
            msg = f"Lift known to O(z^{lift.precision}), {needed} terms are needed for degrees {bounds.as_dict()}."
            raise PrecisionTooLowError(msg)
        if lift is not lift_p and lift.chart.point != chart.point.involution():
            msg = f"The second lift is based at {lift.chart.point}, not at the conjugate of {chart.point}."
            raise ValueError(msg)

    e = lift_p.curve.poly
    series = lift_series(lift_p)
    conjugate = lift_series(lifts[1]) if len(lifts) == 2 else None  # noqa: PLR2004
    out = []
    for name, degree in (("s", bounds.ds), ("p", bounds.dp)):
        value = series[name][0]
        if not generic:
            f = FunctionFieldElement(e, _pade_even(value, degree // 2, chart.point.u, name))  # type: ignore[arg-type]
        elif conjugate is not None:
            f = _conjugate_part(value, conjugate[name][0], chart, e, degree, name)
        else:
            f = _hermite_pade_part(value, chart, e, degree, name)
        if generic and not laurent_agree(f.to_laurent(chart), series[name]):
            msg = f"The function found for {name} does not re-expand to the series of the lift."
            raise CandidateRejectedError(msg)
        found = morphism_degree(f)
        if found > degree:
            msg = f"{name} has degree {found} > {degree}."
            raise CandidateRejectedError(msg)
        LOGGER.debug("%s reconstructed, degree %d (bound %d)", name, found, degree)
        out.append(f)
    s, p = out
    return s, p


def deduce_qr(
    s: FunctionFieldElement, p: FunctionFieldElement, lift_p: LocalLift, curve_p: CurveModel
) -> tuple[FunctionFieldElement, FunctionFieldElement]:
    """``q`` and ``r`` from ``q^2 = F(x1) F(x2)`` and ``r^2 (s^2 - 4p) = F(x1) + F(x2) - 2q``.

    Signs are fixed by the series ``y1 y2`` and ``(y2 - y1)/(x2 - x1)`` of the lift.

    Raises
    ------
    NotAPerfectSquareError
        If either right-hand side is not a square in the function field.

    SignMismatchError
        If neither root matches the lift.

    """
    curve_p = _over(curve_p, lift_p.field)
    chart = lift_p.chart
    series = lift_series(lift_p)

    q = function_field_sqrt(symmetric_product(curve_p, s, p))
    if q is None:
        msg = "F(x1) F(x2) is not a square in the function field of C."
        raise NotAPerfectSquareError(msg)
    q = _match_sign(q, series["q"], chart, "q")

    r = function_field_sqrt((symmetric_sum(curve_p, s, p) - q * 2) / (s * s - p * 4))
    if r is None:
        msg = "r^2 = (F(x1) + F(x2) - 2q)/(s^2 - 4p) is not a square in the function field of C."
        raise NotAPerfectSquareError(msg)
    r = _match_sign(r, series["r"], chart, "r")
    return q, r


def line_intercept(
    s: FunctionFieldElement,
    p: FunctionFieldElement,
    q: FunctionFieldElement,
    r: FunctionFieldElement,
    lift_p: LocalLift,
    curve_p: CurveModel,
) -> FunctionFieldElement:
    """``t = (x2 y1 - x1 y2)/(x2 - x1)``, from ``(y1 + y2)^2 = F(x1) + F(x2) + 2q`` and ``y1 + y2 = r s + 2t``.

    Then ``y_i = r x_i + t`` and ``q = t^2 + r^2 p + s r t``.
    """
    curve_p = _over(curve_p, lift_p.field)
    y = function_field_sqrt(symmetric_sum(curve_p, s, p) + q * 2)
    if y is None:
        msg = "(y1 + y2)^2 is not a square in the function field of C."
        raise NotAPerfectSquareError(msg)
    y = _match_sign(y, lift_series(lift_p)["y"], lift_p.chart, "y1 + y2")
    return (y - r * s) * lift_p.field(2).inverse()


def direct_pade_qr(lift_p: LocalLift, bounds: DegreeBounds) -> tuple[FunctionFieldElement, FunctionFieldElement]:
    """``q`` and ``r`` by Pade on their own series; Weierstrass base points only.

    ``q`` is even in z; ``r = v g(u)`` where ``t g(u0 + t)`` is regular at 0.
    """
    chart = lift_p.chart
    if chart.kind != UNIFORMIZER_WEIERSTRASS:
        msg = "Direct reconstruction of q and r needs a Weierstrass base point."
        raise ValueError(msg)
    if lift_p.precision < bounds.direct_precision:
        msg = f"Lift known to O(z^{lift_p.precision}), {bounds.direct_precision} terms are needed for q and r."
        raise PrecisionTooLowError(msg)
    e = lift_p.curve.poly
    field = lift_p.field
    u0 = chart.point.u
    q = FunctionFieldElement(e, _pade_even(lift_p.y1 * lift_p.y2, bounds.dq // 2, u0, "q"))  # type: ignore[arg-type]

    # r z = (y2 - y1)/((x2 - x1)/z), and v = z w(z^2)
    dx = (lift_p.x2 - lift_p.x1).divide_by_z(1)
    w = chart.v.divide_by_z(1)
    h = (lift_p.y2 - lift_p.y1) * dx.inverse() * w.inverse()
    h_u = _pade_even(h, bounds.dr // 2 + 1, u0, "r")  # type: ignore[arg-type]
    g = h_u / RationalFraction(Poly.from_elements(field, [-u0, 1]))  # type: ignore[list-item, operator]
    return q, FunctionFieldElement(e, RationalFraction.constant(field, 0), g)


# the representation and its checks


@dataclass(frozen=True)
class RationalRepresentation:
    """The functions ``s, p, q, r`` and the intercept ``t`` of an isogeny at a base point, over the working field."""

    s: FunctionFieldElement
    p: FunctionFieldElement
    q: FunctionFieldElement
    r: FunctionFieldElement
    t: FunctionFieldElement
    base: BasePoint
    curve: CurveModel
    curve_p: CurveModel
    dphi: Raw
    bounds: DegreeBounds
    precision: int

    @property
    def field(self) -> FiniteField:
        return self.base.field

    def functions(self) -> dict[str, FunctionFieldElement]:
        return {"s": self.s, "p": self.p, "q": self.q, "r": self.r, "t": self.t}

    def degrees(self) -> dict[str, int]:
        return {name: morphism_degree(f) for name, f in self.functions().items() if name != "t"}

    def image_pair(self, point: CurvePoint) -> tuple[CurvePoint, CurvePoint]:
        """The two points of C' attached to ``point``, over a quadratic extension if ``X^2 - s X + p`` is irreducible.

        Raises
        ------
        NonGenericPositionError
            If the two abscissae coincide.

        ZeroDivisionError
            At a pole of s, p, r or t.

        """
        s, p, r, t = (f(point) for f in (self.s, self.p, self.r, self.t))
        disc = s * s - p * 4
        if not disc:
            msg = f"The image of {point} has a double abscissa."
            raise NonGenericPositionError(msg)
        root = disc.sqrt()
        if root is None:
            _, root = adjoin_sqrt(disc.field, disc)
        half = root.field(2).inverse()
        x1, x2 = (s + root) * half, (s - root) * half
        return CurvePoint(x1, r * x1 + t), CurvePoint(x2, r * x2 + t)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "s": _fraction_dict(self.s.even),
            "s_odd": _fraction_dict(self.s.odd),
            "p": _fraction_dict(self.p.even),
            "p_odd": _fraction_dict(self.p.odd),
        }
        for name in ("q", "r", "t"):
            f = self.functions()[name]
            out[f"{name}_even"] = _fraction_dict(f.even)
            out[f"{name}_odd"] = _fraction_dict(f.odd)
        out["degrees"] = self.degrees()
        out["precision"] = self.precision
        return out


def reconstruct(
    lift_p: LocalLift, curve_p: CurveModel, bounds: DegreeBounds, lift_ip: LocalLift | None = None
) -> RationalRepresentation:
    """Rational representation from a lift: s and p by reconstruction, then q, r and t by deduction.

    With the ``direct_pade_qr`` option set and a Weierstrass base point, q and r are also reconstructed from their
    own series and must agree with the deduced ones.
    """
    curve_p = _over(curve_p, lift_p.field)
    s, p = reconstruct_sp(lift_p, bounds, lift_ip)
    q, r = deduce_qr(s, p, lift_p, curve_p)
    if option_manager.get_option("direct_pade_qr") and lift_p.chart.kind == UNIFORMIZER_WEIERSTRASS:
        direct_q, direct_r = direct_pade_qr(lift_p, bounds)
        if direct_q != q or direct_r != r:
            msg = "q and r from their own series disagree with the deduced ones."
            raise CandidateRejectedError(msg)
        LOGGER.debug("direct reconstruction of q and r agrees")
    t = line_intercept(s, p, q, r, lift_p, curve_p)
    base, curve, dphi = lift_p.base, lift_p.curve, lift_p.dphi
    return RationalRepresentation(s, p, q, r, t, base, curve, curve_p, dphi, bounds, lift_p.precision)


@dataclass
class VerificationReport:
    """Outcome of each check on a rational representation, with a short note per check."""

    checks: dict[str, bool] = dataclass_field(default_factory=dict)
    details: dict[str, str] = dataclass_field(default_factory=dict)

    def record(self, name: str, ok: bool, detail: str = "") -> None:  # noqa: FBT001
        self.checks[name] = ok
        if detail:
            self.details[name] = detail

    @property
    def passed(self) -> bool:
        return bool(self.checks) and all(self.checks.values())

    @property
    def failures(self) -> list[str]:
        return [name for name, ok in self.checks.items() if not ok]

    def to_dict(self) -> dict[str, Any]:
        return {"passed": self.passed, "checks": dict(self.checks), "details": dict(self.details)}


def _differential_rows(xs: list[TruncatedSeries], ys: list[TruncatedSeries]) -> tuple[TruncatedSeries, TruncatedSeries]:
    dxs = [x.derivative() for x in xs]
    inv_ys = [y.truncate(y.precision - 1).inverse() for y in ys]
    first = xs[0] * dxs[0] * inv_ys[0] + xs[1] * dxs[1] * inv_ys[1]
    second = dxs[0] * inv_ys[0] + dxs[1] * inv_ys[1]
    return first, second


def _differential_check(rep: RationalRepresentation, dphi: Raw, rng: np.random.Generator) -> tuple[bool, str]:
    """Re-expand the pair at a second point of C and check the differential system there."""
    field = rep.field
    (m11, m12), (m21, m22) = ([field.element(x) for x in row] for row in dphi)
    half = field(2).inverse()
    trials = int(option_manager.get_option("base_point_trials") or 64)
    for _ in range(trials):
        try:
            point = random_point(rep.curve, rng)
            s, p, r, t = (f(point) for f in (rep.s, rep.p, rep.r, rep.t))
        except (ZeroDivisionError, NoGenericPointError):
            continue
        disc = s * s - p * 4
        root = disc.sqrt() if disc else None
        if root is None or not all(r * x + t for x in ((s + root) * half, (s - root) * half)):
            continue

        chart = local_expansion(rep.curve, point, rep.precision)
        ss, pp, rr, tt = (f.to_series(chart) for f in (rep.s, rep.p, rep.r, rep.t))
        sqrt_disc = (ss * ss - pp * 4).sqrt(root)
        xs = [(ss + sqrt_disc) * half, (ss - sqrt_disc) * half]
        ys = [rr * x + tt for x in xs]
        first, second = _differential_rows(xs, ys)
        u, d = chart.u, chart.d
        ok = first.agrees_with((u * m11 + m12) * d) and second.agrees_with((u * m21 + m22) * d)
        ok = ok and all((y * y).agrees_with(rep.curve_p.poly.compose_series(x)) for x, y in zip(xs, ys, strict=True))
        return ok, f"re-expanded at {point} to O(z^{first.precision})"
    return False, f"no point with a split image pair in {trials} trials"


def _points_check(rep: RationalRepresentation, rng: np.random.Generator, n_points: int) -> tuple[bool, str]:
    checked = 0
    for _ in range(4 * n_points):
        if checked >= n_points:
            break
        try:
            point = random_point(rep.curve, rng)
            pair = rep.image_pair(point)
            q = rep.q(point)
        except (ZeroDivisionError, NonGenericPositionError, NoGenericPointError):
            continue
        checked += 1
        if not all(rep.curve_p.contains(image) for image in pair):
            return False, f"the image of {point} is not on C'"
        if q != pair[0].v * pair[1].v:  # type: ignore[operator]
            return False, f"q({point}) differs from y1 y2"
    return checked > 0, f"{checked} points"


def verify_rational_rep(
    rep: RationalRepresentation, dphi: Raw | None = None, rng: np.random.Generator | None = None
) -> VerificationReport:
    """Check a rational representation; failures are listed in the report, never raised.

    Checks ``rr1`` (``q^2 = F(x1) F(x2)``), ``rr2`` (``r^2 (s^2 - 4p) = F(x1) + F(x2) - 2q``), ``intercept``
    (``q = t^2 + r^2 p + s r t``), ``degrees``, ``differential`` (the system at a second point of C) and ``points``
    (images of random points lie on C').
    """
    dphi = rep.dphi if dphi is None else dphi
    if rng is None:
        rng = np.random.default_rng(int(option_manager.get_option("seed") or 0))
    n_points = int(option_manager.get_option("verification_points") or 8)
    s, p, q, r, t = rep.s, rep.p, rep.q, rep.r, rep.t
    report = VerificationReport()

    report.record("rr1", q * q == symmetric_product(rep.curve_p, s, p))
    report.record("rr2", r * r * (s * s - p * 4) == symmetric_sum(rep.curve_p, s, p) - q * 2)
    report.record("intercept", q == t * t + r * r * p + s * r * t)

    degrees = rep.degrees()
    bounds = rep.bounds.as_dict()
    over = {name: degree for name, degree in degrees.items() if degree > bounds[name]}
    report.record("degrees", not over, f"{degrees} within {bounds}" if not over else f"above the bounds: {over}")

    report.record("differential", *_differential_check(rep, dphi, rng))
    report.record("points", *_points_check(rep, rng, n_points))
    LOGGER.debug("verification %s", report.checks)
    return report
