"""Jacobian arithmetic in Mumford representation, used to check rational representations of ``[m]``.

Divisor classes live on a quintic model ``y^2 = f(x)`` of C, obtained by sending a rational Weierstrass point to
infinity. A reduced class is ``(a, b)`` with a monic, ``deg b < deg a <= 2`` and ``a | b^2 - f``; it stands for
``R1 + R2 - 2 oo`` where ``R1, R2`` are the points with ``a(x) = 0`` and ``y = b(x)``.
"""

import logging
from dataclasses import dataclass

from isogeny2.core.errors import NonGenericPositionError, PointAtInfinityError
from isogeny2.core.names import GENUS
from isogeny2.curves import CurveModel, CurvePoint, to_odd_model, transform_point, weierstrass_points
from isogeny2.field import FieldElement, FiniteField, Raw, adjoin_sqrt
from isogeny2.series import Poly

logging.basicConfig(level=logging.INFO)
LOGGER = logging.getLogger(__name__)
LOGGER.setLevel(logging.INFO)


def _xgcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """``(g, s, t)`` with ``g = s a + t b`` the monic gcd."""
    field = a.field
    r0, r1 = a, b
    s0, s1 = Poly.constant(field, 1), Poly.zero(field)
    t0, t1 = Poly.zero(field), Poly.constant(field, 1)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero():
        return r0, s0, t0
    lead_inv = field.inv(r0.leading)
    return r0.scale(lead_inv), s0.scale(lead_inv), t0.scale(lead_inv)


@dataclass(frozen=True)
class MumfordDivisor:
    """Reduced divisor class ``(a, b)`` on ``y^2 = f(x)``, ``deg f = 5``.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(101)
    >>> f = Poly.from_ints(k, [1, 0, 0, 0, 0, 1])
    >>> D = MumfordDivisor.from_point(f, CurvePoint(k(0), k(1)))
    >>> D
    MumfordDivisor(a=x, b=1)
    >>> (D + MumfordDivisor.identity(f)) == D, (D + (-D)).is_identity()
    (True, True)

    """

    a: Poly
    b: Poly
    f: Poly

    @classmethod
    def identity(cls, f: Poly) -> "MumfordDivisor":
        return cls(Poly.constant(f.field, 1), Poly.zero(f.field), f)

    @classmethod
    def from_point(cls, f: Poly, point: CurvePoint) -> "MumfordDivisor":
        """The class of ``R - oo``."""
        if point.at_infinity:
            return cls.identity(f)
        field = f.field
        a = Poly.from_elements(field, [-point.u, 1])  # type: ignore[operator]
        return cls(a, Poly.constant(field, point.v), f)  # type: ignore[arg-type]

    @classmethod
    def from_points(cls, f: Poly, points: list[CurvePoint]) -> "MumfordDivisor":
        """The class of ``sum(R) - n oo``."""
        total = cls.identity(f)
        for point in points:
            total = cantor_add(total, cls.from_point(f, point))
        return total

    @property
    def field(self) -> FiniteField:
        return self.f.field

    @property
    def degree(self) -> int:
        return self.a.degree

    def is_identity(self) -> bool:
        return self.a.degree == 0

    def is_valid(self) -> bool:
        """``a`` monic of degree at most the genus with ``deg b < deg a`` and ``a | b^2 - f``."""
        monic = self.field.equal(self.a.leading, self.field.ones())
        return (
            monic
            and self.a.degree <= GENUS
            and self.b.degree < self.a.degree
            and ((self.b * self.b - self.f) % self.a).is_zero()
        )

    def __add__(self, other: "MumfordDivisor") -> "MumfordDivisor":
        return cantor_add(self, other)

    def __neg__(self) -> "MumfordDivisor":
        return negate(self)

    def __sub__(self, other: "MumfordDivisor") -> "MumfordDivisor":
        return cantor_add(self, negate(other))

    def __mul__(self, m: int) -> "MumfordDivisor":
        return scalar_mul(self, m)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"MumfordDivisor(a={self.a}, b={self.b})"


def _reduce(a: Poly, b: Poly, f: Poly) -> MumfordDivisor:
    while a.degree > GENUS:
        a = (f - b * b) // a
        b = (-b) % a
    a = a.monic()
    return MumfordDivisor(a, b % a, f)


def cantor_add(d1: MumfordDivisor, d2: MumfordDivisor) -> MumfordDivisor:
    """Sum of two classes by composition and reduction."""
    f = d1.f
    d0, e1, e2 = _xgcd(d1.a, d2.a)
    d, c1, c2 = _xgcd(d0, d1.b + d2.b)
    s1, s2, s3 = c1 * e1, c1 * e2, c2
    a = (d1.a * d2.a) // (d * d)
    b = ((s1 * d1.a * d2.b + s2 * d2.a * d1.b + s3 * (d1.b * d2.b + f)) // d) % a
    return _reduce(a, b, f)


def negate(d: MumfordDivisor) -> MumfordDivisor:
    return MumfordDivisor(d.a, (-d.b) % d.a, d.f)


def scalar_mul(d: MumfordDivisor, m: int) -> MumfordDivisor:
    """``m d`` by double-and-add."""
    if m < 0:
        return scalar_mul(negate(d), -m)
    result, base = MumfordDivisor.identity(d.f), d
    while m:
        if m & 1:
            result = cantor_add(result, base)
        base = cantor_add(base, base)
        m >>= 1
    return result


@dataclass(frozen=True)
class OddModel:
    """Quintic model of a sextic curve C, with the rational Weierstrass point ``(e, 0)`` sent to infinity."""

    curve: CurveModel
    odd: CurveModel
    r: Raw
    e: FieldElement

    @classmethod
    def from_curve(cls, curve: CurveModel, e: FieldElement | None = None) -> "OddModel":
        if e is None:
            roots = weierstrass_points(curve)
            if not roots:
                msg = f"{curve} has no rational Weierstrass point to send to infinity."
                raise ValueError(msg)
            e = roots[0].u
        odd, r = to_odd_model(curve, e)  # type: ignore[arg-type]
        return cls(curve, odd, r, e)  # type: ignore[arg-type]

    @property
    def f(self) -> Poly:
        return self.odd.poly

    def to_odd(self, point: CurvePoint) -> CurvePoint:
        return transform_point(point, self.r)

    def from_odd(self, point: CurvePoint) -> CurvePoint:
        """``(x, y) -> (e + 1/x, -y/x^3)``."""
        x, y = point.u, point.v
        if x is None or not x:
            msg = f"{point} of the quintic model lies over infinity on C."
            raise PointAtInfinityError(msg)
        return CurvePoint(self.e + x.inverse(), -y / x**3)  # type: ignore[operator]

    def divisor(self, point: CurvePoint) -> MumfordDivisor:
        """The class of ``R - oo`` for a point R of C."""
        return MumfordDivisor.from_point(self.f, self.to_odd(point))

    def pair(self, d: MumfordDivisor) -> tuple[CurvePoint, CurvePoint]:
        """The two points of C whose sum is ``d + 2 oo``, over a quadratic extension if needed.

        Raises
        ------
        NonGenericPositionError
            Unless ``a`` has two distinct roots, neither lying over infinity on C.

        """
        if d.degree != GENUS:
            msg = f"{d} has degree {d.degree}, not {GENUS}."
            raise NonGenericPositionError(msg)
        a1, a0 = d.a[1], d.a[0]
        disc = a1 * a1 - a0 * 4
        if not disc:
            msg = f"{d} has a double point."
            raise NonGenericPositionError(msg)
        root = disc.sqrt()
        if root is None:
            _, root = adjoin_sqrt(disc.field, disc)
        half = root.field(2).inverse()
        xs = ((root - a1) * half, (-root - a1) * half)
        try:
            return tuple(self.from_odd(CurvePoint(x, d.b(x))) for x in xs)  # type: ignore[return-value]
        except PointAtInfinityError as error:
            raise NonGenericPositionError(str(error)) from error


def oracle_pair(
    curve: CurveModel, base: CurvePoint, m: int, point: CurvePoint, model: OddModel | None = None
) -> tuple[CurvePoint, CurvePoint]:
    """The pair of points of C representing ``m [point - base]``."""
    model = OddModel.from_curve(curve) if model is None else model
    d = scalar_mul(cantor_add(model.divisor(point), negate(model.divisor(base))), m)
    return model.pair(d)


def oracle_rational_rep(
    curve: CurveModel, base: CurvePoint, m: int, point: CurvePoint, model: OddModel | None = None
) -> tuple[FieldElement, FieldElement, FieldElement, FieldElement]:
    """``(x1 + x2, x1 x2, y1 y2, (y2 - y1)/(x2 - x1))`` for the pair of ``m [point - base]``.

    Raises
    ------
    NonGenericPositionError
        When the class is not a pair of affine points with distinct abscissae; resample the point.

    """
    (x1, y1), (x2, y2) = ((r.u, r.v) for r in oracle_pair(curve, base, m, point, model))
    return x1 + x2, x1 * x2, y1 * y2, (y2 - y1) / (x2 - x1)  # type: ignore[operator, return-value]


def conjugate_pair(curve: CurveModel, base: CurvePoint, m: int) -> tuple[CurvePoint, CurvePoint] | None:
    """The pair of ``m [i(P) - P]``: where the lift of ``R -> m [R - P]`` at ``i(P)`` starts.

    None when C has no rational Weierstrass point, or when the class is not a pair of distinct affine
    non-Weierstrass points over the field of C.

    Examples
    --------
    >>> import numpy as np
    >>> from isogeny2.core.random import random_curve
    >>> from isogeny2.curves import random_point
    >>> curve = random_curve(10007, seed=4, weierstrass=True)
    >>> P = random_point(curve, np.random.default_rng(0))
    >>> conjugate_pair(curve, P, 1) is None
    True

    """
    if not weierstrass_points(curve):
        return None
    try:
        pair = oracle_pair(curve, base, m, base.involution())
    except NonGenericPositionError:
        return None
    if any(point.u.field != curve.field or not point.v for point in pair):  # type: ignore[union-attr]
        return None
    return pair
