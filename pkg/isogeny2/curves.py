"""Hyperelliptic curves ``v^2 = E(u)`` of genus 2, their changes of variables and local expansions."""

import logging
from collections.abc import Sequence
from dataclasses import dataclass
from math import factorial

import numpy as np

from isogeny2.core import linalg
from isogeny2.core.errors import (
    ExtensionFieldReconstructionError,
    NoGenericPointError,
    NonGenericInvariantsError,
    NonSquareBranchError,
    PointAtInfinityError,
    SingularCurveError,
)
from isogeny2.core.names import SEXTIC_DEGREE, UNIFORMIZER_GENERIC, UNIFORMIZER_WEIERSTRASS, VALID_UNIFORMIZER_TYPE
from isogeny2.core.options import option_manager
from isogeny2.covariants import (
    BinaryForm,
    Invariants,
    clebsch_from_igusa,
    gl2_action,
    igusa_clebsch,
    igusa_invariants,
    mestre_conic_and_cubic,
)
from isogeny2.field import FieldElement, FiniteField, Raw, adjoin_sqrt
from isogeny2.series import Poly, TruncatedSeries, poly_roots

logging.basicConfig(level=logging.INFO)
LOGGER = logging.getLogger(__name__)
LOGGER.setLevel(logging.INFO)


@dataclass(frozen=True)
class CurvePoint:
    """Affine point ``(u, v)``; ``u = v = None`` stands for a point at infinity."""

    u: FieldElement | None
    v: FieldElement | None

    @classmethod
    def infinity(cls) -> "CurvePoint":
        return cls(None, None)

    @property
    def at_infinity(self) -> bool:
        return self.u is None

    @property
    def is_weierstrass(self) -> bool:
        return self.v is not None and not self.v

    def involution(self) -> "CurvePoint":
        return self if self.v is None else CurvePoint(self.u, -self.v)

    def __repr__(self) -> str:
        return "(infinity)" if self.at_infinity else f"({self.u}, {self.v})"


class CurveModel:
    """Genus-2 curve ``v^2 = E(u)`` with ``deg E`` in {5, 6}; quintics are sextics with ``a6 = 0``.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(56311)
    >>> C = CurveModel.from_ints(k, [11111, 54150, 0, 102, 0, 34724, 13425])
    >>> C.invariants()
    (14030, 9041, 56122)
    >>> CurveModel.from_ints(k, [0, 0, 1, 0, 0, 0, 1])
    Traceback (most recent call last):
    ...
    isogeny2.core.errors.SingularCurveError: The sextic x^6 + x^2 has a repeated root (I10 = 0).

    """

    __slots__ = ("sextic",)

    def __init__(self, sextic: BinaryForm) -> None:
        if sextic.order != SEXTIC_DEGREE:
            sextic = BinaryForm.from_poly(sextic.to_poly(), SEXTIC_DEGREE)
        if not igusa_clebsch(sextic)[3]:
            msg = f"The sextic {sextic.to_poly()} has a repeated root (I10 = 0)."
            raise SingularCurveError(msg)
        self.sextic = sextic

    @classmethod
    def from_ints(cls, field: FiniteField, coeffs: Sequence[int]) -> "CurveModel":
        return cls(BinaryForm.from_ints(field, coeffs))

    @classmethod
    def from_elements(cls, field: FiniteField, coeffs: Sequence[FieldElement | int]) -> "CurveModel":
        return cls(BinaryForm.from_elements(field, coeffs))

    @property
    def field(self) -> FiniteField:
        return self.sextic.field

    @property
    def poly(self) -> Poly:
        return self.sextic.to_poly()

    @property
    def degree(self) -> int:
        return self.poly.degree

    def invariants(self) -> Invariants:
        return igusa_invariants(self.sextic)

    def contains(self, point: CurvePoint) -> bool:
        if point.at_infinity:
            return True
        return point.v * point.v == self.poly(point.u)  # type: ignore[operator]

    def embed(self, target: FiniteField) -> "CurveModel":
        return CurveModel(self.sextic.embed(target))

    def coefficients(self) -> list[list[int]]:
        return [[int(c) for c in coeff] for coeff in self.sextic.coeffs]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CurveModel):
            return NotImplemented
        return self.sextic == other.sextic

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"v^2 = {self.poly.format('u')}"


def gl2_transform(curve: CurveModel, r: Raw) -> tuple[CurveModel, Raw]:
    """Change of variables by ``r = [[a, b], [c, d]]``.

    The new model is ``E_new(x) = det(r)^-2 (b x + d)^6 E((a x + c)/(b x + d))``; a point ``(x, y)`` on it maps to
    ``((a x + c)/(b x + d), det(r) y/(b x + d)^3)`` on the old one. Tangent matrices with source the new model are
    obtained by multiplying on the right by the returned factor ``r^t``.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(56311)
    >>> C = CurveModel.from_ints(k, [11111, 54150, 0, 102, 0, 34724, 13425])
    >>> new, factor = gl2_transform(C, linalg.matrix(k, [[44206, 0], [18649, 7615]]))
    >>> new
    v^2 = 33461*u^6 + 7399*u^5 + 16387*u^4 + 34825*u^3 + 14713*u^2 + u
    >>> linalg.to_ints(factor)
    [[44206, 18649], [0, 7615]]

    """
    field = curve.field
    if not np.any(linalg.det(field, r)):
        msg = "Change of variables by a singular matrix."
        raise ValueError(msg)
    return CurveModel(gl2_action(curve.sextic, r)), linalg.transpose(r)


def transform_point(point: CurvePoint, r: Raw) -> CurvePoint:
    """Image on the model ``gl2_transform(C, r)`` of an affine point of C."""
    if point.at_infinity:
        msg = "Points at infinity are not transported."
        raise PointAtInfinityError(msg)
    field = point.u.field  # type: ignore[union-attr]
    (a, b), (c, d) = (tuple(field.element(x) for x in row) for row in r)
    denominator = a - b * point.u
    if not denominator:
        msg = f"{point} is sent to infinity."
        raise PointAtInfinityError(msg)
    x = (d * point.u - c) / denominator
    y = point.v * (b * x + d) ** 3 / (a * d - b * c)  # type: ignore[operator]
    return CurvePoint(x, y)


def move_weierstrass_to_origin(curve: CurveModel, u0: FieldElement) -> tuple[CurveModel, Raw]:
    """Move the Weierstrass point ``(u0, 0)`` to ``(0, 0)`` with linear coefficient 1.

    Uses ``r = [[E'(u0), 0], [u0, 1]]``; returns the new model and r.
    """
    field = curve.field
    slope = curve.poly.derivative()(u0)
    if curve.poly(u0) or not slope:
        msg = f"{u0} is not a simple root of E."
        raise ValueError(msg)
    r = linalg.matrix(field, [[slope, 0], [u0, 1]])
    return gl2_transform(curve, r)[0], r


def to_odd_model(curve: CurveModel, e: FieldElement) -> tuple[CurveModel, Raw]:
    """Send the Weierstrass point ``(e, 0)`` to infinity, giving a quintic model.

    With ``r = [[e, 1], [1, 0]]`` a point ``(x, y)`` of C goes to ``(1/(x - e), -y/(x - e)^3)``.
    """
    field = curve.field
    if curve.poly(e):
        msg = f"{e} is not a root of E."
        raise ValueError(msg)
    r = linalg.matrix(field, [[e, 1], [1, 0]])
    return gl2_transform(curve, r)[0], r


def weierstrass_points(curve: CurveModel, seed: int | None = None) -> list[CurvePoint]:
    """Affine Weierstrass points defined over the curve's field, sorted by u."""
    seed = int(option_manager.get_option("seed") or 0) if seed is None else seed
    field = curve.field
    zero = field(0)
    return [CurvePoint(field.element(root), zero) for root in poly_roots(curve.poly, seed)]


def random_point(curve: CurveModel, rng: np.random.Generator, trials: int = 256) -> CurvePoint:
    """Random affine non-Weierstrass point with the canonical square root as v."""
    field = curve.field
    for _ in range(trials):
        u = field.random_element(rng)
        value = curve.poly(u)
        if value and value.is_square():
            return CurvePoint(u, value.sqrt())
    msg = f"No affine point found on {curve} after {trials} trials."
    raise NoGenericPointError(msg)


def mestre_reconstruct(j: Sequence[FieldElement], seed: int | None = None) -> CurveModel:
    """A curve with Igusa invariants ``j``, by Mestre's conic and cubic.

    The conic point is searched on random lines; the curve is the cubic restricted to the rational
    parametrization of the conic through it.

    Raises
    ------
    NonGenericInvariantsError
        If ``j3 = 0`` or the conic is degenerate (extra automorphisms).

    ExtensionFieldReconstructionError
        If the invariants live in a proper extension of the prime field.

    """
    seed = int(option_manager.get_option("seed") or 0) if seed is None else seed
    trials = int(option_manager.get_option("conic_point_trials") or 64)
    field = j[0].field
    if field.degree != 1:
        msg = "Mestre reconstruction is implemented over prime fields."
        raise ExtensionFieldReconstructionError(msg)
    clebsch = clebsch_from_igusa(j)
    conic, cubic = mestre_conic_and_cubic(clebsch, seed)
    if not np.any(linalg.det(field, conic)):
        msg = "Mestre's conic is degenerate: the invariants have extra automorphisms."
        raise NonGenericInvariantsError(msg)

    rng = np.random.default_rng(seed)
    target = tuple(j)
    for _ in range(trials):
        point = _conic_point(field, conic, rng)
        if point is None:
            continue
        sextic = _cubic_on_conic(field, conic, cubic, point, rng)
        if sextic is None:
            continue
        try:
            curve = CurveModel(sextic)
        except SingularCurveError:
            continue
        if curve.invariants() == target:
            LOGGER.debug("mestre: %s", curve)
            return curve
    msg = f"No curve with invariants {target} found after {trials} conic points."
    raise NonGenericInvariantsError(msg)


def _bilinear(field: FiniteField, conic: Raw, a: Raw, b: Raw) -> Raw:
    return field.sum(field.mul(a, linalg.matmul(field, conic, b)))


def _conic_point(field: FiniteField, conic: Raw, rng: np.random.Generator) -> Raw | None:
    """Intersect a random line with the conic; None when the intersection is not rational."""
    base = field.random_raw(rng, (3,))
    direction = field.random_raw(rng, (3,))
    qa = _bilinear(field, conic, direction, direction)
    qb = _bilinear(field, conic, base, direction)
    qc = _bilinear(field, conic, base, base)
    if not np.any(qa):
        return None
    disc = field.sub(field.mul(qb, qb), field.mul(qa, qc))
    root = field.sqrt_raw(disc)
    if root is None:
        return None
    s = field.div(field.sub(root, qb), qa)
    point = field.add(base, field.mul(np.broadcast_to(s, direction.shape), direction))
    return point if np.any(point) else None


def _cubic_on_conic(
    field: FiniteField,
    conic: Raw,
    cubic: dict[tuple[int, int, int], FieldElement],
    point: Raw,
    rng: np.random.Generator,
) -> BinaryForm | None:
    # lines through the point with direction w(t) = w0 + t w1 meet the conic again at L(w) P - 2 B(P, w) w
    w0 = field.random_raw(rng, (3,))
    w1 = field.random_raw(rng, (3,))
    w = [Poly(field, np.stack([w0[i], w1[i]])) for i in range(3)]
    p = [Poly.constant(field, point[i]) for i in range(3)]
    a = [[field.element(conic[i, k]) for k in range(3)] for i in range(3)]
    quadratic = sum((w[i] * w[k] * a[i][k] for i in range(3) for k in range(3)), Poly.zero(field))
    bilinear = sum((p[i] * w[k] * a[i][k] for i in range(3) for k in range(3)), Poly.zero(field))
    c = [quadratic * p[i] - bilinear * w[i] * 2 for i in range(3)]
    if all(ci.degree < 1 for ci in c):
        return None
    total = Poly.zero(field)
    for (i, k, m), value in cubic.items():
        multiplicity = factorial(3) // np.prod([factorial((i, k, m).count(x)) for x in set((i, k, m))])
        total = total + c[i] * c[k] * c[m] * (value * int(multiplicity))
    if total.degree < SEXTIC_DEGREE - 1:
        return None
    return BinaryForm.from_poly(total, SEXTIC_DEGREE)


@dataclass(frozen=True)
class LocalExpansion:
    """Series ``u(z), v(z)`` of a chart at ``point`` and ``d(z) = (du/dz)/v``.

    ``kind`` is ``"generic"`` for ``u = u0 + z`` or ``"weierstrass"`` for ``u = u0 + z^2``; ``branch`` is the fixed
    leading coefficient of v (of ``v/z`` at Weierstrass points).
    """

    kind: VALID_UNIFORMIZER_TYPE
    point: CurvePoint
    u: TruncatedSeries
    v: TruncatedSeries
    d: TruncatedSeries
    branch: FieldElement

    @property
    def precision(self) -> int:
        return self.u.precision


def local_expansion(curve: CurveModel, point: CurvePoint, precision: int) -> LocalExpansion:
    """Expansion of the coordinates in a local uniformizer z at an affine point.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(56311)
    >>> C = CurveModel.from_ints(k, [0, 1, 14713, 34825, 16387, 7399, 33461])
    >>> chart = local_expansion(C, CurvePoint(k(0), k(0)), 6)
    >>> chart.kind, chart.d[0]
    ('weierstrass', 2)

    """
    if point.at_infinity:
        msg = "Local expansions are taken at affine points."
        raise PointAtInfinityError(msg)
    field = curve.field
    u0, v0 = point.u, point.v
    e = curve.poly
    shifted = e.taylor_shift(u0.raw)  # type: ignore[union-attr]
    if v0:
        u = TruncatedSeries.from_elements(field, [u0, 1], precision)
        v = shifted.to_series(precision).sqrt(v0)
        return LocalExpansion(UNIFORMIZER_GENERIC, point, u, v, v.inverse(), v0)  # type: ignore[arg-type]

    # E(u0 + t) = t E1(t); v = z w(z) with w^2 = E1(z^2)
    e1 = Poly(field, shifted.coeffs[1:])
    slope = e1[0]
    if not slope:
        msg = f"{u0} is a multiple root of E."
        raise SingularCurveError(msg)
    branch = slope.sqrt()
    if branch is None:
        msg = f"E'({u0}) = {slope} is not a square in {field}; extend the field first."
        raise NonSquareBranchError(msg)
    z2 = TruncatedSeries.from_ints(field, [0, 0, 1], precision)
    w = e1.compose_series(z2).sqrt(branch)
    u = TruncatedSeries.constant(field, u0.raw, precision) + z2  # type: ignore[union-attr]
    v = w.shift(1).truncate(precision)
    d = w.inverse().scale(field.from_ints([2])[0])
    return LocalExpansion(UNIFORMIZER_WEIERSTRASS, point, u, v, d, branch)


@dataclass(frozen=True)
class BasePoint:
    """Base point P on C, the image point Q on C' and the working field they live in."""

    field: FiniteField
    P: CurvePoint  # noqa: N815
    Q: CurvePoint  # noqa: N815

    @property
    def kind(self) -> VALID_UNIFORMIZER_TYPE:
        return UNIFORMIZER_WEIERSTRASS if self.P.is_weierstrass else UNIFORMIZER_GENERIC


def image_point(curve_p: CurveModel, dphi: Raw, point: CurvePoint) -> CurvePoint | None:
    """``Q = (x0, y0)`` with ``x0 = (m11 u0 + m12)/(m21 u0 + m22)``; None when Q is not a rational generic point."""
    field = curve_p.field
    (m11, m12), (m21, m22) = (tuple(field.element(x) for x in row) for row in dphi)
    u0 = point.u
    denominator = m21 * u0 + m22
    if not denominator:
        return None
    x0 = (m11 * u0 + m12) / denominator
    value = curve_p.poly(x0)
    if not value:
        return None
    y0 = value.sqrt()
    return None if y0 is None else CurvePoint(x0, y0)


def _try_point(curve: CurveModel, curve_p: CurveModel, dphi: Raw, point: CurvePoint) -> CurvePoint | None:
    if point.is_weierstrass:
        slope = curve.poly.derivative()(point.u)  # type: ignore[arg-type]
        if not slope.is_square():
            return None
    return image_point(curve_p, dphi, point)


def find_base_point(
    curve: CurveModel,
    dphi: Raw,
    curve_p: CurveModel,
    rng: np.random.Generator | None = None,
    *,
    allow_extension: bool = True,
) -> BasePoint:
    """Choose P on C such that the image pair at P is generic.

    Weierstrass points of C are tried first, then random affine points; if none works, the field is extended once
    by a square root and Weierstrass points are tried again.

    Raises
    ------
    NoGenericPointError
        After the configured number of trials.

    """
    if not np.any(linalg.det(curve.field, dphi)):
        msg = "The tangent matrix is not invertible."
        raise NoGenericPointError(msg)
    seed = int(option_manager.get_option("seed") or 0)
    rng = np.random.default_rng(seed) if rng is None else rng
    trials = int(option_manager.get_option("base_point_trials") or 64)

    for point in weierstrass_points(curve):
        q = _try_point(curve, curve_p, dphi, point)
        if q is not None:
            return BasePoint(curve.field, point, q)
    for _ in range(trials):
        point = random_point(curve, rng)
        q = _try_point(curve, curve_p, dphi, point)
        if q is not None:
            return BasePoint(curve.field, point, q)

    if allow_extension:
        extension, _ = adjoin_sqrt(curve.field, curve.field.find_nonsquare())
        LOGGER.info("no generic base point over %s, extending to %s", curve.field, extension)
        return find_base_point(
            curve.embed(extension),
            extension.embed(dphi, curve.field),
            curve_p.embed(extension),
            rng,
            allow_extension=False,
        )
    msg = f"No base point of generic type found after {trials} trials."
    raise NoGenericPointError(msg)

