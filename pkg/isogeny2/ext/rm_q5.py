"""Real multiplication by Q(sqrt 5): Gundlach invariants, Hilbert derivative matrices, Hilbert-normalized curves.

Gundlach invariants are ``g1 = G2^5/F10`` and ``g2 = G2^2 F6/F10``. Their pullbacks to the Siegel threefold are written
with ``A = 3 g2^2/g1 - 2``:

    h1 = 8 g1 A^5,  h2 = g1 A^3 / 2,  h3 = g1 A^2 (4 g2^2/g1 + 288 g2/g1 - 3) / 8,

where ``(h1, h2, h3) = (I2^5/I10, I2^3 I4/I10, I2^2 I6/I10)``. Streng's invariants follow.
"""

import functools
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from math import isqrt

import sympy

from isogeny2.core import linalg
from isogeny2.core.errors import (
    DegenerateGundlachError,
    InconsistentChainRuleError,
    NonSquareError,
    NotOnHumbertError,
    SingularCurveError,
    SingularJacobianError,
    SingularMatrixError,
    ZeroG1Error,
)
from isogeny2.covariants import BinaryForm, Invariants, dtau_j_matrix, igusa_clebsch, rational
from isogeny2.curves import CurveModel
from isogeny2.field import FieldElement, FiniteField, Raw, adjoin_sqrt, canonical_sign
from isogeny2.tangent import hilbert_selector, solve_overdetermined

logging.basicConfig(level=logging.INFO)
LOGGER = logging.getLogger(__name__)
LOGGER.setLevel(logging.INFO)

# (a, b, d) for the diagonal entries (a + b sqrt5)/d relating dG/dt to the Gundlach chain rule
DTG_SCALE = ((5, -1, 20), (5, 1, 20))

_G1, _G2 = sympy.symbols("g1 g2")

Terms = tuple[tuple[tuple[int, int], tuple[int, int]], ...]


@dataclass(frozen=True)
class GundlachPoint:
    """Gundlach invariants ``(g1, g2)`` of a principally polarized abelian surface with RM by Z[(1 + sqrt 5)/2]."""

    g1: FieldElement
    g2: FieldElement

    @classmethod
    def from_ints(cls, field: FiniteField, g1: int, g2: int) -> "GundlachPoint":
        return cls(field(g1), field(g2))

    @property
    def field(self) -> FiniteField:
        return self.g1.field

    def __repr__(self) -> str:
        return f"GundlachPoint({self.g1}, {self.g2})"


def _pullback_expressions() -> tuple[list[sympy.Expr], list[sympy.Expr]]:
    a = 3 * _G2**2 / _G1 - 2
    h1 = 8 * _G1 * a**5
    h2 = _G1 * a**3 / 2
    h3 = _G1 * a**2 * (4 * _G2**2 / _G1 + 288 * _G2 / _G1 - 3) / 8
    j = [h2 * (h2 - 3 * h3) / (2 * h1), h2**2 / h1, h2**5 / h1**3]
    return [h1, h2, h3], j


def _terms(expr: sympy.Expr) -> tuple[Terms, Terms]:
    num, den = sympy.fraction(sympy.cancel(sympy.together(expr)))

    def collect(poly_expr: sympy.Expr) -> Terms:
        poly = sympy.Poly(poly_expr, _G1, _G2, domain="QQ")
        coefficients = [sympy.Rational(c) for c in poly.coeffs()]
        return tuple(
            ((int(e1), int(e2)), (int(c.p), int(c.q))) for (e1, e2), c in zip(poly.monoms(), coefficients, strict=True)
        )

    return collect(num), collect(den)


@functools.cache
def pullback_terms() -> dict[str, tuple[Terms, Terms]]:
    """Numerator and denominator terms of ``h``, ``j`` and ``dj/dg`` as rational functions of ``(g1, g2)``."""
    absolute, streng = _pullback_expressions()
    out = {f"h{i + 1}": _terms(e) for i, e in enumerate(absolute)}
    out |= {f"j{i + 1}": _terms(e) for i, e in enumerate(streng)}
    jacobian = sympy.Matrix(streng).jacobian([_G1, _G2])
    out |= {f"dj{r + 1}/dg{c + 1}": _terms(jacobian[r, c]) for r in range(3) for c in range(2)}
    return out


def _evaluate(name: str, g: GundlachPoint) -> FieldElement:
    field = g.field

    def value(terms: Terms) -> FieldElement:
        total = field(0)
        for (e1, e2), (num, den) in terms:
            total = total + rational(field, num, den) * g.g1**e1 * g.g2**e2
        return total

    num_terms, den_terms = pullback_terms()[name]
    den = value(den_terms)
    if not den:
        msg = f"The pullback {name} is not defined at {g}."
        raise ZeroG1Error(msg)
    return value(num_terms) / den


def _check_g1(g: GundlachPoint) -> None:
    if not g.g1:
        msg = "g1 = 0: the Gundlach invariants are outside the generic locus."
        raise ZeroG1Error(msg)


def gundlach_to_igusa(g: GundlachPoint) -> Invariants:
    """Streng's invariants ``(j1, j2, j3)`` of the pullback of ``(g1, g2)``.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(56311)
    >>> gundlach_to_igusa(GundlachPoint.from_ints(k, 23, 56260))
    (14030, 9041, 56122)
    >>> gundlach_to_igusa(GundlachPoint.from_ints(k, 8, 36073))
    (13752, 42980, 12538)

    """
    _check_g1(g)
    return _evaluate("j1", g), _evaluate("j2", g), _evaluate("j3", g)


def gundlach_to_igusa_clebsch(g: GundlachPoint) -> Invariants:
    """Absolute Igusa-Clebsch invariants ``(I2^5/I10, I2^3 I4/I10, I2^2 I6/I10)`` of the pullback."""
    _check_g1(g)
    return _evaluate("h1", g), _evaluate("h2", g), _evaluate("h3", g)


def igusa_to_gundlach(j: Sequence[FieldElement]) -> GundlachPoint:
    """Gundlach invariants mapping to Streng's invariants ``j``.

    The pullback gives ``j2 = g1 A/32`` and ``j3 = g1^2/16384``, so ``A^2 = j2^2/(16 j3)``. For each root A,
    ``g1 = 32 j2/A`` and ``g2`` is linear in the ``j1`` relation once ``g2^2 = g1 (A + 2)/3`` is substituted.
    The branch satisfying that last equation is returned.

    Raises
    ------
    NonSquareError
        If ``A^2`` has no square root in the field.

    NotOnHumbertError
        If no branch is consistent, or if ``j2`` or ``j3`` vanishes.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(56311)
    >>> igusa_to_gundlach([k(14030), k(9041), k(56122)])
    GundlachPoint(23, 56260)

    """
    j1, j2, j3 = j
    field = j1.field
    if not j2 or not j3:
        msg = "j2 or j3 vanishes: the Gundlach invariants are not determined."
        raise NotOnHumbertError(msg)

    a = (j2 * j2 / (16 * j3)).sqrt()
    if a is None:
        msg = f"A^2 = {j2 * j2 / (16 * j3)} is not a square in {field}; extend the field first."
        raise NonSquareError(msg)

    for root in (a, -a):
        g1 = 32 * j2 / root
        b = 4 * root / 3 - 256 * j1 / (3 * g1)
        g2 = g1 * (b - 4 * (root + 2) / 3 + 3) / 288
        if g2 * g2 == g1 * (root + 2) / 3 and g1 * g1 == 16384 * j3:
            return GundlachPoint(g1, g2)
    msg = f"The invariants {tuple(j)} are not the pullback of Gundlach invariants."
    raise NotOnHumbertError(msg)


def sqrt5(field: FiniteField) -> FieldElement:
    """The square root of 5 identified with the real embedding used for ``beta``.

    It is the root whose coefficient vector is lexicographically larger, i.e. minus the canonical root.

    >>> from isogeny2.field import PrimeField
    >>> sqrt5(PrimeField(56311))
    52419

    """
    root = field(5).sqrt()
    if root is None:
        msg = f"5 is not a square in {field}: Q(sqrt 5) does not split and the Hilbert tangent is not defined."
        raise NonSquareError(msg)
    return -root


def beta_pair(field: FiniteField, norm: int, trace: int) -> tuple[FieldElement, FieldElement]:
    """Images ``(beta, beta_bar)`` in ``field`` of the totally positive element of given norm and trace.

    >>> from isogeny2.field import PrimeField
    >>> beta_pair(PrimeField(56311), 11, 7)
    (26213, 30105)

    """
    disc = trace * trace - 4 * norm
    if disc < 0 or disc % 5 or isqrt(disc // 5) ** 2 != disc // 5:
        msg = f"No element of Z[(1 + sqrt 5)/2] has norm {norm} and trace {trace}."
        raise ValueError(msg)
    b = isqrt(disc // 5)
    root = sqrt5(field)
    two = field(2)
    return (trace + b * root) / two, (trace - b * root) / two


def _sqrt_extending(value: FieldElement) -> FieldElement:
    """Square root of ``value``, taken in a quadratic extension of its field when needed."""
    root = value.sqrt()
    if root is not None:
        return root
    extension, generator = adjoin_sqrt(value.field, value)
    LOGGER.info("%s is not a square; working over %s", value, extension)
    return extension.element(canonical_sign(extension, generator.raw))


def _common_field(values: Sequence[FieldElement]) -> FiniteField:
    return max((v.field for v in values), key=lambda k: k.degree)


def _odd_sextic(coeffs: Sequence[FieldElement]) -> BinaryForm:
    field = _common_field(coeffs)
    return BinaryForm.from_elements(field, [field(c) for c in coeffs])


def pullback_identities(g: GundlachPoint) -> tuple[FieldElement, FieldElement, FieldElement]:
    """Values of ``b3^2``, ``b1 b5`` and ``b0 b6`` at ``G2 = 1``, ``F10 = 1/g1``, ``F6 = g2/g1``."""
    _check_g1(g)
    f10 = 1 / g.g1
    f6 = g.g2 / g.g1
    field = g.field
    b3_squared = 4 * f10 * f6 * f6
    b1_b5 = rational(field, 36, 25) * f10 * f6 * f6 - rational(field, 4, 5) * f10 * f10
    b0_b6 = rational(field, -4, 25) * f10 * f6 * f6 + rational(field, 1, 5) * f10 * f10
    return b3_squared, b1_b5, b0_b6


def quartic_closed_form(g: GundlachPoint) -> FieldElement:
    """``123 F10^3 F6 - 32/25 F10^2 F6^2 G2^2 + 288/125 F10 F6^4 G2 - 3456/3125 F6^6`` at ``G2 = 1``.

    This closed form for ``b3 (b0^2 b5^3 + b1^3 b6^2)`` has weight 36 where the product has weight 66, and it does
    not hold on the curves of :func:`hilb_curve_reconstruct` (compare :func:`quartic_product`). T is fixed from I6
    there instead.
    """
    _check_g1(g)
    f10 = 1 / g.g1
    f6 = g.g2 / g.g1
    field = g.field
    return (
        123 * f10**3 * f6
        - rational(field, 32, 25) * f10**2 * f6**2
        + rational(field, 288, 125) * f10 * f6**4
        - rational(field, 3456, 3125) * f6**6
    )


def quartic_product(curve: CurveModel) -> FieldElement:
    """``b3 (b0^2 b5^3 + b1^3 b6^2)`` for ``v^2 = sum b_i u^i``."""
    b0, b1, _, b3, _, b5, b6 = (curve.poly[i] for i in range(7))
    return b3 * (b0 * b0 * b5**3 + b1**3 * b6 * b6)


def hilb_curve_reconstruct(g: GundlachPoint, b1: int = 1) -> CurveModel:
    """A potentially Hilbert-normalized curve ``v^2 = b0 + b1 u + b3 u^3 + b5 u^5 + b6 u^6`` with invariants ``g``.

    ``b3``, ``b1 b5`` and ``b0 b6`` are given by :func:`pullback_identities`. The remaining quantity
    ``T = b0^2 b5^3 + b1^3 b6^2`` is fixed by ``I6/I2^3 = h3/h1``: along the family with the other products fixed,
    I2 is constant and I6 is affine in T. Then ``b0^2`` is a root of ``b5^3 t^2 - T t + b1^3 (b0 b6)^2``.

    Square roots missing from the field are taken in quadratic extensions.

    Raises
    ------
    DegenerateGundlachError
        If F6, ``b1 b5``, ``b0 b6`` or h1 vanish, or no branch reproduces the invariants.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(56311)
    >>> hilb_curve_reconstruct(GundlachPoint.from_ints(k, 23, 56260)).coefficients()
    [[14336], [1], [0], [20717], [0], [34667], [24637]]

    """
    b3_squared, b1_b5, b0_b6 = pullback_identities(g)
    if not g.g2 or not b1_b5 or not b0_b6:
        msg = f"F6 or a product of the b_i vanishes at {g}."
        raise DegenerateGundlachError(msg)
    h1, _, h3 = gundlach_to_igusa_clebsch(g)
    if not h1:
        msg = f"I2 pulls back to zero at {g} (3 g2^2 = 2 g1)."
        raise DegenerateGundlachError(msg)
    target = gundlach_to_igusa(g)

    field = g.field
    c1 = field(b1)
    b3 = _sqrt_extending(b3_squared)
    b5 = b1_b5 / c1
    zero = field(0)

    def trial(b0: FieldElement) -> tuple[FieldElement, FieldElement, FieldElement]:
        b6 = b0_b6 / b0
        i2, _, i6, _ = igusa_clebsch(_odd_sextic([b0, c1, zero, b3, zero, b5, b6]))
        return b0 * b0 * b5**3 + c1**3 * b6 * b6, i2, i6

    t_one, i2, i6_one = trial(field(1))
    t_two, _, i6_two = trial(field(2))
    if i6_one == i6_two:
        msg = f"I6 does not depend on b0^2 b5^3 + b1^3 b6^2 at {g}."
        raise DegenerateGundlachError(msg)
    i6_target = i2**3 * h3 / h1
    t_target = t_one + (i6_target - i6_one) * (t_two - t_one) / (i6_two - i6_one)

    lead = b5**3
    disc = t_target * t_target - 4 * lead * c1**3 * b0_b6 * b0_b6
    root = _sqrt_extending(disc)
    squares = [(t_target + root) / (2 * lead), (t_target - root) / (2 * lead)]
    ordered = [t for t in squares if t.is_square()] or squares[:1]

    for t in ordered:
        b0 = _sqrt_extending(t)
        if not b0:
            continue
        coeffs = [b0, c1, zero, b3, zero, b5, b0_b6 / b0]
        try:
            curve = CurveModel(_odd_sextic(coeffs))
        except SingularCurveError:
            continue
        if all(x == y for x, y in zip(curve.invariants(), target, strict=True)):
            LOGGER.debug("Hilbert-normalized curve %s", curve)
            return curve
    msg = f"No branch of the b0^2 quadratic reproduces the invariants of {g}."
    raise DegenerateGundlachError(msg)


def gundlach_jacobian(g: GundlachPoint) -> Raw:
    """The 3x2 matrix ``d(j1, j2, j3)/d(g1, g2)``."""
    _check_g1(g)
    field = g.field
    rows = [[_evaluate(f"dj{r + 1}/dg{c + 1}", g) for c in range(2)] for r in range(3)]
    return linalg.matrix(field, rows)


def dtG_matrix(curve: CurveModel, g: GundlachPoint | None = None) -> Raw:  # noqa: N802
    """The Hilbert derivative matrix D_tG of a potentially Hilbert-normalized curve.

    Solves ``(dJ/dG) X = DtauJ(C) T`` from two rows, checks the third, and returns
    ``X Diag((5 - sqrt5)/20, (5 + sqrt5)/20)``.

    Raises
    ------
    InconsistentChainRuleError
        If the curve is not Hilbert-normalized, or its invariants are not on the Humbert surface.

    SingularJacobianError
        If ``dJ/dG`` has rank < 2.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(56311)
    >>> C = CurveModel.from_ints(k, [11111, 54150, 0, 102, 0, 34724, 13425])
    >>> linalg.to_ints(dtG_matrix(C))
    [[43658, 17394], [16028, 26556]]

    """
    field = curve.field
    if g is None:
        try:
            g = igusa_to_gundlach(curve.invariants())
        except NotOnHumbertError as e:
            raise InconsistentChainRuleError(str(e)) from e
    g = GundlachPoint(field(g.g1), field(g.g2))

    jacobian = gundlach_jacobian(g)
    tangent_columns = linalg.matmul(field, dtau_j_matrix(curve.sextic), hilbert_selector(field))
    try:
        x = solve_overdetermined(field, jacobian, tangent_columns)
    except SingularMatrixError as e:
        msg = f"The Jacobian of the Gundlach-to-Igusa map is singular at {g}."
        raise SingularJacobianError(msg) from e

    root = sqrt5(field)
    scale = [((a + b * root) / d).raw for a, b, d in DTG_SCALE]
    return linalg.matmul(field, x, linalg.diagonal(field, scale))


def is_hilbert_normalized(curve: CurveModel) -> bool:
    """Whether the chain-rule system of :func:`dtG_matrix` is consistent for ``curve``."""
    try:
        dtG_matrix(curve)
    except (InconsistentChainRuleError, NonSquareError):
        return False
    return True

