"""Covariants of binary sextics.

Forms are stored in ascending order, ``f = a0 + a1 x + ... + an x^n``, together with their nominal order ``n``.
Matrices acting on forms (``sym2``, ``symn``) use the descending basis ``(x^n, ..., x, 1)``.

Transvectants follow Mestre's normalization, with the factorials taken from the forms' orders.
"""

import functools
import itertools
from collections.abc import Sequence
from dataclasses import dataclass
from math import comb
from typing import Any

import numpy as np

from isogeny2.core import linalg
from isogeny2.core.errors import NonGenericInvariantsError, OrderTooLargeError, SingularCurveError, ZeroI4Error
from isogeny2.field import FieldElement, FiniteField, PrimeField, Raw
from isogeny2.series import Poly, product

Invariants = tuple[FieldElement, FieldElement, FieldElement]

# degrees in the sextic's coefficients of y1, y2, y3
COVARIANT_DEGREES = (3, 5, 7)

# (row, covariant, coefficient, exponents of (I2, I4, I6)) of the derivatives of (j1, j2, j3)
DTAU_J_TERMS = (
    (0, "y1", (153, 8), (2, 1, 0)),
    (0, "y1", (-135, 2), (1, 0, 1)),
    (0, "y1", (135, 2), (0, 2, 0)),
    (0, "y2", (46575, 4), (1, 1, 0)),
    (0, "y2", (-30375, 1), (0, 0, 1)),
    (0, "y3", (1366875, 1), (0, 1, 0)),
    (1, "y1", (90, 1), (2, 1, 0)),
    (1, "y1", (900, 1), (0, 2, 0)),
    (1, "y2", (40500, 1), (1, 1, 0)),
    (2, "y1", (225, 1), (1, 4, 0)),
    (2, "y2", (101250, 1), (0, 4, 0)),
)
# power of I10 dividing each row
DTAU_J_I10_POWERS = (1, 1, 2)


def rational(field: FiniteField, num: int, den: int = 1) -> FieldElement:
    """The rational number num/den reduced in ``field``."""
    if den % field.p == 0:
        msg = f"{num}/{den} is not defined in characteristic {field.p}."
        raise ZeroDivisionError(msg)
    return field(num) / field(den)


class BinaryForm:
    """Binary form of nominal order ``n`` (the leading coefficients may vanish).

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(56311)
    >>> f = BinaryForm.from_ints(k, [11111, 54150, 0, 102, 0, 34724, 13425])
    >>> f.order
    6
    >>> f(1)
    890

    """

    __slots__ = ("coeffs", "field")

    def __init__(self, field: FiniteField, coeffs: Raw) -> None:
        self.field = field
        self.coeffs = np.asarray(coeffs, dtype=np.int64).reshape(-1, field.degree) % field.p
        self.coeffs.setflags(write=False)

    @classmethod
    def from_ints(cls, field: FiniteField, ints: Sequence[int]) -> "BinaryForm":
        return cls(field, field.from_ints(list(ints)).reshape(-1, field.degree))

    @classmethod
    def from_elements(cls, field: FiniteField, elements: Sequence[Any]) -> "BinaryForm":
        return cls(field, np.stack([e if isinstance(e, np.ndarray) else field.raw(e) for e in elements]))

    @classmethod
    def from_poly(cls, poly: Poly, order: int) -> "BinaryForm":
        return cls(poly.field, poly.padded(order + 1))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> FieldElement:
        return self.field.element(self.coeffs[k])

    def to_poly(self) -> Poly:
        return Poly(self.field, self.coeffs)

    def descending(self) -> Raw:
        """Coefficients in the basis ``(x^n, ..., x, 1)``."""
        return self.coeffs[::-1]

    def __call__(self, x: Any) -> FieldElement:
        return self.to_poly()(x)

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if other.order != self.order:
            msg = f"Cannot add forms of orders {self.order} and {other.order}."
            raise ValueError(msg)
        return BinaryForm(self.field, self.field.add(self.coeffs, other.coeffs))

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.field, self.field.neg(self.coeffs))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __mul__(self, other: Any) -> "BinaryForm":
        if isinstance(other, BinaryForm):
            return BinaryForm(self.field, product(self.field, self.coeffs, other.coeffs))
        c = self.field.raw(other)
        return BinaryForm(self.field, self.field.mul(self.coeffs, np.broadcast_to(c, self.coeffs.shape)))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BinaryForm):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None  # type: ignore[assignment]

    def embed(self, target: FiniteField) -> "BinaryForm":
        return BinaryForm(target, target.embed(self.coeffs, self.field))

    def __repr__(self) -> str:
        return f"BinaryForm({self.to_poly().format('x')}, order={self.order})"


def _falling(a: int, r: int) -> int:
    out = 1
    for i in range(r):
        out *= a - i
    return out


@functools.lru_cache(maxsize=256)
def _transvectant_table(m: int, n: int, k: int, p: int) -> np.ndarray:
    """Integer weights of ``f_a g_b`` in ``(f, g)_k``, scaled and reduced mod p."""
    scale = _falling(m - k, m - k) * _falling(n - k, n - k)
    norm = _falling(m, m) * _falling(n, n)
    if norm % p == 0:
        msg = f"Transvectant of orders ({m}, {n}) needs characteristic above {max(m, n)}."
        raise ZeroDivisionError(msg)
    factor = scale * pow(norm, -1, p) % p
    table = np.zeros((m + 1, n + 1), dtype=np.int64)
    for a in range(m + 1):
        for b in range(n + 1):
            t = sum(
                (-1) ** j * comb(k, j) * _falling(a, k - j) * _falling(m - a, j) * _falling(b, j) * _falling(n - b, k - j)
                for j in range(k + 1)
            )
            table[a, b] = t * factor % p
    table.setflags(write=False)
    return table


def transvectant(f: BinaryForm, g: BinaryForm, k: int) -> BinaryForm:
    """The k-th transvectant ``(f, g)_k``, a form of order ``m + n - 2k``.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(101)
    >>> f = BinaryForm.from_ints(k, [1, 2, 3])
    >>> g = BinaryForm.from_ints(k, [4, 5])
    >>> transvectant(f, g, 0) == f * g
    True
    >>> transvectant(f, f, 1).coeffs.any()
    False
    >>> transvectant(f, g, 2)
    Traceback (most recent call last):
    ...
    isogeny2.core.errors.OrderTooLargeError: Transvectant of order 2 of forms of orders 2 and 1.

    """
    m, n = f.order, g.order
    if k > min(m, n) or k < 0:
        msg = f"Transvectant of order {k} of forms of orders {m} and {n}."
        raise OrderTooLargeError(msg)
    field = f.field
    table = _transvectant_table(m, n, k, field.p)
    outer = field.mul(f.coeffs[:, None, :], g.coeffs[None, :, :])
    weighted = (outer * table[:, :, None]) % field.p
    a, b = np.meshgrid(np.arange(m + 1), np.arange(n + 1), indexing="ij")
    index = a + b - k
    size = m + n - 2 * k + 1
    mask = (index >= 0) & (index < size)
    out = np.zeros((size, field.degree), dtype=np.int64)
    np.add.at(out, index[mask], weighted[mask])
    return BinaryForm(field, out % field.p)


def sym_action(form: BinaryForm, r: Raw) -> BinaryForm:
    """Substitution ``F(x) -> (b x + d)^n F((a x + c)/(b x + d))`` for ``r = [[a, b], [c, d]]``."""
    field = form.field
    (a, b), (c, d) = r
    num = Poly.from_elements(field, [c, a])
    den = Poly.from_elements(field, [d, b])
    n = form.order
    out = Poly.zero(field)
    for i in range(n + 1):
        out = out + (num**i) * (den ** (n - i)) * form.coeffs[i]
    return BinaryForm.from_poly(out, n)


def gl2_action(sextic: BinaryForm, r: Raw) -> BinaryForm:
    """The twisted action ``det(r)^-2 Sym^6(r)`` on sextics.

    Every generator covariant ``F`` of weight ``det^k Sym^n`` satisfies
    ``F(gl2_action(C, r)) = det(r)^k sym_action(F(C), r)``.
    """
    field = sextic.field
    det_inv = field.inv(linalg.det(field, r))
    return sym_action(sextic, r) * field.element(field.mul(det_inv, det_inv))


def symn(field: FiniteField, r: Raw, n: int) -> Raw:
    """Matrix of ``sym_action`` on forms of order n, in the basis ``(x^n, ..., 1)``.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(101)
    >>> linalg.to_ints(sym2(k, linalg.matrix(k, [[1, 2], [3, 4]])))
    [[1, 2, 4], [6, 10, 16], [9, 12, 16]]

    """
    columns = []
    for i in range(n, -1, -1):
        basis = field.zeros((n + 1,))
        basis[i] = field.ones()
        columns.append(sym_action(BinaryForm(field, basis), r).descending())
    return np.stack(columns, axis=1)


def sym2(field: FiniteField, r: Raw) -> Raw:
    return symn(field, r, 2)


@dataclass(frozen=True)
class GeneratorCovariants:
    """The generators used for Igusa invariants and their derivatives."""

    I2: FieldElement  # noqa: N815
    I4: FieldElement  # noqa: N815
    I6: FieldElement  # noqa: N815
    I6p: FieldElement  # noqa: N815
    I10: FieldElement  # noqa: N815
    y1: BinaryForm
    y2: BinaryForm
    y3: BinaryForm
    R: FieldElement  # noqa: N815

    @property
    def clebsch(self) -> tuple[FieldElement, FieldElement, FieldElement, FieldElement]:
        return self.I2, self.I4, self.I6, self.I10


def _scalar(form: BinaryForm) -> FieldElement:
    return form[0]


def generator_covariants(sextic: BinaryForm) -> GeneratorCovariants:
    """Igusa-Clebsch invariants, the quadratic covariants y1, y2, y3 and the skew invariant R.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(56311)
    >>> cov = generator_covariants(BinaryForm.from_ints(k, [11111, 54150, 0, 102, 0, 34724, 13425]))
    >>> cov.clebsch
    (28725, 52900, 45034, 16088)

    """
    if sextic.order != 6:  # noqa: PLR2004
        msg = f"Expected a sextic, got a form of order {sextic.order}."
        raise ValueError(msg)
    field = sextic.field
    f = sextic
    i = transvectant(f, f, 4)
    delta = transvectant(i, i, 2)
    y1 = transvectant(f, i, 4)
    y2 = transvectant(i, y1, 2)
    y3 = transvectant(i, y2, 2)

    a = _scalar(transvectant(f, f, 6))
    b = _scalar(transvectant(i, i, 4))
    c = _scalar(transvectant(i, delta, 4))
    d = _scalar(transvectant(y3, y1, 2))

    i2 = -120 * a
    i4 = -720 * a**2 + 6750 * b
    i6 = 8640 * a**3 - 108000 * a * b + 202500 * c
    i10 = (
        -62208 * a**5
        + 972000 * a**3 * b
        + 1620000 * a**2 * c
        - 3037500 * a * b**2
        - 6075000 * b * c
        - 4556250 * d
    )
    i6p = (i2 * i4 - 3 * i6) / field(2)
    r = _scalar(transvectant(transvectant(y1, y2, 1), y3, 2)) / field(8)
    return GeneratorCovariants(i2, i4, i6, i6p, i10, y1, y2, y3, r)


def igusa_clebsch(sextic: BinaryForm) -> tuple[FieldElement, FieldElement, FieldElement, FieldElement]:
    return generator_covariants(sextic).clebsch


def igusa_from_clebsch(i2: FieldElement, i4: FieldElement, i6: FieldElement, i10: FieldElement) -> Invariants:
    """Streng's invariants ``(I4 I6'/I10, I2 I4^2/I10, I4^5/I10^2)``."""
    if not i10:
        msg = "I10 vanishes: the sextic has a repeated root."
        raise SingularCurveError(msg)
    i6p = (i2 * i4 - 3 * i6) / i10.field(2)
    return i4 * i6p / i10, i2 * i4**2 / i10, i4**5 / i10**2


def clebsch_from_igusa(j: Sequence[FieldElement]) -> tuple[FieldElement, FieldElement, FieldElement, FieldElement]:
    """A representative ``(I2, I4, I6, I10)`` of the weighted class with invariants ``j``.

    Takes ``I4 = j3``, ``I10 = j3^2``; needs ``j3 != 0``.
    """
    j1, j2, j3 = j
    if not j3:
        msg = "j3 = 0: the invariants do not determine a generic Igusa-Clebsch class."
        raise NonGenericInvariantsError(msg)
    i6p = j1 * j3
    i2 = j2
    i4 = j3
    i6 = (i2 * i4 - 2 * i6p) / j3.field(3)
    return i2, i4, i6, j3 * j3


def igusa_invariants(sextic: BinaryForm) -> Invariants:
    """Streng's Igusa invariants ``(j1, j2, j3)`` of ``y^2 = sextic``.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(56311)
    >>> igusa_invariants(BinaryForm.from_ints(k, [11111, 54150, 0, 102, 0, 34724, 13425]))
    (14030, 9041, 56122)

    """
    return igusa_from_clebsch(*igusa_clebsch(sextic))


def igusa_clebsch_absolute(sextic: BinaryForm) -> Invariants:
    """Absolute invariants ``(I2^5/I10, I2^3 I4/I10, I2^2 I6/I10)``."""
    i2, i4, i6, i10 = igusa_clebsch(sextic)
    if not i10:
        msg = "I10 vanishes: the sextic has a repeated root."
        raise SingularCurveError(msg)
    return i2**5 / i10, i2**3 * i4 / i10, i2**2 * i6 / i10


def dtau_j_matrix(sextic: BinaryForm) -> Raw:
    """Derivatives of ``(j1, j2, j3)`` as a 3x3 matrix.

    Row k holds the coefficients of the quadratic covariant attached to ``dj_k`` in the basis ``(x^2, x, 1)``,
    the columns then scaled by ``Diag(2, 1, 2)``. Under a change of variables,
    ``dtau_j_matrix(gl2_action(C, r)) = dtau_j_matrix(C) @ sym2(r^t)``.

    Raises
    ------
    SingularCurveError
        If I10 vanishes.

    ZeroI4Error
        If I4 vanishes.

    """
    field = sextic.field
    cov = generator_covariants(sextic)
    if not cov.I10:
        msg = "I10 vanishes: the sextic has a repeated root."
        raise SingularCurveError(msg)
    if not cov.I4:
        msg = "I4 vanishes: the derivative matrix of the Igusa invariants is not defined."
        raise ZeroI4Error(msg)

    forms = {"y1": cov.y1, "y2": cov.y2, "y3": cov.y3}
    rows = [BinaryForm(field, field.zeros((3,))) for _ in range(3)]
    for row, name, (num, den), (e2, e4, e6) in DTAU_J_TERMS:
        coefficient = rational(field, num, den) * cov.I2**e2 * cov.I4**e4 * cov.I6**e6
        rows[row] = rows[row] + forms[name] * coefficient

    column_scale = field.from_ints([2, 1, 2])
    out = []
    for row, power in zip(rows, DTAU_J_I10_POWERS, strict=True):
        scaled = row * (cov.I10**-power)
        out.append(field.mul(scaled.descending(), column_scale))
    return np.stack(out)


def sextic_discriminant(sextic: BinaryForm) -> FieldElement:
    """Discriminant of a sextic with nonzero leading coefficient, from the resultant of ``f`` and ``f'``."""
    field = sextic.field
    f = sextic.to_poly()
    if f.degree != 6:  # noqa: PLR2004
        msg = "The resultant formula needs a6 != 0."
        raise ValueError(msg)
    df = f.derivative()
    m, n = f.degree, df.degree
    sylvester = field.zeros((m + n, m + n))
    for i in range(n):
        sylvester[i, i : i + m + 1] = f.coeffs[::-1]
    for i in range(m):
        sylvester[n + i, i : i + n + 1] = df.coeffs[::-1]
    res = field.element(linalg.det(field, sylvester))
    return -res / f[6]


# Mestre's conic and cubic


def _weighted_monomials(weight: int) -> list[tuple[int, int, int, int]]:
    """Exponents of ``I2^a I4^b I6^c I10^d`` with ``2a + 4b + 6c + 10d = weight``."""
    out = []
    for d in range(weight // 10 + 1):
        for c in range((weight - 10 * d) // 6 + 1):
            for b in range((weight - 10 * d - 6 * c) // 4 + 1):
                rest = weight - 10 * d - 6 * c - 4 * b
                if rest % 2 == 0:
                    out.append((rest // 2, b, c, d))
    return out


CONIC_INDICES = tuple(itertools.combinations_with_replacement(range(3), 2))
CUBIC_INDICES = tuple(itertools.combinations_with_replacement(range(3), 3))


def _conic_and_cubic_values(sextic: BinaryForm) -> tuple[list[FieldElement], list[FieldElement]]:
    cov = generator_covariants(sextic)
    ys = (cov.y1, cov.y2, cov.y3)
    conic = [_scalar(transvectant(ys[i], ys[j], 2)) for i, j in CONIC_INDICES]
    cubic = [_scalar(transvectant(sextic, ys[i] * ys[j] * ys[k], 6)) for i, j, k in CUBIC_INDICES]
    return conic, cubic


@functools.lru_cache(maxsize=16)
def _mestre_coefficients(p: int, seed: int) -> tuple[tuple[np.ndarray, ...], tuple[np.ndarray, ...]]:
    """Coefficients of the conic and cubic entries as polynomials in (I2, I4, I6, I10), by interpolation mod p."""
    field = PrimeField(p)
    weights_conic = [COVARIANT_DEGREES[i] + COVARIANT_DEGREES[j] for i, j in CONIC_INDICES]
    weights_cubic = [1 + sum(COVARIANT_DEGREES[i] for i in idx) for idx in CUBIC_INDICES]
    largest = max(len(_weighted_monomials(w)) for w in weights_conic + weights_cubic)

    rng = np.random.default_rng(seed)
    samples = []
    while len(samples) < largest + 8:
        sextic = BinaryForm(field, field.random_raw(rng, (7,)))
        cov = generator_covariants(sextic)
        if not cov.I10:
            continue
        samples.append((cov.clebsch, *_conic_and_cubic_values(sextic)))

    def fit(weight: int, values: list[FieldElement]) -> np.ndarray:
        monomials = _weighted_monomials(weight)
        rows = []
        for (i2, i4, i6, i10), _, _ in samples:
            rows.append([(i2**a * i4**b * i6**c * i10**d).raw for a, b, c, d in monomials])
        system = np.concatenate([np.array(rows), np.stack([v.raw for v in values])[:, None, :]], axis=1)
        reduced, pivots, _ = linalg.row_reduce(field, system)
        if pivots != list(range(len(monomials))):
            msg = f"Interpolation of a weight-{weight} invariant failed in characteristic {p}."
            raise NonGenericInvariantsError(msg)
        return reduced[: len(monomials), len(monomials), 0]

    conic = tuple(fit(w, [s[1][n] for s in samples]) for n, w in enumerate(weights_conic))
    cubic = tuple(fit(w, [s[2][n] for s in samples]) for n, w in enumerate(weights_cubic))
    return conic, cubic


def mestre_conic_and_cubic(
    clebsch: Sequence[FieldElement], seed: int = 0
) -> tuple[Raw, dict[tuple[int, int, int], FieldElement]]:
    """Mestre's conic matrix ``A_ij = (y_i, y_j)_2`` and cubic ``a_ijk = (f, y_i y_j y_k)_6`` from invariants.

    For a sextic ``f`` with these Igusa-Clebsch invariants, the coordinates of ``(x - t)^2`` in the basis
    ``(y1, y2, y3)`` lie on the conic ``c^t A c = 0`` and ``sum a_ijk c_i c_j c_k`` is proportional to ``f(t)``.
    """
    field = clebsch[0].field
    conic_coefficients, cubic_coefficients = _mestre_coefficients(field.p, seed)
    i2, i4, i6, i10 = clebsch

    def evaluate(weight: int, coefficients: np.ndarray) -> FieldElement:
        total = field(0)
        for (a, b, c, d), coef in zip(_weighted_monomials(weight), coefficients, strict=True):
            if coef:
                total = total + i2**a * i4**b * i6**c * i10**d * int(coef)
        return total

    matrix = field.zeros((3, 3))
    for (i, j), coefficients in zip(CONIC_INDICES, conic_coefficients, strict=True):
        value = evaluate(COVARIANT_DEGREES[i] + COVARIANT_DEGREES[j], coefficients).raw
        matrix[i, j] = matrix[j, i] = value
    cubic = {
        idx: evaluate(1 + sum(COVARIANT_DEGREES[i] for i in idx), coefficients)
        for idx, coefficients in zip(CUBIC_INDICES, cubic_coefficients, strict=True)
    }
    return matrix, cubic
