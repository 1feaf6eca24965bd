"""Univariate polynomials, truncated power series and rational fractions over a finite field.

Coefficients are stored in ascending order as raw arrays of shape ``(n, field.degree)``.

Examples
--------
>>> from isogeny2.field import PrimeField
>>> from isogeny2.series import Poly, TruncatedSeries, pade
>>> k = PrimeField(101)
>>> f = TruncatedSeries.from_ints(k, [1, -1], precision=4)
>>> f.inverse()
1 + z + z^2 + z^3 + O(z^4)
>>> pade(f.inverse(), 0, 1)
100/(x + 100)
"""

import logging
from collections.abc import Iterable, Sequence
from typing import Any, Union

import numpy as np

from isogeny2.core import linalg
from isogeny2.core.errors import (
    NonSquareLeadingTermError,
    NoSolutionError,
    OddValuationError,
    PrecisionTooLowError,
    ZeroConstantTermError,
)
from isogeny2.core.options import option_manager
from isogeny2.field import FieldElement, FiniteField, Raw

logging.basicConfig(level=logging.INFO)
LOGGER = logging.getLogger(__name__)
LOGGER.setLevel(logging.INFO)

Scalar = Union[FieldElement, int]


def _trim(coeffs: Raw) -> Raw:
    nonzero = np.nonzero(np.any(coeffs, axis=-1))[0]
    return coeffs[: nonzero[-1] + 1] if len(nonzero) else coeffs[:0]


def _pad(coeffs: Raw, n: int) -> Raw:
    if len(coeffs) >= n:
        return coeffs[:n]
    return np.concatenate([coeffs, np.zeros((n - len(coeffs), coeffs.shape[-1]), dtype=np.int64)])


def naive_product(field: FiniteField, a: Raw, b: Raw, n: int | None = None) -> Raw:
    """Schoolbook product of coefficient arrays, truncated to ``n`` terms."""
    size = len(a) + len(b) - 1 if len(a) and len(b) else 0
    n = size if n is None else min(n, size)
    out = field.zeros((max(n, 0),))
    for i in range(min(len(a), n)):
        m = min(len(b), n - i)
        out[i : i + m] = field.add(out[i : i + m], field.mul(np.broadcast_to(a[i], b[:m].shape), b[:m]))
    return out


def product(field: FiniteField, a: Raw, b: Raw, n: int | None = None) -> Raw:
    """Product of coefficient arrays, truncated to ``n`` terms.

    Uses the tower Karatsuba and numpy convolution unless the ``naive_series_product`` option is set; both give
    identical coefficients.
    """
    if option_manager.get_option("naive_series_product"):
        return naive_product(field, a, b, n)
    if n is not None:
        a, b = a[:n], b[:n]
    out = field.convolve(a, b)
    return out if n is None else out[:n]


def _scalar_raw(field: FiniteField, c: Scalar | Raw) -> Raw:
    if isinstance(c, np.ndarray):
        return c
    return field.raw(c)


class Poly:
    """Polynomial with coefficients in ascending degree, trailing zeros removed.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(7)
    >>> f = Poly.from_ints(k, [1, 0, 1])
    >>> f * f
    x^4 + 2*x^2 + 1
    >>> divmod(f * f, Poly.from_ints(k, [1, 1]))
    (x^3 + 6*x^2 + 3*x + 4, 4)

    """

    __slots__ = ("coeffs", "field")

    def __init__(self, field: FiniteField, coeffs: Raw | Sequence[Raw]) -> None:
        raw = np.asarray(coeffs, dtype=np.int64).reshape(-1, field.degree) % field.p
        self.field = field
        self.coeffs = _trim(raw)
        self.coeffs.setflags(write=False)

    # constructors

    @classmethod
    def from_ints(cls, field: FiniteField, ints: Iterable[int]) -> "Poly":
        return cls(field, field.from_ints(list(ints)).reshape(-1, field.degree))

    @classmethod
    def from_elements(cls, field: FiniteField, elements: Iterable[Scalar | Raw]) -> "Poly":
        values = [_scalar_raw(field, e) for e in elements]
        return cls(field, np.stack(values) if values else field.zeros((0,)))

    @classmethod
    def zero(cls, field: FiniteField) -> "Poly":
        return cls(field, field.zeros((0,)))

    @classmethod
    def constant(cls, field: FiniteField, c: Scalar | Raw) -> "Poly":
        return cls(field, _scalar_raw(field, c)[None, :])

    @classmethod
    def monomial(cls, field: FiniteField, k: int, c: Scalar | Raw = 1) -> "Poly":
        coeffs = field.zeros((k + 1,))
        coeffs[k] = _scalar_raw(field, c)
        return cls(field, coeffs)

    @classmethod
    def x(cls, field: FiniteField) -> "Poly":
        return cls.monomial(field, 1)

    # structure

    @property
    def degree(self) -> int:
        """Degree, -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return len(self.coeffs) == 0

    @property
    def leading(self) -> Raw:
        return self.coeffs[-1] if len(self.coeffs) else self.field.zeros()

    def coefficient(self, k: int) -> Raw:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else self.field.zeros()

    def __getitem__(self, k: int) -> FieldElement:
        return self.field.element(self.coefficient(k))

    def valuation(self) -> int:
        nonzero = np.nonzero(np.any(self.coeffs, axis=-1))[0]
        return int(nonzero[0]) if len(nonzero) else -1

    def padded(self, n: int) -> Raw:
        return _pad(self.coeffs, n)

    def to_ints(self) -> list[int]:
        if self.field.degree != 1:
            msg = "Only polynomials over the prime field convert to ints."
            raise ValueError(msg)
        return [int(c) for c in self.coeffs[:, 0]]

    # arithmetic

    def _coerce(self, other: Any) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly.constant(self.field, other)

    def __add__(self, other: Any) -> "Poly":
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, self.field.add(self.padded(n), other.padded(n)))

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(self.field, self.field.neg(self.coeffs))

    def __sub__(self, other: Any) -> "Poly":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "Poly":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "Poly":
        if isinstance(other, Poly):
            return Poly(self.field, product(self.field, self.coeffs, other.coeffs))
        return self.scale(_scalar_raw(self.field, other))

    __rmul__ = __mul__

    def scale(self, c: Raw) -> "Poly":
        return Poly(self.field, self.field.mul(self.coeffs, np.broadcast_to(c, self.coeffs.shape)))

    def __pow__(self, e: int) -> "Poly":
        result = Poly.constant(self.field, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero():
            msg = "Polynomial division by zero."
            raise ZeroDivisionError(msg)
        field = self.field
        db = other.degree
        remainder = np.array(self.coeffs)
        quotient = field.zeros((max(self.degree - db + 1, 0),))
        lead_inv = field.inv(other.leading)
        for k in range(self.degree - db, -1, -1):
            c = remainder[k + db]
            if not np.any(c):
                continue
            coef = field.mul(c, lead_inv)
            quotient[k] = coef
            window = remainder[k : k + db + 1]
            remainder[k : k + db + 1] = field.sub(window, field.mul(np.broadcast_to(coef, window.shape), other.coeffs))
        return Poly(field, quotient), Poly(field, remainder[: max(db, 0)])

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __eq__(self, other: object) -> bool:
        if isinstance(other, int | FieldElement):
            other = Poly.constant(self.field, other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None  # type: ignore[assignment]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading))

    def derivative(self) -> "Poly":
        n = len(self.coeffs)
        if n <= 1:
            return Poly.zero(self.field)
        return Poly(self.field, (self.coeffs[1:] * np.arange(1, n)[:, None]) % self.field.p)

    # evaluation and substitution

    def evaluate_raw(self, x: Raw) -> Raw:
        field = self.field
        result = field.zeros(x.shape[:-1])
        for c in self.coeffs[::-1]:
            result = field.add(field.mul(result, x), np.broadcast_to(c, result.shape))
        return result

    def __call__(self, x: Scalar) -> FieldElement:
        if isinstance(x, FieldElement) and x.field != self.field and x.field.contains(self.field):
            return self.embed(x.field)(x)
        return self.field.element(self.evaluate_raw(self.field.raw(x)))

    def taylor_shift(self, c: Scalar | Raw) -> "Poly":
        """The polynomial ``x -> self(x + c)``."""
        shift = Poly.from_elements(self.field, [_scalar_raw(self.field, c), 1])
        result = Poly.zero(self.field)
        for coef in self.coeffs[::-1]:
            result = result * shift + Poly.constant(self.field, coef)
        return result

    def compose(self, other: "Poly") -> "Poly":
        result = Poly.zero(self.field)
        for coef in self.coeffs[::-1]:
            result = result * other + Poly.constant(self.field, coef)
        return result

    def compose_series(self, s: "TruncatedSeries") -> "TruncatedSeries":
        """Horner evaluation at a truncated series."""
        result = TruncatedSeries.zero(self.field, s.precision)
        for coef in self.coeffs[::-1]:
            result = result * s + TruncatedSeries.constant(self.field, coef, s.precision)
        return result

    def to_series(self, precision: int) -> "TruncatedSeries":
        return TruncatedSeries(self.field, _pad(self.coeffs, precision))

    def embed(self, target: FiniteField) -> "Poly":
        return Poly(target, target.embed(self.coeffs, self.field))

    def __repr__(self) -> str:
        return self.format("x")

    def format(self, var: str) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if not np.any(c):
                continue
            text = self.field.format_raw(c)
            if " + " in text:
                text = f"({text})"
            monomial = "" if k == 0 else var if k == 1 else f"{var}^{k}"
            if not monomial:
                terms.append(text)
            elif text == "1":
                terms.append(monomial)
            else:
                terms.append(f"{text}*{monomial}")
        return " + ".join(terms)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


class RationalFraction:
    """Reduced fraction ``num/den`` with monic denominator.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(7)
    >>> x = Poly.x(k)
    >>> RationalFraction(x * x - 1, 2 * x - 2)
    (4*x + 4)/1

    """

    __slots__ = ("den", "num")

    def __init__(self, num: Poly, den: Poly | None = None, *, reduce: bool = True) -> None:
        field = num.field
        den = Poly.constant(field, 1) if den is None else den
        if den.is_zero():
            msg = "Rational fraction with zero denominator."
            raise ZeroDivisionError(msg)
        if reduce:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lead_inv = field.inv(den.leading)
        self.num = num.scale(lead_inv)
        self.den = den.scale(lead_inv)

    @property
    def field(self) -> FiniteField:
        return self.num.field

    @classmethod
    def constant(cls, field: FiniteField, c: Scalar | Raw) -> "RationalFraction":
        return cls(Poly.constant(field, c))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    @property
    def degree(self) -> int:
        """Degree as a map of the projective line, max(deg num, deg den)."""
        return max(self.num.degree, self.den.degree)

    def _coerce(self, other: Any) -> "RationalFraction":
        if isinstance(other, RationalFraction):
            return other
        if isinstance(other, Poly):
            return RationalFraction(other)
        return RationalFraction.constant(self.field, other)

    def __add__(self, other: Any) -> "RationalFraction":
        other = self._coerce(other)
        if self.den == other.den:
            return RationalFraction(self.num + other.num, self.den)
        return RationalFraction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFraction":
        return RationalFraction(-self.num, self.den, reduce=False)

    def __sub__(self, other: Any) -> "RationalFraction":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "RationalFraction":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "RationalFraction":
        other = self._coerce(other)
        return RationalFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFraction":
        if self.is_zero():
            msg = "Inverse of the zero fraction."
            raise ZeroDivisionError(msg)
        return RationalFraction(self.den, self.num, reduce=False)

    def __truediv__(self, other: Any) -> "RationalFraction":
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: Any) -> "RationalFraction":
        return self._coerce(other) * self.inverse()

    def __pow__(self, e: int) -> "RationalFraction":
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFraction(self.num**e, self.den**e, reduce=False)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly | int | FieldElement):
            other = self._coerce(other)
        if not isinstance(other, RationalFraction):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    __hash__ = None  # type: ignore[assignment]

    def __call__(self, x: Scalar) -> FieldElement:
        d = self.den(x)
        if not d:
            msg = f"Pole of the fraction at {x}."
            raise ZeroDivisionError(msg)
        return self.num(x) / d

    def taylor_shift(self, c: Scalar | Raw) -> "RationalFraction":
        return RationalFraction(self.num.taylor_shift(c), self.den.taylor_shift(c), reduce=False)

    def compose(self, other: Poly) -> "RationalFraction":
        return RationalFraction(self.num.compose(other), self.den.compose(other))

    def to_series(self, precision: int) -> "TruncatedSeries":
        """Expansion at 0; the denominator must not vanish there."""
        return self.num.to_series(precision) * series_inv(self.den.to_series(precision))

    def embed(self, target: FiniteField) -> "RationalFraction":
        return RationalFraction(self.num.embed(target), self.den.embed(target), reduce=False)

    def __repr__(self) -> str:
        return self.format("x")

    def format(self, var: str) -> str:
        num, den = self.num.format(var), self.den.format(var)
        num = f"({num})" if " + " in num else num
        den = f"({den})" if " + " in den else den
        return f"{num}/{den}"


class TruncatedSeries:
    """Power series known modulo ``z**precision``.

    Arithmetic results carry the smallest precision of their operands and never extend it.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(101)
    >>> s = TruncatedSeries.from_ints(k, [1, 1], precision=4)
    >>> s.sqrt()
    1 + 51*z + 63*z^2 + 19*z^3 + O(z^4)
    >>> s.sqrt() * s.sqrt() == s
    True

    """

    __slots__ = ("coeffs", "field")

    def __init__(self, field: FiniteField, coeffs: Raw) -> None:
        self.field = field
        self.coeffs = np.asarray(coeffs, dtype=np.int64).reshape(-1, field.degree) % field.p
        self.coeffs.setflags(write=False)

    @classmethod
    def from_ints(cls, field: FiniteField, ints: Sequence[int], precision: int | None = None) -> "TruncatedSeries":
        precision = len(ints) if precision is None else precision
        return cls(field, _pad(field.from_ints(list(ints)).reshape(-1, field.degree), precision))

    @classmethod
    def from_elements(
        cls, field: FiniteField, elements: Sequence[Scalar | Raw], precision: int | None = None
    ) -> "TruncatedSeries":
        precision = len(elements) if precision is None else precision
        raw = np.stack([_scalar_raw(field, e) for e in elements]) if elements else field.zeros((0,))
        return cls(field, _pad(raw, precision))

    @classmethod
    def zero(cls, field: FiniteField, precision: int) -> "TruncatedSeries":
        return cls(field, field.zeros((precision,)))

    @classmethod
    def constant(cls, field: FiniteField, c: Scalar | Raw, precision: int) -> "TruncatedSeries":
        out = field.zeros((precision,))
        if precision:
            out[0] = _scalar_raw(field, c)
        return cls(field, out)

    @classmethod
    def one(cls, field: FiniteField, precision: int) -> "TruncatedSeries":
        return cls.constant(field, 1, precision)

    @classmethod
    def variable(cls, field: FiniteField, precision: int) -> "TruncatedSeries":
        out = field.zeros((precision,))
        if precision > 1:
            out[1] = field.ones()
        return cls(field, out)

    @property
    def precision(self) -> int:
        return len(self.coeffs)

    def constant_term(self) -> Raw:
        return self.coeffs[0] if len(self.coeffs) else self.field.zeros()

    def __getitem__(self, k: int) -> FieldElement:
        return self.field.element(self.coeffs[k])

    def valuation(self) -> int:
        """Index of the first nonzero coefficient, the precision if there is none."""
        nonzero = np.nonzero(np.any(self.coeffs, axis=-1))[0]
        return int(nonzero[0]) if len(nonzero) else self.precision

    def is_zero(self) -> bool:
        return not np.any(self.coeffs)

    def truncate(self, n: int) -> "TruncatedSeries":
        if n > self.precision:
            msg = f"Cannot raise precision from {self.precision} to {n}."
            raise PrecisionTooLowError(msg)
        return TruncatedSeries(self.field, self.coeffs[:n])

    def to_poly(self) -> Poly:
        return Poly(self.field, self.coeffs)

    def padded(self, n: int) -> "TruncatedSeries":
        """The same coefficients read as an exact polynomial, known to ``z**n``."""
        return TruncatedSeries(self.field, _pad(self.coeffs, n))

    def embed(self, target: FiniteField) -> "TruncatedSeries":
        return TruncatedSeries(target, target.embed(self.coeffs, self.field))

    # arithmetic

    def _coerce(self, other: Any) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries):
            return other
        if isinstance(other, Poly):
            return other.to_series(self.precision)
        return TruncatedSeries.constant(self.field, other, self.precision)

    def __add__(self, other: Any) -> "TruncatedSeries":
        other = self._coerce(other)
        n = min(self.precision, other.precision)
        return TruncatedSeries(self.field, self.field.add(self.coeffs[:n], other.coeffs[:n]))

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.field, self.field.neg(self.coeffs))

    def __sub__(self, other: Any) -> "TruncatedSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Any) -> "TruncatedSeries":
        return self._coerce(other) - self

    def __mul__(self, other: Any) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries | Poly):
            other = self._coerce(other)
            n = min(self.precision, other.precision)
            return TruncatedSeries(self.field, _pad(product(self.field, self.coeffs, other.coeffs, n), n))
        return self.scale(_scalar_raw(self.field, other))

    __rmul__ = __mul__

    def scale(self, c: Raw) -> "TruncatedSeries":
        return TruncatedSeries(self.field, self.field.mul(self.coeffs, np.broadcast_to(c, self.coeffs.shape)))

    def __truediv__(self, other: Any) -> "TruncatedSeries":
        if isinstance(other, TruncatedSeries | Poly):
            return self * series_inv(self._coerce(other))
        return self.scale(self.field.inv(_scalar_raw(self.field, other)))

    def __pow__(self, e: int) -> "TruncatedSeries":
        result = TruncatedSeries.one(self.field, self.precision)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.precision == other.precision and np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None  # type: ignore[assignment]

    def agrees_with(self, other: "TruncatedSeries", upto: int | None = None) -> bool:
        """Equality of the first ``upto`` coefficients (default: the common precision)."""
        n = min(self.precision, other.precision) if upto is None else upto
        if n > min(self.precision, other.precision):
            return False
        return bool(np.array_equal(self.coeffs[:n], other.coeffs[:n]))

    def derivative(self) -> "TruncatedSeries":
        n = self.precision
        if n <= 1:
            return TruncatedSeries.zero(self.field, 0)
        return TruncatedSeries(self.field, (self.coeffs[1:] * np.arange(1, n)[:, None]) % self.field.p)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by ``z**k``; the precision grows by ``k``."""
        return TruncatedSeries(self.field, np.concatenate([self.field.zeros((k,)), self.coeffs]))

    def divide_by_z(self, k: int = 1) -> "TruncatedSeries":
        """Divide by ``z**k``; the first ``k`` coefficients must vanish."""
        if np.any(self.coeffs[:k]):
            msg = f"Series of valuation {self.valuation()} is not divisible by z^{k}."
            raise ValueError(msg)
        return TruncatedSeries(self.field, self.coeffs[k:])

    def subsample(self, step: int, offset: int = 0) -> "TruncatedSeries":
        """Coefficients ``offset, offset + step, ...``; maps f(z) = g(z**step) to g."""
        return TruncatedSeries(self.field, self.coeffs[offset::step])

    def inverse(self) -> "TruncatedSeries":
        return series_inv(self)

    def sqrt(self, branch: Scalar | Raw | None = None) -> "TruncatedSeries":
        return series_sqrt(self, branch)

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if not np.any(c):
                continue
            text = self.field.format_raw(c)
            text = f"({text})" if " + " in text and k else text
            monomial = "" if k == 0 else "z" if k == 1 else f"z^{k}"
            if not monomial:
                terms.append(text)
            else:
                terms.append(monomial if text == "1" else f"{text}*{monomial}")
        terms.append(f"O(z^{self.precision})")
        return " + ".join(terms)


def series_inv(f: TruncatedSeries) -> TruncatedSeries:
    """Inverse of a series with invertible constant term, by Newton iteration.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(101)
    >>> series_inv(TruncatedSeries.from_ints(k, [5], precision=3))
    81 + O(z^3)
    >>> series_inv(TruncatedSeries.from_ints(k, [0, 1], precision=3))
    Traceback (most recent call last):
    ...
    isogeny2.core.errors.ZeroConstantTermError: Cannot invert a series with zero constant term.

    """
    field, n = f.field, f.precision
    if n == 0:
        return f
    if not np.any(f.constant_term()):
        msg = "Cannot invert a series with zero constant term."
        raise ZeroConstantTermError(msg)
    g = TruncatedSeries(field, field.inv(f.constant_term())[None, :])
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        fg = f.truncate(prec) * _pad_series(g, prec)
        g = _pad_series(g, prec) * (TruncatedSeries.constant(field, 2, prec) - fg)
    return g


def _pad_series(g: TruncatedSeries, n: int) -> TruncatedSeries:
    return TruncatedSeries(g.field, _pad(g.coeffs, n))


def series_sqrt(f: TruncatedSeries, branch: Scalar | Raw | None = None) -> TruncatedSeries:
    """Square root of a series with the leading coefficient ``branch``.

    When ``f`` has valuation ``2m`` the result is ``z**m`` times the root of the unit part, and is known to
    precision ``f.precision - m``. Without a branch, the canonical root of the unit term is used.

    Raises
    ------
    OddValuationError
        If the valuation of ``f`` is odd.

    NonSquareLeadingTermError
        If the unit term is not a square in the field.

    """
    field = f.field
    v = f.valuation()
    if v == f.precision:
        return TruncatedSeries.zero(field, f.precision - v // 2)
    if v % 2:
        msg = f"Series of odd valuation {v} has no square root."
        raise OddValuationError(msg)
    unit = f.divide_by_z(v) if v else f
    lead = unit.constant_term()
    if branch is None:
        root = field.sqrt_raw(lead)
        if root is None:
            msg = f"Leading term {field.format_raw(lead)} is not a square in {field}."
            raise NonSquareLeadingTermError(msg)
    else:
        root = _scalar_raw(field, branch)
        if not field.equal(field.mul(root, root), lead):
            msg = f"Branch {field.format_raw(root)} is not a square root of {field.format_raw(lead)}."
            raise ValueError(msg)

    # inverse square root by Newton: h <- h + h (1 - f h^2) / 2
    n = unit.precision
    half = field.inv(field.from_ints([2])[0])
    h = TruncatedSeries(field, field.inv(root)[None, :])
    prec = 1
    while prec < n:
        prec = min(2 * prec, n)
        h = _pad_series(h, prec)
        error = TruncatedSeries.one(field, prec) - unit.truncate(prec) * h * h
        h = h + (h * error).scale(half)
    result = unit * h
    return result.shift(v // 2) if v else result


def laurent_div(a: TruncatedSeries, b: TruncatedSeries) -> tuple[TruncatedSeries, int]:
    """Quotient of series where ``b`` may have positive valuation.

    Returns ``(q, shift)`` with ``a/b = z**shift * q`` and ``q`` of invertible-or-zero leading part.
    """
    vb = b.valuation()
    if vb == b.precision:
        msg = "Division by a series that is zero to its precision."
        raise ZeroDivisionError(msg)
    va = min(a.valuation(), a.precision)
    unit_b = b.divide_by_z(vb)
    unit_a = a.divide_by_z(va) if va < a.precision else a
    return unit_a * series_inv(unit_b), va - vb


def pade(f: TruncatedSeries, dn: int, dd: int) -> RationalFraction:
    """Fraction ``N/D`` with ``deg N <= dn``, ``deg D <= dd`` and ``N/D = f mod z**(dn + dd + 1)``.

    Extended Euclidean algorithm on ``(z**(dn + dd + 1), f)``, stopped at the first remainder of degree
    at most ``dn``.

    Raises
    ------
    PrecisionTooLowError
        If ``f`` is not known to ``dn + dd + 1`` terms.

    NoSolutionError
        If no such fraction with ``D(0) != 0`` exists.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(101)
    >>> pade(TruncatedSeries.from_ints(k, [0, 2, 0, 1]), 3, 0)
    (x^3 + 2*x)/1

    """
    field = f.field
    n = dn + dd + 1
    if f.precision < n:
        msg = f"Series known to {f.precision} terms, Pade with bounds ({dn}, {dd}) needs {n}."
        raise PrecisionTooLowError(msg)
    r0, r1 = Poly.monomial(field, n), Poly(field, f.coeffs[:n])
    t0, t1 = Poly.zero(field), Poly.constant(field, 1)
    while r1.degree > dn:
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, t0 - q * t1
    if t1.degree > dd or not np.any(t1.coefficient(0)):
        msg = f"No fraction of degrees ({dn}, {dd}) matches the series."
        raise NoSolutionError(msg)
    LOGGER.debug("pade (%d, %d) -> degrees (%d, %d)", dn, dd, r1.degree, t1.degree)
    return RationalFraction(r1, t1)


def poly_sqrt(f: Poly) -> Poly | None:
    """Exact square root of a polynomial, or None when it is not a perfect square.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(101)
    >>> g = Poly.from_ints(k, [1, 0, 1])
    >>> poly_sqrt(g * g)
    x^2 + 1
    >>> poly_sqrt(Poly.x(k)) is None
    True

    """
    field = f.field
    if f.is_zero():
        return f
    v = f.valuation()
    if v % 2 or (f.degree - v) % 2:
        return None
    unit = Poly(field, f.coeffs[v:])
    root = field.sqrt_raw(unit.coefficient(0))
    if root is None:
        return None
    half_degree = unit.degree // 2
    g = series_sqrt(unit.to_series(half_degree + 1), root).to_poly()
    if g * g != unit:
        return None
    return g * Poly.monomial(field, v // 2) if v else g


def rational_sqrt(f: RationalFraction) -> RationalFraction | None:
    """Exact square root of a reduced fraction, or None."""
    field = f.field
    den_root = poly_sqrt(f.den)
    if den_root is None:
        return None
    lead = f.num.leading
    lead_root = field.sqrt_raw(lead) if np.any(lead) else field.zeros()
    if lead_root is None:
        return None
    if f.num.is_zero():
        return f
    num_root = poly_sqrt(f.num.scale(field.inv(lead)))
    if num_root is None:
        return None
    return RationalFraction(num_root.scale(lead_root), den_root)


def hermite_pade(series: Sequence[TruncatedSeries], bounds: Sequence[int]) -> list[Poly]:
    """Polynomials ``P_i``, ``deg P_i <= bounds[i]``, not all zero, with ``sum P_i f_i = 0`` to the common precision.

    Raises
    ------
    NoSolutionError
        If only the zero combination exists.

    """
    field = series[0].field
    n = min(f.precision for f in series)
    columns = []
    for f, bound in zip(series, bounds, strict=True):
        coeffs = f.coeffs[:n]
        for k in range(bound + 1):
            columns.append(np.concatenate([field.zeros((k,)), coeffs[: max(n - k, 0)]])[:n])
    system = np.stack(columns, axis=1)
    kernel = linalg.nullspace(field, system)
    if not len(kernel):
        msg = f"No relation of degrees {list(bounds)} at precision {n}."
        raise NoSolutionError(msg)
    LOGGER.debug("hermite-pade kernel of dimension %d (%d unknowns, %d equations)", len(kernel), system.shape[1], n)
    vector = kernel[0]
    out, start = [], 0
    for bound in bounds:
        out.append(Poly(field, vector[start : start + bound + 1]))
        start += bound + 1
    return out


def poly_powmod(base: Poly, e: int, modulus: Poly) -> Poly:
    """``base**e mod modulus`` by square and multiply."""
    result = Poly.constant(base.field, 1) % modulus
    base = base % modulus
    while e:
        if e & 1:
            result = (result * base) % modulus
        base = (base * base) % modulus
        e >>= 1
    return result


def poly_roots(f: Poly, seed: int = 0) -> list[Raw]:
    """Distinct roots of ``f`` in its field, sorted by coefficient vector (Cantor-Zassenhaus).

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(101)
    >>> x = Poly.x(k)
    >>> [int(r[0]) for r in poly_roots((x - 3) * (x - 7) * (x * x + 2))]
    [3, 7]

    """
    field = f.field
    if f.degree < 1:
        return []
    x = Poly.x(field)
    split = poly_gcd(f, poly_powmod(x, field.order, f) - x)
    rng = np.random.default_rng(seed)
    roots: list[Raw] = []
    pending = [split]
    while pending:
        g = pending.pop()
        if g.degree < 1:
            continue
        if g.degree == 1:
            roots.append(field.neg(field.div(g.coefficient(0), g.coefficient(1))))
            continue
        shift = Poly.from_elements(field, [field.random_raw(rng), field.ones()])
        h = poly_gcd(g, poly_powmod(shift, (field.order - 1) // 2, g) - 1)
        if 0 < h.degree < g.degree:
            pending.extend([h, g // h])
        else:
            pending.append(g)
    return sorted(roots, key=lambda r: tuple(int(c) for c in r))
