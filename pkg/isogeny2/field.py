"""Finite fields of odd characteristic and their quadratic towers.

Elements are handled in two ways:

* raw numpy arrays whose trailing axis has length ``field.degree`` (the coefficient vector over the prime field,
  tower coordinates nested as ``(a0, a1)`` halves). All heavy code (series, matrices) works on raw arrays so that whole
  vectors of elements are multiplied at once.
* :class:`FieldElement`, a small immutable wrapper used at the API boundary.

Examples
--------
>>> from isogeny2.field import PrimeField, adjoin_sqrt
>>> k = PrimeField(56311)
>>> k.sqrt(k(4))
2
>>> K, alpha = adjoin_sqrt(k, minimal_poly=(2, 1))
>>> alpha * alpha + alpha + 2
0
"""

import functools
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any, Union

import numpy as np
import sympy

from isogeny2.core.errors import DegreeOverflowError, SquareInFieldError
from isogeny2.core.names import MAX_EXTENSION_DEGREE
from isogeny2.core.options import option_manager

logging.basicConfig(level=logging.INFO)
LOGGER = logging.getLogger(__name__)
LOGGER.setLevel(logging.INFO)

# products of two reduced coefficients must fit in int64
MAX_MODULUS = 2**31

Raw = np.ndarray
ElementLike = Union["FieldElement", int, Sequence[int], np.ndarray]


class FiniteField:
    """Operations shared by prime fields and quadratic extensions.

    Subclasses provide ``p``, ``degree``, ``_mul`` and ``_convolve``.
    """

    p: int
    degree: int

    # construction of raw values

    @property
    def order(self) -> int:
        return self.p**self.degree

    @property
    def prime_field(self) -> "PrimeField":
        return PrimeField(self.p)

    def zeros(self, shape: tuple[int, ...] = ()) -> Raw:
        return np.zeros((*shape, self.degree), dtype=np.int64)

    def ones(self, shape: tuple[int, ...] = ()) -> Raw:
        out = self.zeros(shape)
        out[..., 0] = 1
        return out

    def from_ints(self, values: Iterable[int] | np.ndarray) -> Raw:
        """Embed integers (any shape) as raw elements of the prime subfield."""
        ints = np.asarray([int(v) % self.p for v in np.ravel(np.asarray(values, dtype=object))], dtype=np.int64)
        shape = np.shape(np.asarray(values, dtype=object))
        out = self.zeros(shape)
        out[..., 0] = ints.reshape(shape)
        return out

    def raw(self, value: ElementLike) -> Raw:
        """Coerce an int, a coefficient sequence or a FieldElement to a raw element."""
        if isinstance(value, FieldElement):
            return self.embed(value.raw, value.field)
        if isinstance(value, int | np.integer):
            return self.from_ints([int(value)])[0]
        coeffs = np.asarray(value, dtype=object).ravel()
        if len(coeffs) > self.degree:
            msg = f"{len(coeffs)} coefficients given for a field of degree {self.degree}."
            raise ValueError(msg)
        out = self.zeros()
        out[: len(coeffs)] = [int(c) % self.p for c in coeffs]
        return out

    def __call__(self, value: ElementLike) -> "FieldElement":
        return FieldElement(self, self.raw(value))

    def element(self, raw: Raw) -> "FieldElement":
        return FieldElement(self, raw)

    # arithmetic on raw arrays (broadcasting over leading axes)

    def add(self, a: Raw, b: Raw) -> Raw:
        return (a + b) % self.p

    def sub(self, a: Raw, b: Raw) -> Raw:
        return (a - b) % self.p

    def neg(self, a: Raw) -> Raw:
        return (-a) % self.p

    def mul(self, a: Raw, b: Raw) -> Raw:
        return self._mul(a, b)

    def scale(self, a: Raw, k: int) -> Raw:
        """Multiply by an integer."""
        return (a * (int(k) % self.p)) % self.p

    def sum(self, a: Raw, axis: int = 0) -> Raw:
        return np.sum(a, axis=axis) % self.p

    def convolve(self, a: Raw, b: Raw) -> Raw:
        """Product of two coefficient sequences (axis 0), as polynomials."""
        if len(a) == 0 or len(b) == 0:
            return self.zeros((0,))
        return self._convolve(a, b)

    def is_zero(self, a: Raw) -> np.ndarray:
        return ~np.any(a, axis=-1)

    def equal(self, a: Raw, b: Raw) -> bool:
        return bool(np.array_equal(a % self.p, b % self.p))

    def pow(self, a: Raw, e: int) -> Raw:
        if e < 0:
            return self.pow(self.inv(a), -e)
        result = self.ones(a.shape[:-1])
        base = a
        while e:
            if e & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            e >>= 1
        return result

    def inv(self, a: Raw) -> Raw:
        msg = "subclasses implement inv"
        raise NotImplementedError(msg)

    def div(self, a: Raw, b: Raw) -> Raw:
        return self.mul(a, self.inv(b))

    # squares

    def is_square(self, a: Raw) -> bool:
        if not np.any(a):
            return True
        return self.equal(self.pow(a, (self.order - 1) // 2), self.ones())

    def sqrt(self, a: ElementLike) -> "FieldElement | None":
        """Canonical square root, or None when ``a`` is not a square.

        Of the two roots, the one with the lexicographically smaller coefficient vector is returned.

        Examples
        --------
        >>> from isogeny2.field import PrimeField
        >>> k = PrimeField(56311)
        >>> k.sqrt(k(4)), k.sqrt(k(0))
        (2, 0)
        >>> k.sqrt(k(k.find_nonsquare())) is None
        True

        """
        root = self.sqrt_raw(self.raw(a))
        return None if root is None else self.element(root)

    def sqrt_raw(self, a: Raw) -> Raw | None:
        if not np.any(a):
            return self.zeros()
        if not self.is_square(a):
            return None
        root = _tonelli_shanks(self, a, self.raw(self.find_nonsquare()))
        return canonical_sign(self, root)

    def find_nonsquare(self) -> "Raw":
        """A non-square drawn with the option seed, fixed per field."""
        return _nonsquare(self, int(option_manager.get_option("seed") or 0))

    def frobenius(self, a: Raw) -> Raw:
        return self.pow(a, self.p)

    def random_raw(self, rng: np.random.Generator, shape: tuple[int, ...] = ()) -> Raw:
        return rng.integers(0, self.p, size=(*shape, self.degree), dtype=np.int64)

    def random_element(self, rng: np.random.Generator) -> "FieldElement":
        return self.element(self.random_raw(rng))

    # towers

    def embed(self, a: Raw, source: "FiniteField") -> Raw:
        """Image of a raw element of a subfield ``source`` in this field (coefficientwise)."""
        if source == self:
            return a
        msg = f"{source} is not a subfield of {self}."
        raise ValueError(msg)

    def contains(self, sub: "FiniteField") -> bool:
        return sub == self

    def tower(self) -> list["FiniteField"]:
        return [self]

    def format_raw(self, a: Raw, name: str = "t") -> str:
        return str(int(a[0]))


@dataclass(frozen=True)
class PrimeField(FiniteField):
    """The prime field F_p, p an odd prime below 2**31.

    Examples
    --------
    >>> k = PrimeField(7)
    >>> k(3) * k(5)
    1
    >>> k.is_square(k.raw(3))
    False

    """

    p: int

    def __post_init__(self) -> None:
        if self.p < 3 or self.p % 2 == 0 or not sympy.isprime(self.p):  # noqa: PLR2004
            msg = f"Modulus {self.p} is not an odd prime."
            raise ValueError(msg)
        if self.p >= MAX_MODULUS:
            msg = f"Modulus {self.p} does not fit the single-word arithmetic (p < 2**31)."
            raise ValueError(msg)

    @property
    def degree(self) -> int:  # type: ignore[override]
        return 1

    def _mul(self, a: Raw, b: Raw) -> Raw:
        return (a * b) % self.p

    def _convolve(self, a: Raw, b: Raw) -> Raw:
        x, y = a[:, 0], b[:, 0]
        bound = (self.p - 1) ** 2 * min(len(x), len(y))
        if bound < 2**63:
            out = np.convolve(x, y) % self.p
        else:
            out = (np.convolve(x.astype(object), y.astype(object)) % self.p).astype(np.int64)
        return out[:, None]

    def inv(self, a: Raw) -> Raw:
        value = int(a[..., 0]) if a.ndim == 1 else None
        if value is None:
            return np.stack([self.inv(x) for x in a])
        if value % self.p == 0:
            msg = "Division by zero in the prime field."
            raise ZeroDivisionError(msg)
        return np.array([pow(value, -1, self.p)], dtype=np.int64)

    def __str__(self) -> str:
        return f"F_{self.p}"


@dataclass(frozen=True)
class ExtField(FiniteField):
    """Quadratic extension ``base[t]/(t^2 + c1 t + c0)``.

    ``c0`` and ``c1`` are raw coefficient tuples over ``base``.

    Examples
    --------
    >>> k = PrimeField(7)
    >>> K, t = adjoin_sqrt(k, k(3))
    >>> t * t
    3
    >>> K.degree
    2

    """

    base: FiniteField
    c0: tuple[int, ...]
    c1: tuple[int, ...]
    name: str = "t"
    _c0: Raw = field(init=False, repr=False, compare=False, hash=False)
    _c1: Raw = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_c0", np.asarray(self.c0, dtype=np.int64))
        object.__setattr__(self, "_c1", np.asarray(self.c1, dtype=np.int64))

    @property
    def p(self) -> int:  # type: ignore[override]
        return self.base.p

    @property
    def degree(self) -> int:  # type: ignore[override]
        return 2 * self.base.degree

    def _split(self, a: Raw) -> tuple[Raw, Raw]:
        h = self.base.degree
        return a[..., :h], a[..., h:]

    def _reduce(self, low: Raw, mid: Raw, high: Raw) -> Raw:
        # t^2 = -c1 t - c0
        base = self.base
        r0 = base.sub(low, base.mul(np.broadcast_to(self._c0, high.shape), high))
        r1 = base.sub(mid, base.mul(np.broadcast_to(self._c1, high.shape), high))
        return np.concatenate([r0, r1], axis=-1)

    def _mul(self, a: Raw, b: Raw) -> Raw:
        base = self.base
        a0, a1 = self._split(a)
        b0, b1 = self._split(b)
        m00 = base.mul(a0, b0)
        m11 = base.mul(a1, b1)
        cross = base.sub(base.sub(base.mul(base.add(a0, a1), base.add(b0, b1)), m00), m11)
        m00, cross, m11 = np.broadcast_arrays(m00, cross, m11)
        return self._reduce(m00, cross, m11)

    def _convolve(self, a: Raw, b: Raw) -> Raw:
        # Karatsuba over the tower, numpy convolution at the bottom
        base = self.base
        a0, a1 = self._split(a)
        b0, b1 = self._split(b)
        m00 = base.convolve(a0, b0)
        m11 = base.convolve(a1, b1)
        cross = base.sub(base.sub(base.convolve(base.add(a0, a1), base.add(b0, b1)), m00), m11)
        return self._reduce(m00, cross, m11)

    def conjugate(self, a: Raw) -> Raw:
        base = self.base
        a0, a1 = self._split(a)
        return np.concatenate([base.sub(a0, base.mul(np.broadcast_to(self._c1, a1.shape), a1)), base.neg(a1)], axis=-1)

    def norm(self, a: Raw) -> Raw:
        """Norm to the base field."""
        return self._split(self.mul(a, self.conjugate(a)))[0]

    def inv(self, a: Raw) -> Raw:
        n = self.norm(a)
        n_inv = self.base.inv(n)
        return self.mul(self.conjugate(a), self.embed(n_inv, self.base))

    def embed(self, a: Raw, source: FiniteField) -> Raw:
        if source == self:
            return a
        lifted = self.base.embed(a, source)
        return np.concatenate([lifted, np.zeros_like(lifted)], axis=-1)

    def contains(self, sub: FiniteField) -> bool:
        return sub == self or self.base.contains(sub)

    def tower(self) -> list[FiniteField]:
        return [*self.base.tower(), self]

    def format_raw(self, a: Raw, name: str = "t") -> str:
        a0, a1 = self._split(a)
        high = self.base.format_raw(a1, name)
        low = self.base.format_raw(a0, name)
        if not np.any(a1):
            return low
        head = f"{self.name}" if high == "1" else f"({high})*{self.name}" if "+" in high else f"{high}*{self.name}"
        return head if not np.any(a0) else f"{head} + {low}"

    def __str__(self) -> str:
        return f"{self.base}[{self.name}]"


class FieldElement:
    """Immutable element of a finite field, with Python operators."""

    __slots__ = ("field", "raw")

    def __init__(self, field: FiniteField, raw: Raw) -> None:
        self.field = field
        self.raw = np.asarray(raw, dtype=np.int64) % field.p
        self.raw.setflags(write=False)

    def _coerce(self, other: Any) -> tuple[FiniteField, Raw, Raw]:
        if isinstance(other, FieldElement):
            if other.field == self.field:
                return self.field, self.raw, other.raw
            if self.field.contains(other.field):
                return self.field, self.raw, self.field.embed(other.raw, other.field)
            if other.field.contains(self.field):
                return other.field, other.field.embed(self.raw, self.field), other.raw
            msg = f"Elements of {self.field} and {other.field} cannot be combined."
            raise ValueError(msg)
        return self.field, self.raw, self.field.raw(other)

    def __add__(self, other: Any) -> "FieldElement":
        k, a, b = self._coerce(other)
        return FieldElement(k, k.add(a, b))

    __radd__ = __add__

    def __sub__(self, other: Any) -> "FieldElement":
        k, a, b = self._coerce(other)
        return FieldElement(k, k.sub(a, b))

    def __rsub__(self, other: Any) -> "FieldElement":
        k, a, b = self._coerce(other)
        return FieldElement(k, k.sub(b, a))

    def __mul__(self, other: Any) -> "FieldElement":
        k, a, b = self._coerce(other)
        return FieldElement(k, k.mul(a, b))

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "FieldElement":
        k, a, b = self._coerce(other)
        return FieldElement(k, k.div(a, b))

    def __rtruediv__(self, other: Any) -> "FieldElement":
        k, a, b = self._coerce(other)
        return FieldElement(k, k.div(b, a))

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, self.field.neg(self.raw))

    def __pow__(self, e: int) -> "FieldElement":
        return FieldElement(self.field, self.field.pow(self.raw, e))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement | int | np.integer):
            try:
                _, a, b = self._coerce(other)
            except ValueError:
                return False
            return bool(np.array_equal(a, b))
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.field.p, tuple(self.coeffs)))

    def __bool__(self) -> bool:
        return bool(np.any(self.raw))

    def __int__(self) -> int:
        if np.any(self.raw[1:]):
            msg = f"{self} is not in the prime field."
            raise ValueError(msg)
        return int(self.raw[0])

    def __repr__(self) -> str:
        return self.field.format_raw(self.raw)

    @property
    def coeffs(self) -> list[int]:
        return [int(c) for c in self.raw]

    def is_square(self) -> bool:
        return self.field.is_square(self.raw)

    def sqrt(self) -> "FieldElement | None":
        return self.field.sqrt(self)

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.raw))

    def frobenius(self) -> "FieldElement":
        return FieldElement(self.field, self.field.frobenius(self.raw))

    def in_prime_field(self) -> bool:
        return not np.any(self.raw[1:])


def canonical_sign(field: FiniteField, root: Raw) -> Raw:
    """Return whichever of ``root``, ``-root`` has the lexicographically smaller coefficient vector."""
    other = field.neg(root)
    return root if tuple(int(c) for c in root) <= tuple(int(c) for c in other) else other


def _tonelli_shanks(field: FiniteField, a: Raw, nonsquare: Raw) -> Raw:
    q = field.order
    s, t = 0, q - 1
    while t % 2 == 0:
        s, t = s + 1, t // 2

    one = field.ones()
    x = field.pow(a, (t + 1) // 2)
    b = field.pow(a, t)
    g = field.pow(nonsquare, t)
    r = s
    while not field.equal(b, one):
        m, b2 = 0, b
        while not field.equal(b2, one):
            b2 = field.mul(b2, b2)
            m += 1
        gs = field.pow(g, 2 ** (r - m - 1))
        x = field.mul(x, gs)
        g = field.mul(gs, gs)
        b = field.mul(b, g)
        r = m
    return x


@functools.lru_cache(maxsize=64)
def _nonsquare(field: FiniteField, seed: int) -> Raw:
    rng = np.random.default_rng(seed)
    while True:
        candidate = field.random_raw(rng)
        if np.any(candidate) and not field.is_square(candidate):
            candidate.setflags(write=False)
            return candidate


def sqrt(a: FieldElement) -> FieldElement | None:
    """Canonical square root of ``a`` in its field, or None."""
    return a.field.sqrt(a)


def adjoin_sqrt(
    field: FiniteField,
    a: ElementLike | None = None,
    *,
    minimal_poly: tuple[ElementLike, ElementLike] | None = None,
    name: str | None = None,
) -> tuple[ExtField, FieldElement]:
    """Adjoin a square root of a non-square ``a``, or a root of ``t^2 + c1 t + c0``.

    Parameters
    ----------
    field : FiniteField
        Field to extend.

    a : element, optional
        Non-square to adjoin the square root of.

    minimal_poly : (c0, c1), optional
        Coefficients of an irreducible monic quadratic ``t^2 + c1 t + c0`` presenting the extension instead.

    name : str, optional
        Name of the generator used when printing.

    Returns
    -------
    tuple
        The extension and the image of its generator.

    Examples
    --------
    >>> k = PrimeField(7)
    >>> K, t = adjoin_sqrt(k, 3)
    >>> K2, s = adjoin_sqrt(K, K.find_nonsquare())
    >>> K2.degree
    4
    >>> adjoin_sqrt(k, 2)
    Traceback (most recent call last):
    ...
    isogeny2.core.errors.SquareInFieldError: 2 is a square in F_7; use sqrt instead.

    """
    if 2 * field.degree > MAX_EXTENSION_DEGREE:
        msg = f"Adjoining to {field} would exceed degree {MAX_EXTENSION_DEGREE} over F_{field.p}."
        raise DegreeOverflowError(msg)

    if minimal_poly is not None:
        c0, c1 = (field.raw(c) for c in minimal_poly)
        disc = field.sub(field.mul(c1, c1), field.scale(c0, 4))
        if field.is_square(disc):
            msg = "The minimal polynomial given is reducible."
            raise SquareInFieldError(msg)
        generator_name = name or "alpha"
    else:
        if a is None:
            msg = "Give either an element to adjoin the square root of, or a minimal polynomial."
            raise ValueError(msg)
        value = field.raw(a)
        if field.is_square(value):
            msg = f"{field.format_raw(value)} is a square in {field}; use sqrt instead."
            raise SquareInFieldError(msg)
        c0, c1 = field.neg(value), field.zeros()
        generator_name = name or f"t{field.degree}"

    extension = ExtField(field, tuple(int(c) for c in c0), tuple(int(c) for c in c1), generator_name)
    generator = extension.zeros()
    generator[field.degree] = 1
    LOGGER.debug("adjoined %s to %s", generator_name, field)
    return extension, extension.element(generator)


def embed(a: FieldElement, target: FiniteField) -> FieldElement:
    """Image of ``a`` in an extension ``target`` of its field."""
    return target.element(target.embed(a.raw, a.field))
