"""Modular equations: parsing, reduction modulo p, evaluation and derivative matrices.

A set is stored as a long table of terms, one row per monomial:

    Poly  L1 ... Ln  R1 ... Rn  Coefficient

where ``L*`` are the exponents of the left invariants, ``R*`` those of the right (primed) invariants and
``Coefficient`` is an exact Python integer.
"""

import logging
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from isogeny2.core.errors import ModeqParseError, WrongArityError
from isogeny2.core.names import MODEQ_ARITY, MODEQ_SIEGEL, VALID_MODEQ_KIND_OPTIONS
from isogeny2.core.names import VALID_MODEQ_KIND_TYPE as ModeqKind
from isogeny2.field import FieldElement, FiniteField, Raw

logging.basicConfig(level=logging.INFO)
LOGGER = logging.getLogger(__name__)
LOGGER.setLevel(logging.INFO)

POLY_COL = "Poly"
COEFFICIENT_COL = "Coefficient"


def exponent_columns(nvars: int) -> list[str]:
    """Names of the exponent columns, left invariants first.

    Examples
    --------
    >>> exponent_columns(2)
    ['L1', 'L2', 'R1', 'R2']

    """
    return [f"L{i + 1}" for i in range(nvars)] + [f"R{i + 1}" for i in range(nvars)]


@dataclass(frozen=True)
class DerivativePair:
    """Left and right derivative matrices ``(dPsi_n/dJ_k)`` and ``(dPsi_n/dJ'_k)`` at a point."""

    d_left: Raw
    d_right: Raw


@dataclass(frozen=True)
class ModularEquationSet:
    """Modular equations with integer coefficients.

    ``level`` is ``(ell,)`` for Siegel sets and ``(norm, trace)`` of beta for Hilbert sets over Q(sqrt 5).
    """

    kind: ModeqKind
    level: tuple[int, ...]
    nvars: int
    terms: pd.DataFrame
    _reductions: dict[int, tuple[np.ndarray, np.ndarray, np.ndarray]] = field(
        default_factory=dict, compare=False, repr=False
    )

    def __post_init__(self) -> None:
        if self.kind not in VALID_MODEQ_KIND_OPTIONS:
            msg = f"Unknown modular equation kind {self.kind}; expected one of {VALID_MODEQ_KIND_OPTIONS}."
            raise ModeqParseError(msg)
        if self.nvars != MODEQ_ARITY[self.kind]:
            msg = f"A {self.kind} set has {MODEQ_ARITY[self.kind]} variables, not {self.nvars}."
            raise WrongArityError(msg)

    @property
    def count(self) -> int:
        return int(self.terms[POLY_COL].nunique())

    @property
    def ell(self) -> int:
        if self.kind != MODEQ_SIEGEL:
            msg = "Only Siegel sets have a level ell."
            raise ValueError(msg)
        return self.level[0]

    def degrees(self) -> pd.DataFrame:
        """Degree of each polynomial in each variable."""
        return self.terms.groupby(POLY_COL)[exponent_columns(self.nvars)].max()

    def reduced(self, p: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Polynomial indices, exponents and coefficients mod p of the terms whose coefficient survives.

        Raises
        ------
        ModeqParseError
            If a whole polynomial vanishes modulo p.

        """
        if p not in self._reductions:
            coefficients = np.array([int(c) % p for c in self.terms[COEFFICIENT_COL]], dtype=np.int64)
            keep = coefficients != 0
            polys = self.terms[POLY_COL].to_numpy(dtype=np.int64)[keep]
            missing = set(range(self.count)) - set(polys.tolist())
            if missing:
                msg = f"Polynomials {sorted(missing)} vanish modulo {p}: the prime divides their content."
                raise ModeqParseError(msg)
            exponents = self.terms[exponent_columns(self.nvars)].to_numpy(dtype=np.int64)[keep]
            self._reductions[p] = (polys, exponents, coefficients[keep])
        return self._reductions[p]

    def to_text(self) -> str:
        """The set in the line-based text format read by :func:`from_string`."""
        head = f"kind {self.kind} {' '.join(str(x) for x in self.level)}"
        lines = [head, f"vars {self.nvars}"]
        columns = exponent_columns(self.nvars)
        for n, group in self.terms.groupby(POLY_COL, sort=True):
            lines.append(f"poly {int(n) + 1} {len(group)}")  # type: ignore[call-overload]
            lines.extend(
                " ".join(str(int(e)) for e in row[columns]) + f" {int(row[COEFFICIENT_COL])}"
                for _, row in group.iterrows()
            )
        return "\n".join(lines) + "\n"


def _tokens(text: str) -> list[tuple[int, list[str]]]:
    out = []
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if line:
            out.append((number, line.split()))
    return out


def _ints(number: int, words: Sequence[str]) -> list[int]:
    try:
        return [int(w) for w in words]
    except ValueError:
        msg = f"Line {number}: expected integers, got {' '.join(words)!r}."
        raise ModeqParseError(msg) from None


def from_string(s: str) -> ModularEquationSet:
    """Parse a modular-equation set.

    Examples
    --------
    >>> s = '''kind hilbert_q5 1 2
    ... vars 2
    ... poly 1 2
    ... 0 0 1 0 1
    ... 1 0 0 0 -1
    ... poly 2 2
    ... 0 0 0 1 1
    ... 0 1 0 0 -1'''
    >>> m = from_string(s)
    >>> m.count, m.level, len(m.terms)
    (2, (1, 2), 4)
    >>> from_string("kind siegel 2\\nvars 3\\npoly 1 1\\n1 0 0 0 1 5")
    Traceback (most recent call last):
    ...
    isogeny2.core.errors.WrongArityError: Line 4: monomial has 5 exponents, expected 6.

    """
    lines = _tokens(s)
    if len(lines) < 2 or lines[0][1][0] != "kind" or lines[1][1][0] != "vars":  # noqa: PLR2004
        msg = "A modular-equation file starts with a 'kind' line and a 'vars' line."
        raise ModeqParseError(msg)

    (number, head), (vars_number, vars_line) = lines[:2]
    kind = head[1] if len(head) > 1 else ""
    if kind not in VALID_MODEQ_KIND_OPTIONS:
        msg = f"Line {number}: unknown kind {kind!r}; expected one of {VALID_MODEQ_KIND_OPTIONS}."
        raise ModeqParseError(msg)
    level = tuple(_ints(number, head[2:]))
    if len(level) != (1 if kind == MODEQ_SIEGEL else 2):
        msg = f"Line {number}: a {kind} set is labelled by {'ell' if kind == MODEQ_SIEGEL else 'norm and trace'}."
        raise ModeqParseError(msg)
    (nvars,) = _ints(vars_number, vars_line[1:2])
    if nvars != MODEQ_ARITY[kind]:
        msg = f"Line {vars_number}: a {kind} set has {MODEQ_ARITY[kind]} variables, not {nvars}."
        raise WrongArityError(msg)

    rows: list[list[int]] = []
    position = 2
    expected_poly = 1
    while position < len(lines):
        number, words = lines[position]
        if words[0] != "poly" or len(words) != 3:  # noqa: PLR2004
            msg = f"Line {number}: expected 'poly <index> <num_terms>'."
            raise ModeqParseError(msg)
        index, num_terms = _ints(number, words[1:])
        if index != expected_poly:
            msg = f"Line {number}: polynomial {index} found where {expected_poly} was expected."
            raise ModeqParseError(msg)
        if position + num_terms >= len(lines) or num_terms <= 0:
            msg = f"Line {number}: polynomial {index} announces {num_terms} terms."
            raise ModeqParseError(msg)
        for number_term, term in lines[position + 1 : position + 1 + num_terms]:
            if term[0] == "poly":
                msg = f"Line {number_term}: polynomial {index} has fewer terms than announced."
                raise ModeqParseError(msg)
            if len(term) != 2 * nvars + 1:
                msg = f"Line {number_term}: monomial has {len(term) - 1} exponents, expected {2 * nvars}."
                raise WrongArityError(msg)
            values = _ints(number_term, term)
            if min(values[:-1]) < 0:
                msg = f"Line {number_term}: negative exponent."
                raise ModeqParseError(msg)
            rows.append([index - 1, *values])
        position += 1 + num_terms
        expected_poly += 1

    if expected_poly - 1 != nvars:
        msg = f"A {kind} set holds {nvars} polynomials, found {expected_poly - 1}."
        raise WrongArityError(msg)

    columns = [POLY_COL, *exponent_columns(nvars)]
    terms = pd.DataFrame([r[:-1] for r in rows], columns=columns, dtype=np.int64)
    terms[COEFFICIENT_COL] = pd.Series([r[-1] for r in rows], dtype=object)
    LOGGER.debug("parsed %s set %s with %d terms", kind, level, len(terms))
    return ModularEquationSet(kind, level, nvars, terms)  # type: ignore[arg-type]


def load_modeq(path: str | Path) -> ModularEquationSet:
    """Read a modular-equation file."""
    path = Path(path)
    modeq = from_string(path.read_text(encoding="utf-8"))
    LOGGER.info("loaded %s modular equations %s from %s", modeq.kind, modeq.level, path.name)
    return modeq


def _point(modeq: ModularEquationSet, left: Sequence[FieldElement], right: Sequence[FieldElement]) -> Raw:
    if len(left) != modeq.nvars or len(right) != modeq.nvars:
        msg = f"Expected {modeq.nvars} invariants on each side, got {len(left)} and {len(right)}."
        raise WrongArityError(msg)
    field = left[0].field
    return np.stack([field.raw(x) for x in (*left, *right)])


def _monomial_values(field: FiniteField, point: Raw, exponents: np.ndarray) -> tuple[Raw, Raw]:
    """Values of all monomials, and of their partial derivatives along each variable (without the coefficient)."""
    nterms, nvariables = exponents.shape
    top = int(exponents.max(initial=0))
    powers = field.zeros((nvariables, top + 1))
    powers[:, 0] = field.ones()
    for e in range(1, top + 1):
        powers[:, e] = field.mul(powers[:, e - 1], point)
    factors = powers[np.arange(nvariables)[None, :], exponents]
    lowered = powers[np.arange(nvariables)[None, :], np.maximum(exponents - 1, 0)]

    values = field.ones((nterms,))
    for v in range(nvariables):
        values = field.mul(values, factors[:, v])
    partials = field.zeros((nvariables, nterms))
    for k in range(nvariables):
        out = field.from_ints(exponents[:, k] % field.p)
        for v in range(nvariables):
            out = field.mul(out, lowered[:, v] if v == k else factors[:, v])
        partials[k] = out
    return values, partials


def evaluate_and_differentiate(
    modeq: ModularEquationSet, left: Sequence[FieldElement], right: Sequence[FieldElement]
) -> tuple[list[FieldElement], DerivativePair]:
    """Values of the equations at ``(left, right)`` and the derivative matrices there.

    Examples
    --------
    >>> from isogeny2.core import linalg
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(101)
    >>> m = from_string("kind hilbert_q5 1 2\\nvars 2\\npoly 1 2\\n0 0 1 0 1\\n1 0 0 0 -1\\npoly 2 2\\n0 0 0 1 1\\n0 1 0 0 -1")
    >>> values, derivatives = evaluate_and_differentiate(m, [k(1), k(2)], [k(1), k(2)])
    >>> values
    [0, 0]
    >>> linalg.to_ints(derivatives.d_left), linalg.to_ints(derivatives.d_right)
    ([[100, 0], [0, 100]], [[1, 0], [0, 1]])

    """
    field = left[0].field
    point = _point(modeq, left, right)
    polys, exponents, coefficients = modeq.reduced(field.p)
    coefficients_raw = field.from_ints(coefficients)
    values, partials = _monomial_values(field, point, exponents)
    values = field.mul(values, coefficients_raw)
    partials = field.mul(partials, np.broadcast_to(coefficients_raw, partials.shape))

    n = modeq.nvars
    totals = field.zeros((modeq.count,))
    jacobian = field.zeros((modeq.count, 2 * n))
    for i in range(modeq.count):
        mask = polys == i
        totals[i] = field.sum(values[mask])
        jacobian[i] = field.sum(np.swapaxes(partials[:, mask], 0, 1))
    derivatives = DerivativePair(jacobian[:, :n], jacobian[:, n:])
    return [field.element(v) for v in totals], derivatives


@dataclass(frozen=True)
class DualNumber:
    """Element ``a + b eps`` of ``k[eps]/(eps^2)``."""

    a: FieldElement
    b: FieldElement

    def __add__(self, other: "DualNumber") -> "DualNumber":
        return DualNumber(self.a + other.a, self.b + other.b)

    def __sub__(self, other: "DualNumber") -> "DualNumber":
        return DualNumber(self.a - other.a, self.b - other.b)

    def __mul__(self, other: Any) -> "DualNumber":
        if isinstance(other, DualNumber):
            return DualNumber(self.a * other.a, self.a * other.b + self.b * other.a)
        return DualNumber(self.a * other, self.b * other)

    def __pow__(self, e: int) -> "DualNumber":
        if e == 0:
            return DualNumber(self.a.field(1), self.a.field(0))
        return DualNumber(self.a**e, self.a ** (e - 1) * self.b * e)


def evaluate_dual(
    modeq: ModularEquationSet,
    left: Sequence[FieldElement],
    right: Sequence[FieldElement],
    direction: Sequence[FieldElement],
) -> list[DualNumber]:
    """Evaluate the equations at ``(left, right) + eps * direction`` term by term.

    The eps-parts are the directional derivatives; this is an independent check of
    :func:`evaluate_and_differentiate`.
    """
    field = left[0].field
    variables = [DualNumber(x, d) for x, d in zip((*left, *right), direction, strict=True)]
    zero = DualNumber(field(0), field(0))
    totals = [zero] * modeq.count
    columns = exponent_columns(modeq.nvars)
    for row in modeq.terms.itertuples(index=False):
        term = DualNumber(field(int(getattr(row, COEFFICIENT_COL))), field(0))
        for variable, column in zip(variables, columns, strict=True):
            term = term * variable ** int(getattr(row, column))
        totals[int(getattr(row, POLY_COL))] = totals[int(getattr(row, POLY_COL))] + term
    return totals


def clear_denominator(modeq: ModularEquationSet, factor: Mapping[tuple[int, ...], int]) -> ModularEquationSet:
    """Multiply every equation by the polynomial ``factor``, given as ``{exponents: coefficient}``.

    Exponent tuples have one entry per column ``L1 ... Rn``.
    """
    columns = exponent_columns(modeq.nvars)
    pieces = []
    for exponents, coefficient in factor.items():
        if len(exponents) != len(columns):
            msg = f"Factor monomial {exponents} has {len(exponents)} exponents, expected {len(columns)}."
            raise WrongArityError(msg)
        shifted = modeq.terms.copy()
        shifted[columns] = shifted[columns] + np.asarray(exponents, dtype=np.int64)
        shifted[COEFFICIENT_COL] = shifted[COEFFICIENT_COL].map(lambda c, k=coefficient: int(c) * k)
        pieces.append(shifted)
    combined = pd.concat(pieces, ignore_index=True)
    terms = combined.groupby([POLY_COL, *columns], as_index=False, sort=True)[COEFFICIENT_COL].agg(
        lambda s: sum(int(c) for c in s)
    )
    terms = terms[terms[COEFFICIENT_COL] != 0].reset_index(drop=True)
    terms[COEFFICIENT_COL] = terms[COEFFICIENT_COL].astype(object)
    return ModularEquationSet(modeq.kind, modeq.level, modeq.nvars, terms)


def identity_correspondence(kind: ModeqKind) -> ModularEquationSet:
    """The equations ``J'_k - J_k``; their derivative matrices are ``-Id`` and ``Id``."""
    n = MODEQ_ARITY[kind]
    lines = [f"kind {kind} {'1' if kind == MODEQ_SIEGEL else '1 2'}", f"vars {n}"]
    for k in range(n):
        right = " ".join("1" if i == n + k else "0" for i in range(2 * n))
        left = " ".join("1" if i == k else "0" for i in range(2 * n))
        lines += [f"poly {k + 1} 2", f"{right} 1", f"{left} -1"]
    return from_string("\n".join(lines))

