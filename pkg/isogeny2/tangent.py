"""Tangent matrices of isogenies from derivatives of modular equations.

In the Siegel case the deformation matrix ``D = -DtauJ(C')^-1 DR^-1 DL DtauJ(C)`` satisfies ``Sym^2(dphi) = ell D``; in
the Hilbert case over Q(sqrt 5) the tangent matrix is diagonal and
``DL DtG(C) = -DR DtG(C') Diag(1/beta, 1/beta_bar) dphi^2``.
"""

import logging
from collections.abc import Sequence
from dataclasses import dataclass, replace

import numpy as np

from isogeny2.core import linalg
from isogeny2.core.errors import InconsistentChainRuleError, NonDiagonalSolutionError, SingularMatrixError
from isogeny2.covariants import sym2
from isogeny2.field import FieldElement, FiniteField, Raw, adjoin_sqrt, canonical_sign

logging.basicConfig(level=logging.INFO)
LOGGER = logging.getLogger(__name__)
LOGGER.setLevel(logging.INFO)

# columns of DtauJ kept on the Hilbert locus
HILBERT_SELECTOR = ((1, 0), (0, 0), (0, 1))


@dataclass(frozen=True)
class TangentCandidate:
    """A candidate tangent matrix, the field it is written over and the branch it comes from.

    ``multiplier`` is m when the matrix is the tangent of ``[m]``.
    """

    field: FiniteField
    matrix: Raw
    tag: str
    multiplier: int | None = None

    def entries(self) -> list[list[FieldElement]]:
        return [[self.field.element(x) for x in row] for row in self.matrix]

    def __repr__(self) -> str:
        rows = ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in self.entries())
        return f"TangentCandidate({self.tag}: [{rows}])"


def deformation_matrix_siegel(d_left: Raw, d_right: Raw, dtau_j_c: Raw, dtau_j_cp: Raw, field: FiniteField) -> Raw:
    """The deformation matrix ``-DtauJ(C')^-1 DR^-1 DL DtauJ(C)``.

    Raises
    ------
    SingularMatrixError
        Naming the first factor found singular.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(101)
    >>> one = linalg.identity(k, 3)
    >>> linalg.to_ints(deformation_matrix_siegel(k.neg(one), one, one, one, k))
    [[1, 0, 0], [0, 1, 0], [0, 0, 1]]

    """
    for m, name in ((d_left, "left derivative matrix DL"), (dtau_j_c, "matrix DtauJ(C)")):
        if not np.any(linalg.det(field, m)):
            msg = f"The {name} is singular."
            raise SingularMatrixError(msg)
    inv_right = linalg.inverse(field, d_right, "right derivative matrix DR")
    inv_tau = linalg.inverse(field, dtau_j_cp, "matrix DtauJ(C')")
    product = linalg.matmul(field, inv_tau, linalg.matmul(field, inv_right, linalg.matmul(field, d_left, dtau_j_c)))
    return field.neg(product)


def _canonical(field: FiniteField, m: Raw) -> Raw:
    """Representative of ``{m, -m}`` whose first nonzero entry is a canonical root."""
    flat = m.reshape(-1, field.degree)
    first = flat[np.nonzero(np.any(flat, axis=-1))[0][0]]
    return m if np.array_equal(canonical_sign(field, first), first) else field.neg(m)


def sym2_extract(s: Raw, scale: FieldElement | int, field: FiniteField) -> Raw | None:
    """The matrix M, up to sign, with ``Sym^2(M) = s/scale``; None if there is none over ``field``.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(101)
    >>> m = linalg.matrix(k, [[1, 2], [3, 4]])
    >>> linalg.to_ints(sym2_extract(sym2(k, m), 1, k))
    [[1, 2], [3, 4]]
    >>> sym2_extract(linalg.matrix(k, [[1, 2, 3], [4, 5, 6], [7, 8, 10]]), 1, k) is None
    True

    """
    t = linalg.scale(field, s, field.inv(field.raw(scale)))
    e = [[field.element(x) for x in row] for row in t]
    two = field(2)
    if e[0][0]:
        a = e[0][0].sqrt()
        if a is None:
            return None
        b = e[0][1] / a
        c = e[1][0] / (two * a)
        d = (e[1][1] - b * c) / a
    else:
        b = e[0][2].sqrt()
        if b is None or not b:
            return None
        a = field(0)
        d = e[1][2] / (two * b)
        c = e[1][1] / b
    m = linalg.matrix(field, [[a, b], [c, d]])
    if not np.any(linalg.det(field, m)) or not np.array_equal(sym2(field, m), t):
        return None
    return _canonical(field, m)


def tangent_candidates_siegel(
    d_left: Raw, d_right: Raw, dtau_j_c: Raw, dtau_j_cp: Raw, ell: int, field: FiniteField
) -> list[TangentCandidate]:
    """The tangent matrix up to sign, from ``Sym^2(dphi) = ell D``; extends the field once when needed."""
    deformation = deformation_matrix_siegel(d_left, d_right, dtau_j_c, dtau_j_cp, field)
    scaled = linalg.scale(field, deformation, field.raw(ell))
    found = sym2_extract(scaled, 1, field)
    if found is not None:
        return [TangentCandidate(field, found, "siegel")]
    pivot = scaled[0, 0] if np.any(scaled[0, 0]) else scaled[0, 2]
    if not np.any(pivot) or field.is_square(pivot):
        LOGGER.info("deformation matrix is not ell times a symmetric square")
        return []
    extension, _ = adjoin_sqrt(field, pivot)
    found = sym2_extract(extension.embed(scaled, field), 1, extension)
    return [] if found is None else [TangentCandidate(extension, found, "siegel")]


def _diagonal_ratio(d_left: Raw, d_right: Raw, dt_c: Raw, dt_cp: Raw, field: FiniteField) -> Raw:
    """``X = -(DR DtG(C'))^-1 DL DtG(C)``, which must be diagonal."""
    right = linalg.matmul(field, d_right, dt_cp)
    x = field.neg(
        linalg.matmul(field, linalg.inverse(field, right, "product DR DtG(C')"), linalg.matmul(field, d_left, dt_c))
    )
    if not linalg.is_diagonal(x):
        msg = "dphi^2 is not diagonal: the curves are not Hilbert-normalized compatibly (try x -> 1/x on one side)."
        raise NonDiagonalSolutionError(msg)
    return x


def _diagonal_candidates(
    x: Raw, beta: FieldElement, beta_bar: FieldElement, field: FiniteField, extension: FiniteField | None
) -> list[TangentCandidate]:
    branches = {"beta": (beta, beta_bar), "beta_bar": (beta_bar, beta)}
    squares = {tag: [field.element(x[i, i]) * b for i, b in enumerate(pair)] for tag, pair in branches.items()}
    work = field
    if not all(v.is_square() for values in squares.values() for v in values):
        if extension is None:
            nonsquare = next(v for values in squares.values() for v in values if not v.is_square())
            extension, _ = adjoin_sqrt(field, nonsquare)
        work = extension
        LOGGER.info("tangent matrix entries need the extension %s", work)

    out = []
    for tag, values in squares.items():
        roots = [work(v).sqrt() for v in values]
        if any(r is None or not r for r in roots):
            continue
        for sign, label in ((1, "+"), (-1, "-")):
            m = linalg.diagonal(work, [roots[0].raw, (roots[1] * sign).raw])  # type: ignore[union-attr]
            out.append(TangentCandidate(work, _canonical(work, m), f"{tag},{label}"))
    return out


def tangent_candidates_hilbert(
    d_left: Raw,
    d_right: Raw,
    dtg_c: Raw,
    dtg_cp: Raw,
    beta: FieldElement,
    beta_bar: FieldElement,
    extension: FiniteField | None = None,
) -> list[TangentCandidate]:
    """The (at most four) diagonal tangent matrices compatible with Gundlach modular equations.

    Both assignments of ``(beta, beta_bar)`` to the diagonal are tried, then both relative signs of the square roots.
    When square roots are missing, they are taken in ``extension`` (or in a new quadratic extension).

    Raises
    ------
    SingularMatrixError
        If ``DR DtG(C')`` is not invertible.

    NonDiagonalSolutionError
        If the solved ``dphi^2`` is not diagonal.

    """
    field = beta.field
    x = _diagonal_ratio(d_left, d_right, dtg_c, dtg_cp, field)
    candidates = _diagonal_candidates(x, beta, beta_bar, field, extension)
    LOGGER.info("%d Hilbert tangent candidates", len(candidates))
    return candidates


def hilbert_selector(field: FiniteField) -> Raw:
    return linalg.matrix(field, HILBERT_SELECTOR)


def hilbert_igusa_consistency(
    d_left: Raw,
    d_right: Raw,
    dtau_j_c: Raw,
    dtau_j_cp: Raw,
    field: FiniteField,
) -> Raw:
    """Solve ``DR DtJ(C') X = -DL DtJ(C)`` with ``DtJ = DtauJ T`` (3x2) from two rows, checking the third.

    Returns the diagonal 2x2 matrix X; the tangent matrices then follow as in the Gundlach case.

    Raises
    ------
    InconsistentChainRuleError
        If the third row is not satisfied.

    """
    selector = hilbert_selector(field)
    right = linalg.matmul(field, d_right, linalg.matmul(field, dtau_j_cp, selector))
    left = field.neg(linalg.matmul(field, d_left, linalg.matmul(field, dtau_j_c, selector)))
    x = solve_overdetermined(field, right, left)
    if not linalg.is_diagonal(x):
        msg = "dphi^2 is not diagonal: the curves are not Hilbert-normalized compatibly."
        raise NonDiagonalSolutionError(msg)
    return x


def solve_overdetermined(field: FiniteField, a: Raw, b: Raw) -> Raw:
    """X with ``a X = b`` for 3x2 ``a``, using the first invertible pair of rows."""
    for rows in ((0, 1), (0, 2), (1, 2)):
        sub = a[list(rows)]
        if np.any(linalg.det(field, sub)):
            x = linalg.solve(field, sub, b[list(rows)])
            if not np.array_equal(linalg.matmul(field, a, x), b):
                msg = "The 3x2 system is inconsistent: the point is not on the Humbert surface tangentially."
                raise InconsistentChainRuleError(msg)
            return x
    msg = "The 3x2 system has rank < 2."
    raise SingularMatrixError(msg)


def hilbert_candidates_from_igusa(
    x: Raw, beta: FieldElement, beta_bar: FieldElement, extension: FiniteField | None = None
) -> list[TangentCandidate]:
    """Tangent candidates from the diagonal matrix returned by :func:`hilbert_igusa_consistency`."""
    return _diagonal_candidates(x, beta, beta_bar, beta.field, extension)


def tangent_from_matrix(
    field: FiniteField, entries: Sequence[Sequence[object]], tag: str = "supplied"
) -> TangentCandidate:
    """Wrap a user-supplied tangent matrix.

    Raises
    ------
    SingularMatrixError
        If the matrix is not invertible.

    """
    m = linalg.matrix(field, entries)
    if not np.any(linalg.det(field, m)):
        msg = "The supplied tangent matrix is singular."
        raise SingularMatrixError(msg)
    return TangentCandidate(field, m, tag)


def endomorphism_tangent(field: FiniteField, m: int) -> TangentCandidate:
    """Tangent matrix ``m Id`` of multiplication by m."""
    return replace(tangent_from_matrix(field, [[m, 0], [0, m]], f"[{m}]"), multiplier=m)
