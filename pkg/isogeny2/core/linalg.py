"""Small dense matrices over finite fields.

Matrices are raw arrays of shape ``(rows, cols, field.degree)``; see :mod:`isogeny2.field`.
"""

from collections.abc import Sequence
from typing import TYPE_CHECKING, Any

import numpy as np

from isogeny2.core.errors import SingularMatrixError

if TYPE_CHECKING:
    from isogeny2.field import FiniteField, Raw


def matrix(field: "FiniteField", rows: Sequence[Sequence[Any]]) -> "Raw":
    """Raw matrix from nested ints or field elements.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(101)
    >>> to_ints(matrix(k, [[1, -1], [0, 2]]))
    [[1, 100], [0, 2]]

    """
    return np.stack([np.stack([field.raw(x) for x in row]) for row in rows])


def to_ints(m: "Raw") -> list[list[int]]:
    """Entries of a matrix over a prime field, as nested ints."""
    if m.shape[-1] != 1:
        msg = "Only matrices over the prime field convert to ints."
        raise ValueError(msg)
    return [[int(x) for x in row] for row in m[..., 0]]


def identity(field: "FiniteField", n: int) -> "Raw":
    out = field.zeros((n, n))
    out[np.arange(n), np.arange(n), 0] = 1
    return out


def diagonal(field: "FiniteField", entries: Sequence["Raw"]) -> "Raw":
    out = field.zeros((len(entries), len(entries)))
    for i, e in enumerate(entries):
        out[i, i] = e
    return out


def transpose(m: "Raw") -> "Raw":
    return np.swapaxes(m, 0, 1)


def matmul(field: "FiniteField", a: "Raw", b: "Raw") -> "Raw":
    """Matrix product; ``b`` may also be a vector of shape ``(k, degree)``."""
    if b.ndim == 2:  # noqa: PLR2004
        return matmul(field, a, b[:, None, :])[:, 0, :]
    products = field.mul(a[:, :, None, :], b[None, :, :, :])
    return field.sum(products, axis=1)


def scale(field: "FiniteField", m: "Raw", c: "Raw") -> "Raw":
    return field.mul(m, np.broadcast_to(c, m.shape))


def is_diagonal(m: "Raw") -> bool:
    off = m.copy()
    off[np.arange(len(m)), np.arange(len(m))] = 0
    return not np.any(off)


def row_reduce(field: "FiniteField", m: "Raw") -> tuple["Raw", list[int], int]:
    """Reduced row echelon form.

    Returns
    -------
    tuple
        The reduced matrix, its pivot columns, and the number of row swaps made.

    """
    m = np.array(m, dtype=np.int64)
    rows, cols = m.shape[:2]
    pivots: list[int] = []
    swaps = 0
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.nonzero(np.any(m[r:, c], axis=-1))[0]
        if not len(nonzero):
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            m[[r, pivot]] = m[[pivot, r]]
            swaps += 1
        m[r] = field.mul(m[r], np.broadcast_to(field.inv(m[r, c]), m[r].shape))
        factors = m[:, c].copy()
        factors[r] = 0
        m = field.sub(m, field.mul(np.broadcast_to(factors[:, None, :], m.shape), np.broadcast_to(m[r], m.shape)))
        pivots.append(c)
        r += 1
    return m, pivots, swaps


def rank(field: "FiniteField", m: "Raw") -> int:
    return len(row_reduce(field, m)[1])


def det(field: "FiniteField", m: "Raw") -> "Raw":
    """Determinant by elimination.

    Examples
    --------
    >>> from isogeny2.field import PrimeField
    >>> k = PrimeField(101)
    >>> int(k.element(det(k, matrix(k, [[1, 2], [3, 4]]))))
    99

    """
    m = np.array(m, dtype=np.int64)
    n = len(m)
    result = field.ones()
    for c in range(n):
        nonzero = np.nonzero(np.any(m[c:, c], axis=-1))[0]
        if not len(nonzero):
            return field.zeros()
        pivot = c + int(nonzero[0])
        if pivot != c:
            m[[c, pivot]] = m[[pivot, c]]
            result = field.neg(result)
        result = field.mul(result, m[c, c])
        inv = field.inv(m[c, c])
        rest = m[c + 1 :]
        below = field.mul(rest[:, c], np.broadcast_to(inv, rest[:, c].shape))
        elimination = field.mul(np.broadcast_to(below[:, None, :], rest.shape), np.broadcast_to(m[c], rest.shape))
        m[c + 1 :] = field.sub(rest, elimination)
    return result


def inverse(field: "FiniteField", m: "Raw", name: str = "matrix") -> "Raw":
    """Inverse of a square matrix.

    Raises
    ------
    SingularMatrixError
        When ``m`` is not invertible; ``name`` is used in the message.

    """
    n = len(m)
    augmented = np.concatenate([m, identity(field, n)], axis=1)
    reduced, pivots, _ = row_reduce(field, augmented)
    if pivots[:n] != list(range(n)):
        msg = f"The {name} is singular."
        raise SingularMatrixError(msg)
    return reduced[:, n:]


def solve(field: "FiniteField", a: "Raw", b: "Raw", name: str = "matrix") -> "Raw":
    """Solve ``a @ x = b`` for square invertible ``a``."""
    return matmul(field, inverse(field, a, name), b)


def nullspace(field: "FiniteField", m: "Raw") -> "Raw":
    """Basis of the right kernel, shape ``(dim, cols, degree)``."""
    cols = m.shape[1]
    reduced, pivots, _ = row_reduce(field, m)
    free = [c for c in range(cols) if c not in pivots]
    basis = field.zeros((len(free), cols))
    for k, f in enumerate(free):
        basis[k, f] = field.ones()
        for i, pc in enumerate(pivots):
            basis[k, pc] = field.neg(reduced[i, f])
    return basis
