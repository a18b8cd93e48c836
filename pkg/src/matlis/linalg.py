"""Dense exact linear algebra over a :class:`~matlis.field.Field`.

Prime fields with ``p < 2**31`` use ``int64`` arrays (products of two
residues fit comfortably); everything else uses ``object`` arrays of
Python ints / Fractions.  Row reduction is vectorised per pivot.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .field import Field

_INT64_LIMIT = 2 ** 31


def dtype_for(F: Field):
    if F.characteristic and F.characteristic < _INT64_LIMIT:
        return np.int64
    return object


def _reduce(F: Field, A):
    p = F.characteristic
    return A % p if p else A


def zeros(F: Field, m: int, n: int):
    A = np.zeros((m, n), dtype=dtype_for(F))
    if dtype_for(F) is object:
        A[...] = F.zero
    return A


def identity(F: Field, n: int):
    A = zeros(F, n, n)
    for i in range(n):
        A[i, i] = F.one
    return A


def array(F: Field, rows, shape=None):
    """Build a matrix from nested lists of raw field values."""
    rows = list(rows)
    if not rows:
        return zeros(F, *(shape or (0, 0)))
    A = np.array(rows, dtype=dtype_for(F))
    if A.ndim == 1:
        A = A.reshape(1, -1)
    if dtype_for(F) is object and not F.characteristic:
        A = np.vectorize(Fraction, otypes=[object])(A) if A.size else A
    return _reduce(F, A)


def matmul(F: Field, A, B):
    if A.shape[1] == 0 or A.shape[0] == 0 or B.shape[1] == 0:
        return zeros(F, A.shape[0], B.shape[1])
    return _reduce(F, A @ B)


def add(F: Field, A, B):
    return _reduce(F, A + B)


def sub(F: Field, A, B):
    return _reduce(F, A - B)


def scale(F: Field, c, A):
    return _reduce(F, A * c)


def rref(F: Field, A):
    """Reduced row echelon form; returns ``(R, pivot_columns)``."""
    A = _reduce(F, np.array(A, dtype=dtype_for(F), copy=True))
    m, n = A.shape
    pivots = []
    r = 0
    p = F.characteristic
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c] != 0)[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = F.inv(A[r, c])
        A[r] = _reduce(F, A[r] * inv)
        col = A[:, c].copy()
        col[r] = 0
        rows = np.nonzero(col != 0)[0]
        if len(rows):
            upd = A[rows] - np.outer(col[rows], A[r])
            A[rows] = upd % p if p else upd
        pivots.append(c)
        r += 1
    return A, pivots


def rank(F: Field, A) -> int:
    if A.shape[0] == 0 or A.shape[1] == 0:
        return 0
    return len(rref(F, A)[1])


def nullspace(F: Field, A):
    """Basis of ``{x : A x = 0}`` as the columns of the returned matrix."""
    m, n = A.shape
    if m == 0:
        return identity(F, n)
    R, piv = rref(F, A)
    free = [j for j in range(n) if j not in set(piv)]
    N = zeros(F, n, len(free))
    for k, j in enumerate(free):
        N[j, k] = F.one
        for row, pc in enumerate(piv):
            N[pc, k] = F.neg(R[row, j])
    return N


def row_basis(F: Field, A):
    """Rows forming an echelon basis of the row space of ``A``."""
    if A.shape[0] == 0:
        return A[:0]
    R, piv = rref(F, A)
    return R[: len(piv)]


def column_basis(F: Field, A):
    """A basis of the column space (as columns), echelon normalised."""
    return row_basis(F, A.T).T


def solve(F: Field, A, b):
    """Some ``x`` with ``A x = b`` (``b`` a vector or matrix), or ``None``."""
    b2 = b.reshape(-1, 1) if b.ndim == 1 else b
    m, n = A.shape
    if n == 0:
        return zeros(F, 0, b2.shape[1]) if not np.any(b2 != 0) else None
    aug = np.concatenate([A, b2], axis=1)
    R, piv = rref(F, aug)
    if any(c >= n for c in piv):
        return None
    x = zeros(F, n, b2.shape[1])
    for row, pc in enumerate(piv):
        x[pc] = R[row, n:]
    return x.reshape(-1) if b.ndim == 1 else x


def inverse(F: Field, A):
    n = A.shape[0]
    x = solve(F, A, identity(F, n))
    if x is None or rank(F, A) < n:
        raise ZeroDivisionError("matrix is singular")
    return x


def complement_indices(F: Field, A, candidates=None):
    """Greedy choice of standard basis vectors completing the column span of ``A``.

    Index ``j`` is taken when ``e_j`` is independent of ``A`` together with
    the earlier picks, scanning ``candidates`` (default ``0..n-1``) in order.
    """
    n = A.shape[0]
    cand = list(range(n)) if candidates is None else list(candidates)
    Q, _ = quotient_projection(F, A, n)
    if Q.shape[0] == 0 or not cand:
        return []
    _, piv = rref(F, Q[:, cand])
    return [cand[k] for k in piv]


def is_zero(A) -> bool:
    return not np.any(A != 0)


def quotient_projection(F: Field, B, n: int):
    """Coordinates on ``k^n / span(columns of B)``.

    Returns ``(Q, rest)``: ``Q`` has shape ``(n - rank, n)``, kills the span
    and maps ``e_j`` (``j`` in ``rest``) to the ``j``-th unit vector of the
    quotient, so the ``e_j`` with ``j`` in ``rest`` form a complement basis.
    """
    if B is None or B.shape[1] == 0 or is_zero(B):
        return identity(F, n), list(range(n))
    R, piv = rref(F, B.T)
    R = R[: len(piv)]
    pset = set(piv)
    rest = [j for j in range(n) if j not in pset]
    Q = zeros(F, len(rest), n)
    for k, j in enumerate(rest):
        Q[k, j] = F.one
    for r, pc in enumerate(piv):
        Q[:, pc] = _reduce(F, -R[r, rest]) if rest else Q[:, pc]
    return Q, rest
