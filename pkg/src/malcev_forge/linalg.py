"""Exact integer matrix arithmetic.

Matrices are numpy arrays.  ``int64`` arrays go through the compiled kernels
whenever an a-priori magnitude bound shows the result fits; anything larger
is carried as ``dtype=object`` (Python integers), so results are always exact.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from . import _kernels

# Results are kept in int64 only below this bound; the float estimate of the
# bound is off by far less than the 4x headroom to 2**63.
_SAFE = float(2**61)


def _absmax(x) -> float:
    if x.size == 0:
        return 0.0
    return float(np.max(np.abs(x.astype(float))))


def _row_norm(m) -> float:
    """Max absolute row sum."""
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m.astype(float)).sum(axis=1)))


def _col_norm(m) -> float:
    """Max absolute column sum."""
    if m.size == 0:
        return 0.0
    return float(np.max(np.abs(m.astype(float)).sum(axis=0)))


def as_exact(x):
    """Return ``x`` as int64 if every entry fits comfortably, else as object."""
    x = np.asarray(x)
    if x.dtype == np.int64:
        return x
    if x.dtype == object:
        if x.size == 0 or max(abs(int(v)) for v in x.flat) < 2**61:
            return x.astype(np.int64)
        return x
    if np.issubdtype(x.dtype, np.integer) or np.issubdtype(x.dtype, np.bool_):
        return x.astype(np.int64)
    raise TypeError(f"expected an integer array, got dtype {x.dtype}")


def _to_object(x):
    return x.astype(object) if x.dtype != object else x


def identity(d: int):
    return np.eye(d, dtype=np.int64)


def matmul(a, b):
    a, b = as_exact(a), as_exact(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    if a.dtype == np.int64 and b.dtype == np.int64 and _row_norm(a) * _absmax(b) < _SAFE:
        return _kernels.matmul_i64(np.ascontiguousarray(a), np.ascontiguousarray(b))
    return as_exact(_to_object(a) @ _to_object(b))


def vecmat(v, m):
    """Row vector times matrix."""
    v, m = as_exact(v), as_exact(m)
    if v.shape[0] != m.shape[0]:
        raise ValueError(f"dimension mismatch: vector {v.shape} @ matrix {m.shape}")
    if v.dtype == np.int64 and m.dtype == np.int64 and _absmax(v) * _col_norm(m) < _SAFE:
        return _kernels.vecmat_i64(np.ascontiguousarray(v), np.ascontiguousarray(m))
    return as_exact(_to_object(v) @ _to_object(m))


def add(a, b):
    a, b = as_exact(a), as_exact(b)
    if a.dtype == np.int64 and b.dtype == np.int64 and _absmax(a) + _absmax(b) < _SAFE:
        return a + b
    return as_exact(_to_object(a) + _to_object(b))


def scale(a, k: int):
    a = as_exact(a)
    if a.dtype == np.int64 and _absmax(a) * abs(k) < _SAFE:
        return a * np.int64(k)
    return as_exact(_to_object(a) * k)


def matpow(m, k: int):
    if k < 0:
        return matpow(unitriangular_inverse(m), -k)
    result = identity(m.shape[0])
    base = as_exact(m)
    while k:
        if k & 1:
            result = matmul(result, base)
        k >>= 1
        if k:
            base = matmul(base, base)
    return result


def is_zero(m) -> bool:
    return not np.any(np.asarray(m) != 0)


def equal(a, b) -> bool:
    a, b = np.asarray(a), np.asarray(b)
    return a.shape == b.shape and bool(np.all(a == b))


def is_unitriangular(m) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.all(np.diag(m) == 1)) and not np.any(np.tril(m, -1) != 0)


def unitriangular_inverse(m):
    """Inverse of an upper unitriangular integer matrix.

    With ``N = m - 1`` nilpotent, ``m^{-1} = sum_k (-N)^k`` for ``k < d``.
    """
    if not is_unitriangular(m):
        raise ValueError("matrix is not upper unitriangular")
    d = m.shape[0]
    neg_n = scale(add(m, -identity(d)), -1)
    result = identity(d)
    term = identity(d)
    for _ in range(1, d):
        term = matmul(term, neg_n)
        if is_zero(term):
            break
        result = add(result, term)
    return result


def bareiss_det(m) -> int:
    """Exact determinant by fraction-free Gaussian elimination."""
    rows = [[int(v) for v in row] for row in np.asarray(m)]
    n = len(rows)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for r in range(k + 1, n):
                if rows[r][k] != 0:
                    rows[k], rows[r] = rows[r], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                rows[i][j] = (rows[i][j] * pivot - rows[i][k] * rows[k][j]) // prev
        prev = pivot
    return sign * rows[-1][-1]


def commute(a, b) -> bool:
    return equal(matmul(a, b), matmul(b, a))


def product(mats: Sequence, d: int):
    out = identity(d)
    for m in mats:
        out = matmul(out, m)
    return out
