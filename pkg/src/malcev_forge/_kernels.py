"""Hot int64 kernels with a numba path and a pure-numpy path.

The backend is picked once at import from ``MALCEV_FORGE_BACKEND``
(``numba`` or ``numpy``; default ``numba`` when importable).  Both paths
compute the same exact int64 results; callers in :mod:`malcev_forge.linalg`
guarantee no overflow before dispatching here.
"""

from __future__ import annotations

import os

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False


def _requested_backend() -> str:
    name = os.environ.get("MALCEV_FORGE_BACKEND", "numba").strip().lower()
    if name not in ("numba", "numpy"):
        raise ValueError(f"MALCEV_FORGE_BACKEND must be 'numba' or 'numpy', got {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        return "numpy"
    return name


# ---------------------------------------------------------------------------
# pure numpy (also used for object-dtype bigint arrays)
# ---------------------------------------------------------------------------

def matmul_np(a, b):
    return a @ b


def vecmat_np(v, m):
    return v @ m


def eval_word_np(letters, tx, ax, ty, ay):
    d = ax.shape[0]
    t = np.eye(d, dtype=tx.dtype)
    a = np.zeros(d, dtype=ax.dtype)
    for letter in letters:
        if letter == 0:
            u, b = tx, ax
        else:
            u, b = ty, ay
        # (t, a)(u, b) = (tu, a.u + b)
        a = a @ u + b
        t = t @ u
    return t, a


# ---------------------------------------------------------------------------
# numba
# ---------------------------------------------------------------------------

if HAVE_NUMBA:

    @njit(cache=True, nogil=True)
    def matmul_nb(a, b):
        n, m = a.shape
        p = b.shape[1]
        out = np.zeros((n, p), dtype=np.int64)
        for i in range(n):
            for k in range(m):
                aik = a[i, k]
                if aik != 0:
                    for j in range(p):
                        out[i, j] += aik * b[k, j]
        return out

    @njit(cache=True, nogil=True)
    def vecmat_nb(v, m):
        n, p = m.shape
        out = np.zeros(p, dtype=np.int64)
        for k in range(n):
            vk = v[k]
            if vk != 0:
                for j in range(p):
                    out[j] += vk * m[k, j]
        return out

    @njit(cache=True, nogil=True)
    def eval_word_nb(letters, tx, ax, ty, ay):
        d = ax.shape[0]
        t = np.eye(d, dtype=np.int64)
        a = np.zeros(d, dtype=np.int64)
        for idx in range(letters.shape[0]):
            if letters[idx] == 0:
                u = tx
                b = ax
            else:
                u = ty
                b = ay
            a = vecmat_nb(a, u) + b
            t = matmul_nb(t, u)
        return t, a

else:  # pragma: no cover
    matmul_nb = matmul_np
    vecmat_nb = vecmat_np
    eval_word_nb = eval_word_np


_IMPLS = {
    "numba": (matmul_nb, vecmat_nb, eval_word_nb),
    "numpy": (matmul_np, vecmat_np, eval_word_np),
}

BACKEND = _requested_backend()
matmul_i64, vecmat_i64, eval_word_i64 = _IMPLS[BACKEND]


def set_backend(name: str) -> str:
    """Switch the int64 backend at runtime; returns the previous name."""
    global BACKEND, matmul_i64, vecmat_i64, eval_word_i64
    if name not in _IMPLS:
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not importable")
    previous = BACKEND
    BACKEND = name
    matmul_i64, vecmat_i64, eval_word_i64 = _IMPLS[name]
    return previous
