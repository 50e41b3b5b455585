"""The finite-dimensional algebra ``Q[X1..Xn] / c(n, c)`` and its regular representation.

Vectors are rows and matrices act on the right: the row of basis monomial
``m`` in the matrix of an element ``p`` holds the coordinates of ``m * p``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Dict, Tuple

import numpy as np

from . import linalg
from .ideal import MonomialIdeal, build_ideal_c, contains_monomial, normal_form, standard_monomials
from .poly import Monomial, Polynomial, default_names, format_monomial


@dataclass(frozen=True)
class QuotientAlgebra:
    n: int
    c: int
    ideal: MonomialIdeal
    basis: Tuple[Monomial, ...]
    index: Dict[Monomial, int] = field(repr=False, compare=False)

    @property
    def d(self) -> int:
        return len(self.basis)

    def basis_names(self):
        names = default_names(self.n)
        return [format_monomial(m, names) for m in self.basis]

    def coordinates(self, p: Polynomial) -> np.ndarray:
        """Coordinate row vector of ``NF(p)`` in the monomial basis."""
        nf = normal_form(self.ideal, p)
        vec = np.zeros(self.d, dtype=object)
        for m, coeff in nf.terms.items():
            vec[self.index[m]] = coeff
        return linalg.as_exact(vec)

    def element(self, vec) -> Polynomial:
        return Polynomial(self.n, {m: int(v) for m, v in zip(self.basis, vec) if v})


def build_quotient(n: int, c: int, *, strict: bool = True) -> QuotientAlgebra:
    if strict and not n >= c >= 3:
        raise ValueError(f"need n >= c >= 3, got n={n}, c={c}")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ideal = build_ideal_c(n, c)
    # n suffices once n >= c; below that, non-squarefree standard monomials reach degree c - 1
    basis = tuple(standard_monomials(ideal, max(n, c - 1)))
    return QuotientAlgebra(n, c, ideal, basis, {m: k for k, m in enumerate(basis)})


def regular_rep(q: QuotientAlgebra, i: int) -> np.ndarray:
    """Matrix of multiplication by ``X_{i+1} + 1`` (``i`` is 0-based)."""
    if not 0 <= i < q.n:
        raise IndexError(f"variable index {i} out of range for n={q.n}")
    t = np.eye(q.d, dtype=np.int64)
    for row, m in enumerate(q.basis):
        shifted = list(m)
        shifted[i] += 1
        shifted = tuple(shifted)
        if not contains_monomial(q.ideal, shifted):
            t[row, q.index[shifted]] = 1
    return t


def generator_matrices(q: QuotientAlgebra):
    return [regular_rep(q, i) for i in range(q.n)]


def element_matrix(q: QuotientAlgebra, p: Polynomial) -> np.ndarray:
    """Matrix of multiplication by an arbitrary polynomial."""
    rows = [q.coordinates(Polynomial.monomial(m) * p) for m in q.basis]
    if not rows:
        return np.zeros((0, 0), dtype=np.int64)
    return linalg.as_exact(np.array([list(r) for r in rows], dtype=object))


def verify_commuting_family(q: QuotientAlgebra) -> bool:
    mats = generator_matrices(q)
    return all(
        linalg.commute(mats[i], mats[j]) for i in range(len(mats)) for j in range(i + 1, len(mats))
    )


def is_unitriangular_01(t) -> bool:
    t = np.asarray(t)
    return linalg.is_unitriangular(t) and bool(np.all((t == 0) | (t == 1)))


# ---------------------------------------------------------------------------
# matrix certificate text
# ---------------------------------------------------------------------------

def matrix_to_text(t, n: int, c: int, i: int) -> str:
    t = np.asarray(t)
    d = t.shape[0]
    lines = [f"{d} {n} {c} {i}"]
    lines.extend(" ".join(str(int(v)) for v in row) for row in t)
    return "\n".join(lines) + "\n"


def matrix_from_text(text: str):
    """Inverse of :func:`matrix_to_text`; returns ``(matrix, n, c, i)``."""
    lines = [line for line in text.strip().splitlines() if line.strip()]
    if not lines:
        raise ValueError("empty matrix certificate")
    try:
        d, n, c, i = (int(tok) for tok in lines[0].split())
    except ValueError as exc:
        raise ValueError(f"bad header {lines[0]!r}") from exc
    if len(lines) != d + 1:
        raise ValueError(f"expected {d} rows, found {len(lines) - 1}")
    rows = []
    for line in lines[1:]:
        row = [int(tok) for tok in line.split()]
        if len(row) != d:
            raise ValueError(f"row of length {len(row)}, expected {d}")
        rows.append(row)
    mat = linalg.as_exact(np.array(rows, dtype=object).reshape(d, d))
    return mat, n, c, i
