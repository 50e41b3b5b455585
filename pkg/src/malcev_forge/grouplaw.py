"""Arithmetic in ``B ⋉ A`` with ``A = Z^d`` and Malcev words.

``A`` is written additively and ``B`` acts on the right, so the element
``t·a`` is stored as ``GroupElement(t, a)`` and

    (t, a) * (u, b) = (t u, a u + b).

Conjugating ``a`` by ``u`` is the row-vector product ``a u``; a polynomial
exponent ``a^f(u, t)`` becomes ``a · f(u, t)`` with matrices substituted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import _kernels, linalg
from .poly import Polynomial, build_f_c, evaluate


@dataclass(frozen=True, eq=False)
class GroupElement:
    t: np.ndarray
    a: np.ndarray

    def __post_init__(self):
        t = linalg.as_exact(self.t)
        a = linalg.as_exact(self.a)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or a.shape != (t.shape[0],):
            raise ValueError(f"matrix {t.shape} and vector {a.shape} do not match")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "a", a)

    @classmethod
    def identity(cls, d: int) -> "GroupElement":
        return cls(linalg.identity(d), np.zeros(d, dtype=np.int64))

    @classmethod
    def from_matrix(cls, t) -> "GroupElement":
        return cls(t, np.zeros(np.asarray(t).shape[0], dtype=np.int64))

    @classmethod
    def from_vector(cls, a) -> "GroupElement":
        a = np.asarray(a)
        return cls(linalg.identity(a.shape[0]), a)

    @property
    def d(self) -> int:
        return self.a.shape[0]

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return group_mul(self, other)

    def __pow__(self, k: int) -> "GroupElement":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        result = GroupElement.identity(self.d)
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def inverse(self) -> "GroupElement":
        t_inv = linalg.unitriangular_inverse(self.t)
        return GroupElement(t_inv, linalg.scale(linalg.vecmat(self.a, t_inv), -1))

    def conj(self, g: "GroupElement") -> "GroupElement":
        """``g^{-1} self g``."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return linalg.equal(self.t, linalg.identity(self.d)) and linalg.is_zero(self.a)

    def __eq__(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        return linalg.equal(self.t, other.t) and linalg.equal(self.a, other.a)

    def __hash__(self):
        return hash((self.t.tobytes(), self.a.tobytes()))

    def to_text(self, n: int = 0, c: int = 0) -> str:
        """Matrix certificate (index field -1) followed by one vector line."""
        from .quotient import matrix_to_text

        return matrix_to_text(self.t, n, c, -1) + " ".join(str(int(v)) for v in self.a) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "GroupElement":
        from .quotient import matrix_from_text

        lines = [line for line in text.strip().splitlines() if line.strip()]
        t, _, _, _ = matrix_from_text("\n".join(lines[:-1]))
        a = linalg.as_exact(np.array([int(tok) for tok in lines[-1].split()], dtype=object))
        return cls(t, a)


def commutator(g: GroupElement, h: GroupElement) -> GroupElement:
    """``[g, h] = g^{-1} h^{-1} g h``."""
    return g.inverse() * h.inverse() * g * h


def group_mul(g: GroupElement, h: GroupElement) -> GroupElement:
    if g.d != h.d:
        raise ValueError(f"dimension mismatch: {g.d} vs {h.d}")
    return GroupElement(linalg.matmul(g.t, h.t), linalg.add(linalg.vecmat(g.a, h.t), h.a))


# ---------------------------------------------------------------------------
# words
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MalcevPair:
    c: int
    alpha: str
    beta: str


def malcev_words(c: int) -> MalcevPair:
    """alpha_0 = x, beta_0 = y, alpha_c = alpha beta, beta_c = beta alpha."""
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")
    alpha, beta = "x", "y"
    for _ in range(c):
        alpha, beta = alpha + beta, beta + alpha
    return MalcevPair(c, alpha, beta)


def _letters(word: str) -> np.ndarray:
    if set(word) - {"x", "y"}:
        raise ValueError(f"word {word!r} is not over {{x, y}}")
    return np.frombuffer(word.encode("ascii"), dtype=np.uint8) - ord("x")


def _word_fits_int64(letters, gx: GroupElement, gy: GroupElement) -> bool:
    """Entrywise magnitude bound for the whole evaluation, run in float64.

    Absolute values propagate through ``|T u| <= |T| |u|`` and
    ``|a u + b| <= |a| |u| + |b|``, so the shadow dominates every
    intermediate of the exact computation.
    """
    if any(x.dtype != np.int64 for x in (gx.t, gx.a, gy.t, gy.a)):
        return False
    mats = (np.abs(gx.t.astype(float)), np.abs(gy.t.astype(float)))
    vecs = (np.abs(gx.a.astype(float)), np.abs(gy.a.astype(float)))
    t_shadow = np.eye(gx.d)
    a_shadow = np.zeros(gx.d)
    for letter in letters:
        a_shadow = a_shadow @ mats[letter] + vecs[letter]
        t_shadow = t_shadow @ mats[letter]
        if gx.d and max(t_shadow.max(), a_shadow.max()) >= linalg._SAFE:
            return False
    return True


def family_fits_int64(length: int, mats: Sequence, vec_bound: int) -> bool:
    """Whether any word of ``length`` letters drawn from ``mats`` with vectors
    bounded by ``vec_bound`` evaluates within int64.

    Uses the entrywise maximum of ``|t|`` over the family as every letter.
    """
    top = np.max([np.abs(np.asarray(m).astype(float)) for m in mats], axis=0)
    d = top.shape[0]
    t_shadow = np.eye(d)
    a_shadow = np.zeros(d)
    for _ in range(length):
        a_shadow = a_shadow @ top + vec_bound
        t_shadow = t_shadow @ top
    return not d or max(t_shadow.max(), a_shadow.max()) < linalg._SAFE


def eval_word(word: str, gx: GroupElement, gy: GroupElement, *, proven_safe: bool = False) -> GroupElement:
    """Left-to-right product with ``gx`` for ``x`` and ``gy`` for ``y``.

    ``proven_safe`` skips the per-call overflow bound; pass it only after
    :func:`family_fits_int64` succeeded for the family the operands come from.
    """
    if gx.d != gy.d:
        raise ValueError(f"dimension mismatch: {gx.d} vs {gy.d}")
    letters = _letters(word)
    int64 = all(x.dtype == np.int64 for x in (gx.t, gx.a, gy.t, gy.a))
    if int64 and (proven_safe or _word_fits_int64(letters, gx, gy)):
        t, a = _kernels.eval_word_i64(letters, gx.t, gx.a, gy.t, gy.a)
        return GroupElement(t, a)
    out = GroupElement.identity(gx.d)
    for letter in letters:
        out = out * (gx if letter == 0 else gy)
    return out


def check_malcev(c: int, gx: GroupElement, gy: GroupElement, *, proven_safe: bool = False) -> bool:
    pair = malcev_words(c)
    return eval_word(pair.alpha, gx, gy, proven_safe=proven_safe) == eval_word(
        pair.beta, gx, gy, proven_safe=proven_safe
    )


# ---------------------------------------------------------------------------
# endomorphisms
# ---------------------------------------------------------------------------

def endo_eval(p: Polynomial, t, u=None) -> np.ndarray:
    """Substitute ``t`` for the first variable and ``u`` for the second."""
    t = linalg.as_exact(t)
    d = t.shape[0]
    if p.nvars == 2:
        if u is None:
            raise ValueError("two-variable polynomial needs two matrices")
        u = linalg.as_exact(u)
        if u.shape != t.shape:
            raise ValueError(f"dimension mismatch: {t.shape} vs {u.shape}")
    elif p.nvars != 1:
        raise ValueError("only polynomials in one or two variables act as endomorphisms")

    t_pows = [linalg.identity(d)]
    u_pows = [linalg.identity(d)]

    def pw(cache, m, k):
        while len(cache) <= k:
            cache.append(linalg.matmul(cache[-1], m))
        return cache[k]

    by_x = {}
    for mono, coeff in p.terms.items():
        by_x.setdefault(mono[0], []).append((mono[1] if p.nvars == 2 else 0, coeff))
    out = np.zeros((d, d), dtype=np.int64)
    for i, ys in sorted(by_x.items()):
        inner = np.zeros((d, d), dtype=np.int64)
        for j, coeff in ys:
            inner = linalg.add(inner, linalg.scale(pw(u_pows, u, j) if j else u_pows[0], coeff))
        out = linalg.add(out, linalg.matmul(pw(t_pows, t, i), inner))
    return out


def lemma_criteria(c: int, t, u, a, b):
    """Both sides of the substitution lemma for ``x = (t, a)``, ``y = (u, b)``.

    Returns ``(law_holds_by_words, law_holds_by_f_c)``.
    """
    if not linalg.commute(t, u):
        raise ValueError("t and u must commute")
    direct = check_malcev(c, GroupElement(t, a), GroupElement(u, b))
    f = build_f_c(c)
    lhs = linalg.vecmat(a, endo_eval(f, u, t))
    rhs = linalg.vecmat(b, endo_eval(f, t, u))
    return direct, linalg.equal(lhs, rhs)


def lemma_identity_check(c: int, t, u, a, b) -> bool:
    direct, endo = lemma_criteria(c, t, u, a, b)
    return direct == endo


def nilpotency_class(mats: Sequence, d: int) -> int:
    """Class of ``B ⋉ Z^d`` for a commuting unitriangular family generating ``B``.

    The k-th term of the lower central series is spanned by the images of
    ``A`` under products of ``k - 1`` matrices ``t_i - 1``, so the class is the
    least k for which every product of k of them vanishes.  Products commute;
    they are enumerated as multisets and zero products are not extended.
    """
    if d == 0:
        return 0
    nils = [linalg.add(m, -linalg.identity(d)) for m in mats]
    level = {(): linalg.identity(d)}
    k = 0
    while level:
        k += 1
        nxt = {}
        for key, prod in level.items():
            start = key[-1] if key else 0
            for i in range(start, len(nils)):
                new = linalg.matmul(prod, nils[i])
                if not linalg.is_zero(new):
                    nxt[key + (i,)] = new
        level = nxt
        if k > d:  # products of d strictly upper triangular matrices vanish
            raise ValueError("family is not unitriangular")
    return k


def probe_determinant(p: Polynomial, t) -> int:
    if p.nvars != 1:
        raise ValueError("univariate polynomial required")
    return linalg.bareiss_det(endo_eval(p, t))


def injectivity_probe(p: Polynomial, t) -> bool:
    """Whether ``p(t)`` is injective on ``Z^d``, via its exact determinant.

    For unitriangular ``t`` this determinant equals ``p(1)^d``.
    """
    if not linalg.is_unitriangular(t):
        raise ValueError("t must be unitriangular")
    return probe_determinant(p, t) != 0


def predicted_determinant(p: Polynomial, d: int) -> int:
    return evaluate(p, [1]) ** d


def random_vector(rng: np.random.Generator, d: int, bound: int) -> np.ndarray:
    return rng.integers(-bound, bound + 1, size=d, dtype=np.int64)


def unit_vector(d: int, k: int, scale: int = 1) -> np.ndarray:
    v = np.zeros(d, dtype=np.int64)
    v[k] = scale
    return v

