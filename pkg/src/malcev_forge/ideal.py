"""Monomial ideals, normal forms and the containment checks of the construction.

For a monomial ideal a polynomial lies in the ideal iff each of its monomials
is divisible by a generator, so the normal form is obtained by deleting those
terms and no Groebner machinery is needed.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from itertools import combinations_with_replacement
from math import factorial
from typing import Iterator, List, Optional, Sequence, Tuple

from .poly import (
    DimensionError,
    Monomial,
    Polynomial,
    default_names,
    format_monomial,
    mono_divides,
    parse_monomial,
    shift_substitute,
)


class QuotientNotFiniteError(ValueError):
    """Standard monomials exist beyond the requested degree cap."""


def monomials_of_degree(n: int, k: int) -> Iterator[Monomial]:
    """All exponent vectors of total degree ``k``, highest lex first."""
    for combo in combinations_with_replacement(range(n), k):
        exps = [0] * n
        for v in combo:
            exps[v] += 1
        yield tuple(exps)


def basis_order_key(m: Monomial):
    # total degree first, then X1 before X2 before ...
    return (sum(m), tuple(-e for e in m))


def _minimalize(gens: Sequence[Monomial]) -> Tuple[Monomial, ...]:
    gens = sorted(set(gens), key=basis_order_key)
    keep: List[Monomial] = []
    for g in gens:
        if not any(mono_divides(h, g) for h in keep):
            keep.append(g)
    return tuple(keep)


@dataclass(frozen=True)
class MonomialIdeal:
    n: int
    generators: Tuple[Monomial, ...]

    def __post_init__(self):
        for g in self.generators:
            if len(g) != self.n:
                raise DimensionError(f"generator {g} does not have {self.n} exponents")
        object.__setattr__(self, "generators", _minimalize(self.generators))

    def __contains__(self, m: Monomial) -> bool:
        return contains_monomial(self, m)

    def to_text(self, names: Optional[Sequence[str]] = None) -> str:
        names = names or default_names(self.n)
        return "\n".join(format_monomial(g, names) for g in sorted_grlex(self.generators)) + "\n"

    @classmethod
    def from_text(cls, text: str, n: int, names: Optional[Sequence[str]] = None) -> "MonomialIdeal":
        names = names or default_names(n)
        gens = [parse_monomial(line, names) for line in text.splitlines() if line.strip()]
        return cls(n, tuple(gens))


def sorted_grlex(monos) -> List[Monomial]:
    return sorted(monos, key=lambda m: (sum(m), m), reverse=True)


def build_ideal_c(n: int, c: int) -> MonomialIdeal:
    """Degree-``c`` monomials in ``n`` variables having some exponent >= 2."""
    if n <= 0 or c <= 0:
        raise ValueError(f"need n >= 1 and c >= 1, got n={n}, c={c}")
    if c < 3:
        warnings.warn(f"c={c} < 3: the ideal no longer contains the shifted relations", stacklevel=2)
    gens = [m for m in monomials_of_degree(n, c) if max(m) >= 2]
    return MonomialIdeal(n, tuple(gens))


def contains_monomial(ideal: MonomialIdeal, m: Monomial) -> bool:
    if len(m) != ideal.n:
        raise DimensionError(f"monomial has {len(m)} exponents, ideal has {ideal.n} variables")
    return any(all(x <= y for x, y in zip(g, m)) for g in ideal.generators)


def normal_form(ideal: MonomialIdeal, p: Polynomial) -> Polynomial:
    if p.nvars != ideal.n:
        raise DimensionError(f"polynomial in {p.nvars} variables, ideal in {ideal.n}")
    kept = {m: c for m, c in p.terms.items() if not contains_monomial(ideal, m)}
    return Polynomial(p.nvars, kept, p.names)


def mul_mod(ideal: MonomialIdeal, p: Polynomial, q: Polynomial) -> Polynomial:
    """``NF(p*q)``, skipping products that land in the ideal."""
    out = {}
    for ma, ca in p.terms.items():
        for mb, cb in q.terms.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            if m in out:
                out[m] += ca * cb
            elif not contains_monomial(ideal, m):
                out[m] = ca * cb
    # inputs need not be reduced; contains_monomial filters every product
    return Polynomial(p.nvars, out, p.names)


def pow_mod(ideal: MonomialIdeal, p: Polynomial, k: int) -> Polynomial:
    result = normal_form(ideal, Polynomial.constant(p.nvars, 1, p.names))
    base = normal_form(ideal, p)
    while k:
        if k & 1:
            result = mul_mod(ideal, result, base)
        k >>= 1
        if k:
            base = mul_mod(ideal, base, base)
    return result


def standard_monomials(ideal: MonomialIdeal, degree_cap: int) -> List[Monomial]:
    """Monomials outside the ideal, by total degree then X1-first.

    Raises :class:`QuotientNotFiniteError` if a standard monomial exists in
    degree ``degree_cap + 1``; if none does, every higher-degree monomial is
    a multiple of one in that degree and hence also lies in the ideal.
    """
    out: List[Monomial] = []
    for k in range(degree_cap + 1):
        out.extend(m for m in monomials_of_degree(ideal.n, k) if not contains_monomial(ideal, m))
    for m in monomials_of_degree(ideal.n, degree_cap + 1):
        if not contains_monomial(ideal, m):
            raise QuotientNotFiniteError(
                f"standard monomial {m} in degree {degree_cap + 1}: quotient not finite-dimensional at this cap"
            )
    return sorted(out, key=basis_order_key)


# ---------------------------------------------------------------------------
# the relation ideals and their shifts
# ---------------------------------------------------------------------------

def _vars(n: int):
    return [Polynomial.variable(n, i) for i in range(n)]


def ideal_a_generators(n: int, c: int) -> List[Tuple[str, Polynomial]]:
    """Generators ``(X_i - 1)^c`` and ``(X_i - 1)(X_i X_j - 1)^(c-1)``, i != j."""
    xs = _vars(n)
    gens = [(f"pow[{i}]", (xs[i] - 1) ** c) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                gens.append((f"mixed[{i},{j}]", (xs[i] - 1) * (xs[i] * xs[j] - 1) ** (c - 1)))
    return gens


def ideal_b_generators(n: int, c: int) -> List[Tuple[str, Polynomial]]:
    """Generators ``X_i^c`` and ``X_i (X_i + X_j + X_i X_j)^(c-1)``, aligned with
    :func:`ideal_a_generators`."""
    xs = _vars(n)
    gens = [(f"pow[{i}]", xs[i] ** c) for i in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                gens.append((f"mixed[{i},{j}]", xs[i] * (xs[i] + xs[j] + xs[i] * xs[j]) ** (c - 1)))
    return gens


def check_shift_consistency(n: int, c: int) -> bool:
    return all(
        shift_substitute(a) == b
        for (_, a), (_, b) in zip(ideal_a_generators(n, c), ideal_b_generators(n, c))
    )


@dataclass(frozen=True)
class ContainmentResult:
    ok: bool
    generator: Optional[str] = None
    survivor: Optional[Monomial] = None

    def __bool__(self):
        return self.ok


def check_b_subset_c(n: int, c: int) -> ContainmentResult:
    """Every generator of the shifted relation ideal reduces to 0 modulo c(n, c)."""
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ideal = build_ideal_c(n, c)
    for label, g in ideal_b_generators(n, c):
        rest = normal_form(ideal, g)
        if not rest.is_zero():
            return ContainmentResult(False, f"{label}: {g}", sorted_grlex(rest.terms)[0])
    return ContainmentResult(True)


def check_m_power_subset(n: int, c: int) -> ContainmentResult:
    """All monomials of degree ``n + 1`` lie in c(n, c).

    This is enough for the whole power of the maximal ideal: that power is
    spanned by multiples of degree-(n+1) monomials, and a monomial ideal is
    closed under multiplication by monomials.
    """
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ideal = build_ideal_c(n, c)
    for m in monomials_of_degree(n, n + 1):
        if not contains_monomial(ideal, m):
            return ContainmentResult(False, None, m)
    return ContainmentResult(True)


@dataclass(frozen=True)
class CongruenceResult:
    ok: bool
    n: int
    e: int
    normal_form: Polynomial
    coefficient: int  # e^n * n!
    top_not_in_ideal: bool  # X1...Xn is a standard monomial

    def __bool__(self):
        return self.ok


def shifted_power_base(n: int, e: int) -> Polynomial:
    """``(X_1 + 1)^e ... (X_n + 1)^e - 1``."""
    out = Polynomial.constant(n, 1)
    for x in _vars(n):
        out = out * (x + 1) ** e
    return out - 1


def check_congruence(n: int, c: int, e: int) -> CongruenceResult:
    """``NF(((X1+1)^e...(Xn+1)^e - 1)^n) == e^n n! X1...Xn`` modulo c(n, c).

    The power is reduced after every multiplication, which gives the same
    normal form as reducing the full expansion because the ideal absorbs
    products.
    """
    if e < 1:
        raise ValueError("e must be >= 1")
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        ideal = build_ideal_c(n, c)
    lhs = pow_mod(ideal, shifted_power_base(n, e), n)
    coefficient = e**n * factorial(n)
    top = (1,) * n
    diff = lhs - Polynomial.monomial(top, coefficient)
    top_out = not contains_monomial(ideal, top)
    ok = normal_form(ideal, diff).is_zero() and top_out and not lhs.is_zero()
    return CongruenceResult(ok, n, e, lhs, coefficient, top_out)
