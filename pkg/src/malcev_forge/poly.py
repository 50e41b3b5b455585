"""Sparse multivariate polynomials with integer coefficients.

A monomial is a tuple of exponents, one per variable.  A :class:`Polynomial`
maps monomials to nonzero Python ints, so equality of polynomials is equality
of their term dictionaries.  Terms are listed in graded-lex order (highest
first) when printed::

    >>> build_f_c(2)
    Polynomial('X^2*Y - X*Y - X + 1')
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import product as cartesian
from math import comb
from typing import Dict, Mapping, Sequence, Tuple

Monomial = Tuple[int, ...]


class DimensionError(ValueError):
    """Operands live in polynomial rings with different variable counts."""


def default_names(n: int) -> Tuple[str, ...]:
    return tuple(f"X{i + 1}" for i in range(n))


def mono_divides(d: Monomial, m: Monomial) -> bool:
    if len(d) != len(m):
        raise DimensionError(f"monomials of length {len(d)} and {len(m)}")
    return all(x <= y for x, y in zip(d, m))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_degree(m: Monomial) -> int:
    return sum(m)


def grlex_key(m: Monomial):
    """Sort key: larger keys come first in graded-lex order."""
    return (sum(m), m)


class Polynomial:
    __slots__ = ("nvars", "terms", "names", "_hash")

    def __init__(
        self,
        nvars: int,
        terms: Mapping[Monomial, int] | None = None,
        names: Sequence[str] | None = None,
    ):
        self.nvars = nvars
        clean: Dict[Monomial, int] = {}
        for mono, coeff in (terms or {}).items():
            mono = tuple(int(e) for e in mono)
            if len(mono) != nvars:
                raise DimensionError(f"monomial {mono} has length {len(mono)}, expected {nvars}")
            if any(e < 0 for e in mono):
                raise ValueError(f"negative exponent in {mono}")
            coeff = int(coeff)
            if coeff:
                clean[mono] = coeff
        self.terms = clean
        self.names = tuple(names) if names is not None else default_names(nvars)
        if len(self.names) != nvars:
            raise ValueError("one name per variable required")
        self._hash = None

    @classmethod
    def _raw(cls, nvars, terms, names):
        # terms already canonical
        obj = cls.__new__(cls)
        obj.nvars = nvars
        obj.terms = terms
        obj.names = names
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, nvars: int, value: int, names=None) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: value}, names)

    @classmethod
    def variable(cls, nvars: int, index: int, names=None) -> "Polynomial":
        """The variable at 0-based ``index`` (printed as ``X{index+1}`` by default)."""
        if not 0 <= index < nvars:
            raise IndexError(f"variable index {index} out of range for {nvars} variables")
        exps = [0] * nvars
        exps[index] = 1
        return cls(nvars, {tuple(exps): 1}, names)

    @classmethod
    def monomial(cls, mono: Monomial, coeff: int = 1, names=None) -> "Polynomial":
        return cls(len(mono), {tuple(mono): coeff}, names)

    # -- queries -------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def coeff(self, mono: Monomial) -> int:
        return self.terms.get(tuple(mono), 0)

    def constant_term(self) -> int:
        return self.terms.get((0,) * self.nvars, 0)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: grlex_key(kv[0]), reverse=True)

    def with_names(self, names: Sequence[str]) -> "Polynomial":
        return Polynomial(self.nvars, self.terms, names)

    # -- arithmetic ----------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.nvars != self.nvars:
                raise DimensionError(f"{self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, int):
            return Polynomial.constant(self.nvars, other, self.names)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial._raw(self.nvars, out, self.names)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.nvars, {m: -c for m, c in self.terms.items()}, self.names)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: Dict[Monomial, int] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                out[m] = out.get(m, 0) + ca * cb
        return Polynomial._raw(self.nvars, {m: c for m, c in out.items() if c}, self.names)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return poly_pow(self, k)

    def __eq__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.nvars, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def poly_arith(p: Polynomial, q: Polynomial, op: str) -> Polynomial:
    if p.nvars != q.nvars:
        raise DimensionError(f"{p.nvars} vs {q.nvars} variables")
    if op == "add":
        return p + q
    if op == "sub":
        return p - q
    if op == "mul":
        return p * q
    raise ValueError(f"unknown op {op!r}")


def poly_pow(p: Polynomial, k: int) -> Polynomial:
    if k < 0:
        raise ValueError("negative exponent")
    result = Polynomial.constant(p.nvars, 1, p.names)
    base = p
    while k:
        if k & 1:
            result = result * base
        k >>= 1
        if k:
            base = base * base
    return result


def compose(p: Polynomial, images: Sequence[Polynomial]) -> Polynomial:
    """Substitute ``images[i]`` for variable ``i`` of ``p``.

    All images must share one ring; the result lives there.
    """
    if len(images) != p.nvars:
        raise DimensionError(f"need {p.nvars} images, got {len(images)}")
    if not images:
        return p
    target = images[0]
    for img in images[1:]:
        if img.nvars != target.nvars:
            raise DimensionError("images live in different rings")
    powers = [[Polynomial.constant(target.nvars, 1, target.names)] for _ in images]

    def power(i, e):
        cache = powers[i]
        while len(cache) <= e:
            cache.append(cache[-1] * images[i])
        return cache[e]

    out = Polynomial(target.nvars, {}, target.names)
    for mono, coeff in p.terms.items():
        term = Polynomial.constant(target.nvars, coeff, target.names)
        for i, e in enumerate(mono):
            if e:
                term = term * power(i, e)
        out = out + term
    return out


def shift_substitute(p: Polynomial) -> Polynomial:
    """``p(X_1 + 1, ..., X_n + 1)`` by termwise binomial expansion."""
    out: Dict[Monomial, int] = {}
    for mono, coeff in p.terms.items():
        ranges = [range(e + 1) for e in mono]
        for sub in cartesian(*ranges):
            c = coeff
            for e, k in zip(mono, sub):
                c *= comb(e, k)
            out[sub] = out.get(sub, 0) + c
    return Polynomial(p.nvars, out, p.names)


def evaluate(p: Polynomial, values: Sequence[int]) -> int:
    total = 0
    for mono, coeff in p.terms.items():
        term = coeff
        for v, e in zip(values, mono):
            term *= v**e
        total += term
    return total


# ---------------------------------------------------------------------------
# the f_c family
# ---------------------------------------------------------------------------

XY_NAMES = ("X", "Y")


def build_f_c(c: int) -> Polynomial:
    """``(X - 1) * prod_{i=0}^{c-2} (X^(2^i) Y^(2^i) - 1)`` in variables X, Y."""
    if c < 1:
        raise ValueError(f"c must be >= 1, got {c}")
    x = Polynomial.variable(2, 0, XY_NAMES)
    y = Polynomial.variable(2, 1, XY_NAMES)
    f = x - 1
    for i in range(c - 1):
        f = f * ((x * y) ** (2**i) - 1)
    return f


def geometric_sum(base: Polynomial, length: int) -> Polynomial:
    """``base^(length-1) + ... + base + 1``."""
    out = Polynomial(base.nvars, {}, base.names)
    term = Polynomial.constant(base.nvars, 1, base.names)
    for _ in range(length):
        out = out + term
        term = term * base
    return out


def univariate(coeffs: Sequence[int], name: str = "X") -> Polynomial:
    """Polynomial in one variable from ascending coefficients."""
    return Polynomial(1, {(k,): c for k, c in enumerate(coeffs)}, (name,))


def divmod_univariate(p: Polynomial, q: Polynomial) -> Tuple[Polynomial, Polynomial]:
    """Long division in Z[X] by a monic divisor."""
    if p.nvars != 1 or q.nvars != 1:
        raise DimensionError("univariate polynomials required")
    dq = q.degree()
    if dq < 0 or q.coeff((dq,)) != 1:
        raise ValueError("divisor must be monic")
    rem = dict(p.terms)
    quot: Dict[Monomial, int] = {}
    while rem:
        top = max(m[0] for m in rem)
        if top < dq:
            break
        lead = rem[(top,)]
        shift = top - dq
        quot[(shift,)] = lead
        for (k,), c in q.terms.items():
            key = (k + shift,)
            v = rem.get(key, 0) - lead * c
            if v:
                rem[key] = v
            else:
                rem.pop(key, None)
    return Polynomial(1, quot, p.names), Polynomial(1, rem, p.names)


def g_c(c: int) -> Polynomial:
    """``prod_{i=1}^{c-2} (X^(2^i - 1) + ... + X + 1)``; the unit for c <= 2."""
    x = Polynomial.variable(1, 0, ("X",))
    out = Polynomial.constant(1, 1, ("X",))
    for i in range(1, c - 1):
        out = out * geometric_sum(x, 2**i)
    return out


def h_c(c: int) -> Polynomial:
    """``g_c(X) * prod_{i=0}^{c-2} (X^(2^i) + 1)``."""
    x = Polynomial.variable(1, 0, ("X",))
    out = g_c(c)
    for i in range(c - 1):
        out = out * (x ** (2**i) + 1)
    return out


@dataclass(frozen=True)
class FactorizationReport:
    c: int
    identity_1: bool  # f_c(X,1) = (X-1)^c g_c(X)
    identity_1bis: bool  # f_c(X,X) = f_c(X,1) prod (X^(2^i) + 1)
    identity_2: bool  # f_c(X,Y) = (X-1)(XY-1)^(c-1) g_c(XY)
    g: Polynomial
    h: Polynomial
    g_at_1: int
    h_at_1: int
    quotients_agree: bool  # long division recovers the same g_c and h_c

    @property
    def ok(self) -> bool:
        return (
            self.identity_1
            and self.identity_1bis
            and self.identity_2
            and self.quotients_agree
            and self.g_at_1 != 0
            and self.h_at_1 != 0
        )


def verify_f_factorizations(c: int) -> FactorizationReport:
    f = build_f_c(c)
    x1 = Polynomial.variable(1, 0, ("X",))
    one = Polynomial.constant(1, 1, ("X",))
    f_x1 = compose(f, [x1, one])
    f_xx = compose(f, [x1, x1])
    g, h = g_c(c), h_c(c)

    identity_1 = f_x1 == (x1 - 1) ** c * g

    extra = one
    for i in range(c - 1):
        extra = extra * (x1 ** (2**i) + 1)
    identity_1bis = f_xx == f_x1 * extra and f_xx == (x1 - 1) ** c * h

    x = Polynomial.variable(2, 0, XY_NAMES)
    y = Polynomial.variable(2, 1, XY_NAMES)
    g_of_xy = compose(g, [x * y])
    identity_2 = f == (x - 1) * (x * y - 1) ** (c - 1) * g_of_xy

    # independent route: divide out (X-1)^c
    qg, rg = divmod_univariate(f_x1, (x1 - 1) ** c)
    qh, rh = divmod_univariate(f_xx, (x1 - 1) ** c)
    quotients_agree = rg.is_zero() and rh.is_zero() and qg == g and qh == h

    return FactorizationReport(
        c=c,
        identity_1=identity_1,
        identity_1bis=identity_1bis,
        identity_2=identity_2,
        g=g,
        h=h,
        g_at_1=evaluate(g, [1]),
        h_at_1=evaluate(h, [1]),
        quotients_agree=quotients_agree,
    )


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------

def format_monomial(mono: Monomial, names: Sequence[str]) -> str:
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def format_polynomial(p: Polynomial) -> str:
    if not p.terms:
        return "0"
    out = []
    for i, (mono, coeff) in enumerate(p.sorted_terms()):
        sign = "-" if coeff < 0 else "+"
        mag = abs(coeff)
        if any(mono):
            body = format_monomial(mono, p.names)
            if mag != 1:
                body = f"{mag}*{body}"
        else:
            body = str(mag)
        if i == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f"{sign} {body}")
    return " ".join(out)


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")
_FACTOR = re.compile(r"^([A-Za-z_][A-Za-z_0-9]*)(?:\^(\d+))?$")


def parse_polynomial(text: str, names: Sequence[str]) -> Polynomial:
    """Parse the format produced by :func:`format_polynomial`."""
    names = tuple(names)
    index = {name: i for i, name in enumerate(names)}
    n = len(names)
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial text")
    if s[0] not in "+-":
        s = "+" + s
    pieces = _TERM_SPLIT.split(s)
    # split gives ['', sign, term, sign, term, ...]
    if pieces[0].strip():
        raise ValueError(f"cannot parse {text!r}")
    out: Dict[Monomial, int] = {}
    for sign, term in zip(pieces[1::2], pieces[2::2]):
        term = term.strip()
        if not term:
            raise ValueError(f"dangling sign in {text!r}")
        coeff = 1
        exps = [0] * n
        for factor in term.split("*"):
            factor = factor.strip()
            if factor.isdigit():
                coeff *= int(factor)
                continue
            m = _FACTOR.match(factor)
            if not m or m.group(1) not in index:
                raise ValueError(f"bad factor {factor!r} in {text!r}")
            exps[index[m.group(1)]] += int(m.group(2) or 1)
        if sign == "-":
            coeff = -coeff
        key = tuple(exps)
        out[key] = out.get(key, 0) + coeff
    return Polynomial(n, out, names)


def parse_monomial(text: str, names: Sequence[str]) -> Monomial:
    p = parse_polynomial(text, names)
    if len(p.terms) != 1 or next(iter(p.terms.values())) != 1:
        raise ValueError(f"not a monomial: {text!r}")
    return next(iter(p.terms))
