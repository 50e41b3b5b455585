"""Independent reference computations used by the tests.

Nothing here imports the package's algebra: enumeration is by brute-force
``itertools.product`` and symbolic work goes through sympy.
"""

import itertools

import sympy as sp


def ideal_c_generators_bruteforce(n, c):
    """Unminimalised generator list of c(n, c)."""
    return [m for m in itertools.product(range(c + 1), repeat=n) if sum(m) == c and max(m) >= 2]


def divisible_by_any(m, gens):
    return any(all(g[i] <= m[i] for i in range(len(m))) for g in gens)


def standard_monomials_bruteforce(n, c, cap):
    gens = ideal_c_generators_bruteforce(n, c)
    return {
        m for m in itertools.product(range(cap + 1), repeat=n)
        if sum(m) <= cap and not divisible_by_any(m, gens)
    }


def sympy_to_terms(expr, symbols):
    poly = sp.Poly(sp.expand(expr), *symbols)
    return {tuple(m): int(cf) for m, cf in poly.terms() if cf != 0}


def f_c_sympy(c):
    x, y = sp.symbols("X Y")
    f = (x - 1) * sp.prod([x ** (2**i) * y ** (2**i) - 1 for i in range(c - 1)])
    return f, x, y


def dense_int_matmul(a, b):
    """Triple loop over Python ints."""
    n, m, p = len(a), len(b), len(b[0])
    return [[sum(int(a[i][k]) * int(b[k][j]) for k in range(m)) for j in range(p)] for i in range(n)]
