"""Assemble ``G_n = B_n ⋉ A_n`` and certify its properties.

The certificate pipeline checks, for one ``(c, n)``:

* the generators ``t_i`` are 0/1 upper unitriangular and commute;
* ``(t_i - 1)^c = 0`` and ``(t_i - 1)(t_i t_j - 1)^(c-1) = 0``, so the set
  ``T_n = t_1 A ∪ ... ∪ t_n A ∪ A`` satisfies ``M_c``;
* ``(t_1^e ... t_n^e - 1)^n != 0``, and an explicit substitution from the
  coset ``(t_1 ... t_n)^e A`` on which ``M_n`` fails;
* the ideal-level facts behind these (containments and the congruence).

Elements of the infinite restricted product are only ever handled through
their finite support.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence

import numpy as np

from . import linalg
from .grouplaw import (
    GroupElement,
    check_malcev,
    commutator,
    endo_eval,
    eval_word,
    family_fits_int64,
    malcev_words,
    nilpotency_class,
    probe_determinant,
    random_vector,
    unit_vector,
)
from .ideal import check_b_subset_c, check_congruence, check_m_power_subset
from .poly import Polynomial, build_f_c, compose, h_c
from .quotient import (
    QuotientAlgebra,
    build_quotient,
    generator_matrices,
    is_unitriangular_01,
    matrix_to_text,
)

log = logging.getLogger(__name__)

DEFAULT_BOUND = 9


@dataclass
class Check:
    name: str
    passed: bool
    detail: object = None

    def as_dict(self):
        return {"name": self.name, "pass": bool(self.passed), "detail": self.detail}


@dataclass
class Witness:
    e: int
    a: np.ndarray
    b: np.ndarray
    alpha_val: GroupElement
    beta_val: GroupElement
    basis_index: int
    h_injective: bool
    h_det: int

    @property
    def verified(self) -> bool:
        return self.alpha_val != self.beta_val

    def as_dict(self, n: int, c: int):
        return {
            "e": self.e,
            "a": [int(v) for v in self.a],
            "b": [int(v) for v in self.b],
            "alpha_val": self.alpha_val.to_text(n, c),
            "beta_val": self.beta_val.to_text(n, c),
        }


@dataclass
class GnCertificate:
    c: int
    n: int
    quotient: QuotientAlgebra
    matrices: List[np.ndarray]
    seed: int
    checks: List[Check] = field(default_factory=list)
    witnesses: Dict[int, Witness] = field(default_factory=dict)
    nilpotency_class: Optional[int] = None

    @property
    def d(self) -> int:
        return self.quotient.d

    @property
    def failed_stage(self) -> Optional[str]:
        for chk in self.checks:
            if not chk.passed:
                return chk.name
        return None

    @property
    def valid(self) -> bool:
        return self.failed_stage is None

    def check(self, name: str) -> Check:
        for chk in self.checks:
            if chk.name == name:
                return chk
        raise KeyError(name)

    @property
    def witness(self) -> Optional[Witness]:
        if not self.witnesses:
            return None
        return self.witnesses[min(self.witnesses)]

    def to_json_dict(self):
        wit = self.witness
        return {
            "c": self.c,
            "n": self.n,
            "d": self.d,
            "checks": [chk.as_dict() for chk in self.checks],
            "matrices": [matrix_to_text(t, self.n, self.c, i + 1) for i, t in enumerate(self.matrices)],
            "witness": wit.as_dict(self.n, self.c) if wit is not None else None,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2) + "\n"


# ---------------------------------------------------------------------------
# matrix conditions
# ---------------------------------------------------------------------------

def _minus_one(t):
    return linalg.add(t, -linalg.identity(t.shape[0]))


def condition_i(mats: Sequence, c: int) -> List[int]:
    """Indices ``i`` with ``(t_i - 1)^c != 0``."""
    return [i for i, t in enumerate(mats) if not linalg.is_zero(linalg.matpow(_minus_one(t), c))]


def condition_ii(mats: Sequence, c: int) -> List[List[int]]:
    """Pairs ``(i, j)``, ``i != j``, with ``(t_i - 1)(t_i t_j - 1)^(c-1) != 0``."""
    bad = []
    for i, ti in enumerate(mats):
        for j, tj in enumerate(mats):
            if i == j:
                continue
            m = linalg.matmul(_minus_one(ti), linalg.matpow(_minus_one(linalg.matmul(ti, tj)), c - 1))
            if not linalg.is_zero(m):
                bad.append([i, j])
    return bad


def coset_matrix(mats: Sequence, e: int):
    """``(t_1 ... t_n)^e``."""
    d = mats[0].shape[0]
    return linalg.matpow(linalg.product(mats, d), e)


def condition_iii(mats: Sequence, n: int, e: int) -> bool:
    """``(t_1^e ... t_n^e - 1)^n != 0``."""
    return not linalg.is_zero(linalg.matpow(_minus_one(coset_matrix(mats, e)), n))


def endomorphism_criterion(c: int, mats: Sequence) -> List[List[int]]:
    """Pairs ``(t, u)`` from ``{1, t_1, ..., t_n}`` (0 is the identity) with
    ``f_c(t, u) != 0``; empty iff ``T`` satisfies ``M_c``."""
    d = mats[0].shape[0]
    reps = [linalg.identity(d)] + list(mats)
    f = build_f_c(c)
    return [
        [p, q]
        for p, t in enumerate(reps)
        for q, u in enumerate(reps)
        if not linalg.is_zero(endo_eval(f, t, u))
    ]


def search_malcev_violation(c: int, reps: Sequence):
    """Look for ``x = (t, 0)``, ``y = (u, e_k)`` with ``t, u`` in ``reps`` breaking ``M_c``.

    With ``a = 0`` the law holds iff ``e_k f_c(t, u) = 0``, so a nonzero row
    of ``f_c(t, u)`` gives a violation; it is confirmed by direct evaluation.
    Returns ``(gx, gy)`` or ``None``.
    """
    f = build_f_c(c)
    for t in reps:
        for u in reps:
            if not linalg.commute(t, u):
                continue
            rows = np.nonzero(np.any(np.asarray(endo_eval(f, t, u)) != 0, axis=1))[0]
            for k in rows:
                gx = GroupElement.from_matrix(t)
                gy = GroupElement(u, unit_vector(t.shape[0], int(k)))
                if not check_malcev(c, gx, gy):
                    return gx, gy
    return None


# ---------------------------------------------------------------------------
# the law on T_n
# ---------------------------------------------------------------------------

@dataclass
class MalcevOnTResult:
    passed: bool
    endo_pass: bool
    random_pass: bool
    trials: int
    seed: int
    bad_pairs: List[List[int]]
    counterexample: Optional[tuple] = None

    def __bool__(self):
        return self.passed


def malcev_on_T(cert: GnCertificate, trials: int = 1000, seed: int = 0, bound: int = DEFAULT_BOUND) -> MalcevOnTResult:
    mats = cert.matrices
    d = cert.d
    bad_pairs = endomorphism_criterion(cert.c, mats)
    reps = [linalg.identity(d)] + list(mats)
    rng = np.random.default_rng(seed)
    safe = family_fits_int64(2**cert.c, reps, bound)
    counterexample = None
    random_pass = True
    for _ in range(trials):
        p, q = rng.integers(0, len(reps), size=2)
        gx = GroupElement(reps[p], random_vector(rng, d, bound))
        gy = GroupElement(reps[q], random_vector(rng, d, bound))
        if not check_malcev(cert.c, gx, gy, proven_safe=safe):
            random_pass = False
            counterexample = (gx, gy)
            break
    if bad_pairs and counterexample is None:
        counterexample = search_malcev_violation(cert.c, reps)
    endo_pass = not bad_pairs
    return MalcevOnTResult(endo_pass and random_pass, endo_pass, random_pass, trials, seed, bad_pairs, counterexample)


# ---------------------------------------------------------------------------
# failure of M_n on a coset
# ---------------------------------------------------------------------------

class WitnessError(RuntimeError):
    pass


def diagonal_f(n: int) -> Polynomial:
    """``f_n(X, X)`` as a univariate polynomial."""
    x = Polynomial.variable(1, 0, ("X",))
    return compose(build_f_c(n), [x, x])


def find_Mn_failure_witness(cert: GnCertificate, e: int) -> Witness:
    """Substitution ``x = (t, a)``, ``y = (t, 0)`` with ``t = (t_1...t_n)^e``
    on which ``M_n`` fails, verified by evaluating both words."""
    n = cert.n
    t = coset_matrix(cert.matrices, e)
    if not condition_iii(cert.matrices, n, e):
        raise WitnessError(f"(t_1^e...t_n^e - 1)^n vanishes for e={e}")
    h = h_c(n)
    h_det = probe_determinant(h, t)
    big_f = np.asarray(endo_eval(diagonal_f(n), t))
    pair = malcev_words(n)
    gy = GroupElement.from_matrix(t)
    for k in range(cert.d):
        if not np.any(big_f[k] != 0):
            continue
        a = unit_vector(cert.d, k)
        gx = GroupElement(t, a)
        alpha = eval_word(pair.alpha, gx, gy)
        beta = eval_word(pair.beta, gx, gy)
        if alpha == beta:
            raise WitnessError(f"row {k} of f_n(t,t) is nonzero but the words agree")
        return Witness(e, a, gy.a, alpha, beta, k, h_det != 0, h_det)
    raise WitnessError("f_n(t, t) is zero; no witness exists")


# ---------------------------------------------------------------------------
# certificate pipeline
# ---------------------------------------------------------------------------

def build_Gn(
    c: int,
    n: int,
    e_list: Iterable[int] = (1,),
    *,
    trials: int = 1000,
    seed: int = 0,
    bound: int = DEFAULT_BOUND,
    strict: bool = True,
) -> GnCertificate:
    """Run every check for ``G_n`` and collect the results.

    ``strict=False`` admits ``c < 3`` (or ``n < c``) so that the failing
    stages can be observed.
    """
    e_list = list(e_list)
    if strict and not n >= c >= 3:
        raise ValueError(f"need n >= c >= 3, got c={c}, n={n}")
    if any(e < 1 for e in e_list):
        raise ValueError("every e must be >= 1")
    if trials < 1:
        raise ValueError("trials must be >= 1")

    q = build_quotient(n, c, strict=strict)
    mats = generator_matrices(q)
    cert = GnCertificate(c, n, q, mats, seed)
    add = cert.checks.append
    log.info("G_%d for c=%d: d=%d", n, c, q.d)

    add(Check("dimension", q.basis[0] == (0,) * n, {"d": q.d}))
    bad = [i for i, t in enumerate(mats) if not is_unitriangular_01(t)]
    add(Check("unitriangular_01", not bad, {"failing": bad}))
    pairs = [[i, j] for i in range(n) for j in range(i + 1, n) if not linalg.commute(mats[i], mats[j])]
    add(Check("commuting", not pairs, {"failing": pairs}))
    bad_i = condition_i(mats, c)
    add(Check("cond_i", not bad_i, {"failing": bad_i}))
    bad_ii = condition_ii(mats, c)
    add(Check("cond_ii", not bad_ii, {"failing": bad_ii}))
    cond_iii = {e: condition_iii(mats, n, e) for e in e_list}
    add(Check("cond_iii", all(cond_iii.values()), {str(e): ok for e, ok in cond_iii.items()}))

    b_in_c = check_b_subset_c(n, c)
    add(Check("b_subset_c", b_in_c.ok, None if b_in_c.ok else {
        "generator": b_in_c.generator,
        "survivor": list(b_in_c.survivor),
    }))
    m_pow = check_m_power_subset(n, c)
    add(Check("m_power", m_pow.ok, None if m_pow.ok else {"survivor": list(m_pow.survivor)}))

    top = q.index.get((1,) * n)
    congruence = {}
    for e in e_list:
        res = check_congruence(n, c, e)
        # same fact through the representation: row of 1 in (t-1)^n
        row = np.asarray(linalg.matpow(_minus_one(coset_matrix(mats, e)), n))[0]
        expected = np.zeros(q.d, dtype=object)
        if top is not None:
            expected[top] = res.coefficient
        congruence[str(e)] = {
            "pass": bool(res.ok and linalg.equal(row, expected)),
            "coefficient": res.coefficient,
        }
    add(Check("congruence", all(v["pass"] for v in congruence.values()), congruence))

    law = malcev_on_T(cert, trials, seed, bound)
    add(Check("malcev_on_T", law.passed, {
        "trials": trials,
        "seed": seed,
        "bound": bound,
        "endomorphism_criterion": law.endo_pass,
        "random_trials": law.random_pass,
    }))

    cert.nilpotency_class = nilpotency_class(mats, q.d)
    add(Check("nilpotency_class", 1 <= cert.nilpotency_class <= q.d, {"class": cert.nilpotency_class}))

    outcomes = {}
    for e in e_list:
        if not cond_iii[e]:
            outcomes[str(e)] = "skipped"
            continue
        try:
            wit = find_Mn_failure_witness(cert, e)
        except WitnessError as exc:
            outcomes[str(e)] = f"error: {exc}"
            continue
        cert.witnesses[e] = wit
        outcomes[str(e)] = "verified" if wit.verified and wit.h_injective else "unverified"
    add(Check("witness", bool(outcomes) and all(v == "verified" for v in outcomes.values()), outcomes))
    return cert


# ---------------------------------------------------------------------------
# restricted direct product
# ---------------------------------------------------------------------------

class RestrictedProductElement:
    """Finitely supported element of ``prod_n G_n``; identity components are dropped."""

    __slots__ = ("components",)

    def __init__(self, components: Optional[Dict[int, GroupElement]] = None):
        self.components = {k: g for k, g in (components or {}).items() if not g.is_identity()}

    @property
    def support(self):
        return sorted(self.components)

    def __mul__(self, other):
        return product_mul(self, other)

    def __eq__(self, other):
        if not isinstance(other, RestrictedProductElement):
            return NotImplemented
        return self.support == other.support and all(
            self.components[k] == other.components[k] for k in self.support
        )

    def __repr__(self):
        return f"RestrictedProductElement(support={self.support})"


def product_mul(g: RestrictedProductElement, h: RestrictedProductElement) -> RestrictedProductElement:
    out = dict(g.components)
    for k, y in h.components.items():
        x = out.get(k)
        if x is not None and x.d != y.d:
            raise ValueError(f"component {k}: dimension {x.d} vs {y.d}")
        out[k] = y if x is None else x * y
    return RestrictedProductElement(out)


# ---------------------------------------------------------------------------
# normality, commutator closure, residual probes
# ---------------------------------------------------------------------------

def in_T(g: GroupElement, mats: Sequence) -> bool:
    """Membership in ``T_n``: the matrix part is 1 or one of the ``t_i``."""
    if linalg.equal(g.t, linalg.identity(g.d)):
        return True
    return any(linalg.equal(g.t, t) for t in mats)


def random_T_element(mats: Sequence, rng, bound: int = DEFAULT_BOUND) -> GroupElement:
    d = mats[0].shape[0]
    k = int(rng.integers(0, len(mats) + 1))
    t = linalg.identity(d) if k == 0 else mats[k - 1]
    return GroupElement(t, random_vector(rng, d, bound))


def random_G_element(mats: Sequence, rng, bound: int = DEFAULT_BOUND, max_exp: int = 2) -> GroupElement:
    d = mats[0].shape[0]
    t = linalg.identity(d)
    for m in mats:
        t = linalg.matmul(t, linalg.matpow(m, int(rng.integers(-max_exp, max_exp + 1))))
    return GroupElement(t, random_vector(rng, d, bound))


@dataclass
class ClosureReport:
    samples: int
    membership: bool
    normality: bool
    commutator_closed: bool
    cross_commuting: bool
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.membership and self.normality and self.commutator_closed and self.cross_commuting

    def __bool__(self):
        return self.passed


def T_membership_and_closure_check(certs: Sequence[GnCertificate], samples: int = 500, seed: int = 0,
                                   bound: int = DEFAULT_BOUND) -> ClosureReport:
    rng = np.random.default_rng(seed)
    failures = []
    membership = normality = closed = cross = True
    for cert in certs:
        mats = cert.matrices
        for _ in range(samples):
            s = random_T_element(mats, rng, bound)
            if not in_T(s, mats):
                membership = False
                failures.append(f"n={cert.n}: sampled element not recognised as a member")
            if cert.n >= 2:
                outside = GroupElement(linalg.matmul(mats[0], mats[1]), random_vector(rng, cert.d, bound))
                if in_T(outside, mats):
                    membership = False
                    failures.append(f"n={cert.n}: t_1 t_2 coset accepted")
            g = random_G_element(mats, rng, bound)
            conj = s.conj(g)
            if not (in_T(conj, mats) and linalg.equal(conj.t, s.t)):
                normality = False
                failures.append(f"n={cert.n}: conjugate left T")
            s2 = random_T_element(mats, rng, bound)
            comm = commutator(s, s2)
            if not linalg.equal(comm.t, linalg.identity(cert.d)):
                closed = False
                failures.append(f"n={cert.n}: commutator outside A")
    for i, ci in enumerate(certs):
        for cj in certs[i + 1:]:
            if ci.n == cj.n:
                continue
            for _ in range(samples):
                x = RestrictedProductElement({ci.n: random_T_element(ci.matrices, rng, bound)})
                y = RestrictedProductElement({cj.n: random_T_element(cj.matrices, rng, bound)})
                if x * y != y * x:
                    cross = False
                    failures.append(f"components {ci.n} and {cj.n} do not commute")
    return ClosureReport(samples, membership, normality, closed, cross, failures[:20])


def _trivial_mod(g: GroupElement, modulus: int) -> bool:
    diff = np.asarray(linalg.add(g.t, -linalg.identity(g.d)))
    return all(int(v) % modulus == 0 for v in diff.flat) and all(int(v) % modulus == 0 for v in g.a)


def image_is_trivial(g: GroupElement, p: int, k: int) -> bool:
    """Whether ``g`` maps to 1 in ``(matrices mod p^k) ⋉ (Z/p^k)^d``."""
    return _trivial_mod(g, p**k)


def separate_in_p_quotient(g: GroupElement, p: int) -> int:
    """Least ``k`` such that ``g`` survives modulo ``p^k``."""
    if p < 2:
        raise ValueError("p must be a prime")
    if g.is_identity():
        raise ValueError("the identity is not separated by any quotient")
    k = 1
    while image_is_trivial(g, p, k):
        k += 1
    return k


def torsion_probe(g: GroupElement, orders: Iterable[int] = (2, 3, 5)) -> bool:
    """``g^k != 1`` for each ``k`` in ``orders`` (``g`` must not be the identity)."""
    return all(not (g**k).is_identity() for k in orders)
