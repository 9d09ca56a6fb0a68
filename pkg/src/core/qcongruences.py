"""
[src/core/qcongruences.py]
--------------------------
q-analogue identities and congruences, decided by exact polynomial remainder.

Responsibilities:
1.  **Exact q-identities**: q-Chu-Vandermonde, the squared q-binomial sum and
    its two Chu-Vandermonde halves, the cyclotomic factorization of [d]_q.
2.  **Congruences modulo [d]_q**: the four weighted q-binomial sums and the
    finite q-sum with the I(n/2) right-hand side. Sums are accumulated in
    Z[q]/(q^d - 1) (exponent folding), then reduced modulo [d]_q.
3.  **q-Lucas**: a congruence modulo Phi_d(q), standing in for evaluation at a
    primitive d-th root of unity.
4.  **Squared-modulus conjecture**: evaluated in Z[q]/(M^2) by long division,
    with M built two ways and both recorded.

Reported `lhs` values for the folded checks are the sums already reduced
modulo q^d - 1; the remainder modulo [d]_q is the same either way.
"""

import logging
from typing import List, Sequence, Tuple

from src.config.settings import Config
from src.core.errors import BadDomain, NotIntegral
from src.core.exact import (
    binomial,
    gcd_many,
    is_prime,
    require_nonnegative,
    require_pair_lists,
    require_positive,
)
from src.core.identities import i_value
from src.core.qpoly import QPoly, ResidueRing, cyclotomic, poly_divrem, poly_rem, qbinom, qint
from src.core.results import CheckResult

logger = logging.getLogger(__name__)

THM51_VARIANTS = (1, 2, 3, 4)
FOLDED_NOTE = ("lhs", "reduced modulo q^d - 1")


# ---------------------------------------------------------------------------
# Exact identities
# ---------------------------------------------------------------------------

def check_qchu(m: int, n: int, h: int) -> CheckResult:
    """sum_{k<=h} [n k][m h-k] q^{(n-k)(h-k)} = [m+n h]  (claim `qchu`)."""
    for name, value in (("m", m), ("n", n), ("h", h)):
        require_nonnegative(name, value)
    lhs = QPoly.zero()
    for k in range(min(h, n) + 1):
        lhs = lhs + (qbinom(n, k) * qbinom(m, h - k)).shift((n - k) * (h - k))
    return CheckResult.equality("qchu", (("m", m), ("n", n), ("h", h)), lhs, qbinom(m + n, h))


def check_lemma55(n: int) -> CheckResult:
    """sum_{k=0}^{n} [n k]^2 q^{k^2-k} = 2 [2n-1 n]  (claim `lem5.5`, n >= 1)."""
    require_positive("n", n)
    lhs = QPoly.zero()
    for k in range(n + 1):
        lhs = lhs + (qbinom(n, k) ** 2).shift(k * k - k)
    return CheckResult.equality("lem5.5", (("n", n),), lhs, qbinom(2 * n - 1, n) * 2)


def check_lemma55_chu(n: int, which: int) -> CheckResult:
    """
    The two q-Chu-Vandermonde halves of the squared sum:
        which=1: sum [n k][n-1 k]   q^{k^2}    = [2n-1 n]   (`lem5.5a`)
        which=2: sum [n k][n-1 k-1] q^{k(k-1)} = [2n-1 n]   (`lem5.5b`)
    """
    require_positive("n", n)
    lhs = QPoly.zero()
    if which == 1:
        for k in range(n + 1):
            lhs = lhs + (qbinom(n, k) * qbinom(n - 1, k)).shift(k * k)
        claim_id = "lem5.5a"
    elif which == 2:
        for k in range(n + 1):
            lhs = lhs + (qbinom(n, k) * qbinom(n - 1, k - 1)).shift(k * (k - 1))
        claim_id = "lem5.5b"
    else:
        raise BadDomain(f"which must be 1 or 2, got {which}")
    return CheckResult.equality(claim_id, (("n", n),), lhs, qbinom(2 * n - 1, n))


def check_cyclotomic_factorization(d: int) -> CheckResult:
    """prod_{e|d, e>1} Phi_e(q) = [d]_q  (claim `cyclo`, d >= 2)."""
    if d < 2:
        raise BadDomain(f"d must be >= 2, got {d}")
    product = QPoly.one()
    for e in range(2, d + 1):
        if d % e == 0:
            product = product * cyclotomic(e)
    return CheckResult.equality("cyclo", (("d", d),), product, qint(d))


# ---------------------------------------------------------------------------
# Congruences at roots of unity
# ---------------------------------------------------------------------------

def check_qlucas(a: int, b: int, r: int, s: int, d: int) -> CheckResult:
    """
    [ad+b rd+s]_q ≡ C(a,r) [b s]_q (mod Phi_d(q)) for 0 <= b, s <= d-1
    (claim `qlucas`).
    """
    if d < 2:
        raise BadDomain(f"d must be >= 2, got {d}")
    require_nonnegative("a", a)
    require_nonnegative("r", r)
    for name, value in (("b", b), ("s", s)):
        if not 0 <= value <= d - 1:
            raise BadDomain(f"{name} must satisfy 0 <= {name} <= d-1, got {name}={value}, d={d}")
    lhs = qbinom(a * d + b, r * d + s)
    expected = qbinom(b, s) * binomial(a, r)
    params = (("d", d), ("a", a), ("b", b), ("r", r), ("s", s))
    return CheckResult.congruence("qlucas", params, lhs, cyclotomic(d), expected)


def _thm51_weight(variant: int, n: int, k: int) -> int:
    if variant == 1:
        return k * k
    if variant == 2:
        return k * k + 2 * k
    if variant == 3:
        return k
    return n - k - 1


def check_thm51(variant: int, n: int, a: Sequence[int], b: Sequence[int]) -> CheckResult:
    """
    sum_{k<n} w_k(q) prod_i [a_i+k b_i+k]_q ≡ 0 (mod [d]_q), d = gcd(a, b, n),
    where w_k is q^{k^2}[n-1 k]^2, q^{k^2+2k}[n-1 k]^2, q^k or q^{n-k-1}
    for variants 1..4 (claims `thm5.1v1` .. `thm5.1v4`).
    """
    if variant not in THM51_VARIANTS:
        raise BadDomain(f"variant must be one of {THM51_VARIANTS}, got {variant}")
    require_positive("n", n)
    require_pair_lists(a, b, min_len=1)
    d = gcd_many(list(a) + list(b) + [n])
    ring = ResidueRing.cyclic(d)
    lhs = QPoly.zero()
    for k in range(n):
        factors: List[QPoly] = [ring.monomial(_thm51_weight(variant, n, k))]
        if variant in (1, 2):
            factors.append(ring.power(qbinom(n - 1, k), 2))
        factors.extend(qbinom(ai + k, bi + k) for ai, bi in zip(a, b))
        lhs = ring.reduce(lhs + ring.product(factors))
    params = (("n", n), ("a", tuple(a)), ("b", tuple(b)))
    return CheckResult.congruence(f"thm5.1v{variant}", params, lhs, qint(d), 0,
                                  notes=(FOLDED_NOTE, ("d", str(d))))


def thm54_expected(n: int) -> QPoly:
    """2 I(n/2) (1-q^n)/(1-q^2) for even n, else 0."""
    if n % 2:
        return QPoly.zero()
    return QPoly(tuple(1 if j % 2 == 0 else 0 for j in range(n - 1))) * (2 * i_value(n // 2))


def check_thm54(n: int) -> CheckResult:
    """
    sum_{k<n} q^{k^2-k} [n+k k]^2 [n-1 k]^2 ≡ 2 I(n/2)(1-q^n)/(1-q^2) or 0
    (mod [n]_q)  (claim `thm5.4`).
    """
    require_positive("n", n)
    ring = ResidueRing.cyclic(n)
    lhs = QPoly.zero()
    for k in range(n):
        term = ring.product([
            ring.monomial(k * k - k),
            ring.power(qbinom(n + k, k), 2),
            ring.power(qbinom(n - 1, k), 2),
        ])
        lhs = ring.reduce(lhs + term)
    return CheckResult.congruence("thm5.4", (("n", n),), lhs, qint(n), thm54_expected(n),
                                  notes=(FOLDED_NOTE,))


# ---------------------------------------------------------------------------
# Prime-power conjecture
# ---------------------------------------------------------------------------

def _require_prime_power(p: int, e: int) -> int:
    if not is_prime(p):
        raise BadDomain(f"p must be prime, got {p}")
    require_positive("e", e)
    return p ** e


def conj56_moduli(p: int, e: int) -> Tuple[QPoly, QPoly]:
    """
    The unsquared modulus built two ways for n = p^e:
    (1 - q^n)/(1 - q^{n/p}) by exact division, and Phi_p(q^{n/p}).
    """
    n = _require_prime_power(p, e)
    step = n // p
    quotient, remainder = poly_divrem(QPoly.monomial(n) - 1, QPoly.monomial(step) - 1)
    if not remainder.is_zero():
        raise NotIntegral(remainder, f"q^{n}-1 over q^{step}-1")
    return quotient, cyclotomic(p).substitute_power(step)


def check_conj56(p: int, e: int) -> CheckResult:
    """
    With n = p^e:
        sum_{k<n} q^{(n-k)^2} [n+k k]^2 [n-1 k]^2 ≡ q^{(n-1)^2} [n]_q
        (mod ((1-q^n)/(1-q^{n/p}))^2)          (claim `conj5.6`)

    A nonzero remainder is a counterexample, not an error. The notes record
    both constructions of the modulus and whether they agree.

    Raises:
        BadDomain: p not prime, e < 1, or n beyond the desk-scale limit.
    """
    n = _require_prime_power(p, e)
    if n > Config.CONJ56_MAX_N:
        raise BadDomain(f"n = p^e must be <= {Config.CONJ56_MAX_N}, got {n}")
    quotient_form, cyclotomic_form = conj56_moduli(p, e)
    agree = quotient_form == cyclotomic_form
    if not agree:
        logger.warning("conj5.6 modulus constructions differ at p=%d e=%d", p, e)
    modulus = quotient_form ** 2
    ring = ResidueRing(modulus)

    lhs = QPoly.zero()
    for k in range(n):
        term = ring.product([
            ring.monomial((n - k) ** 2),
            ring.power(qbinom(n + k, k), 2),
            ring.power(qbinom(n - 1, k), 2),
        ])
        lhs = ring.reduce(lhs + term)
    expected = ring.reduce(qint(n).shift((n - 1) ** 2))
    notes = (
        ("modulus", "((1-q^n)/(1-q^(n/p)))^2"),
        ("phi_p_form", str(cyclotomic_form)),
        ("moduli_agree", "true" if agree else "false"),
        ("lhs", "reduced modulo the squared modulus"),
    )
    if not agree:
        alternate = poly_rem(lhs - expected, cyclotomic_form ** 2)
        notes += (("phi_p_residue", str(alternate)),)
    return CheckResult.congruence("conj5.6", (("p", p), ("e", e)), lhs, modulus, expected, notes=notes)


def check_conj56_at_one(p: int, e: int) -> CheckResult:
    """The q = 1 case: sum C(n+k,k)^2 C(n-1,k)^2 ≡ n (mod p^2), n = p^e (claim `conj5.6@1`)."""
    n = _require_prime_power(p, e)
    lhs = sum(binomial(n + k, k) ** 2 * binomial(n - 1, k) ** 2 for k in range(n))
    return CheckResult.congruence("conj5.6@1", (("p", p), ("e", e)), lhs, p * p, n)
