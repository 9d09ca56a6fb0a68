"""
[src/core/identities.py]
------------------------
Evaluators for every integer-side identity and congruence.

Responsibilities:
1.  **Summation lemmas**: the closed forms for sums of (2m+1)-weighted binomial
    products, compared exactly after certifying the closed form integral.
2.  **Main congruences**: weighted Apéry and Delannoy sums modulo n, n^3,
    2n and 2p^6.
3.  **gcd family**: sums of binomial products modulo gcd(a, b, n), their
    corollaries, and the particular case whose quotient is I(n).
4.  **Prime congruences**: the Wolstenholme pair and the 2p^4 / 2p^3
    congruences.
5.  **Proof routes**: the weighted sums recomputed through the newton-basis
    expansion and the summation lemmas, as an independent cross-check.

Every function returns `CheckResult` records (see `src/core/results.py`);
none of them raises on a failed claim except the integrality certificates,
which raise `NotIntegral`.
"""

from fractions import Fraction
from typing import List, Sequence, Tuple

from src.core.errors import BadDomain
from src.core.exact import (
    binomial,
    certify_integer,
    certify_natural,
    gcd_many,
    require_index_below,
    require_nonnegative,
    require_pair_lists,
    require_positive,
    require_prime,
    require_sign,
    rising_factorial,
    sign_power,
)
from src.core.newton import newton_coeffs
from src.core.results import CheckResult
from src.core.sequences import apery_values, delannoy_values

SUMMATION_LEMMAS = {
    "gsun": "lem2.2",
    "sun_plus": "lem3.1+",
    "sun_minus": "lem3.1-",
    "cubic": "lem4.1",
}

COROLLARIES = ("cor51a", "cor51b", "cor52", "calkin")
COROLLARY_CLAIMS = {"cor51a": "cor5.1a", "cor51b": "cor5.1b", "cor52": "cor5.2", "calkin": "calkin"}


# ---------------------------------------------------------------------------
# Summation lemmas
# ---------------------------------------------------------------------------

def _gsun_closed_form(n: int, k: int, a: int) -> int:
    value = Fraction((n - k) * (n - k - a), 2 * k + a + 1) \
        * binomial(n + k, 2 * k) * binomial(n + k + a, 2 * k + 2 * a)
    return certify_integer(value, f"two-binomial sum closed form n={n} k={k} a={a}")


def _sun_plus_closed_form(n: int, k: int) -> int:
    value = Fraction((n - k) * n, k + 1) * binomial(n + k, 2 * k)
    return certify_integer(value, f"plain sum closed form n={n} k={k}")


def _sun_minus_closed_form(n: int, k: int) -> int:
    return sign_power(n - 1) * (n - k) * binomial(n + k, 2 * k)


def _cubic_closed_form(n: int, k: int) -> int:
    value = Fraction((n - k) ** 2 * (2 * n * n - k - 1), k + 1) * binomial(n + k, 2 * k) ** 2
    return certify_integer(value, f"cubic sum closed form n={n} k={k}")


def check_summation_lemma(lemma_id: str, n: int, k: int, a: int = 0) -> CheckResult:
    """
    Exact closed-form evaluation of a finite binomial sum.

    Args:
        lemma_id: One of `gsun`, `sun_plus`, `sun_minus`, `cubic`.
        n: Upper end (exclusive) of the summation range, >= 1.
        k: Lower binomial parameter, 0 <= k <= n-1.
        a: Extra shift, used by `gsun` only.

    Raises:
        BadDomain: unknown lemma id or out-of-range parameters.
        NotIntegral: a closed form is not an integer.
    """
    if lemma_id not in SUMMATION_LEMMAS:
        raise BadDomain(f"unknown summation lemma {lemma_id!r}")
    require_positive("n", n)
    require_index_below("k", k, "n", n)
    claim_id = SUMMATION_LEMMAS[lemma_id]

    if lemma_id == "gsun":
        require_nonnegative("a", a)
        lhs = sum((2 * m + 1) * binomial(m + k, 2 * k) * binomial(m + k + a, 2 * k + 2 * a)
                  for m in range(k, n))
        return CheckResult.equality(claim_id, (("n", n), ("k", k), ("a", a)), lhs, _gsun_closed_form(n, k, a))

    params = (("n", n), ("k", k))
    if lemma_id == "sun_plus":
        lhs = sum((2 * m + 1) * binomial(m + k, 2 * k) for m in range(n))
        rhs = _sun_plus_closed_form(n, k)
    elif lemma_id == "sun_minus":
        lhs = sum(sign_power(m) * (2 * m + 1) * binomial(m + k, 2 * k) for m in range(n))
        rhs = _sun_minus_closed_form(n, k)
    else:
        lhs = sum((2 * m + 1) ** 3 * binomial(m + k, 2 * k) ** 2 for m in range(n))
        rhs = _cubic_closed_form(n, k)
    return CheckResult.equality(claim_id, params, lhs, rhs)


# ---------------------------------------------------------------------------
# Integrality certificate
# ---------------------------------------------------------------------------

def _lemma23_numerator(n: int, k: int, a: int) -> Fraction:
    """C_a(k,n) = C(2k,k) (2k+1)_{2a} (n-k)(n-k-a)/(2k+a+1) C(n+k,2k) C(n+k+a,2k+2a)."""
    return Fraction((n - k) * (n - k - a), 2 * k + a + 1) \
        * binomial(n + k, 2 * k) * binomial(n + k + a, 2 * k + 2 * a) \
        * binomial(2 * k, k) * rising_factorial(2 * k + 1, 2 * a)


def _require_lemma23_domain(n: int, k: int, a: int) -> None:
    require_positive("n", n)
    require_nonnegative("a", a)
    if not 0 <= k <= n:
        raise BadDomain(f"k must satisfy 0 <= k <= n, got k={k}, n={n}")


def lemma23_certificate(n: int, k: int, a: int) -> int:
    """
    The quotient C_a(k,n) / n, certified to be a natural number.

    Raises:
        NotIntegral: if the quotient is not an integer or is negative.
    """
    _require_lemma23_domain(n, k, a)
    return certify_natural(_lemma23_numerator(n, k, a) / n, f"quotient n={n} k={k} a={a}")


def check_lemma23(n: int, k: int, a: int) -> CheckResult:
    """C_a(k,n) ≡ 0 (mod n), with the quotient certified natural (claim `lem2.3`)."""
    _require_lemma23_domain(n, k, a)
    numerator = certify_integer(_lemma23_numerator(n, k, a), f"numerator n={n} k={k} a={a}")
    lemma23_certificate(n, k, a)
    return CheckResult.congruence("lem2.3", (("n", n), ("k", k), ("a", a)), numerator, n, 0)


def check_lemma23_factorization(n: int, k: int, a: int) -> CheckResult:
    """
    The quotient written as an explicit product of binomials and rising
    factorials (claim `lem2.3f`):

        a = 0:  (n-k)^2/(n(2k+1)) C(n+k,2k)^2 C(2k,k) = C(n-1,k) C(n+k,k) C(n+k,2k+1)
        a >= 1: (n-k)(n-k-a)/(n(2k+a+1)) C(n+k,2k) C(2k,k) (2k+1)_{2a}
                  = (n-k-a) C(n+k,k) C(n-1,k) (2k+1)_a (2k+a+2)_{a-1}
    """
    require_positive("n", n)
    require_index_below("k", k, "n", n)
    require_nonnegative("a", a)
    base = Fraction((n - k) * (n - k - a), n * (2 * k + a + 1)) \
        * binomial(n + k, 2 * k) * binomial(2 * k, k) * rising_factorial(2 * k + 1, 2 * a)
    if a == 0:
        lhs = base * binomial(n + k, 2 * k)
        rhs = binomial(n - 1, k) * binomial(n + k, k) * binomial(n + k, 2 * k + 1)
    else:
        lhs = base
        rhs = (n - k - a) * binomial(n + k, k) * binomial(n - 1, k) \
            * rising_factorial(2 * k + 1, a) * rising_factorial(2 * k + a + 2, a - 1)
    if lhs.denominator == 1:
        lhs = lhs.numerator
    return CheckResult.equality("lem2.3f", (("n", n), ("k", k), ("a", a)), lhs, rhs)


# ---------------------------------------------------------------------------
# Weighted Apéry / Delannoy sums
# ---------------------------------------------------------------------------

def _weight_product(k: int, r: int) -> int:
    return (2 * k + 1) * k ** r * (k + 1) ** r


def _weight_odd_power(k: int, r: int) -> int:
    return (2 * k + 1) ** (2 * r + 1)


def check_thm_apery(n: int, r: int) -> Tuple[CheckResult, CheckResult]:
    """
    sum_{k<n} (2k+1) k^r (k+1)^r A_k ≡ 0 and sum_{k<n} (2k+1)^{2r+1} A_k ≡ 0 (mod n).
    Returns the records for `thm1.1a` and `thm1.1b`.
    """
    require_positive("n", n)
    require_nonnegative("r", r)
    values = apery_values(n)
    first = sum(_weight_product(k, r) * v for k, v in enumerate(values))
    second = sum(_weight_odd_power(k, r) * v for k, v in enumerate(values))
    params = (("n", n), ("r", r))
    return (CheckResult.congruence("thm1.1a", params, first, n, 0),
            CheckResult.congruence("thm1.1b", params, second, n, 0))


def check_thm_delannoy(n: int, r: int, eps: int) -> Tuple[CheckResult, CheckResult]:
    """The two eps^k-weighted Delannoy sums modulo n (`thm1.2a`, `thm1.2b`)."""
    require_positive("n", n)
    require_nonnegative("r", r)
    require_sign("eps", eps)
    values = delannoy_values(n)
    first = sum(eps ** k * _weight_product(k, r) * v for k, v in enumerate(values))
    second = sum(eps ** k * _weight_odd_power(k, r) * v for k, v in enumerate(values))
    params = (("n", n), ("r", r), ("eps", eps))
    return (CheckResult.congruence("thm1.2a", params, first, n, 0),
            CheckResult.congruence("thm1.2b", params, second, n, 0))


def check_thm_delref(n: int, r: int) -> Tuple[CheckResult, CheckResult]:
    """
    Refinements modulo 2n:
        sum (2k+1)^{2r+1} D_k ≡ n,
        sum (-1)^k (2k+1)^{2r+1} D_k ≡ n if n is odd, else 0.
    Returns (`thm3.1a`, `thm3.1b`).
    """
    require_positive("n", n)
    require_nonnegative("r", r)
    values = delannoy_values(n)
    plain = sum(_weight_odd_power(k, r) * v for k, v in enumerate(values))
    alternating = sum(sign_power(k) * _weight_odd_power(k, r) * v for k, v in enumerate(values))
    params = (("n", n), ("r", r))
    return (CheckResult.congruence("thm3.1a", params, plain, 2 * n, n),
            CheckResult.congruence("thm3.1b", params, alternating, 2 * n, n if n % 2 else 0))


def _apery_cubic_sum(n: int) -> int:
    return sum((2 * k + 1) ** 3 * v for k, v in enumerate(apery_values(n)))


def check_akcubic(n: int) -> CheckResult:
    """sum_{k<n} (2k+1)^3 A_k ≡ 0 (mod n^3)  (claim `thm1.3a`)."""
    require_positive("n", n)
    return CheckResult.congruence("thm1.3a", (("n", n),), _apery_cubic_sum(n), n ** 3, 0)


def check_akcubic_prime(p: int) -> CheckResult:
    """
    sum_{k<p} (2k+1)^3 A_k ≡ p^3 (mod 2p^6) for primes p > 3  (claim `thm1.3b`).

    Raises:
        NotPrime: p is not a prime greater than 3.
    """
    require_prime(p)
    return CheckResult.congruence("thm1.3b", (("p", p),), _apery_cubic_sum(p), 2 * p ** 6, p ** 3)


def check_sum_cubic(n: int) -> CheckResult:
    """
    Exact decomposition (claim `eq-sum-cubic`):
        sum (2m+1)^3 A_m = 2n^3 sum C(n+k,k+1) C(n+k,k) C(n-1,k)^2
                           - n^2 sum C(n+k,k)^2 C(n-1,k)^2.
    """
    require_positive("n", n)
    first = sum(binomial(n + k, k + 1) * binomial(n + k, k) * binomial(n - 1, k) ** 2 for k in range(n))
    second = sum(binomial(n + k, k) ** 2 * binomial(n - 1, k) ** 2 for k in range(n))
    rhs = 2 * n ** 3 * first - n ** 2 * second
    return CheckResult.equality("eq-sum-cubic", (("n", n),), _apery_cubic_sum(n), rhs)


def check_delannoy_linear_sum(sign: int, n: int) -> CheckResult:
    """
    Exact evaluations of the r = 0 Delannoy sums (`eq-delsum+`, `eq-delsum-`):
        sum (2k+1) D_k = n sum C(n+k,n) C(n,k+1),
        sum (-1)^k (2k+1) D_k = (-1)^(n-1) n sum C(n+k,n) C(n-1,k).
    """
    require_sign("sign", sign)
    require_positive("n", n)
    values = delannoy_values(n)
    if sign == 1:
        lhs = sum((2 * k + 1) * v for k, v in enumerate(values))
        rhs = n * sum(binomial(n + k, n) * binomial(n, k + 1) for k in range(n))
        claim_id = "eq-delsum+"
    else:
        lhs = sum(sign_power(k) * (2 * k + 1) * v for k, v in enumerate(values))
        rhs = sign_power(n - 1) * n * sum(binomial(n + k, n) * binomial(n - 1, k) for k in range(n))
        claim_id = "eq-delsum-"
    return CheckResult.equality(claim_id, (("n", n),), lhs, rhs)


# ---------------------------------------------------------------------------
# gcd family
# ---------------------------------------------------------------------------

def check_gcd_binom(n: int, a: Sequence[int], b: Sequence[int]) -> CheckResult:
    """
    sum_{k<n} C(n-1,k)^2 prod_i C(a_i+k, b_i+k) ≡ 0 (mod gcd(a, b, n))  (claim `thm1.4`).
    With no pairs the product is 1.
    """
    require_positive("n", n)
    require_pair_lists(a, b)
    d = gcd_many(list(a) + list(b) + [n])
    lhs = 0
    for k in range(n):
        term = binomial(n - 1, k) ** 2
        for ai, bi in zip(a, b):
            term *= binomial(ai + k, bi + k)
        lhs += term
    return CheckResult.congruence("thm1.4", (("n", n), ("a", tuple(a)), ("b", tuple(b))), lhs, d, 0)


def signed_binomial_product_sum(n: int, a: Sequence[int], b: Sequence[int], weight=None) -> int:
    """
    sum_{k<n} (-1)^{mk} w(k) prod_i C(a_i-1, b_i+k), with a generalized upper
    index; `weight` defaults to 1.
    """
    m = len(a)
    total = 0
    for k in range(n):
        term = sign_power(m * k) * (weight(k) if weight else 1)
        for ai, bi in zip(a, b):
            term *= binomial(ai - 1, bi + k)
            if term == 0:
                break
        total += term
    return total


def check_gen_bino(n: int, a: Sequence[int], b: Sequence[int]) -> CheckResult:
    """
    sum_{k<n} (-1)^{mk} prod_i C(a_i-1, b_i+k) ≡ 0 (mod gcd(a, b, n)) for
    integer a_i (claim `thm5.3`).
    """
    require_positive("n", n)
    require_pair_lists(a, b, min_len=1, a_nonnegative=False)
    d = gcd_many(list(a) + list(b) + [n])
    lhs = signed_binomial_product_sum(n, a, b)
    return CheckResult.congruence("thm5.3", (("n", n), ("a", tuple(a)), ("b", tuple(b))), lhs, d, 0)


def check_corollary(cor_id: str, n: int, r: int = 0, s: int = 0) -> CheckResult:
    """
    The specializations of the gcd family:
        cor51a: sum C(n+k,k)^r C(n-1,k)^{2s}             ≡ 0 (mod n)
        cor51b: sum (-1)^k C(n+k,k)^r C(n-1,k)^{2s+1}    ≡ 0 (mod n)
        cor52:  sum (-1)^{(r+s)k} C(n-1,k)^r C(2n-1,k)^s ≡ 0 (mod n)
        calkin: sum_{k=0}^{n} C(n,k)^{2s}                ≡ 0 (mod n+1)
    """
    if cor_id not in COROLLARIES:
        raise BadDomain(f"unknown corollary {cor_id!r}")
    require_nonnegative("r", r)
    require_nonnegative("s", s)
    claim_id = COROLLARY_CLAIMS[cor_id]

    if cor_id == "calkin":
        require_nonnegative("n", n)
        lhs = sum(binomial(n, k) ** (2 * s) for k in range(n + 1))
        return CheckResult.congruence(claim_id, (("n", n), ("s", s)), lhs, n + 1, 0)

    require_positive("n", n)
    if cor_id == "cor51a":
        lhs = sum(binomial(n + k, k) ** r * binomial(n - 1, k) ** (2 * s) for k in range(n))
    elif cor_id == "cor51b":
        lhs = sum(sign_power(k) * binomial(n + k, k) ** r * binomial(n - 1, k) ** (2 * s + 1) for k in range(n))
    else:
        lhs = sum(sign_power((r + s) * k) * binomial(n - 1, k) ** r * binomial(2 * n - 1, k) ** s
                  for k in range(n))
    return CheckResult.congruence(claim_id, (("n", n), ("r", r), ("s", s)), lhs, n, 0)


def _particular_sum(n: int) -> int:
    return sum(binomial(n + k, k) ** 2 * binomial(n - 1, k) ** 2 for k in range(n))


def i_value(n: int) -> int:
    """
    I(n) = (1/n) sum_{k<n} C(n+k,k)^2 C(n-1,k)^2, certified integral.

    Raises:
        NotIntegral: the sum is not divisible by n.
    """
    require_positive("n", n)
    return certify_integer(Fraction(_particular_sum(n), n), f"I({n})")


def check_particular(n: int) -> CheckResult:
    """sum_{k<n} C(n+k,k)^2 C(n-1,k)^2 ≡ 0 (mod n)  (claim `eq-particular1`)."""
    require_positive("n", n)
    return CheckResult.congruence("eq-particular1", (("n", n),), _particular_sum(n), n, 0)


# ---------------------------------------------------------------------------
# Prime congruences
# ---------------------------------------------------------------------------

def check_wolstenholme(which: int, p: int) -> CheckResult:
    """
    which=1: numerator of sum_{k<p} 1/k   ≡ 0 (mod p^2)  (`wolst1`)
    which=2: numerator of sum_{k<p} 1/k^2 ≡ 0 (mod p)    (`wolst2`)
    The reduced denominator is a product of numbers below p, hence prime to p.
    """
    require_prime(p)
    if which == 1:
        harmonic = sum((Fraction(1, k) for k in range(1, p)), Fraction(0))
        return CheckResult.congruence("wolst1", (("p", p),), harmonic.numerator, p ** 2, 0,
                                      notes=(("sum", str(harmonic)),))
    if which == 2:
        harmonic = sum((Fraction(1, k * k) for k in range(1, p)), Fraction(0))
        return CheckResult.congruence("wolst2", (("p", p),), harmonic.numerator, p, 0,
                                      notes=(("sum", str(harmonic)),))
    raise BadDomain(f"which must be 1 or 2, got {which}")


def check_lemma42(which: str, p: int) -> CheckResult:
    """
    which="a": sum_{k<p} C(p+k,k)^2 C(p-1,k)^2            ≡ p (mod 2p^4)  (`lem4.2a`)
    which="b": sum_{k<p} C(p+k,k+1) C(p+k,k) C(p-1,k)^2   ≡ 1 (mod 2p^3)  (`lem4.2b`)
    """
    require_prime(p)
    if which == "a":
        return CheckResult.congruence("lem4.2a", (("p", p),), _particular_sum(p), 2 * p ** 4, p)
    if which == "b":
        lhs = sum(binomial(p + k, k + 1) * binomial(p + k, k) * binomial(p - 1, k) ** 2 for k in range(p))
        return CheckResult.congruence("lem4.2b", (("p", p),), lhs, 2 * p ** 3, 1)
    raise BadDomain(f"which must be 'a' or 'b', got {which!r}")


def check_wolstenholme_suite(p: int) -> List[CheckResult]:
    """The Wolstenholme pair followed by the 2p^4 and 2p^3 congruences."""
    require_prime(p)
    return [check_wolstenholme(1, p), check_wolstenholme(2, p),
            check_lemma42("a", p), check_lemma42("b", p)]


# ---------------------------------------------------------------------------
# Alternating identities
# ---------------------------------------------------------------------------

def check_alternating_identity(which: str, n: int) -> CheckResult:
    """
    unit:    sum_{k<n} (-1)^k C(n+k,n) C(n,k+1)  = (-1)^{n-1}      (`alt-unit`)
    times_n: sum_{k<n} (-1)^k C(n+k,n) C(n-1,k)  = (-1)^{n-1} n    (`alt-n`)
    """
    require_positive("n", n)
    if which == "unit":
        lhs = sum(sign_power(k) * binomial(n + k, n) * binomial(n, k + 1) for k in range(n))
        return CheckResult.equality("alt-unit", (("n", n),), lhs, sign_power(n - 1))
    if which == "times_n":
        lhs = sum(sign_power(k) * binomial(n + k, n) * binomial(n - 1, k) for k in range(n))
        return CheckResult.equality("alt-n", (("n", n),), lhs, sign_power(n - 1) * n)
    raise BadDomain(f"which must be 'unit' or 'times_n', got {which!r}")


# ---------------------------------------------------------------------------
# Proof-route recomputation
# ---------------------------------------------------------------------------

def apery_weighted_sum_via_newton(n: int, r: int) -> int:
    """
    sum_{m<n} (2m+1) m^r (m+1)^r A_m, computed as
    sum_k sum_j a_j(k,r) C(2k,k)^2 (2k+1)_{2j} G(n,k,j) where G is the
    two-binomial closed form.
    """
    require_positive("n", n)
    require_nonnegative("r", r)
    total = 0
    for k in range(n):
        central = binomial(2 * k, k) ** 2
        for j, a in enumerate(newton_coeffs(k, r).coeffs):
            total += a * central * rising_factorial(2 * k + 1, 2 * j) * _gsun_closed_form(n, k, j)
    return total


def delannoy_weighted_sum_via_newton(n: int, r: int, eps: int) -> int:
    """
    sum_{m<n} eps^m (2m+1) m^r (m+1)^r D_m, computed as
    sum_k sum_j a_j(k,r) C(2k,k) (2k+1)_{2j} L(n, k+j) with the plain or
    alternating one-binomial closed form L.
    """
    require_positive("n", n)
    require_nonnegative("r", r)
    require_sign("eps", eps)
    closed = _sun_plus_closed_form if eps == 1 else _sun_minus_closed_form
    total = 0
    for k in range(n):
        central = binomial(2 * k, k)
        for j, a in enumerate(newton_coeffs(k, r).coeffs):
            total += a * central * rising_factorial(2 * k + 1, 2 * j) * closed(n, k + j)
    return total
