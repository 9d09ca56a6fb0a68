"""
[src/core/conjectures.py]
-------------------------
Open conjectures, evaluated exactly at single parameter tuples.

A failing instance is returned as an ordinary `CheckResult` with
`passed=False`; only violated preconditions raise (`BadDomain`).
"""

from typing import Any, Callable, Dict, Mapping, Sequence

from src.core.errors import BadDomain, UnknownClaim
from src.core.exact import (
    binomial,
    gcd_many,
    is_power_of,
    require_pair_lists,
    require_positive,
    require_sign,
    sign_power,
)
from src.core.identities import signed_binomial_product_sum
from src.core.qcongruences import check_conj56
from src.core.results import CheckResult
from src.core.sequences import delannoy_values


def check_conj31(n: int) -> CheckResult:
    """sum_{k<n} (-1)^k (2k+1)^3 D_k ≡ 2n^2 (mod n^3) for n a power of 2."""
    require_positive("n", n)
    if not is_power_of(n, 2):
        raise BadDomain(f"n must be a power of 2, got {n}")
    lhs = sum(sign_power(k) * (2 * k + 1) ** 3 * v for k, v in enumerate(delannoy_values(n)))
    return CheckResult.congruence("conj3.1", (("n", n),), lhs, n ** 3, 2 * n * n)


def check_conj5_gen(n: int, r: int, eps: int, a: Sequence[int], b: Sequence[int]) -> CheckResult:
    """
    sum_{k<n} (-1)^{mk} eps^k (2k+1) k^r (k+1)^r prod_i C(a_i-1, b_i+k)
    ≡ 0 (mod gcd(a, b, n)).
    """
    require_positive("n", n)
    if r < 0:
        raise BadDomain(f"r must be >= 0, got {r}")
    require_sign("eps", eps)
    require_pair_lists(a, b, min_len=1, a_nonnegative=False)
    d = gcd_many(list(a) + list(b) + [n])
    lhs = signed_binomial_product_sum(
        n, a, b, weight=lambda k: eps ** k * (2 * k + 1) * k ** r * (k + 1) ** r)
    params = (("n", n), ("r", r), ("eps", eps), ("a", tuple(a)), ("b", tuple(b)))
    return CheckResult.congruence("conj5.gen", params, lhs, d, 0)


def _pow2_expected(n: int) -> int:
    return n if is_power_of(n, 2) else 0


def check_conj5_pow2(which: str, n: int, r: int) -> CheckResult:
    """
    which="a": sum_{k<n} C(n-1,k)^{2r}  ≡ n if n = 2^a else 0 (mod 2n)
    which="b": sum_{k<n} C(2n-1,k)^{2r} ≡ n if n = 2^a else 0 (mod 2n)
    """
    require_positive("n", n)
    require_positive("r", r)
    if which == "a":
        lhs = sum(binomial(n - 1, k) ** (2 * r) for k in range(n))
    elif which == "b":
        lhs = sum(binomial(2 * n - 1, k) ** (2 * r) for k in range(n))
    else:
        raise BadDomain(f"which must be 'a' or 'b', got {which!r}")
    return CheckResult.congruence(f"conj5.pow2{which}", (("n", n), ("r", r)), lhs, 2 * n, _pow2_expected(n))


def check_conj5_cases(n: int, s: int, t: int) -> CheckResult:
    """
    sum_{k<n} (-1)^{kt} C(n+k,k)^s C(n-1,k)^t
    ≡ 0 if n is even and s+t is odd, else n (mod 2n).
    """
    require_positive("n", n)
    require_positive("s", s)
    require_positive("t", t)
    lhs = sum(sign_power(k * t) * binomial(n + k, k) ** s * binomial(n - 1, k) ** t for k in range(n))
    expected = 0 if n % 2 == 0 and (s + t) % 2 else n
    return CheckResult.congruence("conj5.cases", (("n", n), ("s", s), ("t", t)), lhs, 2 * n, expected)


CONJECTURES: Dict[str, Callable[..., CheckResult]] = {
    "conj3.1": lambda n: check_conj31(n),
    "conj5.gen": lambda n, r, eps, a, b: check_conj5_gen(n, r, eps, a, b),
    "conj5.pow2a": lambda n, r: check_conj5_pow2("a", n, r),
    "conj5.pow2b": lambda n, r: check_conj5_pow2("b", n, r),
    "conj5.cases": lambda n, s, t: check_conj5_cases(n, s, t),
    "conj5.6": lambda p, e: check_conj56(p, e),
}


def check_conjecture(conj_id: str, params: Mapping[str, Any]) -> CheckResult:
    """
    Evaluate one conjecture instance.

    Args:
        conj_id: One of the keys of `CONJECTURES`.
        params: Keyword arguments of the matching checker.

    Raises:
        UnknownClaim: conj_id is not a registered conjecture.
        BadDomain: preconditions on the parameters are violated.
    """
    checker = CONJECTURES.get(conj_id)
    if checker is None:
        raise UnknownClaim(conj_id)
    try:
        return checker(**params)
    except TypeError as e:
        raise BadDomain(f"bad parameters for {conj_id}: {e}") from e
