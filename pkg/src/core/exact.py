"""
[src/core/exact.py]
-------------------
Exact scalar primitives shared by every other module.

Responsibilities:
1.  **Scalars**: Python `int` is the arbitrary-precision Integer; `Rational`
    is `fractions.Fraction`, always stored reduced with a positive denominator.
2.  **Combinatorics**: generalized binomial coefficient, rising factorial and
    multi-argument gcd.
3.  **Integrality**: `certify_integer` turns a closed form evaluated in
    `Rational` into an `int`, or raises `NotIntegral`.
4.  **Preconditions**: the `require_*` helpers used by the checks and by the
    claim registry to validate parameter tuples before any computation.

No floating point is used anywhere in the engine.
"""

import math
from fractions import Fraction
from typing import Sequence, Union

from sympy import isprime

from src.config.settings import Config
from src.core.errors import BadDomain, NotIntegral, NotPrime

Rational = Fraction
Number = Union[int, Fraction]


def binomial(n: int, k: int) -> int:
    """
    Generalized binomial coefficient  n(n-1)...(n-k+1) / k!  for any integer n.

    Returns 0 for k < 0. For n >= 0 this is the usual C(n, k) (so it vanishes
    for k > n); for negative n the falling product is used, which satisfies
    C(-n, k) = (-1)^k C(n+k-1, k).
    """
    if k < 0:
        return 0
    if n >= 0:
        return math.comb(n, k)
    # the division is exact: a product of k consecutive integers is divisible by k!
    return math.prod(range(n, n - k, -1)) // math.factorial(k)


def rising_factorial(x: int, n: int) -> int:
    """Pochhammer symbol (x)_n = x(x+1)...(x+n-1), with (x)_0 = 1."""
    if n < 0:
        raise BadDomain(f"rising factorial needs n >= 0, got {n}")
    return math.prod(range(x, x + n))


def gcd_many(values: Sequence[int]) -> int:
    """
    Non-negative gcd of all entries, sign-insensitive; zeros are neutral, so
    gcd_many([0, 0, n]) == |n|.
    """
    if len(values) == 0:
        raise BadDomain("gcd_many needs at least one value")
    return math.gcd(*values)


def certify_integer(x: Number, context: str = "") -> int:
    """
    Return `x` as an int when its reduced denominator is 1.

    Raises:
        NotIntegral: if `x` is not an integer. This marks a falsified
            integrality statement and never fires for in-range inputs.
    """
    if isinstance(x, int):
        return x
    value = Fraction(x)
    if value.denominator != 1:
        raise NotIntegral(value, context)
    return value.numerator


def certify_natural(x: Number, context: str = "") -> int:
    """Like `certify_integer`, but also rejects negative values."""
    value = certify_integer(x, context)
    if value < 0:
        raise NotIntegral(Fraction(value), f"negative, {context}" if context else "negative")
    return value


def sign_power(e: int) -> int:
    """(-1)^e for any integer e."""
    return -1 if e % 2 else 1


def is_power_of(n: int, base: int) -> bool:
    """True when n = base^a for some a >= 0 (so 1 counts)."""
    if n < 1:
        return False
    while n % base == 0:
        n //= base
    return n == 1


def is_prime(p: int) -> bool:
    return p >= 2 and bool(isprime(p))


# ---------------------------------------------------------------------------
# Preconditions
# ---------------------------------------------------------------------------

def require_positive(name: str, value: int) -> None:
    if value < 1:
        raise BadDomain(f"{name} must be >= 1, got {value}")


def require_nonnegative(name: str, value: int) -> None:
    if value < 0:
        raise BadDomain(f"{name} must be >= 0, got {value}")


def require_prime(p: int, minimum: int = 5) -> None:
    """Prime-indexed claims in this engine are stated for primes p > 3."""
    if p < minimum or not is_prime(p):
        raise NotPrime(p, minimum)
    if p > Config.PRIME_LIMIT:
        raise BadDomain(f"p={p} exceeds the prime limit {Config.PRIME_LIMIT}")


def require_sign(name: str, value: int) -> None:
    if value not in (1, -1):
        raise BadDomain(f"{name} must be +1 or -1, got {value}")


def require_index_below(name: str, value: int, bound_name: str, bound: int) -> None:
    """0 <= value <= bound - 1."""
    if not 0 <= value <= bound - 1:
        raise BadDomain(f"{name} must satisfy 0 <= {name} <= {bound_name}-1, got {name}={value}, {bound_name}={bound}")


def require_pair_lists(a: Sequence[int], b: Sequence[int], *, min_len: int = 0,
                       a_nonnegative: bool = True) -> None:
    """Validate the (a_1..a_m, b_1..b_m) lists of the gcd-family claims."""
    if len(a) != len(b):
        raise BadDomain(f"lists a and b must have equal length, got {len(a)} and {len(b)}")
    if len(a) < min_len:
        raise BadDomain(f"at least {min_len} (a_i, b_i) pair(s) required")
    if a_nonnegative and any(x < 0 for x in a):
        raise BadDomain(f"entries of a must be >= 0, got {list(a)}")
    if any(x < 0 for x in b):
        raise BadDomain(f"entries of b must be >= 0, got {list(b)}")
