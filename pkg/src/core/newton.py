"""
[src/core/newton.py]
--------------------
Change of basis from powers of x to the falling products

    P_j(x) = prod_{i=1..j} (x - (k+i-1)(k+i)),

i.e. the integers a_j(k, r) with  x^r = sum_j a_j(k, r) P_j(x).

Substituting x = m(m+1) turns this into the expansion of m^r (m+1)^r C(m+k, 2k)
over C(m+k+j, 2k+2j)(2k+1)_{2j}, which is what lets the weighted Apéry and
Delannoy sums be rewritten term by term.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import List, Tuple

from src.core.errors import NotIntegral
from src.core.exact import binomial, require_nonnegative, rising_factorial
from src.core.results import CheckResult


def basis_node(k: int, i: int) -> int:
    """The i-th root (k+i-1)(k+i) of the basis products, i >= 1."""
    return (k + i - 1) * (k + i)


@dataclass(frozen=True)
class NewtonBasisCoeffs:
    """
    Coefficients a_0(k,r) .. a_r(k,r).

    Attributes:
        k (int): Shift of the basis nodes.
        r (int): Power being expanded.
        coeffs (tuple): a_0 .. a_r; a_r is always 1.
    """
    k: int
    r: int
    coeffs: Tuple[int, ...]

    def __getitem__(self, j: int) -> int:
        return self.coeffs[j]

    def reconstruct(self, x: int) -> int:
        """sum_j a_j P_j(x), which must equal x^r."""
        total, product = 0, 1
        for j, a in enumerate(self.coeffs):
            if j:
                product *= x - basis_node(self.k, j)
            total += a * product
        return total


def _synthetic_division(coeffs: List[int], root: int) -> Tuple[List[int], int]:
    """
    Divide the polynomial (ascending coefficients) by (x - root).
    Returns (quotient, remainder); the remainder is the value at `root`.
    """
    if not coeffs:
        return [], 0
    quotient = [0] * (len(coeffs) - 1)
    carry = 0
    for i in range(len(coeffs) - 1, 0, -1):
        carry = coeffs[i] + carry * root
        quotient[i - 1] = carry
    remainder = coeffs[0] + carry * root
    return quotient, remainder


@lru_cache(maxsize=None)
def newton_coeffs(k: int, r: int) -> NewtonBasisCoeffs:
    """
    Peel a_0, a_1, ... off x^r: a_j is the value of the current quotient at
    the node (k+j)(k+j+1), and the next quotient comes from dividing by
    (x - that node). The divisor is monic, so everything stays integral.
    """
    require_nonnegative("k", k)
    require_nonnegative("r", r)
    poly = [0] * r + [1]
    coeffs = []
    for j in range(r + 1):
        poly, value = _synthetic_division(poly, basis_node(k, j + 1))
        coeffs.append(value)
    leftover = next((c for c in reversed(poly) if c), 0)
    if leftover:
        raise NotIntegral(Fraction(leftover), f"newton expansion of x^{r} at k={k} left a nonzero quotient")
    return NewtonBasisCoeffs(k=k, r=r, coeffs=tuple(coeffs))


def coeff_identity_sides(k: int, r: int, m: int) -> Tuple[int, int]:
    """
    Both sides of  m^r (m+1)^r C(m+k,2k) = sum_j a_j(k,r) C(m+k+j, 2k+2j) (2k+1)_{2j}.
    """
    basis = newton_coeffs(k, r)
    lhs = m ** r * (m + 1) ** r * binomial(m + k, 2 * k)
    rhs = sum(
        a * binomial(m + k + j, 2 * k + 2 * j) * rising_factorial(2 * k + 1, 2 * j)
        for j, a in enumerate(basis.coeffs)
    )
    return lhs, rhs


def check_coeff_point(k: int, r: int, m: int) -> CheckResult:
    """The expansion identity at a single m (claim `lem2.1`)."""
    require_nonnegative("m", m)
    lhs, rhs = coeff_identity_sides(k, r, m)
    return CheckResult.equality("lem2.1", (("k", k), ("r", r), ("m", m)), lhs, rhs)


def check_coeff_identity(k: int, r: int, m_max: int) -> CheckResult:
    """
    The expansion identity for every 0 <= m <= m_max. The returned record holds
    the first failing m, or the values at m_max when all points agree.
    """
    require_nonnegative("m_max", m_max)
    params = (("k", k), ("r", r), ("m_max", m_max))
    lhs = rhs = 0
    for m in range(m_max + 1):
        lhs, rhs = coeff_identity_sides(k, r, m)
        if lhs != rhs:
            return CheckResult.equality("lem2.1", params, lhs, rhs, notes=(("m", str(m)),))
    return CheckResult.equality("lem2.1", params, lhs, rhs)


def check_odd_power_expansion(k: int, r: int) -> CheckResult:
    """(2k+1)^{2r} = sum_i C(r,i) 4^i k^i (k+1)^i  (claim `eq2.3`)."""
    require_nonnegative("r", r)
    lhs = (2 * k + 1) ** (2 * r)
    rhs = sum(binomial(r, i) * 4 ** i * k ** i * (k + 1) ** i for i in range(r + 1))
    return CheckResult.equality("eq2.3", (("k", k), ("r", r)), lhs, rhs)
