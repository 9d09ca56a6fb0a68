"""
[src/core/qpoly.py]
-------------------
Dense integer polynomials in the indeterminate q.

Responsibilities:
1.  **QPoly**: an immutable, canonically trimmed coefficient tuple (ascending
    degree) with exact ring operations.
2.  **Division**: `poly_divrem` by divisors with leading coefficient ±1, so
    quotient and remainder stay in Z[q].
3.  **q-analogues**: q-integers [n]_q, Gaussian binomials [n k]_q (q-Pascal
    rows, cached) and cyclotomic polynomials Phi_d(q) (memoized).
4.  **Residue rings**: `ResidueRing` evaluates products in Z[q]/(M). Statements
    about primitive d-th roots of unity are checked as remainders modulo
    Phi_d(q) or [d]_q, never with complex numbers.
"""

import threading
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import divisors

from src.core.errors import BadDomain, NonMonicDivisor, NotIntegral
from src.core.exact import require_nonnegative, require_positive


def _trim(coeffs: Iterable[int]) -> Tuple[int, ...]:
    values = list(coeffs)
    end = len(values)
    while end and values[end - 1] == 0:
        end -= 1
    return tuple(values[:end])


@dataclass(frozen=True)
class QPoly:
    """
    A polynomial over the integers in q, constant term first.

    The empty tuple is the zero polynomial; otherwise the last stored
    coefficient is nonzero.

    >>> QPoly.of(1, 0, 1)     # 1 + q^2
    """
    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    # -- constructors ------------------------------------------------------

    @classmethod
    def of(cls, *coeffs: int) -> "QPoly":
        return cls(tuple(coeffs))

    @classmethod
    def zero(cls) -> "QPoly":
        return cls(())

    @classmethod
    def one(cls) -> "QPoly":
        return cls((1,))

    @classmethod
    def constant(cls, c: int) -> "QPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, exponent: int, c: int = 1) -> "QPoly":
        require_nonnegative("exponent", exponent)
        return cls((0,) * exponent + (c,))

    @classmethod
    def coerce(cls, value: Union["QPoly", int]) -> "QPoly":
        if isinstance(value, QPoly):
            return value
        if isinstance(value, int):
            return cls.constant(value)
        return NotImplemented

    # -- inspection --------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def evaluate(self, x: int) -> int:
        """Horner evaluation at an integer point."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        other = QPoly.coerce(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(tuple(out))

    __radd__ = __add__

    def __neg__(self):
        return QPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        other = QPoly.coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = QPoly.coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        if isinstance(other, int):
            return QPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, QPoly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return QPoly.zero()
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return QPoly(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        require_nonnegative("exponent", e)
        result, base = QPoly.one(), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # -- substitutions -----------------------------------------------------

    def shift(self, k: int) -> "QPoly":
        """Multiply by q^k (k >= 0)."""
        require_nonnegative("shift", k)
        if self.is_zero():
            return self
        return QPoly((0,) * k + self.coeffs)

    def substitute_power(self, e: int) -> "QPoly":
        """The polynomial f(q^e), e >= 1."""
        require_positive("e", e)
        if self.is_zero():
            return self
        out = [0] * (e * self.degree + 1)
        for i, c in enumerate(self.coeffs):
            out[i * e] = c
        return QPoly(tuple(out))

    def fold(self, period: int) -> "QPoly":
        """Remainder modulo q^period - 1: exponents are reduced mod `period`."""
        require_positive("period", period)
        if self.degree < period:
            return self
        out = [0] * period
        for i, c in enumerate(self.coeffs):
            out[i % period] += c
        return QPoly(tuple(out))

    # -- rendering ---------------------------------------------------------

    def __str__(self) -> str:
        """Sparse ascending form such as `1 + 2*q - 3*q^4`; zero renders as `0`."""
        parts: List[str] = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            magnitude = str(abs(c)) if parts else str(c)
            term = magnitude if i == 0 else f"{magnitude}*q" if i == 1 else f"{magnitude}*q^{i}"
            if parts:
                parts.append(f"{'-' if c < 0 else '+'} {term}")
            else:
                parts.append(term)
        return " ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"QPoly('{self}')"


Value = Union[int, QPoly]


def poly_divrem(f: QPoly, g: QPoly) -> Tuple[QPoly, QPoly]:
    """
    Long division f = quotient * g + remainder with deg(remainder) < deg(g).

    Raises:
        NonMonicDivisor: if g is zero or its leading coefficient is not ±1.
    """
    f, g = QPoly.coerce(f), QPoly.coerce(g)
    lead = g.leading
    if lead not in (1, -1):
        raise NonMonicDivisor(f"divisor {g} must have leading coefficient +1 or -1")
    dg = g.degree
    if f.degree < dg:
        return QPoly.zero(), f
    rem = list(f.coeffs)
    quot = [0] * (f.degree - dg + 1)
    gc = g.coeffs
    for shift in range(f.degree - dg, -1, -1):
        c = rem[shift + dg]
        if c == 0:
            continue
        factor = c * lead  # lead is ±1, so c / lead == c * lead
        quot[shift] = factor
        for j, gj in enumerate(gc):
            rem[shift + j] -= factor * gj
    return QPoly(tuple(quot)), QPoly(tuple(rem[:dg]))


def poly_rem(f: QPoly, g: QPoly) -> QPoly:
    return poly_divrem(f, g)[1]


def qint(n: int) -> QPoly:
    """[n]_q = 1 + q + ... + q^(n-1); [0]_q = 0."""
    require_nonnegative("n", n)
    return QPoly((1,) * n)


class _QBinomialRows:
    """
    q-Pascal triangle, grown row by row and shared process-wide:
    [n k] = q^k [n-1 k] + [n-1 k-1].
    """
    _rows: List[Tuple[QPoly, ...]] = [(QPoly.one(),)]
    _lock = threading.Lock()

    @classmethod
    def row(cls, n: int) -> Tuple[QPoly, ...]:
        if n >= len(cls._rows):
            with cls._lock:
                while len(cls._rows) <= n:
                    prev = cls._rows[-1]
                    m = len(prev)  # building row m
                    row = [QPoly.one()]
                    for k in range(1, m):
                        row.append(prev[k].shift(k) + prev[k - 1])
                    row.append(QPoly.one())
                    cls._rows.append(tuple(row))
        return cls._rows[n]


def qbinom(n: int, k: int) -> QPoly:
    """Gaussian binomial [n k]_q; zero when k < 0 or k > n."""
    require_nonnegative("n", n)
    if k < 0 or k > n:
        return QPoly.zero()
    return _QBinomialRows.row(n)[k]


_CYCLOTOMIC: Dict[int, QPoly] = {}


def cyclotomic(d: int) -> QPoly:
    """
    Phi_d(q), by exact division of q^d - 1 by the product of Phi_e(q) over the
    proper divisors e of d. Memoized; concurrent duplicate computation is harmless.
    """
    require_positive("d", d)
    cached = _CYCLOTOMIC.get(d)
    if cached is not None:
        return cached
    numerator = QPoly.monomial(d) - 1
    denominator = QPoly.one()
    for e in divisors(d):
        if e < d:
            denominator = denominator * cyclotomic(e)
    quotient, remainder = poly_divrem(numerator, denominator)
    if not remainder.is_zero():
        raise NotIntegral(remainder, f"q^{d}-1 over its cyclotomic cofactor")
    _CYCLOTOMIC[d] = quotient
    return quotient


class ResidueRing:
    """
    Arithmetic in Z[q]/(M) for a modulus M with leading coefficient ±1.

    When `period` is given, M must divide q^period - 1 and reduction is the
    cheap exponent fold; the caller then takes the final remainder modulo the
    real modulus. Without a period every reduction is a long division.

    Attributes:
        modulus (QPoly): The polynomial M.
        period (int | None): Exponent period used for folding.
    """

    def __init__(self, modulus: QPoly, period: Optional[int] = None):
        if period is None and modulus.leading not in (1, -1):
            raise NonMonicDivisor(f"residue ring modulus {modulus} must have leading coefficient +1 or -1")
        if period is not None and period < 1:
            raise BadDomain(f"period must be >= 1, got {period}")
        self.modulus = modulus
        self.period = period

    @classmethod
    def cyclic(cls, period: int) -> "ResidueRing":
        """Z[q]/(q^period - 1)."""
        return cls(QPoly.monomial(period) - 1, period)

    def reduce(self, f: Value) -> QPoly:
        f = QPoly.coerce(f)
        if self.period is not None:
            return f.fold(self.period)
        return poly_rem(f, self.modulus)

    def product(self, factors: Sequence[QPoly]) -> QPoly:
        acc = self.reduce(QPoly.one())
        for factor in factors:
            acc = self.reduce(acc * self.reduce(factor))
        return acc

    def power(self, f: QPoly, e: int) -> QPoly:
        require_nonnegative("exponent", e)
        result, base = self.reduce(QPoly.one()), self.reduce(f)
        while e:
            if e & 1:
                result = self.reduce(result * base)
            e >>= 1
            if e:
                base = self.reduce(base * base)
        return result

    def monomial(self, e: int) -> QPoly:
        """q^e reduced."""
        if self.period is not None:
            return QPoly.monomial(e % self.period)
        return self.power(QPoly.monomial(1), e)
