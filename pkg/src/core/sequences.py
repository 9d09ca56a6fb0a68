"""
[src/core/sequences.py]
-----------------------
Apéry numbers A_n and central Delannoy numbers D_n.

Responsibilities:
1.  **Defining sums**: A_n = sum_k C(n+k,2k)^2 C(2k,k)^2 and
    D_n = sum_k C(n+k,2k) C(2k,k), evaluated termwise in exact integers.
2.  **Recurrence oracle**: the classical three-term recurrences, used only as
    an independent cross-check of the defining sums. Each recurrence step is a
    division that must come out exact; it is certified through `Rational`.
3.  **Caching**: `SequenceCache` keeps append-only tables that grow on demand
    and are shared by every check in the process.
"""

import logging
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Tuple

from src.core.exact import binomial, certify_integer, require_nonnegative

logger = logging.getLogger(__name__)


class SequenceKind(str, Enum):
    APERY = "apery"
    DELANNOY = "delannoy"


class Method(str, Enum):
    DEFINING_SUM = "defining_sum"
    RECURRENCE_ORACLE = "recurrence_oracle"


@dataclass(frozen=True)
class SequenceTable:
    """
    Values of one sequence for indices 0..len-1, with their provenance.

    Attributes:
        kind (SequenceKind): Which sequence the values belong to.
        method (Method): How the values were produced.
        values (tuple): The integers, indexed from 0.
    """
    kind: SequenceKind
    method: Method
    values: Tuple[int, ...]

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, index: int) -> int:
        return self.values[index]

    @property
    def max_n(self) -> int:
        return len(self.values) - 1

    def rows(self) -> List[Tuple[int, int]]:
        """(n, value) pairs, in index order."""
        return list(enumerate(self.values))


def _central_term(n: int, k: int) -> int:
    # C(n+k,2k) C(2k,k) == C(n+k,k) C(n,k)
    return binomial(n + k, k) * binomial(n, k)


def apery(n: int) -> int:
    """A_n by its defining sum."""
    require_nonnegative("n", n)
    return sum(_central_term(n, k) ** 2 for k in range(n + 1))


def delannoy(n: int) -> int:
    """D_n by its defining sum."""
    require_nonnegative("n", n)
    return sum(_central_term(n, k) for k in range(n + 1))


_DEFINING = {
    SequenceKind.APERY: apery,
    SequenceKind.DELANNOY: delannoy,
}


def _apery_step(m: int, prev: int, prev2: int) -> int:
    """A_m from A_{m-1}, A_{m-2}:  m^3 A_m = (2m-1)(17m^2-17m+5) A_{m-1} - (m-1)^3 A_{m-2}."""
    numerator = (2 * m - 1) * (17 * m * m - 17 * m + 5) * prev - (m - 1) ** 3 * prev2
    return certify_integer(Fraction(numerator, m ** 3), f"Apery recurrence at n={m}")


def _delannoy_step(m: int, prev: int, prev2: int) -> int:
    """D_m from D_{m-1}, D_{m-2}:  m D_m = 3(2m-1) D_{m-1} - (m-1) D_{m-2}."""
    numerator = 3 * (2 * m - 1) * prev - (m - 1) * prev2
    return certify_integer(Fraction(numerator, m), f"Delannoy recurrence at n={m}")


_STEPS = {
    SequenceKind.APERY: _apery_step,
    SequenceKind.DELANNOY: _delannoy_step,
}


def build_table(kind: SequenceKind, max_n: int, method: Method = Method.DEFINING_SUM) -> SequenceTable:
    """
    Build a table of length max_n + 1.

    Args:
        kind: apery or delannoy.
        max_n: Largest index, >= 0.
        method: `defining_sum` evaluates every entry termwise;
            `recurrence_oracle` seeds with the first two defining-sum values
            and applies the three-term recurrence.

    Raises:
        NotIntegral: if a recurrence step does not divide exactly.
    """
    kind = SequenceKind(kind)
    method = Method(method)
    require_nonnegative("max_n", max_n)

    defining = _DEFINING[kind]
    if method is Method.DEFINING_SUM:
        values = [defining(n) for n in range(max_n + 1)]
    else:
        values = [defining(n) for n in range(min(max_n, 1) + 1)]
        step = _STEPS[kind]
        for m in range(2, max_n + 1):
            values.append(step(m, values[m - 1], values[m - 2]))

    logger.debug("built %s table up to n=%d via %s", kind.value, max_n, method.value)
    return SequenceTable(kind=kind, method=method, values=tuple(values))


class SequenceCache:
    """
    Process-wide, append-only cache of defining-sum values.

    Tables grow on demand and never shrink. A single lock serializes growth;
    the returned tuples are immutable and safe to share.

    Attributes:
        _tables (dict): Class-level storage keyed by `SequenceKind`.
    """
    _tables: Dict[SequenceKind, List[int]] = {kind: [] for kind in SequenceKind}
    _lock = threading.Lock()

    @classmethod
    def values(cls, kind: SequenceKind, count: int) -> Tuple[int, ...]:
        """The first `count` values (indices 0..count-1) of the sequence."""
        kind = SequenceKind(kind)
        table = cls._tables[kind]
        if len(table) < count:
            with cls._lock:
                defining = _DEFINING[kind]
                while len(table) < count:
                    table.append(defining(len(table)))
        return tuple(table[:count])

    @classmethod
    def clear(cls) -> None:
        with cls._lock:
            for table in cls._tables.values():
                table.clear()


def apery_values(count: int) -> Tuple[int, ...]:
    return SequenceCache.values(SequenceKind.APERY, count)


def delannoy_values(count: int) -> Tuple[int, ...]:
    return SequenceCache.values(SequenceKind.DELANNOY, count)
