"""
[src/core/errors.py]
--------------------
Exception hierarchy for the verification engine.

Every error raised on purpose by the engine derives from `EngineError`, so the
CLI can tell an engine diagnostic (exit 2) from a programming error. Each class
also derives from the closest builtin so callers that only know the builtin
(`ValueError`, `ArithmeticError`, ...) still catch it.
"""

from typing import Any, Optional


class EngineError(Exception):
    """Base class for every deliberate engine failure."""


class NotIntegral(EngineError, ArithmeticError):
    """
    A rational value that a lemma asserts to be an integer (or a natural number)
    is not one, or an exact division left a nonzero remainder. Seeing this
    means a proven integrality statement was falsified, which can only be an
    implementation defect.

    Attributes:
        value (Fraction | QPoly): The offending value, or the nonzero remainder.
    """

    def __init__(self, value: Any, context: str = ""):
        self.value = value
        self.context = context
        where = f" ({context})" if context else ""
        super().__init__(f"value {value} is not integral{where}")

    def __reduce__(self):
        # rebuilt from the constructor arguments in the parent process
        return type(self), (self.value, self.context)


class NotPrime(EngineError, ValueError):
    """Raised when a prime-indexed claim receives a non-prime or a prime ≤ 3."""

    def __init__(self, p: int, minimum: int = 5):
        self.p = p
        self.minimum = minimum
        super().__init__(f"p={p} must be a prime >= {minimum}")

    def __reduce__(self):
        return type(self), (self.p, self.minimum)


class BadDomain(EngineError, ValueError):
    """A precondition on the parameters of an operation is violated."""


class NonMonicDivisor(EngineError, ValueError):
    """Polynomial division was asked for a divisor whose leading coefficient is not ±1."""


class UnknownClaim(EngineError, KeyError):
    """The claim id is not part of the closed registry."""

    def __init__(self, claim_id: str):
        self.claim_id = claim_id
        super().__init__(claim_id)

    def __str__(self) -> str:
        return f"unknown claim id: {self.claim_id!r}"

    def __reduce__(self):
        return type(self), (self.claim_id,)


class RangeTooLarge(EngineError, ValueError):
    """The Cartesian parameter range of a scan exceeds the configured cap."""

    def __init__(self, claim_id: str, cap: int):
        self.claim_id = claim_id
        self.cap = cap
        super().__init__(f"scan of {claim_id} exceeds the cap of {cap} parameter tuples")

    def __reduce__(self):
        return type(self), (self.claim_id, self.cap)


class SampleSpaceExhausted(EngineError, ValueError):
    """A sampled scan could not find the requested number of distinct tuples."""

    def __init__(self, claim_id: str, requested: int, found: int):
        self.claim_id = claim_id
        self.requested = requested
        self.found = found
        super().__init__(f"sampled scan of {claim_id} found only {found} distinct tuples, "
                         f"{requested} requested; widen the ranges or lower --samples")

    def __reduce__(self):
        return type(self), (self.claim_id, self.requested, self.found)


class RangeSyntaxError(EngineError, ValueError):
    """A range or parameter value could not be parsed."""


class ReportWriteError(EngineError, OSError):
    """Writing a report failed; carries the destination for the diagnostic."""

    def __init__(self, destination: str, cause: Optional[BaseException] = None):
        self.destination = destination
        self.cause = cause
        super().__init__(f"cannot write report to {destination}: {cause}")
