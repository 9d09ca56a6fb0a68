"""
[src/core/results.py]
---------------------
The uniform record for one verified claim instance.

A `CheckResult` holds either integers or `QPoly` values. For a congruence the
residues of `lhs` and of the stated right-hand side are both normalized
(into [0, modulus) for integers, to the remainder of degree < deg modulus for
polynomials) and compared; for an exact equality `modulus` is zero and the
values are compared directly.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Mapping, Sequence, Tuple, Union

from src.core.qpoly import QPoly, Value, poly_rem

ParamValue = Union[int, Tuple[int, ...]]
Params = Tuple[Tuple[str, ParamValue], ...]

CSV_COLUMNS = ("claim", "params", "modulus", "lhs", "residue", "expected", "pass")


def _is_zero(value: Value) -> bool:
    return value.is_zero() if isinstance(value, QPoly) else value == 0


def _reduce(value: Value, modulus: Value) -> Value:
    if isinstance(modulus, QPoly) or isinstance(value, QPoly):
        return poly_rem(QPoly.coerce(value), QPoly.coerce(modulus))
    return value % modulus


def _render(value: Value) -> str:
    return str(value)


def normalize_params(params: Union[Mapping[str, Any], Sequence[Tuple[str, Any]]]) -> Params:
    """Ordered (name, value) pairs with list values frozen into tuples."""
    items = params.items() if isinstance(params, Mapping) else params
    out = []
    for name, value in items:
        if isinstance(value, (list, tuple)):
            value = tuple(int(v) for v in value)
        else:
            value = int(value)
        out.append((str(name), value))
    return tuple(out)


@dataclass(frozen=True)
class CheckResult:
    """
    One checked instance of a claim.

    Attributes:
        claim_id (str): Registry id, e.g. "thm1.3b".
        params (tuple): Ordered (name, value) pairs; list parameters are tuples.
        lhs (int | QPoly): The evaluated left-hand side.
        modulus (int | QPoly): 0 for exact equalities.
        residue (int | QPoly): lhs reduced modulo `modulus` (lhs itself when modulus is 0).
        expected (int | QPoly): The stated right-hand side, reduced like `residue`.
        passed (bool): Whether the instance holds.
        notes (tuple): Extra (key, text) pairs carried into reports.
    """
    claim_id: str
    params: Params
    lhs: Value
    modulus: Value
    residue: Value
    expected: Value
    passed: bool
    notes: Tuple[Tuple[str, str], ...] = field(default=())

    @classmethod
    def congruence(cls, claim_id: str, params, lhs: Value, modulus: Value, expected: Value,
                   notes: Sequence[Tuple[str, str]] = ()) -> "CheckResult":
        """lhs ≡ expected (mod modulus); a zero modulus degenerates to equality."""
        if _is_zero(modulus):
            return cls.equality(claim_id, params, lhs, expected, notes, modulus=modulus)
        residue = _reduce(lhs, modulus)
        expected_residue = _reduce(expected, modulus)
        return cls(claim_id, normalize_params(params), lhs, modulus, residue,
                   expected_residue, residue == expected_residue, tuple(notes))

    @classmethod
    def equality(cls, claim_id: str, params, lhs: Value, expected: Value,
                 notes: Sequence[Tuple[str, str]] = (), modulus: Value = 0) -> "CheckResult":
        """lhs == expected exactly."""
        if isinstance(lhs, QPoly) or isinstance(expected, QPoly):
            lhs, expected = QPoly.coerce(lhs), QPoly.coerce(expected)
            modulus = QPoly.zero()
        return cls(claim_id, normalize_params(params), lhs, modulus, lhs, expected,
                   lhs == expected, tuple(notes))

    # -- accessors ---------------------------------------------------------

    def param(self, name: str) -> ParamValue:
        return dict(self.params)[name]

    def sort_key(self) -> Tuple:
        """Lexicographic key over parameter values in declaration order."""
        return tuple(v if isinstance(v, tuple) else (v,) for _, v in self.params)

    # -- serialization -----------------------------------------------------

    def to_record(self) -> Dict[str, Any]:
        """
        JSON-ready dict. Integers and polynomials are rendered as strings,
        since the values routinely exceed 64-bit range.
        """
        record: Dict[str, Any] = {
            "claim": self.claim_id,
            "params": {name: list(v) if isinstance(v, tuple) else v for name, v in self.params},
            "modulus": _render(self.modulus),
            "lhs": _render(self.lhs),
            "residue": _render(self.residue),
            "expected": _render(self.expected),
            "pass": self.passed,
        }
        if self.notes:
            record["notes"] = dict(self.notes)
        return record

    def to_csv_row(self) -> Tuple[str, ...]:
        params = ";".join(
            f"{name}={','.join(str(x) for x in v) if isinstance(v, tuple) else v}"
            for name, v in self.params
        )
        return (self.claim_id, params, _render(self.modulus), _render(self.lhs),
                _render(self.residue), _render(self.expected), "true" if self.passed else "false")
