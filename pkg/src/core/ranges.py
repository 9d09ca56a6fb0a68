"""
[src/core/ranges.py]
--------------------
Parameter range syntax for scans.

    1..150        inclusive integer range
    0..n-1        bounds may refer to an earlier parameter, plus or minus a constant
    primes:5..97  primes in the closed interval
    pow2:2..64    powers of two in the closed interval (1 counts when in range)
    {0,1,2}       explicit set, kept in ascending order
    7             a single value

List-valued parameters take a literal list instead: `3,5`, `-3,-3`, or the
empty string for the empty list.
"""

import re
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Tuple

from sympy import primerange

from src.core.errors import RangeSyntaxError

_INT = r"-?\d+"
_BOUND_RE = re.compile(rf"^\s*(?:(?P<num>{_INT})|(?P<ref>[A-Za-z_]\w*)\s*(?:(?P<op>[+-])\s*(?P<off>\d+))?)\s*$")
_INTERVAL_RE = re.compile(r"^(?P<lo>[^.]+?)\.\.(?P<hi>[^.]+)$")
_SINGLE_RE = re.compile(rf"^\s*{_INT}\s*$")


@dataclass(frozen=True)
class Bound:
    """An interval endpoint: a constant, or an earlier parameter plus an offset."""
    offset: int
    ref: Optional[str] = None

    def resolve(self, env: Mapping[str, int]) -> int:
        if self.ref is None:
            return self.offset
        if self.ref not in env:
            raise RangeSyntaxError(f"bound refers to {self.ref!r}, which is not an earlier parameter")
        return env[self.ref] + self.offset

    def __str__(self) -> str:
        if self.ref is None:
            return str(self.offset)
        if self.offset == 0:
            return self.ref
        return f"{self.ref}{'+' if self.offset > 0 else '-'}{abs(self.offset)}"


@dataclass(frozen=True)
class ParamRange:
    """
    A finite set of integer values for one parameter.

    Attributes:
        shape (str): "interval", "primes", "pow2" or "set".
        lo (Bound): Lower endpoint (interval shapes only).
        hi (Bound): Upper endpoint (interval shapes only).
        members (tuple): Explicit values for the "set" shape.
    """
    shape: str
    lo: Bound = Bound(0)
    hi: Bound = Bound(0)
    members: Tuple[int, ...] = ()

    @property
    def references(self) -> Tuple[str, ...]:
        return tuple(b.ref for b in (self.lo, self.hi) if b.ref is not None)

    @property
    def is_static(self) -> bool:
        return not self.references

    def values(self, env: Optional[Mapping[str, int]] = None) -> List[int]:
        """Ascending values, given the already-chosen earlier parameters."""
        if self.shape == "set":
            return list(self.members)
        env = env or {}
        lo, hi = self.lo.resolve(env), self.hi.resolve(env)
        if lo > hi:
            return []
        if self.shape == "primes":
            return [int(p) for p in primerange(max(lo, 2), hi + 1)]
        if self.shape == "pow2":
            out, power = [], 1
            while power <= hi:
                if power >= lo:
                    out.append(power)
                power *= 2
            return out
        return list(range(lo, hi + 1))

    def __str__(self) -> str:
        if self.shape == "set":
            return "{" + ",".join(str(v) for v in self.members) + "}"
        prefix = "" if self.shape == "interval" else f"{self.shape}:"
        return f"{prefix}{self.lo}..{self.hi}"


def _parse_bound(text: str, source: str) -> Bound:
    match = _BOUND_RE.match(text)
    if not match:
        raise RangeSyntaxError(f"cannot parse bound {text!r} in range {source!r}")
    if match.group("num") is not None:
        return Bound(int(match.group("num")))
    offset = int(match.group("off") or 0)
    if match.group("op") == "-":
        offset = -offset
    return Bound(offset, match.group("ref"))


def parse_range(text: str) -> ParamRange:
    """
    Parse one range expression.

    Raises:
        RangeSyntaxError: the text matches none of the accepted shapes.
    """
    source = text
    text = text.strip()
    if not text:
        raise RangeSyntaxError("empty range expression")

    if text.startswith("{"):
        if not text.endswith("}"):
            raise RangeSyntaxError(f"unterminated set in {source!r}")
        inner = text[1:-1].strip()
        if not inner:
            raise RangeSyntaxError(f"empty set in {source!r}")
        try:
            members = sorted({int(part) for part in inner.split(",")})
        except ValueError as e:
            raise RangeSyntaxError(f"non-integer member in {source!r}") from e
        return ParamRange("set", members=tuple(members))

    if _SINGLE_RE.match(text):
        return ParamRange("set", members=(int(text),))

    shape = "interval"
    for prefix in ("primes", "pow2"):
        if text.startswith(prefix + ":"):
            shape, text = prefix, text[len(prefix) + 1:]
            break

    match = _INTERVAL_RE.match(text)
    if not match:
        raise RangeSyntaxError(f"cannot parse range {source!r}")
    return ParamRange(shape, _parse_bound(match.group("lo"), source), _parse_bound(match.group("hi"), source))


def parse_static_range(text: str) -> Tuple[int, int]:
    """An `A..B` interval with constant endpoints, as (A, B)."""
    parsed = parse_range(text)
    if parsed.shape == "set" and len(parsed.members) == 1:
        return parsed.members[0], parsed.members[0]
    if parsed.shape != "interval" or not parsed.is_static:
        raise RangeSyntaxError(f"expected a constant interval A..B, got {text!r}")
    lo, hi = parsed.lo.offset, parsed.hi.offset
    if lo > hi:
        raise RangeSyntaxError(f"empty interval {text!r}")
    return lo, hi


def parse_int(text: str) -> int:
    if not _SINGLE_RE.match(text):
        raise RangeSyntaxError(f"expected an integer, got {text!r}")
    return int(text)


def parse_int_list(text: str) -> Tuple[int, ...]:
    """`3,5` -> (3, 5); the empty string is the empty list."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError as e:
        raise RangeSyntaxError(f"expected a comma-separated integer list, got {text!r}") from e


def check_references(order: List[str], ranges: Dict[str, ParamRange]) -> None:
    """Every bound must refer to a parameter that comes earlier in `order`."""
    seen = set()
    for name in order:
        if name in ranges:
            for ref in ranges[name].references:
                if ref not in seen:
                    raise RangeSyntaxError(f"range for {name!r} refers to {ref!r}, which is not an earlier parameter")
        seen.add(name)
