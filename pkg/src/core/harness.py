"""
[src/core/harness.py]
---------------------
Range-driven scanning of registered claims.

Responsibilities:
1.  **Descriptors**: `ClaimDescriptor` names a claim and gives a range per
    parameter, or a seeded sampling plan for claims with list parameters.
2.  **Enumeration**: parameter tuples are produced in declaration order, later
    ranges may depend on earlier values; the tuple count is capped.
3.  **Execution**: tuples are evaluated in a process pool whose `map` keeps
    input order, so reports do not depend on the worker count.
4.  **Reports**: `ScanReport` aggregates counts and the (capped, sorted)
    counterexamples; `write_report` / `write_results` serialize via
    `FileManager`.
"""

import logging
import math
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from src.config.settings import Config
from src.core.errors import BadDomain, RangeSyntaxError, RangeTooLarge, SampleSpaceExhausted
from src.core.ranges import ParamRange, check_references, parse_int_list, parse_range, parse_static_range
from src.core.registry import ClaimKind, ClaimSpec, ScanDefaults, evaluate, get_claim
from src.core.results import CSV_COLUMNS, CheckResult
from src.utils.file_manager import FileManager

logger = logging.getLogger(__name__)

FORMATS = ("jsonl", "csv")
SCAN_CSV_COLUMNS = ("claim", "kind", "total", "passed", "failed", "counterexamples", "engine_version")

Task = Tuple[str, Tuple[Tuple[str, Any], ...]]


@dataclass(frozen=True)
class ClaimDescriptor:
    """
    What to scan.

    Attributes:
        claim_id (str): Registry id.
        ranges (dict): ParamRange per integer parameter.
        lists (dict): Fixed tuple per list parameter (enumerated scans only).
        samples (int | None): When set, draw this many seeded tuples instead of enumerating.
        seed (int): Seed of the sampling generator.
        list_len (tuple): (min, max) length of sampled lists.
        entry_ranges (dict): (min, max) entry interval per sampled list parameter.
    """
    claim_id: str
    ranges: Dict[str, ParamRange] = field(default_factory=dict)
    lists: Dict[str, Tuple[int, ...]] = field(default_factory=dict)
    samples: Optional[int] = None
    seed: int = Config.DEFAULT_SEED
    list_len: Tuple[int, int] = (1, 2)
    entry_ranges: Dict[str, Tuple[int, int]] = field(default_factory=dict)

    @property
    def spec(self) -> ClaimSpec:
        return get_claim(self.claim_id)

    @property
    def kind(self) -> ClaimKind:
        return self.spec.kind

    def validate(self) -> ClaimSpec:
        """
        Check the descriptor against the claim signature before any work.

        Raises:
            UnknownClaim, BadDomain, RangeSyntaxError
        """
        spec = self.spec
        int_names = [p.name for p in spec.params if not p.is_list]
        list_names = [p.name for p in spec.params if p.is_list]
        given = set(self.ranges) | set(self.lists)
        unknown = given - set(spec.param_names)
        if unknown:
            raise BadDomain(f"{self.claim_id} has no parameter(s) {', '.join(sorted(unknown))}")
        for name in int_names:
            if name in self.lists:
                raise BadDomain(f"{self.claim_id}: parameter {name} takes a range, not a list")
            if name not in self.ranges:
                raise BadDomain(f"{self.claim_id}: missing range for {name}")
        for name in list_names:
            if name in self.ranges:
                raise BadDomain(f"{self.claim_id}: parameter {name} takes a list, not a range")
            if self.samples is None and name not in self.lists:
                raise BadDomain(f"{self.claim_id}: list parameter {name} needs a value or a sampled scan")
        if self.samples is not None and self.samples < 1:
            raise BadDomain(f"samples must be >= 1, got {self.samples}")
        lo, hi = self.list_len
        if lo < 0 or lo > hi:
            raise BadDomain(f"bad list length interval {lo}..{hi}")
        check_references(list(spec.param_names), self.ranges)
        return spec


@dataclass(frozen=True)
class ScanReport:
    """
    Outcome of one scan.

    `total == passed + failed`; `counterexamples` holds at most the configured
    cap of failures, in lexicographic parameter order.
    """
    claim_id: str
    kind: ClaimKind
    total: int
    passed: int
    failed: int
    counterexamples: Tuple[CheckResult, ...]
    elapsed: float
    engine_version: str = Config.ENGINE_VERSION
    metadata: Tuple[Tuple[str, str], ...] = ()

    @property
    def fatal(self) -> bool:
        """A failing theorem or lemma is a defect; conjecture failures are data."""
        return self.failed > 0 and self.kind is not ClaimKind.CONJECTURE

    def to_record(self, include_elapsed: bool = True) -> Dict[str, Any]:
        record: Dict[str, Any] = {
            "claim": self.claim_id,
            "kind": self.kind.value,
            "total": self.total,
            "passed": self.passed,
            "failed": self.failed,
            "counterexamples": [c.to_record() for c in self.counterexamples],
            "engine_version": self.engine_version,
        }
        if self.metadata:
            record["metadata"] = dict(self.metadata)
        if include_elapsed:
            record["elapsed"] = round(self.elapsed, 6)
        return record


# ---------------------------------------------------------------------------
# Descriptor construction
# ---------------------------------------------------------------------------

def descriptor_from_text(claim_id: str, ranges: Mapping[str, str], samples: Optional[int] = None,
                         seed: Optional[int] = None, list_len: Optional[str] = None,
                         entry_ranges: Optional[Mapping[str, str]] = None) -> ClaimDescriptor:
    """
    Build a descriptor from range text. Integer parameters get range
    expressions, list parameters get list literals.
    """
    spec = get_claim(claim_id)
    int_ranges: Dict[str, ParamRange] = {}
    lists: Dict[str, Tuple[int, ...]] = {}
    for name, text in ranges.items():
        param = spec.param(name)
        if param.is_list:
            lists[name] = parse_int_list(text)
        else:
            int_ranges[name] = parse_range(text)
    entries = {name: parse_static_range(text) for name, text in (entry_ranges or {}).items()}
    return ClaimDescriptor(
        claim_id=claim_id,
        ranges=int_ranges,
        lists=lists,
        samples=samples,
        seed=Config.DEFAULT_SEED if seed is None else seed,
        list_len=parse_static_range(list_len) if list_len else (1, 2),
        entry_ranges=entries,
    )


def _from_defaults(claim_id: str, defaults: ScanDefaults) -> ClaimDescriptor:
    return descriptor_from_text(claim_id, defaults.ranges, samples=defaults.samples,
                                list_len=defaults.list_len, entry_ranges=defaults.entry_ranges)


def default_descriptors(claim_id: str) -> List[ClaimDescriptor]:
    """The built-in desk-scale scans of a claim."""
    spec = get_claim(claim_id)
    return [_from_defaults(claim_id, d) for d in spec.defaults]


# ---------------------------------------------------------------------------
# Enumeration
# ---------------------------------------------------------------------------

def _enumerate(spec: ClaimSpec, desc: ClaimDescriptor) -> Iterator[Dict[str, Any]]:
    names = list(spec.param_names)

    def walk(i: int, env: Dict[str, Any]) -> Iterator[Dict[str, Any]]:
        if i == len(names):
            yield dict(env)
            return
        name = names[i]
        if name in desc.lists:
            env[name] = desc.lists[name]
            yield from walk(i + 1, env)
            del env[name]
            return
        for value in desc.ranges[name].values(env):
            env[name] = value
            yield from walk(i + 1, env)
        env.pop(name, None)

    return walk(0, {})


def _static_count(spec: ClaimSpec, desc: ClaimDescriptor) -> Optional[int]:
    """Product of range sizes when no bound depends on another parameter."""
    if not all(r.is_static for r in desc.ranges.values()):
        return None
    return math.prod(len(desc.ranges[p.name].values()) for p in spec.params if not p.is_list)


def _scaled_draw(rng: random.Random, lo: int, hi: int, scale: int) -> int:
    """A multiple of `scale` in [lo, hi], or any value when there is none."""
    first, last = -(-lo // scale), hi // scale
    if first > last:
        return rng.randint(lo, hi)
    return scale * rng.randint(first, last)


def _sample(spec: ClaimSpec, desc: ClaimDescriptor) -> List[Dict[str, Any]]:
    """
    Seeded random tuples. Each draw picks a scale g first; `n` and every list
    entry are then drawn as multiples of g, so the gcd modulus is not
    almost always 1. Repeated draws are redrawn until `samples` distinct
    tuples exist; the result is sorted.

    Raises:
        SampleSpaceExhausted: `samples * SAMPLE_ATTEMPT_FACTOR` draws did not
            yield enough distinct tuples.
    """
    rng = random.Random(desc.seed)
    seen = {}
    wanted = desc.samples or 0
    attempts = 0
    while len(seen) < wanted:
        if attempts >= wanted * Config.SAMPLE_ATTEMPT_FACTOR:
            raise SampleSpaceExhausted(desc.claim_id, wanted, len(seen))
        attempts += 1
        scale = rng.randint(1, Config.SAMPLE_MAX_SCALE)
        env: Dict[str, Any] = {}
        length = rng.randint(*desc.list_len)
        for param in spec.params:
            if param.is_list:
                lo, hi = desc.entry_ranges.get(param.name, (0, 30))
                if param.nonnegative:
                    lo = max(lo, 0)
                    if lo > hi:
                        raise BadDomain(f"entry range for {param.name} has no nonnegative values")
                env[param.name] = tuple(_scaled_draw(rng, lo, hi, scale) for _ in range(length))
                continue
            choices = desc.ranges[param.name].values(env)
            if not choices:
                raise BadDomain(f"range for {param.name} is empty")
            if param.name == "n":
                env["n"] = _scaled_draw(rng, choices[0], choices[-1], scale)
            else:
                env[param.name] = rng.choice(choices)
        key = tuple((k, env[k]) for k in spec.param_names)
        seen[key] = env
    return [seen[k] for k in sorted(seen, key=lambda key: tuple(v if isinstance(v, tuple) else (v,) for _, v in key))]


def build_tasks(desc: ClaimDescriptor, cap: int = Config.RANGE_CAP) -> List[Task]:
    """
    All (claim_id, params) work items of a descriptor, in lexicographic order.

    Raises:
        RangeTooLarge: more than `cap` tuples.
        SampleSpaceExhausted: a sampled descriptor has fewer distinct tuples than `samples`.
    """
    spec = desc.validate()
    if desc.samples is not None:
        if desc.samples > cap:
            raise RangeTooLarge(desc.claim_id, cap)
        assignments = _sample(spec, desc)
    else:
        count = _static_count(spec, desc)
        if count is not None and count > cap:
            raise RangeTooLarge(desc.claim_id, cap)
        assignments = []
        for assignment in _enumerate(spec, desc):
            assignments.append(assignment)
            if len(assignments) > cap:
                raise RangeTooLarge(desc.claim_id, cap)
    return [(desc.claim_id, tuple((name, a[name]) for name in spec.param_names)) for a in assignments]


# ---------------------------------------------------------------------------
# Execution
# ---------------------------------------------------------------------------

def _run_task(task: Task) -> CheckResult:
    claim_id, params = task
    return evaluate(claim_id, dict(params))


def run_tasks(tasks: Sequence[Task], parallelism: int) -> List[CheckResult]:
    """Evaluate tasks, preserving their order. A parallelism of 1 runs inline."""
    if parallelism <= 1 or len(tasks) <= 1:
        return [_run_task(t) for t in tasks]
    workers = min(parallelism, len(tasks))
    chunksize = max(1, len(tasks) // (workers * 8))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_task, tasks, chunksize=chunksize))


def _metadata(claim_id: str, results: Sequence[CheckResult]) -> Tuple[Tuple[str, str], ...]:
    if claim_id != "conj5.6":
        return ()
    agree = all(dict(r.notes).get("moduli_agree") == "true" for r in results)
    return (
        ("modulus", "((1-q^n)/(1-q^(n/p)))^2"),
        ("moduli_agree", "true" if agree else "false"),
    )


def scan_claim(desc: ClaimDescriptor, parallelism: int = 1,
               counterexample_cap: int = Config.COUNTEREXAMPLE_CAP,
               range_cap: int = Config.RANGE_CAP) -> ScanReport:
    """
    Check every parameter tuple of a descriptor exactly once.

    Args:
        desc: What to scan.
        parallelism: Worker processes; 1 evaluates in this process.
        counterexample_cap: Maximum failures kept in the report.
        range_cap: Maximum number of tuples.

    Raises:
        UnknownClaim: the claim id is not registered.
        RangeTooLarge: the range exceeds `range_cap`.
        SampleSpaceExhausted: too few distinct tuples for a sampled scan.
        BadDomain / NotPrime: a tuple violates the claim's preconditions.
    """
    start = time.perf_counter()
    tasks = build_tasks(desc, range_cap)
    logger.info("scanning %s: %d tuples, parallelism %d", desc.claim_id, len(tasks), parallelism)
    results = run_tasks(tasks, parallelism)
    failures = sorted((r for r in results if not r.passed), key=CheckResult.sort_key)
    passed = len(results) - len(failures)
    elapsed = time.perf_counter() - start
    logger.debug("%s: %d passed, %d failed in %.3fs", desc.claim_id, passed, len(failures), elapsed)
    return ScanReport(
        claim_id=desc.claim_id,
        kind=desc.kind,
        total=len(results),
        passed=passed,
        failed=len(failures),
        counterexamples=tuple(failures[:max(0, counterexample_cap)]),
        elapsed=elapsed,
        metadata=_metadata(desc.claim_id, results),
    )


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def _require_format(fmt: str) -> str:
    if fmt not in FORMATS:
        raise BadDomain(f"format must be one of {FORMATS}, got {fmt!r}")
    return fmt


def render_reports(reports: Sequence[ScanReport], fmt: str = Config.DEFAULT_FORMAT,
                   include_elapsed: bool = True) -> str:
    """
    JSONL: one summary object per report. CSV: one summary row per report
    (`counterexamples` is the number kept) followed, after a blank line, by
    the counterexample rows in the CheckResult columns.
    """
    if _require_format(fmt) == "jsonl":
        return FileManager.render_jsonl(r.to_record(include_elapsed) for r in reports)
    if not reports:
        return ""
    summary = FileManager.render_csv(SCAN_CSV_COLUMNS, (
        (r.claim_id, r.kind.value, r.total, r.passed, r.failed, len(r.counterexamples), r.engine_version)
        for r in reports
    ))
    failures = [c for r in reports for c in r.counterexamples]
    if not failures:
        return summary
    return summary + "\n" + FileManager.render_csv(CSV_COLUMNS, (c.to_csv_row() for c in failures))


def write_report(reports: Sequence[ScanReport], fmt: str = Config.DEFAULT_FORMAT,
                 destination: Optional[str] = None) -> None:
    """
    Serialize scan reports to stdout (destination None or "-") or a file.
    An empty list writes nothing to stdout and an empty file otherwise.

    Raises:
        ReportWriteError: the destination could not be written.
    """
    FileManager.write_text(destination, render_reports(reports, fmt))


def write_results(results: Sequence[CheckResult], fmt: str = Config.DEFAULT_FORMAT,
                  destination: Optional[str] = None) -> None:
    """
    Serialize single CheckResults (the `verify` output).

    Raises:
        BadDomain: unknown format.
        ReportWriteError: the destination could not be written.
    """
    if _require_format(fmt) == "jsonl":
        FileManager.write_jsonl(destination, (r.to_record() for r in results))
    else:
        FileManager.write_csv(destination, CSV_COLUMNS, (r.to_csv_row() for r in results))
