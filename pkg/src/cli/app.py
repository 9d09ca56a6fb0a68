"""
[src/cli/app.py]
----------------
Command-line front end of the congruence engine.

Responsibilities:
1.  **sequence**: print Apéry or central Delannoy values (defining sum or recurrence oracle).
2.  **verify**: check one claim instance, `--<param> VALUE` per parameter.
3.  **scan**: sweep a claim over ranges (`--<param> RANGE`), or every claim's built-in scans with `--all`.
4.  **list-claims**: print `id<TAB>kind<TAB>params` for the registry.

Exit codes:
    0  everything checked passed (or a pure output command succeeded)
    1  a theorem/lemma instance failed, a conjecture counterexample was found,
       or an integrality certificate failed
    2  usage or configuration error

Machine-readable output goes to stdout (or `--out`); colored status lines go to stderr.
"""

import argparse
import logging
import sys
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from colorama import Fore, Style, init

from src.config.settings import Config
from src.core.errors import EngineError, NotIntegral
from src.core.harness import (
    FORMATS,
    ScanReport,
    default_descriptors,
    descriptor_from_text,
    scan_claim,
    write_report,
    write_results,
)
from src.core.ranges import parse_int, parse_int_list
from src.core.registry import ClaimKind, get_claim, list_claims
from src.core.sequences import Method, SequenceKind, build_table
from src.utils.file_manager import FileManager

# Initialize colorama
init(autoreset=True)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    """Malformed command line that argparse itself cannot detect."""


@dataclass
class CliConfig:
    """
    Parsed command line.

    Attributes:
        command (str): sequence | verify | scan | list-claims.
        claim_id (str | None): Claim to verify or scan.
        params (dict): Raw `--<param>` text per parameter name.
        out (str | None): Output path; None writes to stdout.
        format (str): jsonl or csv.
        parallelism (int): Worker processes for scans.
        cap (int): Counterexample cap per scan report.
    """
    command: str
    claim_id: Optional[str] = None
    params: Dict[str, str] = field(default_factory=dict)
    out: Optional[str] = None
    format: str = Config.DEFAULT_FORMAT
    parallelism: int = 1
    cap: int = Config.COUNTEREXAMPLE_CAP
    scan_all: bool = False
    samples: Optional[int] = None
    seed: Optional[int] = None
    list_len: Optional[str] = None
    entries: Optional[str] = None
    sequence: Optional[str] = None
    max_n: int = 0
    method: str = Method.DEFINING_SUM.value
    kind: Optional[str] = None


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------

def _add_output_options(parser: argparse.ArgumentParser):
    parser.add_argument("--format", choices=FORMATS, default=Config.DEFAULT_FORMAT)
    parser.add_argument("--out", default=None, help="output file (default: stdout)")


def build_parser() -> argparse.ArgumentParser:
    # allow_abbrev=False: parameter flags such as --s or --p must never be
    # taken as abbreviations of --samples or --parallel.
    parser = argparse.ArgumentParser(prog="apery", allow_abbrev=False,
                                     description="Exact checks of Apéry / Delannoy congruences.")
    sub = parser.add_subparsers(dest="command", required=True)

    seq = sub.add_parser("sequence", allow_abbrev=False, help="print sequence values")
    seq.add_argument("sequence", choices=[k.value for k in SequenceKind])
    seq.add_argument("--max", dest="max_n", type=int, required=True)
    seq.add_argument("--method", choices=[m.value for m in Method], default=Method.DEFINING_SUM.value)
    _add_output_options(seq)

    verify = sub.add_parser("verify", allow_abbrev=False, help="check one claim instance; --<param> VALUE")
    verify.add_argument("--claim", required=True)
    _add_output_options(verify)

    scan = sub.add_parser("scan", allow_abbrev=False, help="sweep a claim; --<param> RANGE")
    target = scan.add_mutually_exclusive_group(required=True)
    target.add_argument("--claim")
    target.add_argument("--all", dest="scan_all", action="store_true", help="run every built-in scan")
    scan.add_argument("--samples", type=int, default=None)
    scan.add_argument("--seed", type=int, default=None)
    scan.add_argument("--list-len", dest="list_len", default=None)
    scan.add_argument("--entries", default=None, help="entry interval for sampled lists, e.g. --entries=-30..30")
    scan.add_argument("--parallel", type=int, default=None)
    scan.add_argument("--cap", type=int, default=Config.COUNTEREXAMPLE_CAP)
    _add_output_options(scan)

    claims = sub.add_parser("list-claims", allow_abbrev=False, help="print the claim registry")
    claims.add_argument("--kind", choices=[k.value for k in ClaimKind], default=None)
    return parser


def parse_param_flags(extras: Sequence[str]) -> Dict[str, str]:
    """
    `--name VALUE` / `--name=VALUE` pairs left over by argparse. The value is
    taken verbatim, so `--a ""` is the empty list and `--a -3,-3` works.
    """
    params: Dict[str, str] = {}
    i = 0
    while i < len(extras):
        token = extras[i]
        if not token.startswith("--") or len(token) == 2:
            raise UsageError(f"unexpected argument {token!r}")
        name, eq, value = token[2:].partition("=")
        if not eq:
            if i + 1 >= len(extras):
                raise UsageError(f"missing value for --{name}")
            value = extras[i + 1]
            i += 1
        if name in params:
            raise UsageError(f"--{name} given twice")
        params[name] = value
        i += 1
    return params


def parse_cli(args: Sequence[str]) -> CliConfig:
    """
    Raises:
        SystemExit: from argparse on malformed input or --help.
        UsageError: stray arguments for commands that take no parameters.
    """
    parser = build_parser()
    ns, extras = parser.parse_known_args(list(args))
    if ns.command in ("verify", "scan"):
        params = parse_param_flags(extras)
    elif extras:
        raise UsageError(f"unrecognized arguments: {' '.join(extras)}")
    else:
        params = {}

    config = CliConfig(command=ns.command, params=params)
    if ns.command == "sequence":
        config.sequence, config.max_n, config.method = ns.sequence, ns.max_n, ns.method
    elif ns.command == "list-claims":
        config.kind = ns.kind
    else:
        config.claim_id = ns.claim
    if ns.command != "list-claims":
        config.out, config.format = ns.out, ns.format
    if ns.command == "scan":
        config.scan_all = ns.scan_all
        config.samples, config.seed = ns.samples, ns.seed
        config.list_len, config.entries = ns.list_len, ns.entries
        config.cap = ns.cap
        config.parallelism = ns.parallel if ns.parallel is not None else Config.default_parallelism()
        if config.parallelism < 1:
            raise UsageError("--parallel must be >= 1")
        if config.scan_all and (params or config.samples is not None):
            raise UsageError("--all takes no parameter ranges")
    return config


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _status(color: str, text: str):
    print(f"{color}{text}{Style.RESET_ALL}", file=sys.stderr)


def cmd_sequence(config: CliConfig) -> int:
    table = build_table(SequenceKind(config.sequence), config.max_n, Method(config.method))
    if config.format == "csv":
        FileManager.write_csv(config.out, ("n", "value"), table.rows())
    else:
        FileManager.write_jsonl(config.out, (
            {"sequence": table.kind.value, "n": n, "value": str(v), "method": table.method.value}
            for n, v in table.rows()
        ))
    return EXIT_OK


def cmd_verify(config: CliConfig) -> int:
    spec = get_claim(config.claim_id)
    assignment = {}
    for name, text in config.params.items():
        param = spec.param(name)
        assignment[name] = parse_int_list(text) if param.is_list else parse_int(text)
    result = spec.evaluate(assignment)
    write_results([result], config.format, config.out)
    if result.passed:
        _status(Fore.GREEN, f"PASS {spec.claim_id} {dict(result.params)}")
        return EXIT_OK
    if spec.kind is ClaimKind.CONJECTURE:
        _status(Fore.YELLOW, f"COUNTEREXAMPLE {spec.claim_id} {dict(result.params)}")
    else:
        _status(Fore.RED, f"FAILED {spec.kind.value} {spec.claim_id} {dict(result.params)}")
    return EXIT_FAILED


def _scan_descriptors(config: CliConfig):
    if config.scan_all:
        return [d for spec in list_claims() for d in default_descriptors(spec.claim_id)]
    spec = get_claim(config.claim_id)
    if not config.params and config.samples is None:
        return default_descriptors(spec.claim_id)
    entries = None
    if config.entries:
        entries = {p.name: config.entries for p in spec.params if p.is_list}
    return [descriptor_from_text(spec.claim_id, config.params, samples=config.samples, seed=config.seed,
                                 list_len=config.list_len, entry_ranges=entries)]


def _report_status(report: ScanReport):
    line = f"{report.claim_id}: {report.passed}/{report.total} passed"
    if report.failed == 0:
        _status(Fore.GREEN, f"PASS {line}")
    elif report.fatal:
        _status(Fore.RED, f"THEOREM FAILED {line} ({report.failed} failing)")
    else:
        _status(Fore.YELLOW, f"COUNTEREXAMPLES {line} ({report.failed} found)")


def cmd_scan(config: CliConfig) -> int:
    descriptors = _scan_descriptors(config)
    reports: List[ScanReport] = []
    for desc in descriptors:
        if config.scan_all:
            _status(Fore.CYAN, f"scanning {desc.claim_id} ...")
        report = scan_claim(desc, config.parallelism, counterexample_cap=config.cap)
        _report_status(report)
        reports.append(report)
    write_report(reports, config.format, config.out)
    return EXIT_FAILED if any(r.failed for r in reports) else EXIT_OK


def cmd_list_claims(config: CliConfig) -> int:
    lines = []
    for spec in list_claims(ClaimKind(config.kind) if config.kind else None):
        params = ",".join(f"{p.name}[]" if p.is_list else p.name for p in spec.params)
        lines.append(f"{spec.claim_id}\t{spec.kind.value}\t{params}\n")
    FileManager.write_text(None, "".join(lines))
    return EXIT_OK


COMMANDS = {
    "sequence": cmd_sequence,
    "verify": cmd_verify,
    "scan": cmd_scan,
    "list-claims": cmd_list_claims,
}


def configure_logging():
    level = getattr(logging, Config.log_level(), logging.WARNING)
    if not isinstance(level, int):
        level = logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s")


def run_cli(args: Sequence[str]) -> int:
    """
    Run one command and return the process exit code; never raises for
    engine or usage errors.
    """
    configure_logging()
    try:
        config = parse_cli(args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    except (UsageError, EngineError) as e:
        _status(Fore.RED, f"error: {e}")
        return EXIT_USAGE

    try:
        return COMMANDS[config.command](config)
    except NotIntegral as e:
        _status(Fore.RED, f"integrality certificate failed: {e}")
        return EXIT_FAILED
    except EngineError as e:
        _status(Fore.RED, f"error: {e}")
        return EXIT_USAGE
