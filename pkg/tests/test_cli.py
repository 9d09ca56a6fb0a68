import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from unittest import mock

from src.cli.app import EXIT_FAILED, EXIT_OK, EXIT_USAGE, UsageError, parse_cli, parse_param_flags, run_cli
from src.core.harness import ScanReport
from src.core.newton import newton_coeffs
from src.core.registry import ClaimKind, list_claims


def run(*args):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = run_cli(list(args))
    return code, out.getvalue(), err.getvalue()


class TestParsing(unittest.TestCase):
    def test_param_flags(self):
        self.assertEqual(parse_param_flags(["--n", "1..5", "--r=0..2"]), {"n": "1..5", "r": "0..2"})
        self.assertEqual(parse_param_flags(["--a", ""]), {"a": ""})
        self.assertEqual(parse_param_flags(["--a=-3,-3"]), {"a": "-3,-3"})
        with self.assertRaises(UsageError):
            parse_param_flags(["--n"])
        with self.assertRaises(UsageError):
            parse_param_flags(["n", "3"])
        with self.assertRaises(UsageError):
            parse_param_flags(["--n", "1", "--n", "2"])

    def test_parse_scan(self):
        config = parse_cli(["scan", "--claim", "thm1.1a", "--n", "1..5", "--r", "0", "--parallel", "2"])
        self.assertEqual(config.command, "scan")
        self.assertEqual(config.claim_id, "thm1.1a")
        self.assertEqual(config.params, {"n": "1..5", "r": "0"})
        self.assertEqual(config.parallelism, 2)
        self.assertEqual(config.format, "jsonl")

    def test_short_parameter_names_are_not_abbreviations(self):
        config = parse_cli(["scan", "--claim", "conj5.cases", "--s", "1..2", "--n", "1..3", "--t", "1",
                            "--parallel", "1"])
        self.assertEqual(config.params, {"s": "1..2", "n": "1..3", "t": "1"})
        self.assertIsNone(config.samples)

    def test_usage_errors(self):
        with self.assertRaises(UsageError):
            parse_cli(["scan", "--claim", "thm1.1a", "--parallel", "0"])
        with self.assertRaises(UsageError):
            parse_cli(["list-claims", "--n", "3"])
        with self.assertRaises(UsageError):
            parse_cli(["scan", "--all", "--n", "1..3"])


class TestSequence(unittest.TestCase):
    def test_csv(self):
        code, out, _ = run("sequence", "apery", "--max", "10", "--format", "csv")
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(lines[0], "n,value")
        self.assertEqual(len(lines), 12)
        self.assertEqual(lines[5], "4,33001")

    def test_jsonl_recurrence(self):
        code, out, _ = run("sequence", "delannoy", "--max", "3", "--method", "recurrence_oracle")
        self.assertEqual(code, EXIT_OK)
        records = [json.loads(line) for line in out.splitlines()]
        self.assertEqual([r["value"] for r in records], ["1", "3", "13", "63"])
        self.assertEqual(records[3], {"sequence": "delannoy", "n": 3, "value": "63", "method": "recurrence_oracle"})

    def test_negative_max(self):
        code, _, err = run("sequence", "apery", "--max", "-1")
        self.assertEqual(code, EXIT_USAGE)
        self.assertIn("error", err)


class TestVerify(unittest.TestCase):
    def test_prime_congruence(self):
        code, out, err = run("verify", "--claim", "thm1.3b", "--p", "5")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(
            out,
            '{"claim":"thm1.3b","params":{"p":5},"modulus":"31250","lhs":"24562625",'
            '"residue":"125","expected":"125","pass":true}\n',
        )
        self.assertIn("PASS", err)

    def test_not_prime(self):
        code, out, err = run("verify", "--claim", "thm1.3b", "--p", "6")
        self.assertEqual(code, EXIT_USAGE)
        self.assertEqual(out, "")
        self.assertIn("p=6", err)

    def test_list_parameters(self):
        code, out, _ = run("verify", "--claim", "thm5.3", "--n", "3", "--a=-3,-3", "--b", "0,0")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["lhs"], "117")
        code, out, _ = run("verify", "--claim", "thm1.4", "--n", "3", "--a", "", "--b", "")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(json.loads(out)["params"], {"n": 3, "a": [], "b": []})

    def test_csv_output(self):
        code, out, _ = run("verify", "--claim", "conj3.1", "--n", "4", "--format", "csv")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual(out.splitlines()[1], "conj3.1,n=4,64,-20064,32,32,true")

    def test_integrality_failure_exits_one(self):
        newton_coeffs.cache_clear()
        self.addCleanup(newton_coeffs.cache_clear)
        with mock.patch("src.core.newton._synthetic_division", return_value=([3], 0)):
            code, out, err = run("verify", "--claim", "lem2.1", "--k", "37", "--r", "5", "--m", "3")
        self.assertEqual(code, EXIT_FAILED)
        self.assertEqual(out, "")
        self.assertIn("integrality certificate failed", err)

    def test_usage_errors(self):
        self.assertEqual(run("verify", "--claim", "nope", "--n", "3")[0], EXIT_USAGE)
        self.assertEqual(run("verify", "--claim", "thm1.3b")[0], EXIT_USAGE)
        self.assertEqual(run("verify", "--claim", "thm1.3b", "--p", "x")[0], EXIT_USAGE)
        self.assertEqual(run("verify", "--claim", "thm1.3b", "--q", "5")[0], EXIT_USAGE)
        self.assertEqual(run("verify")[0], EXIT_USAGE)
        self.assertEqual(run("frobnicate")[0], EXIT_USAGE)


class TestScan(unittest.TestCase):
    def test_range_scan(self):
        code, out, err = run("scan", "--claim", "thm1.1a", "--n", "1..10", "--r", "0..1", "--parallel", "1")
        self.assertEqual(code, EXIT_OK)
        record = json.loads(out)
        self.assertEqual(record["total"], 20)
        self.assertEqual(record["failed"], 0)
        self.assertEqual(record["counterexamples"], [])
        self.assertIn("PASS", err)

    def test_default_scan_of_one_claim(self):
        code, out, _ = run("scan", "--claim", "thm1.3b", "--parallel", "1")
        self.assertEqual(code, EXIT_OK)
        records = [json.loads(line) for line in out.splitlines()]
        self.assertEqual(len(records), 1)
        # primes 5..97
        self.assertEqual(records[0]["total"], 23)

    def test_sampled_scan(self):
        code, out, _ = run("scan", "--claim", "thm5.3", "--n", "1..20", "--samples", "30",
                           "--list-len", "1..2", "--entries=-10..10", "--parallel", "1")
        self.assertEqual(code, EXIT_OK)
        record = json.loads(out)
        self.assertGreater(record["total"], 0)
        self.assertEqual(record["failed"], 0)

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "scan.csv")
            code, out, _ = run("scan", "--claim", "thm1.3b", "--p", "primes:5..13", "--format", "csv",
                               "--out", path, "--parallel", "1")
            self.assertEqual(code, EXIT_OK)
            self.assertEqual(out, "")
            with open(path, encoding="utf-8") as f:
                lines = f.read().splitlines()
            self.assertTrue(lines[1].startswith("thm1.3b,theorem,4,4,0,0,"))

    def test_failing_scan_exits_one(self):
        report = ScanReport("conj3.1", ClaimKind.CONJECTURE, total=6, passed=5, failed=1,
                            counterexamples=(), elapsed=0.0)
        with mock.patch("src.cli.app.scan_claim", return_value=report):
            code, out, err = run("scan", "--claim", "conj3.1", "--parallel", "1")
        self.assertEqual(code, EXIT_FAILED)
        self.assertEqual(json.loads(out)["failed"], 1)
        self.assertIn("COUNTEREXAMPLES", err)

    def test_errors(self):
        self.assertEqual(run("scan", "--claim", "nope", "--n", "1..3")[0], EXIT_USAGE)
        self.assertEqual(run("scan", "--claim", "thm1.3a", "--n", "1..")[0], EXIT_USAGE)
        self.assertEqual(run("scan", "--claim", "thm1.3a", "--n", "0..m")[0], EXIT_USAGE)
        self.assertEqual(run("scan", "--claim", "thm1.3b", "--p", "1..10", "--parallel", "1")[0], EXIT_USAGE)
        self.assertEqual(run("scan", "--claim", "thm1.4", "--n", "1..2", "--samples", "5", "--list-len", "0..0",
                             "--parallel", "1")[0], EXIT_USAGE)


class TestListClaims(unittest.TestCase):
    def test_lists_registry(self):
        code, out, _ = run("list-claims")
        self.assertEqual(code, EXIT_OK)
        lines = out.splitlines()
        self.assertEqual(len(lines), len(list_claims()))
        self.assertIn("thm1.3b\ttheorem\tp", lines)
        self.assertIn("thm1.4\ttheorem\tn,a[],b[]", lines)

    def test_kind_filter(self):
        code, out, _ = run("list-claims", "--kind", "conjecture")
        self.assertEqual(code, EXIT_OK)
        self.assertEqual([line.split("\t")[0] for line in out.splitlines()],
                         ["conj3.1", "conj5.gen", "conj5.pow2a", "conj5.pow2b", "conj5.cases", "conj5.6"])


if __name__ == "__main__":
    unittest.main()
