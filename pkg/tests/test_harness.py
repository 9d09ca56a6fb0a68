import io
import json
import os
import tempfile
import unittest
from contextlib import redirect_stdout
from unittest import mock

from src.config.settings import Config
from src.core.errors import (
    BadDomain,
    RangeSyntaxError,
    RangeTooLarge,
    ReportWriteError,
    SampleSpaceExhausted,
    UnknownClaim,
)
from src.core.harness import (
    ClaimDescriptor,
    ScanReport,
    build_tasks,
    default_descriptors,
    descriptor_from_text,
    render_reports,
    scan_claim,
    write_report,
    write_results,
)
from src.core.ranges import parse_range
from src.core.registry import ClaimKind, list_claims
from src.core.results import CheckResult


def _odd_n_fails(claim_id, params):
    n = params["n"]
    return CheckResult.congruence(claim_id, (("n", n),), n, 2, 0)


class TestBuildTasks(unittest.TestCase):
    def test_dependent_enumeration_order(self):
        desc = descriptor_from_text("lem3.1+", {"n": "1..3", "k": "0..n-1"})
        tasks = build_tasks(desc)
        self.assertEqual([dict(params) for _, params in tasks], [
            {"n": 1, "k": 0},
            {"n": 2, "k": 0}, {"n": 2, "k": 1},
            {"n": 3, "k": 0}, {"n": 3, "k": 1}, {"n": 3, "k": 2},
        ])
        self.assertTrue(all(claim_id == "lem3.1+" for claim_id, _ in tasks))

    def test_fixed_lists(self):
        desc = descriptor_from_text("thm1.4", {"n": "1..3", "a": "", "b": ""})
        tasks = build_tasks(desc)
        self.assertEqual(len(tasks), 3)
        self.assertEqual(tasks[0][1], (("n", 1), ("a", ()), ("b", ())))

    def test_range_cap(self):
        desc = descriptor_from_text("thm1.1a", {"n": "1..100", "r": "0..4"})
        with self.assertRaises(RangeTooLarge):
            build_tasks(desc, cap=10)
        dependent = descriptor_from_text("lem3.1+", {"n": "1..100", "k": "0..n-1"})
        with self.assertRaises(RangeTooLarge):
            build_tasks(dependent, cap=50)

    def test_sampling_is_seeded(self):
        desc = default_descriptors("thm1.4")[0]
        first, second = build_tasks(desc), build_tasks(desc)
        self.assertEqual(first, second)
        self.assertEqual(len(first), 500)
        self.assertEqual(len(set(first)), 500)
        keys = [tuple(v if isinstance(v, tuple) else (v,) for _, v in params) for _, params in first]
        self.assertEqual(keys, sorted(keys))
        for _, params in first:
            values = dict(params)
            self.assertTrue(1 <= values["n"] <= 60)
            self.assertEqual(len(values["a"]), len(values["b"]))
            self.assertLessEqual(len(values["a"]), 3)
            self.assertTrue(all(0 <= x <= 30 for x in values["a"] + values["b"]))

    def test_sampled_defaults_reach_requested_count(self):
        for claim_id in ("thm1.4", "thm5.3", "thm5.1v1", "thm5.1v4", "conj5.gen"):
            desc = next(d for d in default_descriptors(claim_id) if d.samples is not None)
            tasks = build_tasks(desc)
            self.assertEqual(len(tasks), desc.samples, claim_id)
            self.assertEqual(len(set(tasks)), desc.samples, claim_id)

    def test_sample_space_too_small(self):
        # only n = 1 and n = 2 exist once the lists are empty
        desc = descriptor_from_text("thm1.4", {"n": "1..2"}, samples=5, list_len="0..0")
        with self.assertRaises(SampleSpaceExhausted) as ctx:
            build_tasks(desc)
        self.assertEqual(ctx.exception.found, 2)
        self.assertEqual(ctx.exception.requested, 5)
        desc = descriptor_from_text("thm1.4", {"n": "1..2"}, samples=2, list_len="0..0")
        self.assertEqual([dict(p)["n"] for _, p in build_tasks(desc)], [1, 2])

    def test_sampling_depends_on_seed(self):
        base = descriptor_from_text("thm5.3", {"n": "1..60"}, samples=50,
                                    list_len="1..3", entry_ranges={"a": "-30..30", "b": "0..30"})
        other = descriptor_from_text("thm5.3", {"n": "1..60"}, samples=50, seed=7,
                                     list_len="1..3", entry_ranges={"a": "-30..30", "b": "0..30"})
        self.assertNotEqual(build_tasks(base), build_tasks(other))
        self.assertTrue(any(x < 0 for _, params in build_tasks(base) for x in dict(params)["a"]))

    def test_nonnegative_entries_are_clipped(self):
        desc = descriptor_from_text("thm1.4", {"n": "1..10"}, samples=40,
                                    list_len="1..2", entry_ranges={"a": "-5..5", "b": "-5..5"})
        for _, params in build_tasks(desc):
            values = dict(params)
            self.assertTrue(all(x >= 0 for x in values["a"] + values["b"]))


class TestDescriptorValidation(unittest.TestCase):
    def test_unknown_claim(self):
        with self.assertRaises(UnknownClaim):
            descriptor_from_text("nope", {"n": "1..3"})

    def test_missing_and_extra_parameters(self):
        with self.assertRaises(BadDomain):
            build_tasks(descriptor_from_text("thm1.1a", {"n": "1..3"}))
        with self.assertRaises(BadDomain):
            descriptor_from_text("thm1.1a", {"n": "1..3", "r": "0", "z": "1"})
        with self.assertRaises(BadDomain):
            build_tasks(ClaimDescriptor("thm1.3a", lists={"n": (1,)}))
        with self.assertRaises(BadDomain):
            build_tasks(descriptor_from_text("thm1.4", {"n": "1..3"}))

    def test_bad_ranges(self):
        with self.assertRaises(RangeSyntaxError):
            descriptor_from_text("thm1.3a", {"n": "1.."})
        with self.assertRaises(RangeSyntaxError):
            build_tasks(ClaimDescriptor("lem3.1+", ranges={"n": parse_range("0..k"), "k": parse_range("0..3")}))
        with self.assertRaises(BadDomain):
            build_tasks(descriptor_from_text("thm1.4", {"n": "1..3"}, samples=0))

    def test_default_descriptors_are_valid(self):
        for spec in list_claims():
            for desc in default_descriptors(spec.claim_id):
                self.assertIs(desc.validate(), spec)


class TestScanClaim(unittest.TestCase):
    def test_apery_sweep(self):
        report = scan_claim(descriptor_from_text("thm1.1a", {"n": "1..50", "r": "0..2"}))
        self.assertEqual(report.total, 150)
        self.assertEqual(report.failed, 0)
        self.assertEqual(report.passed, 150)
        self.assertEqual(report.counterexamples, ())
        self.assertFalse(report.fatal)
        self.assertEqual(report.engine_version, Config.ENGINE_VERSION)

    def test_lemma_sweep(self):
        report = scan_claim(descriptor_from_text("lem2.2", {"n": "1..10", "k": "0..n-1", "a": "0..3"}))
        # 4 * (1 + 2 + ... + 10)
        self.assertEqual(report.total, 220)
        self.assertEqual(report.failed, 0)

    def test_prime_scan(self):
        report = scan_claim(descriptor_from_text("thm1.3b", {"p": "primes:5..97"}))
        self.assertEqual(report.total, 23)
        self.assertEqual(report.failed, 0)

    def test_deterministic_across_parallelism(self):
        desc = descriptor_from_text("thm1.2b", {"n": "1..20", "r": "0..2", "eps": "{-1,1}"})
        serial = render_reports([scan_claim(desc, 1)], include_elapsed=False)
        parallel = render_reports([scan_claim(desc, 2)], include_elapsed=False)
        self.assertEqual(serial, parallel)

    def test_counterexamples_are_capped_and_sorted(self):
        desc = descriptor_from_text("thm1.3a", {"n": "{9,3,7,1,5,2}"})
        with mock.patch("src.core.harness.evaluate", side_effect=_odd_n_fails):
            report = scan_claim(desc, 1, counterexample_cap=2)
        self.assertEqual(report.total, 6)
        self.assertEqual(report.failed, 5)
        self.assertEqual(report.passed, 1)
        self.assertEqual([c.param("n") for c in report.counterexamples], [1, 3])
        self.assertTrue(report.fatal)

    def test_conjecture_failures_are_not_fatal(self):
        report = ScanReport("conj3.1", ClaimKind.CONJECTURE, 1, 0, 1, (), 0.0)
        self.assertFalse(report.fatal)

    def test_prime_power_metadata(self):
        report = scan_claim(descriptor_from_text("conj5.6", {"p": "2", "e": "1..2"}))
        self.assertEqual(dict(report.metadata)["moduli_agree"], "true")
        self.assertIn("metadata", report.to_record())


class TestRendering(unittest.TestCase):
    def _failing_report(self):
        failures = (
            CheckResult.congruence("conj3.1", (("n", 2),), 1, 8, 0),
            CheckResult.congruence("conj3.1", (("n", 4),), 3, 64, 32),
        )
        return ScanReport("conj3.1", ClaimKind.CONJECTURE, 6, 4, 2, failures, 0.25)

    def test_jsonl(self):
        passing = ScanReport("thm1.3b", ClaimKind.THEOREM, 23, 23, 0, (), 1.5)
        text = render_reports([passing, self._failing_report()])
        lines = text.splitlines()
        self.assertEqual(len(lines), 2)
        first = json.loads(lines[0])
        self.assertEqual(first["claim"], "thm1.3b")
        self.assertEqual(first["failed"], 0)
        self.assertEqual(first["elapsed"], 1.5)
        self.assertEqual(len(json.loads(lines[1])["counterexamples"]), 2)
        self.assertNotIn("elapsed", render_reports([passing], include_elapsed=False))

    def test_csv(self):
        text = render_reports([self._failing_report()], "csv")
        summary, failures = text.split("\n\n")
        self.assertEqual(summary.splitlines()[0], "claim,kind,total,passed,failed,counterexamples,engine_version")
        self.assertEqual(summary.splitlines()[1], f"conj3.1,conjecture,6,4,2,2,{Config.ENGINE_VERSION}")
        self.assertEqual(failures.splitlines()[0], "claim,params,modulus,lhs,residue,expected,pass")
        self.assertEqual(failures.splitlines()[2], "conj3.1,n=4,64,3,3,32,false")

    def test_empty(self):
        self.assertEqual(render_reports([]), "")
        self.assertEqual(render_reports([], "csv"), "")

    def _written(self, results, fmt="jsonl"):
        buffer = io.StringIO()
        with redirect_stdout(buffer):
            write_results(results, fmt)
        return buffer.getvalue()

    def test_results(self):
        result = CheckResult.congruence("thm1.3b", (("p", 5),), 24562625, 31250, 125)
        self.assertEqual(
            self._written([result]),
            '{"claim":"thm1.3b","params":{"p":5},"modulus":"31250","lhs":"24562625",'
            '"residue":"125","expected":"125","pass":true}\n',
        )
        self.assertEqual(self._written([result], "csv").splitlines()[1], "thm1.3b,p=5,31250,24562625,125,125,true")
        with self.assertRaises(BadDomain):
            write_results([result], "xml")

    def test_write_report_to_file(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "reports", "scan.jsonl")
            write_report([self._failing_report()], "jsonl", path)
            with open(path, encoding="utf-8") as f:
                self.assertEqual(json.loads(f.read())["failed"], 2)
            self.assertFalse(os.path.exists(path + ".tmp"))

            empty = os.path.join(tmp, "empty.csv")
            write_report([], "csv", empty)
            self.assertEqual(os.path.getsize(empty), 0)

            # a regular file cannot be a parent directory
            with self.assertRaises(ReportWriteError) as ctx:
                write_report([], "jsonl", os.path.join(empty, "x.jsonl"))
            self.assertEqual(ctx.exception.destination, os.path.join(empty, "x.jsonl"))


if __name__ == "__main__":
    unittest.main()
