import unittest

from src.core.errors import BadDomain, NotPrime, UnknownClaim
from src.core.qpoly import QPoly
from src.core.registry import ClaimKind, ParamType, evaluate, get_claim, list_claims

REQUIRED_IDS = {
    "lem2.1", "eq2.3", "lem2.2", "lem2.3", "thm1.1a", "thm1.1b", "thm1.2a", "thm1.2b",
    "lem3.1+", "lem3.1-", "thm3.1a", "thm3.1b", "lem4.1", "lem4.2a", "lem4.2b",
    "thm1.3a", "thm1.3b", "thm1.4", "thm5.3", "cor5.1a", "cor5.1b", "cor5.2", "calkin",
    "eq-particular1", "wolst1", "wolst2", "alt-unit", "alt-n",
    "qchu", "qlucas", "thm5.1v1", "thm5.1v2", "thm5.1v3", "thm5.1v4", "lem5.5", "thm5.4",
    "conj3.1", "conj5.gen", "conj5.pow2a", "conj5.pow2b", "conj5.cases", "conj5.6",
}


class TestCatalog(unittest.TestCase):
    def test_contains_every_claim(self):
        ids = [spec.claim_id for spec in list_claims()]
        self.assertEqual(len(ids), len(set(ids)))
        self.assertTrue(REQUIRED_IDS <= set(ids), REQUIRED_IDS - set(ids))

    def test_kinds(self):
        conjectures = {spec.claim_id for spec in list_claims(ClaimKind.CONJECTURE)}
        self.assertEqual(conjectures,
                         {"conj3.1", "conj5.gen", "conj5.pow2a", "conj5.pow2b", "conj5.cases", "conj5.6"})
        self.assertIs(get_claim("thm1.3b").kind, ClaimKind.THEOREM)
        self.assertIs(get_claim("lem2.2").kind, ClaimKind.LEMMA)
        self.assertEqual([s.claim_id for s in list_claims("lemma")],
                         [s.claim_id for s in list_claims(ClaimKind.LEMMA)])

    def test_every_claim_has_a_default_scan(self):
        for spec in list_claims():
            self.assertTrue(spec.defaults, spec.claim_id)
            self.assertTrue(spec.summary, spec.claim_id)

    def test_signatures(self):
        spec = get_claim("thm1.4")
        self.assertEqual(spec.param_names, ("n", "a", "b"))
        self.assertIs(spec.param("a").type, ParamType.INT_LIST)
        self.assertTrue(spec.param("a").nonnegative)
        self.assertFalse(get_claim("thm5.3").param("a").nonnegative)
        self.assertEqual(get_claim("qlucas").param_names, ("d", "a", "b", "r", "s"))
        with self.assertRaises(BadDomain):
            spec.param("z")

    def test_unknown(self):
        with self.assertRaises(UnknownClaim) as ctx:
            get_claim("thm9.9")
        self.assertIn("thm9.9", str(ctx.exception))


class TestEvaluate(unittest.TestCase):
    def test_integer_claims(self):
        result = evaluate("thm1.3b", {"p": 5})
        self.assertEqual(result.residue, 125)
        self.assertTrue(result.passed)
        self.assertEqual(evaluate("thm1.1a", {"n": 4, "r": 1}).lhs, 123600)
        self.assertEqual(evaluate("thm1.1b", {"r": 1, "n": 4}).lhs, 504896)
        self.assertEqual(evaluate("thm3.1b", {"n": 3, "r": 0}).expected, 3)
        self.assertEqual(evaluate("calkin", {"n": 4, "s": 1}).lhs, 70)

    def test_list_claims(self):
        result = evaluate("thm1.4", {"n": 3, "a": [3], "b": [0]})
        self.assertEqual(result.lhs, 27)
        self.assertEqual(result.params, (("n", 3), ("a", (3,)), ("b", (0,))))
        self.assertEqual(evaluate("thm5.3", {"n": 3, "a": (-3, -3), "b": (0, 0)}).lhs, 117)
        self.assertEqual(evaluate("thm1.4", {"n": 3, "a": (), "b": ()}).lhs, 6)

    def test_q_claims(self):
        result = evaluate("qlucas", {"d": 2, "a": 1, "b": 1, "r": 0, "s": 1})
        self.assertEqual(result.residue, QPoly.one())
        self.assertTrue(evaluate("thm5.1v1", {"n": 2, "a": [0], "b": [0]}).passed)
        self.assertTrue(evaluate("conj5.6", {"p": 2, "e": 1}).passed)

    def test_validation(self):
        with self.assertRaises(BadDomain):
            evaluate("thm1.3b", {})
        with self.assertRaises(BadDomain):
            evaluate("thm1.3b", {"p": 5, "q": 1})
        with self.assertRaises(BadDomain):
            evaluate("thm1.4", {"n": 3, "a": 3, "b": [0]})
        with self.assertRaises(BadDomain):
            evaluate("thm1.3a", {"n": [3]})
        with self.assertRaises(BadDomain):
            evaluate("thm1.3a", {"n": True})

    def test_preconditions(self):
        with self.assertRaises(NotPrime):
            evaluate("thm1.3b", {"p": 6})
        with self.assertRaises(BadDomain):
            evaluate("conj3.1", {"n": 6})
        with self.assertRaises(BadDomain):
            evaluate("qlucas", {"d": 2, "a": 1, "b": 2, "r": 0, "s": 0})


if __name__ == "__main__":
    unittest.main()
