import unittest

from src.core.errors import BadDomain, UnknownClaim
from src.core.conjectures import (
    CONJECTURES,
    check_conj31,
    check_conj5_cases,
    check_conj5_gen,
    check_conj5_pow2,
    check_conjecture,
)


class TestConjectures(unittest.TestCase):
    def test_conj31(self):
        result = check_conj31(4)
        # 1 - 27*3 + 125*13 - 343*63
        self.assertEqual(result.lhs, -20064)
        self.assertEqual(result.modulus, 64)
        self.assertEqual(result.residue, 32)
        self.assertTrue(result.passed)
        for n in (2, 4, 8, 16, 32, 64):
            self.assertTrue(check_conj31(n).passed, n)
        with self.assertRaises(BadDomain):
            check_conj31(3)

    def test_conj5_gen(self):
        # sum (-1)^k (2k+1) C(2, k) = 1 - 6 + 5
        result = check_conj5_gen(3, 0, 1, [3], [0])
        self.assertEqual(result.lhs, 0)
        self.assertTrue(result.passed)
        self.assertEqual(result.params, (("n", 3), ("r", 0), ("eps", 1), ("a", (3,)), ("b", (0,))))
        with self.assertRaises(BadDomain):
            check_conj5_gen(3, 0, 0, [3], [0])
        with self.assertRaises(BadDomain):
            check_conj5_gen(3, -1, 1, [3], [0])

    def test_conj5_gen_structured(self):
        for n in range(1, 21):
            for r in range(0, 3):
                for eps in (1, -1):
                    for a in ([n], [-n], [2 * n, -n]):
                        result = check_conj5_gen(n, r, eps, a, [0] * len(a))
                        self.assertTrue(result.passed, (n, r, eps, a))

    def test_conj5_pow2(self):
        result = check_conj5_pow2("a", 4, 1)
        # sum C(3, k)^2 = 20 ≡ 4 (mod 8)
        self.assertEqual(result.lhs, 20)
        self.assertEqual(result.residue, 4)
        self.assertTrue(result.passed)
        # not a power of 2: 6 ≡ 0 (mod 6)
        result = check_conj5_pow2("a", 3, 1)
        self.assertEqual(result.expected, 0)
        self.assertTrue(result.passed)
        # 1 + 9 ≡ 2 (mod 4)
        self.assertEqual(check_conj5_pow2("b", 2, 1).lhs, 10)
        for which in ("a", "b"):
            for n in range(1, 41):
                for r in range(1, 4):
                    self.assertTrue(check_conj5_pow2(which, n, r).passed, (which, n, r))
        with self.assertRaises(BadDomain):
            check_conj5_pow2("a", 4, 0)
        with self.assertRaises(BadDomain):
            check_conj5_pow2("c", 4, 1)

    def test_conj5_cases(self):
        result = check_conj5_cases(2, 1, 1)
        # 1 - 3; n even, s+t even
        self.assertEqual(result.lhs, -2)
        self.assertEqual(result.residue, 2)
        self.assertTrue(result.passed)
        for n in range(1, 31):
            for s in range(1, 4):
                for t in range(1, 4):
                    self.assertTrue(check_conj5_cases(n, s, t).passed, (n, s, t))
        with self.assertRaises(BadDomain):
            check_conj5_cases(2, 0, 1)


class TestDispatch(unittest.TestCase):
    def test_registered_ids(self):
        self.assertEqual(set(CONJECTURES),
                         {"conj3.1", "conj5.gen", "conj5.pow2a", "conj5.pow2b", "conj5.cases", "conj5.6"})

    def test_check_conjecture(self):
        self.assertEqual(check_conjecture("conj3.1", {"n": 4}).residue, 32)
        self.assertTrue(check_conjecture("conj5.6", {"p": 2, "e": 1}).passed)
        self.assertEqual(check_conjecture("conj5.pow2b", {"n": 2, "r": 1}).claim_id, "conj5.pow2b")

    def test_errors(self):
        with self.assertRaises(UnknownClaim):
            check_conjecture("conj9.9", {"n": 4})
        with self.assertRaises(BadDomain):
            check_conjecture("conj3.1", {"m": 4})
        with self.assertRaises(BadDomain):
            check_conjecture("conj3.1", {"n": 6})


if __name__ == "__main__":
    unittest.main()
