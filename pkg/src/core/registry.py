"""
[src/core/registry.py]
----------------------
The closed catalog of claims the engine can check.

Responsibilities:
1.  **ClaimSpec**: id, kind (theorem / lemma / conjecture), the ordered typed
    parameter signature and the evaluator that returns one `CheckResult`.
2.  **Validation**: parameter assignments are checked against the signature
    before anything is computed.
3.  **Default scans**: each claim carries its desk-scale scan descriptors
    (`scan --all`), as plain range text so the registry does not depend on
    the harness.

Evaluators are looked up by id inside worker processes, so nothing in this
module needs to be pickled.
"""

from collections import OrderedDict
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Mapping, Optional, Tuple

from src.core import conjectures, identities, newton, qcongruences
from src.core.errors import BadDomain, UnknownClaim
from src.core.results import CheckResult, normalize_params


class ClaimKind(str, Enum):
    THEOREM = "theorem"
    LEMMA = "lemma"
    CONJECTURE = "conjecture"


class ParamType(str, Enum):
    INT = "int"
    INT_LIST = "intlist"


@dataclass(frozen=True)
class ParamSpec:
    name: str
    type: ParamType = ParamType.INT
    nonnegative: bool = False

    @property
    def is_list(self) -> bool:
        return self.type is ParamType.INT_LIST


@dataclass(frozen=True)
class ScanDefaults:
    """
    One built-in scan of a claim.

    Attributes:
        ranges (dict): Range text per integer parameter, list literal per
            list parameter when the scan is not sampled.
        samples (int | None): Number of seeded random tuples; None enumerates.
        list_len (str | None): Length interval for sampled list parameters.
        entry_ranges (dict): Entry interval per sampled list parameter.
    """
    ranges: Dict[str, str]
    samples: Optional[int] = None
    list_len: Optional[str] = None
    entry_ranges: Dict[str, str] = field(default_factory=dict)


@dataclass(frozen=True)
class ClaimSpec:
    claim_id: str
    kind: ClaimKind
    params: Tuple[ParamSpec, ...]
    evaluator: Callable[..., CheckResult]
    summary: str
    defaults: Tuple[ScanDefaults, ...] = ()

    @property
    def param_names(self) -> Tuple[str, ...]:
        return tuple(p.name for p in self.params)

    def param(self, name: str) -> ParamSpec:
        for spec in self.params:
            if spec.name == name:
                return spec
        raise BadDomain(f"{self.claim_id} has no parameter {name!r}")

    def validate(self, assignment: Mapping[str, Any]) -> None:
        """
        Names must match the signature exactly; list parameters take
        sequences and integer parameters take ints.
        """
        expected, given = set(self.param_names), set(assignment)
        if given != expected:
            missing = sorted(expected - given)
            extra = sorted(given - expected)
            parts = []
            if missing:
                parts.append(f"missing {', '.join(missing)}")
            if extra:
                parts.append(f"unexpected {', '.join(extra)}")
            raise BadDomain(f"{self.claim_id} takes ({', '.join(self.param_names)}): {'; '.join(parts)}")
        for spec in self.params:
            value = assignment[spec.name]
            if spec.is_list and not isinstance(value, (list, tuple)):
                raise BadDomain(f"{self.claim_id}: parameter {spec.name} must be a list")
            if not spec.is_list and (isinstance(value, (list, tuple)) or isinstance(value, bool)):
                raise BadDomain(f"{self.claim_id}: parameter {spec.name} must be an integer")

    def evaluate(self, assignment: Mapping[str, Any]) -> CheckResult:
        self.validate(assignment)
        kwargs = dict(normalize_params(assignment))
        return self.evaluator(**kwargs)


# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------

_INT = ParamType.INT
_LIST = ParamType.INT_LIST

THEOREM, LEMMA, CONJECTURE = ClaimKind.THEOREM, ClaimKind.LEMMA, ClaimKind.CONJECTURE


def _p(*names: str) -> Tuple[ParamSpec, ...]:
    return tuple(ParamSpec(n) for n in names)


def _lists(*names: str, nonnegative_a: bool = True) -> Tuple[ParamSpec, ...]:
    return tuple(ParamSpec(n, _LIST, nonnegative=(n != "a" or nonnegative_a)) for n in names)


def _scan(samples: Optional[int] = None, list_len: Optional[str] = None,
          entries: Optional[Dict[str, str]] = None, **ranges: str) -> ScanDefaults:
    return ScanDefaults(ranges=ranges, samples=samples, list_len=list_len, entry_ranges=entries or {})


PRIMES = "primes:5..97"

_CLAIMS: "OrderedDict[str, ClaimSpec]" = OrderedDict()


def _register(claim_id: str, kind: ClaimKind, params: Tuple[ParamSpec, ...],
              evaluator: Callable[..., CheckResult], summary: str, *defaults: ScanDefaults) -> None:
    _CLAIMS[claim_id] = ClaimSpec(claim_id, kind, params, evaluator, summary, tuple(defaults))


# -- main theorems ----------------------------------------------------------

_register("thm1.1a", THEOREM, _p("n", "r"), lambda n, r: identities.check_thm_apery(n, r)[0],
          "sum (2k+1)k^r(k+1)^r A_k ≡ 0 (mod n)", _scan(n="1..150", r="0..4"))
_register("thm1.1b", THEOREM, _p("n", "r"), lambda n, r: identities.check_thm_apery(n, r)[1],
          "sum (2k+1)^(2r+1) A_k ≡ 0 (mod n)", _scan(n="1..150", r="0..4"))
_register("thm1.2a", THEOREM, _p("n", "r", "eps"), lambda n, r, eps: identities.check_thm_delannoy(n, r, eps)[0],
          "sum eps^k (2k+1)k^r(k+1)^r D_k ≡ 0 (mod n)", _scan(n="1..150", r="0..4", eps="{-1,1}"))
_register("thm1.2b", THEOREM, _p("n", "r", "eps"), lambda n, r, eps: identities.check_thm_delannoy(n, r, eps)[1],
          "sum eps^k (2k+1)^(2r+1) D_k ≡ 0 (mod n)", _scan(n="1..150", r="0..4", eps="{-1,1}"))
_register("thm1.3a", THEOREM, _p("n"), identities.check_akcubic,
          "sum (2k+1)^3 A_k ≡ 0 (mod n^3)", _scan(n="1..150"))
_register("thm1.3b", THEOREM, _p("p"), identities.check_akcubic_prime,
          "sum_{k<p} (2k+1)^3 A_k ≡ p^3 (mod 2p^6)", _scan(p=PRIMES))
_register("thm1.4", THEOREM, _p("n") + _lists("a", "b"), identities.check_gcd_binom,
          "sum C(n-1,k)^2 prod C(a_i+k,b_i+k) ≡ 0 (mod gcd(a,b,n))",
          _scan(samples=500, list_len="0..3", entries={"a": "0..30", "b": "0..30"}, n="1..60"),
          _scan(n="1..30", a="", b=""))
_register("thm3.1a", THEOREM, _p("n", "r"), lambda n, r: identities.check_thm_delref(n, r)[0],
          "sum (2k+1)^(2r+1) D_k ≡ n (mod 2n)", _scan(n="1..200", r="0..4"))
_register("thm3.1b", THEOREM, _p("n", "r"), lambda n, r: identities.check_thm_delref(n, r)[1],
          "sum (-1)^k (2k+1)^(2r+1) D_k ≡ n or 0 (mod 2n)", _scan(n="1..200", r="0..4"))
_register("thm5.3", THEOREM, _p("n") + _lists("a", "b", nonnegative_a=False), identities.check_gen_bino,
          "sum (-1)^(mk) prod C(a_i-1,b_i+k) ≡ 0 (mod gcd(a,b,n))",
          _scan(samples=500, list_len="1..3", entries={"a": "-30..30", "b": "0..30"}, n="1..60"))

# -- corollaries ------------------------------------------------------------

_register("cor5.1a", THEOREM, _p("n", "r", "s"), lambda n, r, s: identities.check_corollary("cor51a", n, r, s),
          "sum C(n+k,k)^r C(n-1,k)^(2s) ≡ 0 (mod n)", _scan(n="1..60", r="0..3", s="0..3"))
_register("cor5.1b", THEOREM, _p("n", "r", "s"), lambda n, r, s: identities.check_corollary("cor51b", n, r, s),
          "sum (-1)^k C(n+k,k)^r C(n-1,k)^(2s+1) ≡ 0 (mod n)", _scan(n="1..60", r="0..3", s="0..3"))
_register("cor5.2", THEOREM, _p("n", "r", "s"), lambda n, r, s: identities.check_corollary("cor52", n, r, s),
          "sum (-1)^((r+s)k) C(n-1,k)^r C(2n-1,k)^s ≡ 0 (mod n)", _scan(n="1..60", r="0..3", s="0..3"))
_register("calkin", THEOREM, _p("n", "s"), lambda n, s: identities.check_corollary("calkin", n, 0, s),
          "sum_{k<=n} C(n,k)^(2s) ≡ 0 (mod n+1)", _scan(n="0..60", s="0..3"))

# -- lemmas and exact identities ---------------------------------------------

_register("lem2.1", LEMMA, _p("k", "r", "m"), newton.check_coeff_point,
          "m^r(m+1)^r C(m+k,2k) = sum_j a_j(k,r) C(m+k+j,2k+2j)(2k+1)_2j",
          _scan(k="0..8", r="0..6", m="0..40"))
_register("eq2.3", LEMMA, _p("k", "r"), newton.check_odd_power_expansion,
          "(2k+1)^(2r) = sum_i C(r,i) 4^i k^i (k+1)^i", _scan(k="0..40", r="0..6"))
_register("lem2.2", LEMMA, _p("n", "k", "a"), lambda n, k, a: identities.check_summation_lemma("gsun", n, k, a),
          "sum_{m=k}^{n-1} (2m+1)C(m+k,2k)C(m+k+a,2k+2a) closed form",
          _scan(n="1..40", k="0..n-1", a="0..10"))
_register("lem2.3", LEMMA, _p("n", "k", "a"), identities.check_lemma23,
          "C_a(k,n) ≡ 0 (mod n), quotient natural", _scan(n="1..30", k="0..n", a="0..6"))
_register("lem2.3f", LEMMA, _p("n", "k", "a"), identities.check_lemma23_factorization,
          "the quotient as an explicit binomial product", _scan(n="1..30", k="0..n-1", a="0..6"))
_register("lem3.1+", LEMMA, _p("n", "k"), lambda n, k: identities.check_summation_lemma("sun_plus", n, k),
          "sum (2m+1)C(m+k,2k) = (n-k)n/(k+1) C(n+k,2k)", _scan(n="1..40", k="0..n-1"))
_register("lem3.1-", LEMMA, _p("n", "k"), lambda n, k: identities.check_summation_lemma("sun_minus", n, k),
          "sum (-1)^m (2m+1)C(m+k,2k) = (-1)^(n-1)(n-k) C(n+k,2k)", _scan(n="1..40", k="0..n-1"))
_register("lem4.1", LEMMA, _p("n", "k"), lambda n, k: identities.check_summation_lemma("cubic", n, k),
          "sum (2m+1)^3 C(m+k,2k)^2 closed form", _scan(n="1..40", k="0..n-1"))
_register("lem4.2a", LEMMA, _p("p"), lambda p: identities.check_lemma42("a", p),
          "sum C(p+k,k)^2 C(p-1,k)^2 ≡ p (mod 2p^4)", _scan(p=PRIMES))
_register("lem4.2b", LEMMA, _p("p"), lambda p: identities.check_lemma42("b", p),
          "sum C(p+k,k+1)C(p+k,k)C(p-1,k)^2 ≡ 1 (mod 2p^3)", _scan(p=PRIMES))
_register("wolst1", THEOREM, _p("p"), lambda p: identities.check_wolstenholme(1, p),
          "numerator of H_(p-1) ≡ 0 (mod p^2)", _scan(p=PRIMES))
_register("wolst2", THEOREM, _p("p"), lambda p: identities.check_wolstenholme(2, p),
          "numerator of H2_(p-1) ≡ 0 (mod p)", _scan(p=PRIMES))
_register("eq-particular1", LEMMA, _p("n"), identities.check_particular,
          "sum C(n+k,k)^2 C(n-1,k)^2 ≡ 0 (mod n)", _scan(n="1..300"))
_register("eq-sum-cubic", LEMMA, _p("n"), identities.check_sum_cubic,
          "sum (2m+1)^3 A_m as 2n^3 S1 - n^2 S2", _scan(n="1..60"))
_register("eq-delsum+", LEMMA, _p("n"), lambda n: identities.check_delannoy_linear_sum(1, n),
          "sum (2k+1) D_k = n sum C(n+k,n) C(n,k+1)", _scan(n="1..100"))
_register("eq-delsum-", LEMMA, _p("n"), lambda n: identities.check_delannoy_linear_sum(-1, n),
          "sum (-1)^k (2k+1) D_k = (-1)^(n-1) n sum C(n+k,n) C(n-1,k)", _scan(n="1..100"))
_register("alt-unit", LEMMA, _p("n"), lambda n: identities.check_alternating_identity("unit", n),
          "sum (-1)^k C(n+k,n) C(n,k+1) = (-1)^(n-1)", _scan(n="1..60"))
_register("alt-n", LEMMA, _p("n"), lambda n: identities.check_alternating_identity("times_n", n),
          "sum (-1)^k C(n+k,n) C(n-1,k) = (-1)^(n-1) n", _scan(n="1..60"))

# -- q-analogues ------------------------------------------------------------

_register("qchu", LEMMA, _p("m", "n", "h"), qcongruences.check_qchu,
          "q-Chu-Vandermonde", _scan(m="0..12", n="0..12", h="0..12"))
_register("qlucas", LEMMA, _p("d", "a", "b", "r", "s"), qcongruences.check_qlucas,
          "[ad+b rd+s] ≡ C(a,r)[b s] (mod Phi_d)", _scan(d="2..8", a="0..4", b="0..d-1", r="0..4", s="0..d-1"))
for _variant in qcongruences.THM51_VARIANTS:
    _register(f"thm5.1v{_variant}", THEOREM, _p("n") + _lists("a", "b"),
              lambda n, a, b, _v=_variant: qcongruences.check_thm51(_v, n, a, b),
              f"weighted q-binomial sum, variant {_variant}, ≡ 0 (mod [d]_q)",
              _scan(samples=100, list_len="1..2", entries={"a": "0..24", "b": "0..24"}, n="1..24"))
_register("lem5.5", LEMMA, _p("n"), qcongruences.check_lemma55,
          "sum [n k]^2 q^(k^2-k) = 2[2n-1 n]", _scan(n="1..30"))
_register("lem5.5a", LEMMA, _p("n"), lambda n: qcongruences.check_lemma55_chu(n, 1),
          "sum [n k][n-1 k] q^(k^2) = [2n-1 n]", _scan(n="1..30"))
_register("lem5.5b", LEMMA, _p("n"), lambda n: qcongruences.check_lemma55_chu(n, 2),
          "sum [n k][n-1 k-1] q^(k(k-1)) = [2n-1 n]", _scan(n="1..30"))
_register("thm5.4", THEOREM, _p("n"), qcongruences.check_thm54,
          "sum q^(k^2-k)[n+k k]^2[n-1 k]^2 mod [n]_q", _scan(n="1..24"))
_register("cyclo", LEMMA, _p("d"), qcongruences.check_cyclotomic_factorization,
          "prod_{e|d, e>1} Phi_e = [d]_q", _scan(d="2..60"))
_register("conj5.6@1", THEOREM, _p("p", "e"), qcongruences.check_conj56_at_one,
          "q = 1 case of the prime-power q-congruence", _scan(p="{2,3,5,7}", e="1..3"))

# -- conjectures ------------------------------------------------------------

_register("conj3.1", CONJECTURE, _p("n"), conjectures.check_conj31,
          "sum (-1)^k (2k+1)^3 D_k ≡ 2n^2 (mod n^3), n = 2^a", _scan(n="pow2:2..64"))
_register("conj5.gen", CONJECTURE, _p("n", "r", "eps") + _lists("a", "b", nonnegative_a=False),
          conjectures.check_conj5_gen,
          "sum (-1)^(mk) eps^k (2k+1)k^r(k+1)^r prod C(a_i-1,b_i+k) ≡ 0 (mod gcd)",
          _scan(samples=200, list_len="1..2", entries={"a": "-20..20", "b": "0..10"},
                n="1..40", r="0..2", eps="{-1,1}"))
_register("conj5.pow2a", CONJECTURE, _p("n", "r"), lambda n, r: conjectures.check_conj5_pow2("a", n, r),
          "sum C(n-1,k)^(2r) ≡ n or 0 (mod 2n)", _scan(n="1..64", r="1..3"))
_register("conj5.pow2b", CONJECTURE, _p("n", "r"), lambda n, r: conjectures.check_conj5_pow2("b", n, r),
          "sum C(2n-1,k)^(2r) ≡ n or 0 (mod 2n)", _scan(n="1..64", r="1..3"))
_register("conj5.cases", CONJECTURE, _p("n", "s", "t"), conjectures.check_conj5_cases,
          "sum (-1)^(kt) C(n+k,k)^s C(n-1,k)^t ≡ 0 or n (mod 2n)", _scan(n="1..40", s="1..3", t="1..3"))
_register("conj5.6", CONJECTURE, _p("p", "e"), qcongruences.check_conj56,
          "prime-power q-congruence modulo ((1-q^n)/(1-q^(n/p)))^2",
          _scan(p="2", e="1..5"), _scan(p="3", e="1..3"), _scan(p="5", e="1..2"),
          _scan(p="primes:7..31", e="1"))


# ---------------------------------------------------------------------------
# Lookup
# ---------------------------------------------------------------------------

def get_claim(claim_id: str) -> ClaimSpec:
    """
    Raises:
        UnknownClaim: claim_id is not in the registry.
    """
    spec = _CLAIMS.get(claim_id)
    if spec is None:
        raise UnknownClaim(claim_id)
    return spec


def list_claims(kind: Optional[ClaimKind] = None) -> List[ClaimSpec]:
    """Registered claims in catalog order, optionally filtered by kind."""
    if kind is None:
        return list(_CLAIMS.values())
    kind = ClaimKind(kind)
    return [spec for spec in _CLAIMS.values() if spec.kind is kind]


def evaluate(claim_id: str, assignment: Mapping[str, Any]) -> CheckResult:
    """Validate the assignment against the claim signature and check it."""
    return get_claim(claim_id).evaluate(assignment)
