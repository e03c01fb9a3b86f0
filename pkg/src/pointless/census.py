"""Census of genera reachable by pointless curves over prime fields.

For an odd prime p the interesting window is 2 <= g < genus_bound(p); at
and above the bound the trinomial rules cover everything.  Two census
modes answer two different questions.  Faithful mode asks "does a rule's
stated criterion hold", evaluating nothing but the criterion arithmetic.
Verified mode asks "does the rule's construction actually work here": it
builds the polynomial, gcd-checks squarefreeness, recounts points within
the verification budget, and when a rule fires on paper but its
construction fails, the failure is recorded on the row and the next rule
gets its turn.  The comparison of the two modes is the whole point of
discrepancy_report.

The module also contains the brute-force side: a meet-in-the-middle
enumeration of all even-degree models c*m (c the canonical nonsquare, m
monic) of a given genus, in canonical order, verifying every hit with an
independent recount.
"""

from __future__ import annotations

import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .constructions import (
    Certificate,
    _trinomial_attempt,
    doubled_certificate,
    standard_poly,
)
from .curve import count_points, new_curve
from .errors import NonSquarefreeError, SearchBudgetExceededError, VerificationError
from .field import FieldSpec, _is_prime, _kernel, canonical_nonsquare, make_field
from .poly import Poly, poly as poly_from_coeffs

__all__ = [
    "CensusConfig",
    "CensusRow",
    "DEFAULT_RULES",
    "DEFAULT_SEARCH_BUDGET",
    "SMALL_PRIMES",
    "direct_obtainable",
    "discrepancy_report",
    "exhaustive_pointless_search",
    "genus_bound",
    "iter_pointless_curves",
    "missed_genera",
    "table_small_primes",
    "table_summary",
]

log = logging.getLogger(__name__)

DEFAULT_RULES = ("modp", "modp_prime", "relprime")
SMALL_PRIMES = (3, 5, 7, 11, 13, 17, 19, 23)
DEFAULT_SEARCH_BUDGET = 100_000_000


def genus_bound(p: int) -> int:
    """(p+1)(p-2)/2: genera at or above this are always reachable."""
    make_field(p)
    return (p + 1) * (p - 2) // 2


# ---------------------------------------------------------------------------
# rule criteria (arithmetic only; prime field, q = p)
# ---------------------------------------------------------------------------
#
# Each predicate answers "does this rule claim genus g over F_p" and, when
# it does, returns the parameter dict that goes into the certificate.  The
# verified census re-runs the actual construction behind the claim; the
# faithful census stops at the claim.


def _fires_modp(g: int, p: int):
    n = 2 * g + 2
    l = (-n) % p or p
    if l * (p - 1) >= n:
        return None
    return {"l": l, "a": g % p}


def _fires_modp_prime(g: int, p: int):
    n = 2 * g + 2
    if n < p:
        return None
    j = n % (p - 1)
    if j == 0:
        return None
    k = (n - j) // (p - 1)
    d = math.gcd(j, p - 1)
    if pow(k - j - 1, d, p) == pow(k - j, d, p):
        return None
    return {"j": j, "k": k, "d": d}


def _fires_relprime(g: int, p: int):
    p_prime = (p - 1) // 2
    if math.gcd(g + 1, p_prime) != 1 or g < p_prime:
        return None
    return {"l": 1, "p_prime": p_prime}


def _fires_q_minus_a(g: int, p: int):
    a = p - g
    if a < 2 or 2 * g < p - 1:
        return None
    e = 2 * a - 4
    if (pow(2 * a - 2, e, p) - pow(2 * a - 3, e, p)) % p == 0:
        return None
    return {"l": 1, "a": a}


_FIRES = {
    "modp": _fires_modp,
    "modp_prime": _fires_modp_prime,
    "relprime": _fires_relprime,
    "q_minus_a": _fires_q_minus_a,
}


def _rule_l(rule: str, params: dict) -> int:
    return params["l"] if rule == "modp" else 1


@dataclass(frozen=True)
class CensusConfig:
    """How a census run decides membership.

    mode: "faithful" (criteria arithmetic only; reproduces the published
    tables) or "verified" (criteria plus gcd check plus recount within
    verify_budget).  rules are tried in order; doubling closure always
    runs after them.  bound_override replaces genus_bound(p) as the window
    top, mainly for tests.
    """

    mode: str = "faithful"
    rules: tuple = DEFAULT_RULES
    bound_override: int | None = None
    verify_budget: int | None = None

    def __post_init__(self):
        if self.mode not in ("faithful", "verified"):
            raise ValueError(f"mode must be 'faithful' or 'verified', got {self.mode!r}")
        object.__setattr__(self, "rules", tuple(self.rules))
        unknown = [r for r in self.rules if r not in _FIRES]
        if unknown:
            raise ValueError(f"unknown rules: {unknown}; known: {sorted(_FIRES)}")


@dataclass
class CensusRow:
    """One prime's outcome: which genera in the window have no construction."""

    p: int
    missed: tuple
    count: int
    largest: int
    certificates: dict = dataclass_field(default_factory=dict)
    discrepancies: list = dataclass_field(default_factory=list)


def _faithful_certificate(rule: str, params: dict, g: int, field: FieldSpec) -> Certificate:
    f = standard_poly(g, field, _rule_l(rule, params))
    try:
        curve = new_curve(field, f * canonical_nonsquare(field))
    except NonSquarefreeError:
        # The criterion's claim is recorded even where the construction
        # does not exist; verified mode is where such claims go to die.
        curve = None
    return Certificate(
        method=rule,
        params=params,
        construction_poly=f,
        curve=curve,
        count=None,
        verified={"squarefree": False, "count": False},
    )


def direct_obtainable(g: int, p: int, config: CensusConfig | None = None):
    """First rule (in config order) that lands genus g over F_p, as a
    Certificate; None when no rule does.  Doubling is not consulted here;
    it belongs to the census closure."""
    config = config or CensusConfig()
    if g < 2:
        raise ValueError(f"genus must be at least 2, got {g}")
    field = make_field(p)
    cert, _ = _attempt_rules(g, field, config)
    return cert


def _attempt_rules(g: int, field: FieldSpec, config: CensusConfig):
    """Run the rule cascade for one genus.

    Returns (certificate_or_None, failures), failures being one dict per
    rule that fired but whose construction was rejected (verified mode
    only; faithful mode never rejects).
    """
    failures = []
    p = field.p
    for rule in config.rules:
        params = _FIRES[rule](g, p)
        if params is None:
            continue
        if config.mode == "faithful":
            return _faithful_certificate(rule, params, g, field), failures
        cert, witness = _trinomial_attempt(
            g, field, _rule_l(rule, params), rule, params, config.verify_budget
        )
        if cert is not None:
            return cert, failures
        f = standard_poly(g, field, _rule_l(rule, params))
        log.warning(
            "rule %s fired for g=%d over %s but %s has repeated part %s",
            rule, g, field, f, witness,
        )
        failures.append(
            {
                "p": p,
                "g": g,
                "rule": rule,
                "params": params,
                "construction": str(f),
                "witness": str(witness),
            }
        )
    return None, failures


def missed_genera(p: int, config: CensusConfig | None = None) -> CensusRow:
    """Sweep the window [2, genus_bound(p)) and report the unreachable genera.

    Rules run in config order per genus; afterwards one ascending doubling
    pass fills in every 2g+1 whose g is already present (ascending order
    catches chains of doublings).  In verified mode the row keeps a
    certificate per obtained genus and a record per fired-but-failed rule.
    """
    config = config or CensusConfig()
    field = make_field(p)
    bound = config.bound_override if config.bound_override is not None else genus_bound(p)
    verified = config.mode == "verified"
    obtained = {}
    discrepancies = []
    for g in range(2, bound):
        if verified:
            cert, failures = _attempt_rules(g, field, config)
            discrepancies.extend(failures)
            if cert is not None:
                obtained[g] = cert
        elif any(_FIRES[rule](g, p) is not None for rule in config.rules):
            # Faithful rows never carry certificates, so membership is all
            # that needs computing here; direct_obtainable materializes one
            # on demand.
            obtained[g] = True
    for g in range(2, bound):
        if g in obtained or g % 2 == 0:
            continue
        half = (g - 1) // 2
        if half < 2 or half not in obtained:
            continue
        if not verified:
            obtained[g] = True
            continue
        obtained[g] = doubled_certificate(obtained[half], config.verify_budget)
    missed = tuple(g for g in range(2, bound) if g not in obtained)
    return CensusRow(
        p=p,
        missed=missed,
        count=len(missed),
        largest=missed[-1] if missed else 0,
        certificates=obtained if verified else {},
        discrepancies=discrepancies,
    )


def table_small_primes(config: CensusConfig | None = None):
    """Census rows for the eight primes from 3 through 23."""
    return tuple(missed_genera(p, config) for p in SMALL_PRIMES)


def _census_worker(args):
    p, config = args
    return missed_genera(p, config)


def table_summary(
    max_p: int,
    config: CensusConfig | None = None,
    min_p: int = 3,
    threads: int | None = 1,
):
    """Census rows for every odd prime in [min_p, max_p], ascending.

    threads > 1 fans primes out to worker processes; the row order is
    deterministic either way.
    """
    config = config or CensusConfig()
    primes = [p for p in range(max(3, min_p), max_p + 1) if p % 2 and _is_prime(p)]
    if threads is None or threads < 1:
        threads = os.cpu_count() or 1
    if threads == 1 or len(primes) <= 1:
        return [missed_genera(p, config) for p in primes]
    with ProcessPoolExecutor(max_workers=min(threads, len(primes))) as pool:
        return list(pool.map(_census_worker, [(p, config) for p in primes]))


def discrepancy_report(p_range, configs=None):
    """Genera a faithful census grants and a verified one refuses.

    p_range is any iterable of odd primes.  configs, when given, is the
    (faithful, verified) pair to compare; defaults compare the standard
    rule set against itself.  Each finding carries the failing polynomial
    and its gcd witness; a genus lost only because its doubling parent was
    lost is reported with rule "double".
    """
    if configs is None:
        faithful = CensusConfig(mode="faithful")
        verified = CensusConfig(mode="verified")
    else:
        faithful, verified = configs
        if faithful.mode != "faithful" or verified.mode != "verified":
            raise ValueError("configs must be a (faithful, verified) pair")
    findings = []
    for p in p_range:
        row_f = missed_genera(p, faithful)
        row_v = missed_genera(p, verified)
        lost = set(row_v.missed) - set(row_f.missed)
        gained = set(row_f.missed) - set(row_v.missed)
        if gained:
            raise VerificationError(
                f"verified census obtained genera {sorted(gained)} over F_{p} "
                "that the faithful census missed; the modes are inconsistent"
            )
        recorded = {}
        for item in row_v.discrepancies:
            recorded.setdefault(item["g"], item)
        for g in sorted(lost):
            if g in recorded:
                findings.append(recorded[g])
            else:
                findings.append(
                    {
                        "p": p,
                        "g": g,
                        "rule": "double",
                        "params": {},
                        "construction": "",
                        "witness": f"doubling parent genus {(g - 1) // 2} unobtained",
                    }
                )
    return findings


# ---------------------------------------------------------------------------
# exhaustive enumeration
# ---------------------------------------------------------------------------
#
# Every pointless model has even degree (odd degree leaves one branch at
# infinity) and a nonsquare leading coefficient, and rescaling y normalizes
# the leading coefficient to THE canonical nonsquare c.  So genus g is
# covered exactly by f = c*m with m monic of degree 2g+2, ranked by the key
# vector (coefficient of x^0 most significant).  The scan splits each
# candidate as prefix (low exponents) + suffix (high exponents), prepares
# all suffix value-columns once, and narrows survivors one field point at a
# time; chi = -1 at every x simultaneously rules out affine points (squares)
# and ramification (zeros).  Hits are then gcd-checked and recounted through
# the ordinary counting route, which shares none of this code.


def _budgeted_degree(field: FieldSpec, g: int, budget: int | None):
    if g < 2:
        raise ValueError(f"genus must be at least 2, got {g}")
    limit = DEFAULT_SEARCH_BUDGET if budget is None else budget
    d = 2 * g + 2
    total = field.q ** d
    if total > limit:
        raise SearchBudgetExceededError(
            f"{total} degree-{d} models over {field} exceed the budget of {limit}"
        )
    return d


def _scan_block(field: FieldSpec, g: int, start: int, stop: int):
    """Yield pointless curves with prefix rank in [start, stop), ascending."""
    q = field.q
    d = 2 * g + 2
    t = d // 2
    s = d - t
    kern = _kernel(field)
    tables = kern.np_tables()
    if tables is None:
        raise SearchBudgetExceededError(
            f"{field} is too large for the enumeration tables"
        )
    add, mul, chi = tables
    c_key = canonical_nonsquare(field).key

    xs = np.arange(q, dtype=np.int64)
    pows = np.empty((d + 1, q), dtype=np.int64)
    pows[0] = field.one().key
    for e in range(1, d + 1):
        pows[e] = mul[pows[e - 1], xs]

    n_rows = q**s
    rows_idx = np.arange(n_rows, dtype=np.int64)
    suf = np.broadcast_to(pows[d], (n_rows, q)).copy()
    for j in range(s):
        digit = (rows_idx // q ** (s - 1 - j)) % q
        suf = add[suf, mul[digit[:, None], pows[t + j][None, :]]]
    suf = mul[c_key, suf]

    for rank in range(start, stop):
        pdigits = [(rank // q ** (t - 1 - i)) % q for i in range(t)]
        # f(0) = c * (coefficient of x^0): a prefix-only test.
        if chi[mul[c_key, pdigits[0]]] != -1:
            continue
        acc = np.zeros(q, dtype=np.int64)
        for i in reversed(range(t)):
            acc = add[mul[acc, xs], pdigits[i]]
        pre = mul[c_key, acc]
        survivors = None
        for x in range(1, q):
            col = suf[:, x] if survivors is None else suf[survivors, x]
            mask = chi[add[col, pre[x]]] == -1
            survivors = np.flatnonzero(mask) if survivors is None else survivors[mask]
            if survivors.size == 0:
                break
        if survivors is None or survivors.size == 0:
            continue
        for row in survivors:
            m = _monic_from_ranks(field, pdigits, int(row), d)
            f = m * canonical_nonsquare(field)
            try:
                curve = new_curve(field, f)
            except NonSquarefreeError:
                continue
            recount = count_points(curve)
            if recount.total != 0:
                raise VerificationError(
                    f"survivor {curve} recounts to {recount.total} points; "
                    "enumeration and counting routes disagree"
                )
            yield curve


def _monic_from_ranks(field: FieldSpec, pdigits, row: int, d: int) -> Poly:
    q = field.q
    s = d - len(pdigits)
    keys = list(pdigits) + [(row // q ** (s - 1 - j)) % q for j in range(s)]
    coeffs = [field.from_key(k) for k in keys] + [field.one()]
    return poly_from_coeffs(field, coeffs)


def iter_pointless_curves(field: FieldSpec, g: int, budget: int | None = None):
    """Every pointless curve of genus g over the field, canonically ordered.

    Raises SearchBudgetExceededError up front when q**(2g+2) exceeds the
    budget (default 100_000_000).
    """
    d = _budgeted_degree(field, g, budget)
    yield from _scan_block(field, g, 0, field.q ** (d // 2))


def _search_chunk(args):
    p, r, g, start, stop = args
    field = make_field(p, r)
    for curve in _scan_block(field, g, start, stop):
        return tuple(curve.f.coeffs)
    return None


def exhaustive_pointless_search(
    field: FieldSpec,
    g: int,
    budget: int | None = None,
    threads: int = 1,
):
    """First pointless curve of genus g in canonical order, or None.

    None is a proof of nonexistence for the genus over this field (up to
    the y-rescaling normalization), not a budget effect: budget overruns
    raise instead.  threads > 1 splits the prefix space across processes;
    the returned curve is the canonical first either way.
    """
    d = _budgeted_degree(field, g, budget)
    if threads is None or threads < 1:
        threads = os.cpu_count() or 1
    prefixes = field.q ** (d // 2)
    if threads == 1:
        for curve in _scan_block(field, g, 0, prefixes):
            return curve
        return None
    chunk = max(1, -(-prefixes // (threads * 8)))
    jobs = [
        (field.p, field.r, g, lo, min(lo + chunk, prefixes))
        for lo in range(0, prefixes, chunk)
    ]
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(_search_chunk, job) for job in jobs]
        try:
            for fut in futures:
                hit = fut.result()
                if hit is not None:
                    coeffs = [field.from_key(k) for k in hit]
                    return new_curve(field, poly_from_coeffs(field, coeffs))
        finally:
            for fut in futures:
                fut.cancel()
    return None
