import pathlib

import pytest

from pointless import (
    CensusConfig,
    SearchBudgetExceededError,
    VerificationError,
    count_points,
    direct_obtainable,
    discrepancy_report,
    exhaustive_pointless_search,
    genus,
    genus_bound,
    is_pointless,
    iter_pointless_curves,
    make_field,
    missed_genera,
    poly,
    standard_poly,
    table_small_primes,
    table_summary,
)
from pointless.census import SMALL_PRIMES
from pointless.serialize import missed_csv_lines, summary_csv_lines

FIXTURES = pathlib.Path(__file__).parent / "fixtures"

F3 = make_field(3)
F5 = make_field(5)


def _fixture_lines(name):
    return (FIXTURES / name).read_text().splitlines()


def test_genus_bound_values():
    assert genus_bound(3) == 2
    assert genus_bound(5) == 9
    assert genus_bound(7) == 20
    assert genus_bound(23) == 252


def test_census_config_validation():
    with pytest.raises(ValueError):
        CensusConfig(mode="fast")
    with pytest.raises(ValueError):
        CensusConfig(rules=("modp", "nosuchrule"))


def test_small_prime_rows_match_fixture():
    rows = table_small_primes(CensusConfig())
    assert missed_csv_lines(rows) == _fixture_lines("figure1.csv")


def test_row_p5():
    row = missed_genera(5, CensusConfig())
    assert row.missed == (3, 7)
    assert row.count == 2
    assert row.largest == 7


def test_row_p3_has_empty_window():
    row = missed_genera(3, CensusConfig())
    assert row.missed == ()
    assert (row.count, row.largest) == (0, 0)


def test_restricted_rule_cascade():
    # with only the mod-p rule, GF(5) keeps just g = 6 and g = 8
    row = missed_genera(5, CensusConfig(rules=("modp",)))
    assert row.missed == (2, 3, 4, 5, 7)


def test_direct_obtainable():
    assert direct_obtainable(8, 5) is not None
    assert direct_obtainable(3, 5) is None
    assert direct_obtainable(7, 5) is None


def test_summary_rows_match_fixture_prefix():
    rows = table_summary(37, CensusConfig(), min_p=29)
    lines = summary_csv_lines(rows)
    assert lines[0] == "p,count,largest"
    assert lines[1:] == _fixture_lines("figure2.csv")[1:4]


def test_table_summary_is_thread_count_invariant():
    serial = table_summary(43, CensusConfig(), min_p=29)
    parallel = table_summary(43, CensusConfig(), min_p=29, threads=3)
    assert [(r.p, r.missed) for r in serial] == [(r.p, r.missed) for r in parallel]


def test_verified_mode_catches_spurious_relprime_certificates():
    row = missed_genera(7, CensusConfig(mode="verified"))
    assert row.missed == (2, 4, 5, 8, 11, 14, 17)
    assert [(d["g"], d["rule"], str(d["witness"])) for d in row.discrepancies] == [
        (4, "relprime", "x^2 + 2")
    ]


def test_verified_mode_doubling_rescues_genus_51_over_19():
    """g=51's own trinomial is singular, but 51 = 2*25 + 1 and 25 holds up."""
    faithful = missed_genera(19, CensusConfig())
    verified = missed_genera(19, CensusConfig(mode="verified"))
    assert sorted(set(verified.missed) - set(faithful.missed)) == [13]
    failed = {(d["g"], d["rule"]) for d in verified.discrepancies}
    assert failed == {(13, "relprime"), (51, "relprime")}
    assert verified.certificates[51].method == "double"
    assert count_points(verified.certificates[51].curve).total == 0


def test_verified_mode_flags_whole_pth_power_constructions():
    # with the window forced past the tiny GF(3) bound, l lands on p twice
    # and both trinomials come out as perfect cubes
    row = missed_genera(3, CensusConfig(mode="verified", bound_override=10))
    assert row.missed == ()
    assert [(d["g"], d["rule"], d["params"]["l"]) for d in row.discrepancies] == [
        (5, "modp", 3),
        (8, "modp", 3),
    ]


def test_discrepancy_report_small_primes():
    findings = discrepancy_report(SMALL_PRIMES)
    assert [(f["p"], f["g"], f["rule"]) for f in findings] == [
        (7, 4, "relprime"),
        (11, 7, "relprime"),
        (13, 28, "relprime"),
        (19, 13, "relprime"),
        (23, 16, "relprime"),
        (23, 62, "relprime"),
        (23, 108, "relprime"),
    ]
    assert [f["witness"] for f in findings] == [
        "x^2 + 2",
        "x^2 + 3",
        "x^2 + 11",
        "x^2 + 5",
        "x^2 + 6",
        "x^2 + 16",
        "x^2 + 2",
    ]
    # rebuild each flagged trinomial and confirm the witness divides it
    witness_constants = [2, 3, 11, 5, 6, 16, 2]
    for f, c in zip(findings, witness_constants):
        field = make_field(f["p"])
        trinomial = standard_poly(f["g"], field, 1)
        assert str(trinomial) == f["construction"]
        assert (trinomial % poly(field, [c, 0, 1])).is_zero()


def test_discrepancy_report_rejects_misordered_configs():
    with pytest.raises(ValueError):
        discrepancy_report((7,), configs=(CensusConfig(mode="verified"),) * 2)


def test_q_minus_a_rule_changes_nothing_for_small_primes():
    # every candidate genus it could add is either already obtained or
    # blocked by the divisibility test; that is why it defaults to off
    with_rule = CensusConfig(rules=("modp", "modp_prime", "relprime", "q_minus_a"))
    for p in SMALL_PRIMES:
        assert missed_genera(p, with_rule).missed == missed_genera(p, CensusConfig()).missed


def test_exhaustive_first_hit_is_canonical():
    found = exhaustive_pointless_search(F3, 2)
    assert found.f == poly(F3, [2, 0, 0, 0, 1, 0, 2])
    assert is_pointless(found)


def test_exhaustive_thread_count_does_not_change_the_answer():
    assert exhaustive_pointless_search(F3, 2, threads=2).f == exhaustive_pointless_search(F3, 2).f
    assert exhaustive_pointless_search(F5, 2, threads=2).f == exhaustive_pointless_search(F5, 2).f


def test_exhaustive_budget_guard():
    with pytest.raises(SearchBudgetExceededError):
        exhaustive_pointless_search(F5, 2, budget=1000)


def test_iter_pointless_curves_streams_in_order():
    it = iter_pointless_curves(F3, 2)
    first = next(it)
    second = next(it)
    assert first.f == poly(F3, [2, 0, 0, 0, 1, 0, 2])
    assert first.f != second.f
    assert is_pointless(second) and genus(second) == 2


def test_exhaustive_agrees_with_census_rescue_over_11():
    # the cascade misses g=2 over GF(11) but a model still exists, which
    # is the canonical demonstration that the rules are one-directional
    row = missed_genera(11, CensusConfig())
    assert 2 in row.missed
    found = exhaustive_pointless_search(make_field(11), 2)
    assert found is not None
    assert count_points(found).total == 0
