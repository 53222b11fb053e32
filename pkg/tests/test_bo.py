import pytest

from apartitions.bo import (
    DOUBLE_A2,
    EQUAL,
    GREATER,
    LESS,
    SCOPE_CLOSED_FORM,
    BOOutcome,
    ExceptionRecord,
    InconclusiveError,
    InductionScheme,
    bo_check_pair,
    certify_bo,
    check_hypotheses,
    conjecture_scan,
    default_scheme,
    find_threshold,
    mary_exception_table,
    random_gcd1_sets,
    scan_outcomes,
    scan_region,
    scheme_for,
    splitting_identity_holds,
    verify_base_window,
)
from apartitions.core import BoundError, PartSet, count_table
from apartitions.families import PROPOSITION, THEOREM
from apartitions.injections import HypothesisError


def pairs(records):
    return [(r.w, r.z, r.equality) for r in records]


# -- pair checks ------------------------------------------------------------------


@pytest.mark.parametrize(
    "ps, w, z, relation, lhs, rhs",
    [
        (PartSet.mary(2), 3, 9, EQUAL, 20, 20),
        (PartSet.mary(3), 4, 5, LESS, 4, 5),
        (PartSet.mary(4), 6, 10, EQUAL, None, None),
        (PartSet.all_integers(), 5, 6, GREATER, 7 * 11, 56),
    ],
)
def test_pair_examples(ps, w, z, relation, lhs, rhs):
    o = bo_check_pair(count_table(ps, w + z), w, z)
    assert o.relation == relation
    if lhs is not None:
        assert (o.lhs, o.rhs) == (lhs, rhs)


def test_pair_bound_error():
    with pytest.raises(BoundError):
        bo_check_pair(count_table(PartSet.mary(2), 10), 5, 6)


def test_exception_record_rejects_strict():
    with pytest.raises(ValueError):
        ExceptionRecord(1, 2, 5, 3)
    assert ExceptionRecord.from_outcome(BOOutcome(2, 2, 4, 4)).equality


# -- region scans -------------------------------------------------------------------


def test_scan_mary2_table_region():
    table = count_table(PartSet.mary(2), 20)
    got = scan_region(table, range(2, 19), range(2, 19), True, 20)
    assert pairs(got) == [
        (2, 2, True), (2, 3, True), (3, 3, False), (3, 5, False), (3, 7, False), (3, 9, True)
    ]


def test_scan_mary5_tight_pair():
    table = count_table(PartSet.mary(5), 18)
    got = scan_region(table, range(5, 14), range(5, 14), True, 18)
    assert got and (9, 9, True) in pairs(got)
    assert table[9] == 2 and table[18] == table[15] == 4


def test_scan_consistent_with_pair_checks():
    ps = PartSet.fibonacci()
    table = count_table(ps, 40)
    for o in scan_outcomes(table, range(1, 21), range(1, 21), False, 40):
        assert o == bo_check_pair(table, o.w, o.z)


def test_parallel_scan_matches_serial():
    table = count_table(PartSet.mary(3), 120)
    serial = scan_outcomes(table, range(1, 61), range(1, 61), True, 120, jobs=1)
    parallel = scan_outcomes(table, range(1, 61), range(1, 61), True, 120, jobs=2)
    assert serial == parallel


def test_scan_bound_error():
    with pytest.raises(BoundError):
        scan_region(count_table(PartSet.mary(2), 10), range(1, 8), range(1, 8))


@pytest.mark.parametrize("ps", [PartSet.mary(2), PartSet.power(2), PartSet.fibonacci(), PartSet.explicit([1, 2, 5])], ids=str)
def test_splitting_identity(ps):
    assert splitting_identity_holds(ps, 300)


# -- m-ary exception lists ---------------------------------------------------------------

MARY_EXCEPTIONS = {
    2: [(2, 2, True), (2, 3, True), (3, 3, False), (3, 5, False), (3, 7, False), (3, 9, True)],
    3: [(4, 5, False), (4, 8, False), (5, 5, False), (5, 7, False), (5, 8, False), (7, 8, True), (8, 8, True)],
    4: [(w, z, True) for w, z in [(5, 11), (5, 15), (6, 10), (6, 11), (6, 14), (6, 15), (7, 9), (7, 10),
                                   (7, 11), (7, 13), (7, 14), (7, 15)]],
}


@pytest.mark.parametrize("m", [2, 3, 4])
def test_mary_exception_table(m):
    rep = mary_exception_table(m)
    assert rep.sum_max == 5 * m * m + 4 * m
    assert rep.lemma_contradictions == []
    assert rep.equality_audit == []
    got = pairs(rep.exceptions)
    assert len(got) == len(MARY_EXCEPTIONS[m])
    assert sorted(got) == sorted(MARY_EXCEPTIONS[m])


# -- hypotheses ---------------------------------------------------------------------------


@pytest.mark.parametrize("m", [2, 3, 7])
def test_mary_hypotheses_closed_form(m):
    rep = check_hypotheses(PartSet.mary(m), 500, THEOREM)
    assert rep.passed and rep.unconditional
    assert rep.items[1].scope == SCOPE_CLOSED_FORM


def test_power2_hypotheses():
    rep = check_hypotheses(PartSet.power(2), 200, THEOREM)
    assert not rep.passed
    assert "7 < 9" in rep.items[1].detail
    assert check_hypotheses(PartSet.power(2), 200, PROPOSITION).passed


def test_all_integers_fail_double_a2():
    rep = check_hypotheses(PartSet.all_integers(), 50, THEOREM)
    assert DOUBLE_A2 in rep.failed


def test_hypotheses_need_three_elements():
    with pytest.raises(HypothesisError):
        check_hypotheses(PartSet.explicit([1, 2]), 10)


def test_explicit_set_is_complete_scope():
    rep = check_hypotheses(PartSet.explicit([1, 2, 6, 13, 20, 27, 34]), 100)
    assert rep.passed and rep.unconditional


# -- windows and certificates -------------------------------------------------------------


def test_scheme_invariants():
    s = scheme_for(PartSet.power(2), 12, "g")
    assert (s.p, s.w_inj, s.z_inj, s.window) == (4, 10, 12, (24, 31))
    assert s.problems() == []
    assert InductionScheme(5, 4, 10, 12, "g").problems()


@pytest.mark.parametrize(
    "ps, L, window",
    [
        (PartSet.power(3), 27, (54, 69)),
        (PartSet.factorial(), 6, (12, 15)),
        (PartSet.fibonacci(), 6, (12, 15)),
    ],
)
def test_base_window_examples(ps, L, window):
    scheme = default_scheme(ps)
    assert scheme.L == L and scheme.window == window
    rep = verify_base_window(count_table(ps, window[1]), scheme)
    assert rep.passed and rep.outcomes
    assert all(o.w >= L and o.z >= L and window[0] <= o.w + o.z <= window[1] for o in rep.outcomes)


def test_window_bound_error():
    ps = PartSet.power(3)
    with pytest.raises(BoundError):
        verify_base_window(count_table(ps, 60), default_scheme(ps))


@pytest.mark.parametrize("ps", [PartSet.power(3), PartSet.power(4), PartSet.power(2), PartSet.fibonacci(),
                                PartSet.factorial(), PartSet.mary(2), PartSet.explicit([1, 2, 5])], ids=str)
def test_certificates_valid(ps):
    cert = certify_bo(ps)
    assert cert.valid, cert.failures
    assert cert.spot_check_failures == []
    assert cert.conclusion == f"BO strict for all w,z >= {cert.scheme.L}"
    d = cert.to_dict()
    assert d["valid"] and d["tool_version"]


def test_certificate_all_integers_invalid():
    cert = certify_bo(PartSet.all_integers())
    assert not cert.valid
    assert f"hypothesis failed: {DOUBLE_A2}" in cert.failures
    assert cert.conclusion == "no conclusion"


def test_certificate_rejects_illegal_scheme():
    ps = PartSet.power(2)
    cert = certify_bo(ps, scheme_for(ps, 8, "g"))
    assert not cert.valid
    cert = certify_bo(ps, InductionScheme(12, 3, 10, 12, "g"))
    assert any("do not match" in f for f in cert.failures)


def test_valid_certificate_never_contradicted():
    ps = PartSet.power(3)
    assert certify_bo(ps).valid
    table = count_table(ps, 69 + 200)
    for w in range(27, 243):
        for z in range(w, 270 - w):
            assert bo_check_pair(table, w, z).strict


# -- thresholds --------------------------------------------------------------------------


@pytest.mark.parametrize("m, n_m, witness", [(2, 13, (3, 9)), (3, 17, (8, 8)), (4, 23, (7, 15)), (7, 27, (13, 13))])
def test_find_threshold(m, n_m, witness):
    res = find_threshold(PartSet.mary(m), m, 5 * m * m + 4 * m)
    assert res.threshold == n_m
    assert res.witness.w + res.witness.z == n_m - 1
    assert (res.witness.w, res.witness.z) == witness


def test_find_threshold_inconclusive():
    with pytest.raises(InconclusiveError):
        find_threshold(PartSet.mary(2), 2, 12)
    with pytest.raises(InconclusiveError):
        find_threshold(PartSet.mary(2), 2, 3)


def test_find_threshold_no_exceptions():
    res = find_threshold(PartSet.power(2), 12, 100)
    assert res.threshold == 24 and res.witness is None


# -- conjecture scan ----------------------------------------------------------------------


def test_random_sets_are_seeded_and_gcd1():
    a = random_gcd1_sets(5, 12, [2, 3], seed=7)
    assert a == random_gcd1_sets(5, 12, [2, 3], seed=7)
    assert all(len(ps.param) in (2, 3) for ps in a)


def test_conjecture_scan_rows():
    rows = conjecture_scan([PartSet.explicit([2, 3]), PartSet.mary(2)], 40, part_min=2)
    assert rows[0].exceptions > 0 and rows[0].largest_exception_sum is not None
    assert rows[1].largest_exception_sum == 12 and rows[1].min_part_threshold == 4
    # with 1 allowed as w, b(1)b(z) <= b(z+1) always, so every sum is exceptional
    assert conjecture_scan([PartSet.mary(2)], 40)[0].largest_exception_sum == 40
    assert rows[0].to_dict()["set"] == "explicit:2,3"
