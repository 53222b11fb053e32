import pytest

from apartitions.bo import check_hypotheses
from apartitions.core import Partition, PartSet, count_table, max_value
from apartitions.families import (
    CERTIFIED_FAIL,
    CERTIFIED_PASS,
    NOT_APPLICABLE,
    PROPOSITION,
    THEOREM,
    FamilySpec,
    gap_validator,
    mary_count,
    mary_counts,
    mary_lemma_region,
    max_formula,
    max_formula_check,
)


def P(*parts):
    return Partition.of(*parts)


@pytest.mark.parametrize("m", range(2, 9))
def test_mary_anchor_values(m):
    assert mary_count(m, m) == 2
    assert mary_count(m, m * m) == m + 2
    assert mary_count(m, m**3) == (m * m + 4) * (m + 1) // 2 - m


def test_mary_small_values():
    assert mary_count(2, 9) == mary_count(2, 8) == 10
    assert mary_count(2, 12) == 20
    assert mary_count(4, 20) == 8
    assert mary_count(3, -1) == 0


@pytest.mark.parametrize("m", range(2, 11))
def test_mary_recursion_matches_dp(m):
    assert mary_counts(m, 2000) == list(count_table(PartSet.mary(m), 2000).counts)


def test_family_spec():
    assert FamilySpec.of(PartSet.power(3)) == FamilySpec("power", 3)
    assert FamilySpec("fib").partset() == PartSet.fibonacci()
    with pytest.raises(ValueError):
        FamilySpec("mary", 1)
    with pytest.raises(ValueError):
        FamilySpec("power")


@pytest.mark.parametrize(
    "m, w, z, tag",
    [
        (6, 7, 200, "L1"),
        (6, 13, 14, "L3"),
        (4, 6, 10, "uncovered"),
        (4, 5, 7, "L2"),  # z // m == 1, non-strict lemma
        (6, 7, 20, "L2"),
        (5, 7, 20, "uncovered"),  # k >= 2 needs m >= 6
        (3, 2, 9, "small-w"),
        (2, 3, 9, "uncovered"),
        (4, 8, 30, "uncovered"),  # w + z > 2m^2
    ],
)
def test_mary_lemma_region(m, w, z, tag):
    assert mary_lemma_region(m, w, z) == tag


def test_lemma_region_requires_order():
    with pytest.raises(ValueError):
        mary_lemma_region(3, 9, 4)


# -- gap validators -------------------------------------------------------------


@pytest.mark.parametrize(
    "family, mode, verdict",
    [
        (FamilySpec("power", 3), THEOREM, CERTIFIED_PASS),
        (FamilySpec("power", 4), THEOREM, CERTIFIED_PASS),
        (FamilySpec("power", 2), THEOREM, CERTIFIED_FAIL),
        (FamilySpec("power", 2), PROPOSITION, CERTIFIED_PASS),
        (FamilySpec("fib"), PROPOSITION, CERTIFIED_PASS),
        (FamilySpec("fib"), THEOREM, CERTIFIED_FAIL),
        (FamilySpec("factorial"), THEOREM, CERTIFIED_PASS),
        (FamilySpec("all"), THEOREM, CERTIFIED_FAIL),
        (FamilySpec("all"), PROPOSITION, CERTIFIED_FAIL),
        (FamilySpec("explicit"), THEOREM, NOT_APPLICABLE),
    ],
)
def test_gap_validator(family, mode, verdict):
    assert gap_validator(family, mode).verdict == verdict


def test_gap_validator_power2_witness():
    v = gap_validator(FamilySpec("power", 2), THEOREM)
    assert "7 < 9" in v.inequality


@pytest.mark.parametrize("m", range(2, 65))
def test_mary_gap_certified(m):
    assert gap_validator(FamilySpec("mary", m), THEOREM).verdict == CERTIFIED_PASS


@pytest.mark.parametrize(
    "ps", [PartSet.mary(2), PartSet.mary(7), PartSet.power(2), PartSet.power(3), PartSet.fibonacci(),
           PartSet.factorial(), PartSet.all_integers()], ids=str
)
@pytest.mark.parametrize("mode", [THEOREM, PROPOSITION])
@pytest.mark.parametrize("bound", [60, 500, 5000])
def test_certified_pass_never_contradicted_by_scan(ps, mode, bound):
    verdict = gap_validator(FamilySpec.of(ps), mode)
    report = check_hypotheses(ps, bound, mode)
    gap_item = report.items[1]
    if verdict.verdict == CERTIFIED_PASS:
        assert gap_item.passed
    if verdict.verdict == CERTIFIED_FAIL:
        assert not gap_item.passed


# -- max formulas -----------------------------------------------------------------


def _check(ps, n):
    return max_formula_check(FamilySpec.of(ps), n, max_value(ps, n))


def test_max_formula_mary2_n6():
    v = _check(PartSet.mary(2), 6)
    assert v.passed and v.observed == 8
    assert set(max_value(PartSet.mary(2), 6).witnesses) == {P(4, 2), P(2, 2, 2)}


def test_max_formula_power2_n9():
    v = _check(PartSet.power(2), 9)
    assert v.passed and v.observed == 4
    assert set(max_value(PartSet.power(2), 9).witnesses) == {P(4, 4, 1), P(9)}


def test_max_formula_fib_n13():
    v = _check(PartSet.fibonacci(), 13)
    assert v.passed and v.observed == 108
    assert set(max_value(PartSet.fibonacci(), 13).witnesses) == {P(5, 5, 3), P(5, 3, 3, 2), P(3, 3, 3, 2, 2)}


def test_max_formula_fib_n1_outside_formula():
    v = _check(PartSet.fibonacci(), 1)
    assert v.status == "not-applicable" and v.predicted is None


def test_max_formula_detects_wrong_value():
    res = max_value(PartSet.mary(3), 10)
    bad = type(res)(10, res.value + 1, res.witnesses)
    assert max_formula_check(FamilySpec("mary", 3), 10, bad).status == "fail"


def test_max_formula_inconclusive_on_cap():
    res = max_value(PartSet.mary(2), 40, witness_cap=3)
    assert max_formula_check(FamilySpec("mary", 2), 40, res).status == "inconclusive-witnesses"


def test_power2_shapes_skip_short_n():
    shapes = max_formula(FamilySpec("power", 2)).shapes(7)
    assert shapes == [P(4, 1, 1, 1)]


def test_all_integers_report_only():
    for n in range(8, 61):
        v = _check(PartSet.all_integers(), n)
        assert v.status == "report-only"
        assert v.predicted == v.observed
        assert not v.missing  # the 4s/5s/6s shape is always among the maximizers


def test_power2_nines_at_most_three():
    ps = PartSet.power(2)
    table = count_table(ps, 120)
    for n in range(121):
        for wit in max_value(ps, n, table).witnesses:
            assert wit.count(9) <= 3


def test_fib_witness_part_counts():
    ps = PartSet.fibonacci()
    table = count_table(ps, 120)
    for n in range(121):
        for wit in max_value(ps, n, table).witnesses:
            assert wit.count(2) <= 2 and wit.count(5) <= 2
            assert wit.count(8) == 0 and wit.count(13) == 0


def test_fib_value_formula_three_cases():
    ps = PartSet.fibonacci()
    table = count_table(ps, 120)
    for n in range(2, 121):
        q, r = divmod(n, 3)
        want = {0: 3**q, 1: 4 * 3 ** (q - 1) if q else None, 2: 2 * 3**q}[r]
        assert max_value(ps, n, table).value == want
