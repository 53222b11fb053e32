import pytest
from hypothesis import given, settings, strategies as st

from apartitions.core import DomainError, Partition, PartSet, count_table, iter_partitions
from apartitions.injections import (
    CASE_G,
    HypothesisError,
    ScalingError,
    SplitData,
    case_predicates,
    classify_case,
    f_apply,
    g_apply,
    legal_pairs,
    split_data,
    verify_injection,
)

A125 = PartSet.explicit([1, 2, 5])
A_STEP7 = PartSet.explicit([1, 2, 6, 13, 20, 27, 34])


def P(*parts):
    return Partition.of(*parts)


def ones(k):
    return (1,) * k


@pytest.mark.parametrize(
    "lam, expected",
    [
        (P(5, 5), SplitData(i=2, x=4, y=1, t=2, s=0)),
        (Partition((5,) + ones(5)), SplitData(i=3, x=1, y=0, t=1, s=5)),
        (Partition(ones(10)), SplitData(i=7, x=1, y=0, t=0, s=10)),
    ],
)
def test_split_data_examples(lam, expected):
    assert split_data(lam, 6, 4, A125) == expected


def test_split_data_errors():
    with pytest.raises(DomainError):
        split_data(P(5, 2, 2, 1), 6, 4, A125)
    with pytest.raises(DomainError):
        split_data(P(5, 5), 6, 5, A125)


@pytest.mark.parametrize(
    "lam, case",
    [(Partition((5,) + ones(5)), 2), (Partition(ones(10)), 3), (P(5, 5), 4)],
)
def test_classify_examples(lam, case):
    assert classify_case(lam, split_data(lam, 6, 4, A125), A125) == case


@pytest.mark.parametrize(
    "lam, left, right, case",
    [
        (P(5, 5), ones(6), (2, 2), 4),
        (Partition((5,) + ones(5)), ones(6), ones(4), 2),
        (Partition(ones(10)), ones(6), (2, 1, 1), 3),
    ],
)
def test_f_examples(lam, left, right, case):
    img = f_apply(A125, lam, 6, 4)
    assert (img.left.parts, img.right.parts, img.case_id) == (left, right, case)


def test_g_special_branch():
    ps = PartSet.power(2)
    img = g_apply(ps, Partition((16,) + ones(13)), 17, 12)
    assert img.case_id == CASE_G
    assert img.left.parts == ones(17)
    assert img.right.parts == (4, 4, 1, 1, 1, 1)


def test_g_delegates_below_a4():
    ps = PartSet.power(2)
    lam = Partition((9,) + ones(13))
    img = g_apply(ps, lam, 10, 12)
    assert img.case_id != CASE_G
    # weight is preserved: 9 + 13 = 10 + 12
    assert img.left.parts == ones(10) and img.right.parts == ones(12)


@pytest.mark.parametrize("ps", [PartSet.mary(2), PartSet.mary(3), PartSet.factorial(), A125], ids=str)
def test_g_equals_f_outside_branch(ps):
    # on sets where both maps are legal, g differs from f only in the special branch
    for w, z in legal_pairs(ps, 28, "g"):
        for lam in iter_partitions(ps.without(ps.element(2)), w + z):
            gi, fi = g_apply(ps, lam, w, z), f_apply(ps, lam, w, z)
            if gi.case_id != CASE_G:
                assert gi == fi


def test_hypothesis_gates():
    with pytest.raises(HypothesisError) as exc:
        verify_injection(A125, 5, 4)
    assert exc.value.hypothesis == "w >= a_3 + 1"
    with pytest.raises(HypothesisError) as exc:
        verify_injection(A125, 6, 3)
    assert exc.value.hypothesis == "z >= 2a_2"
    with pytest.raises(HypothesisError) as exc:
        verify_injection(PartSet.power(2), 10, 20)
    assert exc.value.hypothesis.startswith("gap condition")
    with pytest.raises(HypothesisError) as exc:
        verify_injection(PartSet.power(2), 10, 8, "g")
    assert exc.value.hypothesis == "z >= 3a_2"


def test_verify_example():
    rep = verify_injection(A125, 6, 4)
    assert rep.passed and rep.domain_size == 3 and rep.image_size == 3
    assert rep.case_histogram == {2: 1, 3: 1, 4: 1}
    d = rep.to_dict()
    assert set(d) >= {"set", "w", "z", "variant", "domain_size", "case_histogram", "collisions", "violations", "pass"}


def test_verify_small_and_scaled_domains():
    rep = verify_injection(PartSet.explicit([1, 4, 9]), 10, 8)
    assert rep.passed and rep.domain_size == 3
    # every element even, so the check runs on {1,2,5} at (6, 4)
    rep = verify_injection(PartSet.explicit([2, 4, 10]), 12, 8)
    assert rep.passed and rep.domain_size == 3


def test_scaling_rejects_mixed_set():
    with pytest.raises(ScalingError):
        verify_injection(PartSet.explicit([2, 4, 11]), 12, 8)
    with pytest.raises(HypothesisError):
        verify_injection(PartSet.explicit([2, 4, 10]), 13, 8)


def test_scaled_set_images():
    ps = PartSet.explicit([3, 6, 15, 36])
    for w, z in [(18, 12), (21, 15), (24, 18)]:
        rep = verify_injection(ps, w, z)
        assert rep.passed and rep.domain_size > 0
    img = f_apply(ps, P(15, 15), 18, 12)
    assert img.left.parts == (3,) * 6 and img.right.parts == (6, 6)


CASES_SETS = [
    (A125, "f"),
    (A_STEP7, "f"),
    (PartSet.mary(2), "f"),
    (PartSet.mary(3), "f"),
    (PartSet.factorial(), "f"),
    (PartSet.power(2), "g"),
    (PartSet.fibonacci(), "g"),
]


@pytest.mark.parametrize("ps, variant", CASES_SETS, ids=lambda v: str(v))
def test_case_predicates_partition_inputs(ps, variant):
    a2, a3 = ps.element(2), ps.element(3)
    for w, z in legal_pairs(ps, 26, variant):
        for lam in iter_partitions(ps.without(a2), w + z):
            sp = split_data(lam, w, z, ps)
            assert sum(case_predicates(lam, sp, a3, z).values()) == 1


@pytest.mark.parametrize("ps, variant", CASES_SETS, ids=lambda v: str(v))
def test_injection_and_cardinality(ps, variant):
    a2 = ps.element(2)
    left_t = count_table(ps.without(a2), 40)
    right_t = count_table(ps, 40)
    for w, z in legal_pairs(ps, 40, variant):
        rep = verify_injection(ps, w, z, variant)
        assert rep.passed, rep.to_dict()
        assert rep.domain_size == left_t[w + z]
        assert rep.domain_size <= left_t[w] * right_t[z]


@settings(max_examples=40, deadline=None)
@given(
    st.integers(2, 4),
    st.integers(0, 3),
    st.lists(st.integers(0, 6), min_size=0, max_size=3),
    st.integers(0, 8),
)
def test_random_gap_sets_are_injective(a2, extra, gaps, shift):
    # build {1, a2, a3, a4, ...} with 2a2 <= a3 and consecutive gaps >= a3
    a3 = 2 * a2 + extra
    elems = [1, a2, a3]
    for g in gaps:
        elems.append(elems[-1] + a3 + g + shift)
    ps = PartSet.explicit(elems)
    for w, z in legal_pairs(ps, 24):
        assert verify_injection(ps, w, z).passed
