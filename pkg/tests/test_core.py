import pytest

from sandlat.core import (
    Composition,
    CompositionKind,
    classify,
    compositions,
    dominance_leq,
    dual,
    energy,
    make_composition,
    parse_composition,
    partitions,
    staircase_seed,
    strict_partitions,
)
from sandlat.errors import InvalidN, MismatchedN, NegativePart, NotAPartition, SumMismatch, TooLong

import oracles


def C(*parts):
    return Composition(tuple(parts))


class TestMakeComposition:
    def test_pads_seed(self):
        assert make_composition([4], 4) == C(4, 0, 0, 0)

    def test_identity(self):
        assert make_composition([2, 1, 1, 0], 4) == C(2, 1, 1, 0)

    def test_sum_mismatch(self):
        with pytest.raises(SumMismatch):
            make_composition([3, 2], 4)

    def test_negative(self):
        with pytest.raises(NegativePart):
            make_composition([5, -1], 4)

    def test_too_long(self):
        with pytest.raises(TooLong):
            make_composition([1, 0, 0, 0, 1], 2)

    def test_extra_trailing_zeros_dropped(self):
        assert make_composition([2, 0, 0, 0], 2) == C(2, 0)


@pytest.mark.parametrize("n, expected", [(1, (1,)), (4, (4, 0, 0, 0)), (10, (10,) + (0,) * 9)])
def test_staircase_seed(n, expected):
    assert staircase_seed(n).parts == expected


def test_staircase_seed_rejects_zero():
    with pytest.raises(InvalidN):
        staircase_seed(0)


@pytest.mark.parametrize("parts, e", [((4, 0, 0, 0), 0), ((1, 1, 1, 1), 6), ((2, 1, 1, 0), 3)])
def test_energy(parts, e):
    assert energy(C(*parts)) == e


@pytest.mark.parametrize(
    "parts, expected",
    [((4, 0, 0, 0), (1, 1, 1, 1)), ((3, 1, 0, 0), (2, 1, 1, 0)), ((2, 1, 1, 0), (3, 1, 0, 0))],
)
def test_dual_examples(parts, expected):
    assert dual(C(*parts)).parts == expected
    assert dual(C(*parts)).parts == oracles.conjugate(parts)


def test_dual_rejects_non_partition():
    with pytest.raises(NotAPartition):
        dual(C(0, 2, 1))


@pytest.mark.parametrize("n", range(1, 13))
def test_dual_involution_exhaustive(n):
    for p in partitions(n):
        assert dual(dual(p)) == p


def test_dominance_examples():
    assert dominance_leq(C(2, 2, 0, 0), C(3, 1, 0, 0))
    a = C(3, 0, 1, 0)
    assert dominance_leq(a, a)
    b = C(2, 2, 0, 0)
    assert not dominance_leq(a, b) and not dominance_leq(b, a)


def test_dominance_mismatched_n():
    with pytest.raises(MismatchedN):
        dominance_leq(C(1), C(2, 0))


@pytest.mark.parametrize("n", range(1, 7))
def test_dominance_is_partial_order(n):
    comps = list(compositions(n))
    assert len(comps) == oracles.binom_all(n)
    leq = {(a, b): dominance_leq(a, b) for a in comps for b in comps}
    for a in comps:
        assert leq[a, a]
        for b in comps:
            if a != b and leq[a, b]:
                assert not leq[b, a]
    if n <= 5:
        for a in comps:
            for b in comps:
                if not leq[a, b]:
                    continue
                for c in comps:
                    if leq[b, c]:
                        assert leq[a, c]


@pytest.mark.parametrize(
    "parts, kind",
    [
        ((3, 2, 1, 0, 0, 0), CompositionKind.STRICT_PARTITION),
        ((2, 2, 1, 1, 0, 0), CompositionKind.PARTITION),
        ((0, 2, 1), CompositionKind.GENERAL),
    ],
)
def test_classify(parts, kind):
    assert classify(C(*parts)) is kind


def test_text_round_trip():
    a = parse_composition("[3,1,0,0]")
    assert a == C(3, 1, 0, 0)
    assert str(a) == "[3,1,0,0]"
    assert parse_composition("[3,1]", 4) == a
    assert parse_composition("[2,1,1]") == C(2, 1, 1, 0)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        parse_composition("3;1")


@pytest.mark.parametrize("n", range(1, 9))
def test_enumerators_match_brute_force(n):
    assert sorted(p.parts for p in partitions(n)) == sorted(oracles.all_partitions(n))
    assert sorted(s.parts for s in strict_partitions(n)) == sorted(oracles.all_strict(n))
    assert sorted(c.parts for c in compositions(n)) == sorted(oracles.all_compositions(n))


def test_compositions_are_hashable_values():
    assert len({C(2, 0), C(2, 0), make_composition([2], 2)}) == 1
    with pytest.raises(AttributeError):
        C(2, 0).parts = (0, 2)
