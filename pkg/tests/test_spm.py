import pytest

from sandlat.core import Composition, CompositionKind, classify, dual, partitions, staircase_seed
from sandlat.errors import NotAPartition, TriangularCase
from sandlat.order import inf_prefix_min
from sandlat.rules import TransitionRule
from sandlat.spm import (
    check_duality,
    enumerate_fixed_points,
    minimal_strict_partition,
    partition_classes,
    smallest_strict_partition,
    spm_normalize,
)
from sandlat.statespace import generate, terminals

import oracles


def C(*parts):
    return Composition(tuple(parts))


@pytest.mark.parametrize("a, p", [
    ((4, 0, 0, 0), (2, 1, 1, 0)),
    ((2, 1, 1, 0), (2, 1, 1, 0)),
    ((3, 3, 0, 0, 0, 0), (3, 2, 1, 0, 0, 0)),
])
def test_spm_normalize(a, p):
    assert spm_normalize(C(*a)) == C(*p)


def test_spm_normalize_rejects_composition():
    with pytest.raises(NotAPartition):
        spm_normalize(C(0, 1, 2))


def test_fixed_points_n6():
    atlas = enumerate_fixed_points(6)
    assert set(atlas.phi) == {
        C(1, 1, 1, 1, 1, 1), C(2, 1, 1, 1, 1, 0), C(2, 2, 1, 1, 0, 0), C(3, 2, 1, 0, 0, 0)
    }
    assert atlas.top == C(3, 2, 1, 0, 0, 0)
    assert atlas.bottom == C(1, 1, 1, 1, 1, 1)
    assert {atlas.pairing[p].parts for p in atlas.phi} == set(oracles.all_strict(6))


def test_fixed_points_small_and_n10():
    assert enumerate_fixed_points(1).phi == [C(1)]
    assert len(enumerate_fixed_points(10).phi) == 10 == oracles.strict_count(10)


@pytest.mark.parametrize("n", range(1, 11))
def test_phi_equals_spm_terminals(n):
    # fixed points read off the characterization vs partitions with no SPM move
    atlas = enumerate_fixed_points(n)
    no_move = {p for p in oracles.all_partitions(n) if not oracles.vertical_moves(p)}
    assert {p.parts for p in atlas.phi} == no_move


@pytest.mark.parametrize("n", [1, 6, 10])
def test_check_duality(n):
    assert check_duality(n)


@pytest.mark.parametrize("n", range(1, 11))
def test_every_normalization_is_a_fixed_point_and_unique(n):
    phi = set(enumerate_fixed_points(n).phi)
    for a in partitions(n):
        p = spm_normalize(a)
        assert p in phi
        assert terminals(generate(a, TransitionRule.vertical())) == [p]


def test_classes_n4():
    cp = partition_classes(4)
    assert set(cp.classes) == {C(1, 1, 1, 1), C(2, 1, 1, 0)}
    assert set(cp.classes) == {dual(s) for s in map(lambda t: C(*t), oracles.all_strict(4))}
    assert sum(cp.sizes().values()) == 5


def test_classes_n1_n6():
    assert partition_classes(1).classes == {C(1): [C(1)]}
    cp = partition_classes(6)
    assert len(cp.classes) == 4 and sum(cp.sizes().values()) == 11


@pytest.mark.parametrize("n, expected", [(4, (3, 1, 0, 0)), (8, (4, 3, 1, 0, 0, 0, 0, 0))])
def test_smallest_strict_partition(n, expected):
    s = smallest_strict_partition(n)
    assert s == C(*expected)
    assert classify(s) is CompositionKind.STRICT_PARTITION
    assert dual(s) == spm_normalize(staircase_seed(n))
    brute_min = [t for t in oracles.all_strict(n) if all(oracles.dominates(u, t) for u in oracles.all_strict(n))]
    assert brute_min == [expected]


def test_smallest_strict_partition_triangular():
    with pytest.raises(TriangularCase):
        smallest_strict_partition(10)
    assert minimal_strict_partition(10) == C(4, 3, 2, 1, 0, 0, 0, 0, 0, 0)


@pytest.mark.parametrize("n", range(1, 13))
def test_strict_partitions_closed_under_prefix_min(n):
    strict = [C(*t) for t in oracles.all_strict(n)] if n <= 10 else list(enumerate_fixed_points(n).strict)
    for s in strict:
        for t in strict:
            assert classify(inf_prefix_min(s, t)) is CompositionKind.STRICT_PARTITION


@pytest.mark.parametrize("n", range(1, 11))
def test_conjugation_reverses_dominance(n):
    parts = oracles.all_partitions(n)
    for a in parts:
        for b in parts:
            assert oracles.dominates(a, b) == oracles.dominates(oracles.conjugate(b), oracles.conjugate(a))
