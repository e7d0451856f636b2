import pytest

from sandlat.core import Composition, dominance_leq, staircase_seed
from sandlat.errors import MismatchedN, NodeNotInGraph
from sandlat.order import (
    LatticeReport,
    induced_subgraph,
    inf_oracle,
    inf_prefix_min,
    is_lattice,
    sup_oracle,
    suborder_check,
)
from sandlat.rules import TransitionRule
from sandlat.statespace import generate

import oracles


def C(*parts):
    return Composition(tuple(parts))


@pytest.fixture(scope="module")
def lb6():
    return generate(staircase_seed(6), TransitionRule.brylawski())


@pytest.fixture(scope="module")
def spm4():
    return generate(staircase_seed(4), TransitionRule.vertical())


def test_inf_examples(lb6, spm4):
    a = C(3, 1, 0, 0)
    assert inf_oracle(spm4, a, a) == a
    assert inf_oracle(lb6, C(4, 1, 1, 0, 0, 0), C(3, 3, 0, 0, 0, 0)) == C(3, 2, 1, 0, 0, 0)
    assert inf_oracle(spm4, C(4, 0, 0, 0), C(2, 2, 0, 0)) == C(2, 2, 0, 0)


def test_sup_examples(lb6, spm4):
    a = C(2, 2, 0, 0)
    assert sup_oracle(spm4, a, a) == a
    assert sup_oracle(spm4, C(2, 2, 0, 0), C(2, 1, 1, 0)) == C(2, 2, 0, 0)
    assert sup_oracle(lb6, C(4, 1, 1, 0, 0, 0), C(3, 3, 0, 0, 0, 0)) == C(4, 2, 0, 0, 0, 0)


def test_oracles_reject_foreign_nodes(spm4):
    with pytest.raises(NodeNotInGraph):
        inf_oracle(spm4, C(1, 1, 1, 1), C(4, 0, 0, 0))


def test_bitset_oracles_match_naive_bounds(lb6):
    moves = lambda t: oracles.vertical_moves(t) + oracles.horizontal_moves(t)
    desc = oracles.descendants([v.parts for v in lb6.nodes], moves)
    for a in lb6.nodes:
        for b in lb6.nodes:
            inf = inf_oracle(lb6, a, b)
            sup = sup_oracle(lb6, a, b)
            assert (inf and inf.parts) == oracles.brute_inf(desc, a.parts, b.parts)
            assert (sup and sup.parts) == oracles.brute_sup(desc, a.parts, b.parts)


def test_is_lattice_positive():
    assert is_lattice(generate(staircase_seed(6), TransitionRule.vertical())).is_lattice
    rep = is_lattice(generate(C(3, 0, 0), TransitionRule.theta(-1)))
    assert rep == LatticeReport(True, None, 45)


def test_is_lattice_negative_control():
    # SPM(4) is a chain, so drop the bottom of SPM(6) instead: [3,3] and [4,1,1] then have no meet
    g = generate(staircase_seed(6), TransitionRule.vertical())
    bottom = C(3, 2, 1, 0, 0, 0)
    rep = is_lattice(induced_subgraph(g, {bottom}))
    assert not rep.is_lattice
    assert set(rep.witness) == {C(3, 3, 0, 0, 0, 0), C(4, 1, 1, 0, 0, 0)}


def test_is_lattice_missing_top():
    g = generate(staircase_seed(6), TransitionRule.vertical())
    rep = is_lattice(induced_subgraph(g, {C(6, 0, 0, 0, 0, 0), C(5, 1, 0, 0, 0, 0)}))
    assert rep.is_lattice  # [4,2] becomes the top
    rep = is_lattice(induced_subgraph(g, {C(6, 0, 0, 0, 0, 0), C(5, 1, 0, 0, 0, 0), C(4, 2, 0, 0, 0, 0)}))
    assert not rep.is_lattice and rep.witness is not None


def test_spm4_without_bottom_is_still_a_chain(spm4):
    assert is_lattice(induced_subgraph(spm4, {C(2, 1, 1, 0)})).is_lattice


def test_inf_prefix_min():
    a, b = C(4, 1, 1, 0, 0, 0), C(3, 3, 0, 0, 0, 0)
    assert inf_prefix_min(a, b) == C(3, 2, 1, 0, 0, 0)
    assert inf_prefix_min(a, a) == a
    hi, lo = C(5, 1, 0, 0, 0, 0), C(3, 2, 1, 0, 0, 0)
    assert dominance_leq(lo, hi) and inf_prefix_min(hi, lo) == lo
    with pytest.raises(MismatchedN):
        inf_prefix_min(C(1), C(2, 0))


@pytest.mark.parametrize("n", range(1, 9))
def test_prefix_min_equals_oracle_on_lb(n):
    g = generate(staircase_seed(n), TransitionRule.brylawski())
    for a in g.nodes:
        for b in g.nodes:
            c = inf_prefix_min(a, b)
            assert c in g
            assert inf_oracle(g, a, b) == c


def test_suborder_examples():
    lb5 = generate(staircase_seed(5), TransitionRule.brylawski())
    spm5 = generate(staircase_seed(5), TransitionRule.vertical())
    assert suborder_check(spm5, lb5)
    l41 = generate(staircase_seed(4), TransitionRule.theta(1))
    l40 = generate(staircase_seed(4), TransitionRule.theta(0))
    assert suborder_check(l41, l40)
    lb4 = generate(staircase_seed(4), TransitionRule.brylawski())
    spm4 = generate(staircase_seed(4), TransitionRule.vertical())
    assert len(lb4) == 5 and len(spm4) == 4
    assert not suborder_check(lb4, spm4)


def test_suborder_detects_order_mismatch():
    # same node set, fewer relations
    lb = generate(staircase_seed(6), TransitionRule.brylawski())
    thinned = induced_subgraph(lb, set())
    thinned.edges = [e for e in thinned.edges if e.kind == "vertical"]
    thinned = type(thinned)(thinned.rule, thinned.seed, thinned.nodes, thinned.edges, thinned.levels)
    assert suborder_check(thinned, thinned)
    assert not suborder_check(thinned, lb)


def test_suborder_mismatched_n():
    with pytest.raises(MismatchedN):
        suborder_check(generate(staircase_seed(3), TransitionRule.vertical()),
                       generate(staircase_seed(4), TransitionRule.vertical()))


def test_extremes_unique():
    for rule in (TransitionRule.vertical(), TransitionRule.brylawski(), TransitionRule.theta(-1),
                 TransitionRule.cfg(2)):
        g = generate(staircase_seed(7), rule)
        ends = [v for i, v in enumerate(g.nodes) if not g.successors_of(i)]
        assert g.nodes[0] == staircase_seed(7)
        assert len(ends) == 1
        assert is_lattice(g).is_lattice
