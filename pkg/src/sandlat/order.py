"""Brute-force meets and joins, lattice verification and suborder checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import Composition, _check_same_n
from .errors import MismatchedN
from .statespace import StateGraph

__all__ = [
    "LatticeReport",
    "inf_oracle",
    "sup_oracle",
    "is_lattice",
    "inf_prefix_min",
    "suborder_check",
    "induced_subgraph",
]


@dataclass(frozen=True)
class LatticeReport:
    is_lattice: bool
    witness: Optional[tuple[Composition, Composition]]
    checked_pairs: int


def _inf_index(down: list[int], i: int, j: int) -> Optional[int]:
    common = down[i] & down[j]
    if not common:
        return None
    # indices grow with level, so the lowest set bit is a topmost candidate
    c = (common & -common).bit_length() - 1
    return c if down[c] == common else None


def _sup_index(up: list[int], i: int, j: int) -> Optional[int]:
    common = up[i] & up[j]
    if not common:
        return None
    c = common.bit_length() - 1
    return c if up[c] == common else None


def inf_oracle(g: StateGraph, a: Composition, b: Composition) -> Optional[Composition]:
    """Greatest common lower bound found by intersecting down-sets."""
    c = _inf_index(g.down_sets(), g.idx(a), g.idx(b))
    return None if c is None else g.nodes[c]


def sup_oracle(g: StateGraph, a: Composition, b: Composition) -> Optional[Composition]:
    c = _sup_index(g.up_sets(), g.idx(a), g.idx(b))
    return None if c is None else g.nodes[c]


def is_lattice(g: StateGraph) -> LatticeReport:
    """Greatest element plus an inf for every pair."""
    size = len(g.nodes)
    if size == 0:
        return LatticeReport(False, None, 0)
    down = g.down_sets()
    full = (1 << size) - 1
    tops = [i for i in range(size) if down[i] == full]
    if not tops:
        maximal = [i for i in range(size) if not g.predecessors_of(i)]
        a, b = maximal[0], maximal[1] if len(maximal) > 1 else maximal[0]
        return LatticeReport(False, (g.nodes[a], g.nodes[b]), 0)
    checked = 0
    for i in range(size):
        di = down[i]
        for j in range(i + 1, size):
            checked += 1
            common = di & down[j]
            if common:
                c = (common & -common).bit_length() - 1
                if down[c] == common:
                    continue
            return LatticeReport(False, (g.nodes[i], g.nodes[j]), checked)
    return LatticeReport(True, None, checked)


def inf_prefix_min(a: Composition, b: Composition) -> Composition:
    """Composition whose prefix sums are the pointwise minimum of those of a and b."""
    _check_same_n(a, b)
    out = []
    prev = sa = sb = 0
    for x, y in zip(a.parts, b.parts):
        sa += x
        sb += y
        cur = min(sa, sb)
        out.append(cur - prev)
        prev = cur
    return Composition(tuple(out))


def suborder_check(sub: StateGraph, sup: StateGraph) -> bool:
    """Node containment plus identical reachability on the smaller node set."""
    if sub.n != sup.n:
        raise MismatchedN(f"n={sub.n} vs n={sup.n}")
    if any(v not in sup.index for v in sub.nodes):
        return False
    pos = np.array([sup.index[v] for v in sub.nodes], dtype=np.intp)
    restricted = sup.reach_matrix()[np.ix_(pos, pos)]
    return bool(np.array_equal(restricted, sub.reach_matrix()))


def induced_subgraph(g: StateGraph, drop: set[Composition]) -> StateGraph:
    """Copy of ``g`` without the nodes in ``drop`` and their edges."""
    from .statespace import Edge

    keep = [v for v in g.nodes if v not in drop]
    remap = {g.index[v]: k for k, v in enumerate(keep)}
    edges = [Edge(remap[e.src], e.pos, remap[e.dst], e.kind) for e in g.edges if e.src in remap and e.dst in remap]
    levels = [g.levels[g.index[v]] for v in keep]
    seed = g.seed if g.seed not in drop else keep[0]
    return StateGraph(g.rule, seed, keep, edges, levels)
