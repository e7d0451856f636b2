"""Exhaustive generation of the order reachable from a seed."""

from __future__ import annotations

import heapq
import json
import os
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .core import Composition, energy
from .errors import CapacityExceeded, NodeNotInGraph
from .rules import HORIZONTAL, Move, TransitionRule, parse_rule, successors

__all__ = ["StateGraph", "Edge", "generate", "reachable", "terminals", "DEFAULT_NODE_CAP", "node_cap"]

DEFAULT_NODE_CAP = 10**7


def node_cap(cap: Optional[int] = None) -> int:
    if cap is not None:
        return cap
    env = os.environ.get("SANDLAT_NODE_CAP")
    return int(env) if env else DEFAULT_NODE_CAP


@dataclass(frozen=True)
class Edge:
    src: int
    pos: int
    dst: int
    kind: str = ""


@dataclass
class StateGraph:
    """Graded DAG of compositions. Node ``i`` is ``nodes[i]``.

    Nodes are stored by increasing energy, lexicographically within one
    energy value, so every edge points from a smaller index to a larger
    one. ``levels[i]`` is the energy gained over the seed divided by the
    rule's per-move energy.
    """

    rule: TransitionRule
    seed: Composition
    nodes: list[Composition]
    edges: list[Edge]
    levels: list[int]
    index: dict[Composition, int] = field(init=False, repr=False)
    _succ: list[list[int]] = field(init=False, repr=False)
    _pred: list[list[int]] = field(init=False, repr=False)
    _down: Optional[list[int]] = field(default=None, init=False, repr=False)
    _up: Optional[list[int]] = field(default=None, init=False, repr=False)

    def __post_init__(self) -> None:
        self.index = {v: i for i, v in enumerate(self.nodes)}
        self._succ = [[] for _ in self.nodes]
        self._pred = [[] for _ in self.nodes]
        for e in self.edges:
            self._succ[e.src].append(e.dst)
            self._pred[e.dst].append(e.src)

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, a: Composition) -> bool:
        return a in self.index

    @property
    def n(self) -> int:
        return self.seed.n

    def idx(self, a: Composition) -> int:
        try:
            return self.index[a]
        except KeyError:
            raise NodeNotInGraph(f"{a} is not a node of the {self.rule} graph") from None

    def level_of(self, a: Composition) -> int:
        return self.levels[self.idx(a)]

    def successors_of(self, i: int) -> list[int]:
        return self._succ[i]

    def predecessors_of(self, i: int) -> list[int]:
        return self._pred[i]

    @property
    def depth(self) -> int:
        return self.levels[-1] if self.levels else 0

    def down_sets(self) -> list[int]:
        """Bitset per node of everything reachable from it, itself included."""
        if self._down is None:
            down = [0] * len(self.nodes)
            for i in range(len(self.nodes) - 1, -1, -1):
                bits = 1 << i
                for j in self._succ[i]:
                    bits |= down[j]
                down[i] = bits
            self._down = down
        return self._down

    def up_sets(self) -> list[int]:
        """Bitset per node of everything that reaches it, itself included."""
        if self._up is None:
            up = [0] * len(self.nodes)
            for i in range(len(self.nodes)):
                bits = 1 << i
                for j in self._pred[i]:
                    bits |= up[j]
                up[i] = bits
            self._up = up
        return self._up

    def reach_matrix(self) -> np.ndarray:
        """Boolean matrix R with R[i, j] iff node j is reachable from node i."""
        size = len(self.nodes)
        nbytes = (size + 7) // 8
        rows = np.empty((size, nbytes), dtype=np.uint8)
        for i, bits in enumerate(self.down_sets()):
            rows[i] = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(rows, axis=1, count=size, bitorder="little").astype(bool)

    def to_dict(self) -> dict:
        out_edges = []
        for e in self.edges:
            item = {"from": list(self.nodes[e.src].parts), "pos": e.pos, "to": list(self.nodes[e.dst].parts)}
            if self.rule.kind == "lb":
                item["kind"] = e.kind
            out_edges.append(item)
        return {
            "rule": str(self.rule),
            "seed": list(self.seed.parts),
            "nodes": [list(v.parts) for v in self.nodes],
            "edges": out_edges,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> StateGraph:
        rule = parse_rule(data["rule"])
        seed = Composition(tuple(data["seed"]))
        nodes = [Composition(tuple(v)) for v in data["nodes"]]
        index = {v: i for i, v in enumerate(nodes)}
        base = energy(seed)
        levels = [(energy(v) - base) // rule.energy_step for v in nodes]
        edges = [
            Edge(index[Composition(tuple(e["from"]))], int(e["pos"]), index[Composition(tuple(e["to"]))],
                 e.get("kind", rule.kind))
            for e in data["edges"]
        ]
        return cls(rule, seed, nodes, edges, levels)

    @classmethod
    def from_json(cls, text: str) -> StateGraph:
        return cls.from_dict(json.loads(text))

    def to_dot(self, colors: Optional[dict[Composition, str]] = None, highlight: Iterable[Composition] = ()) -> str:
        """Graphviz source with one rank per energy level.

        Horizontal moves are dashed, all others solid. ``colors`` fills
        nodes; ``highlight`` draws a double border around the given nodes.
        """
        highlight = set(highlight)
        lines = ["digraph G {", "  rankdir=TB;", "  node [shape=box, fontname=monospace];"]
        by_level: dict[int, list[int]] = {}
        for i, lvl in enumerate(self.levels):
            by_level.setdefault(lvl, []).append(i)
        for i, v in enumerate(self.nodes):
            attrs = [f'label="{",".join(map(str, v.trimmed()))}"']
            if colors and v in colors:
                attrs.append(f'style=filled, fillcolor="{colors[v]}"')
            if v in highlight:
                attrs.append("peripheries=2")
            lines.append(f"  n{i} [{', '.join(attrs)}];")
        for lvl in sorted(by_level):
            members = " ".join(f"n{i};" for i in by_level[lvl])
            lines.append(f"  {{ rank=same; {members} }}")
        for e in self.edges:
            style = "dashed" if e.kind == HORIZONTAL else "solid"
            lines.append(f'  n{e.src} -> n{e.dst} [label="{e.pos}", style={style}];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def generate(seed: Composition, rule: TransitionRule, cap: Optional[int] = None) -> StateGraph:
    """Closure of ``seed`` under ``rule``, built one energy value at a time.

    Every move strictly raises the energy, so once all states of a given
    energy are expanded no later state can point back to them. For the
    single-grain and chip-firing rules each move raises the energy by the
    same amount and the buckets are exactly the breadth-first levels; a
    horizontal move raises it by the plateau length plus one.
    """
    rule.validate_for(seed.n)
    cap = node_cap(cap)
    step = rule.energy_step
    base = energy(seed)
    nodes: list[Composition] = []
    levels: list[int] = []
    index: dict[Composition, int] = {}
    raw_edges: list[tuple[int, Move]] = []
    buckets: dict[int, set[Composition]] = {base: {seed}}
    heap = [base]
    while heap:
        e = heapq.heappop(heap)
        bucket = sorted(buckets.pop(e))
        for v in bucket:
            index[v] = len(nodes)
            nodes.append(v)
            levels.append((e - base) // step)
        if len(nodes) > cap:
            raise CapacityExceeded(f"{rule} from {seed} exceeds {cap} nodes")
        for v in bucket:
            i = index[v]
            for mv in successors(v, rule):
                raw_edges.append((i, mv))
                ev = energy(mv.result)
                if ev <= e or (ev - e) % step:
                    raise AssertionError(f"{v} -> {mv.result} breaks the energy grading of {rule}")
                if ev not in buckets:
                    buckets[ev] = set()
                    heapq.heappush(heap, ev)
                buckets[ev].add(mv.result)
    edges = sorted(
        (Edge(src, mv.pos, index[mv.result], mv.kind) for src, mv in raw_edges),
        key=lambda e: (e.src, e.pos),
    )
    return StateGraph(rule, seed, nodes, edges, levels)


def reachable(g: StateGraph, a: Composition, b: Composition) -> bool:
    """True iff there is a directed path from ``a`` to ``b``."""
    i, j = g.idx(a), g.idx(b)
    if g.levels[j] < g.levels[i]:
        return False
    return bool(g.down_sets()[i] >> j & 1)


def terminals(g: StateGraph) -> list[Composition]:
    return [v for i, v in enumerate(g.nodes) if not g.successors_of(i)]
