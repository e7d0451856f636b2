"""Exhaustive property checks, one suite per structural claim.

Every suite takes a single ``n`` and returns ``Row`` records; the CLI and
the acceptance tests loop over n themselves.
"""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass
from functools import lru_cache
from math import ceil, comb
from typing import Callable, Iterable, Optional

import numpy as np

from .cfg import (
    cfg_inf,
    cfg_leq,
    greedoid_check,
    random_playout,
    shot_vector,
    strong_convergence_check,
)
from .core import (
    Composition,
    dominance_leq,
    dual,
    energy,
    partitions,
    staircase_seed,
    strict_partitions,
)
from .errors import TriangularCase
from .ltheta import fixed_point, gap_bound_violations, generate_by_filter, max_chain_length
from .order import _inf_index, inf_prefix_min, is_lattice, suborder_check
from .rules import TransitionRule, cfg_step
from .spm import (
    check_duality,
    enumerate_fixed_points,
    minimal_strict_partition,
    partition_classes,
    smallest_strict_partition,
    spm_normalize,
)
from .statespace import StateGraph, generate, terminals

__all__ = ["Row", "SUITES", "run_suite", "run_suites", "rows_to_csv", "theta_range", "cfg_widths"]

FIELDS = ("n", "param", "property", "result", "witness")


@dataclass(frozen=True)
class Row:
    n: int
    param: str
    prop: str
    passed: bool
    witness: str = ""

    def as_tuple(self) -> tuple:
        return (self.n, self.param, self.prop, "pass" if self.passed else "fail", self.witness)


def rows_to_csv(rows: Iterable[Row], header: bool = True) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    if header:
        w.writerow(FIELDS)
    for r in rows:
        w.writerow(r.as_tuple())
    return buf.getvalue()


def theta_range(n: int) -> range:
    """theta from n down to -n+2."""
    return range(n, -n + 1, -1)


def cfg_widths(n: int, widths: Iterable[int] = (1, 2, 3)) -> list[int]:
    return [m for m in widths if 1 <= m <= n - 1]


@lru_cache(maxsize=128)
def _graph(n: int, rule: str, seed: Optional[tuple[int, ...]] = None) -> StateGraph:
    from .rules import parse_rule

    origin = staircase_seed(n) if seed is None else Composition(seed)
    return generate(origin, parse_rule(rule))


def theta_graph(n: int, theta: int) -> StateGraph:
    return _graph(n, f"theta:{theta}")


def cfg_graph(origin: Composition, m: int) -> StateGraph:
    return _graph(origin.n, f"cfg:{m}", origin.parts)


def clear_cache() -> None:
    _graph.cache_clear()


def _prefix_matrix(g: StateGraph) -> np.ndarray:
    return np.cumsum(np.array([v.parts for v in g.nodes], dtype=np.int64), axis=1)


def dominance_matrix(g: StateGraph, chunk: int = 512) -> np.ndarray:
    """D[i, j] iff nodes[i] dominates nodes[j]."""
    P = _prefix_matrix(g)
    size = len(P)
    D = np.empty((size, size), dtype=bool)
    for s in range(0, size, chunk):
        D[s:s + chunk] = (P[s:s + chunk, None, :] >= P[None, :, :]).all(axis=2)
    return D


def origins_for(n: int, m: int, extra: int = 5, seed: int = 0) -> list[Composition]:
    """The staircase seed plus up to ``extra`` distinct random partitions of n."""
    N = staircase_seed(n)
    others = [p for p in partitions(n) if p != N]
    rng = random.Random(seed * 1_000_003 + n * 101 + m)
    picks = rng.sample(others, min(extra, len(others)))
    return [N] + picks



def suite_thm1(n: int) -> list[Row]:
    rows = []
    atlas = enumerate_fixed_points(n)
    strict_count = sum(1 for _ in strict_partitions(n))
    rows.append(Row(n, "", "fixed_point_count", len(atlas.phi) == strict_count,
                    f"|phi|={len(atlas.phi)} strict={strict_count}"))
    terminal_set = {a for a in partitions(n) if not generate(a, TransitionRule.vertical()).edges}
    rows.append(Row(n, "", "phi_equals_terminals", terminal_set == set(atlas.phi), ""))
    rows.append(Row(n, "", "duality", check_duality(n), ""))
    top_ok = all(dominance_leq(p, atlas.top) for p in atlas.phi) and atlas.top in atlas.phi
    bottom_ok = all(dominance_leq(atlas.bottom, p) for p in atlas.phi) and atlas.bottom in atlas.phi
    rows.append(Row(n, "", "extremes", top_ok and bottom_ok, f"top={atlas.top} bottom={atlas.bottom}"))
    try:
        smallest = smallest_strict_partition(n)
        note = "formula"
    except TriangularCase:
        smallest = minimal_strict_partition(n)
        note = "triangular: enumeration"
    ok = smallest == minimal_strict_partition(n) and dual(smallest) == atlas.top
    rows.append(Row(n, "", "smallest_strict_dual_is_top", ok, f"{smallest} ({note})"))
    return rows


def suite_thm2(n: int) -> list[Row]:
    cp = partition_classes(n)
    members = [a for cls in cp.classes.values() for a in cls]
    total = sum(1 for _ in partitions(n))
    disjoint = len(members) == len(set(members))
    cover = set(members) == set(partitions(n))
    rows = [Row(n, "", "classes_disjoint_cover", disjoint and cover and len(members) == total,
                f"classes={len(cp.classes)} sizes_sum={len(members)} p(n)={total}")]
    # from any partition, SPM moves reach exactly one fixed point
    bad = None
    for a in partitions(n):
        ends = terminals(generate(a, TransitionRule.vertical()))
        if len(ends) != 1 or ends[0] != spm_normalize(a):
            bad = f"{a} -> {ends}"
            break
    rows.append(Row(n, "", "unique_fixed_point_below", bad is None, bad or ""))
    return rows



def suite_thm3(n: int) -> list[Row]:
    rows = []
    for name in ("spm", "lb"):
        rep = is_lattice(_graph(n, name))
        rows.append(Row(n, name, "is_lattice", rep.is_lattice, "" if rep.witness is None else str(rep.witness)))
    for m in cfg_widths(n):
        bad = None
        for O in partitions(n):
            rep = is_lattice(cfg_graph(O, m))
            if not rep.is_lattice:
                bad = f"O={O} witness={rep.witness}"
                break
        rows.append(Row(n, f"m={m}", "cfg_is_lattice", bad is None, bad or ""))
    return rows


def _prop12(n: int, which: str, extra: int) -> list[Row]:
    rows = []
    for m in cfg_widths(n):
        mismatches = 0
        first = ""
        for O in origins_for(n, m, extra):
            g = cfg_graph(O, m)
            nodes = g.nodes
            if which == "prop1":
                R = g.reach_matrix()
                for i, a in enumerate(nodes):
                    for j, b in enumerate(nodes):
                        if cfg_leq(O, a, b, m) != R[i, j]:
                            mismatches += 1
                            first = first or f"O={O} a={a} b={b}"
            else:
                down = g.down_sets()
                for i, a in enumerate(nodes):
                    for j in range(i, len(nodes)):
                        c = _inf_index(down, i, j)
                        oracle = None if c is None else nodes[c]
                        if cfg_inf(O, a, nodes[j], m) != oracle:
                            mismatches += 1
                            first = first or f"O={O} a={a} b={nodes[j]}"
        prop = "order_equals_shot_vector_order" if which == "prop1" else "inf_equals_shot_vector_max"
        rows.append(Row(n, f"m={m}", prop, mismatches == 0, first))
    return rows


def suite_prop1(n: int, extra: int = 5) -> list[Row]:
    return _prop12(n, "prop1", extra)


def suite_prop2(n: int, extra: int = 5) -> list[Row]:
    return _prop12(n, "prop2", extra)


def suite_lemma2(n: int) -> list[Row]:
    rows = []
    for m in cfg_widths(n):
        violations = 0
        triples = 0
        first = ""
        for O in partitions(n):
            g = cfg_graph(O, m)
            shots = [shot_vector(O, v, m).k for v in g.nodes]
            for ia, a in enumerate(g.nodes):
                ka = shots[ia]
                for ib, b in enumerate(g.nodes):
                    kb = shots[ib]
                    for j in range(n - m):
                        if ka[j] > kb[j]:
                            continue
                        if any(ka[t] < kb[t] for t in range(n) if t != j):
                            continue
                        triples += 1
                        if cfg_step(b, j + 1, m) is not None and cfg_step(a, j + 1, m) is None:
                            violations += 1
                            first = first or f"O={O} a={a} b={b} j={j + 1}"
        rows.append(Row(n, f"m={m}", "shot_vector_monotone_firing", violations == 0,
                        first or f"triples={triples}"))
    return rows


def suite_shots(n: int) -> list[Row]:
    """Every play to a node fires each column the same number of times."""
    rows = []
    for m in cfg_widths(n):
        bad = ""
        for O in partitions(n):
            g = cfg_graph(O, m)
            seen: dict[int, set[tuple[int, ...]]] = {0: {(0,) * n}}
            for e in g.edges:
                for k in seen[e.src]:
                    k2 = list(k)
                    k2[e.pos - 1] += 1
                    seen.setdefault(e.dst, set()).add(tuple(k2))
            for i, v in enumerate(g.nodes):
                if seen[i] != {shot_vector(O, v, m).k}:
                    bad = f"O={O} node={v} counts={sorted(seen[i])}"
                    break
            if bad:
                break
        rows.append(Row(n, f"m={m}", "shot_vector_path_independent", not bad, bad))
    return rows


PLAYOUT_BUDGET = 10_000
PLAYOUT_RANGE = (7, 30)


def suite_cor1(n: int, playouts: Optional[int] = None, seed: int = 0) -> list[Row]:
    rows = []
    if n <= 8:
        for m in cfg_widths(n):
            bad = ""
            plays = 0
            for O in partitions(n):
                rep = strong_convergence_check(O, m)
                plays += rep.sequences_checked
                if not rep.passed:
                    bad = f"O={O} {rep.problems[:3]}"
                    break
            rows.append(Row(n, f"m={m}", "strongly_convergent_exhaustive", not bad, bad or f"plays={plays}"))
    if n >= PLAYOUT_RANGE[0]:
        lo, hi = PLAYOUT_RANGE
        if playouts is None:
            playouts = ceil(PLAYOUT_BUDGET / (hi - lo + 1))
        rng = random.Random(seed * 7919 + n)
        all_parts = list(partitions(n)) if n <= 30 else None
        bad = ""
        for t in range(playouts):
            m = rng.choice(cfg_widths(n))
            O = staircase_seed(n) if t % 2 == 0 or all_parts is None else rng.choice(all_parts)
            end, moves = random_playout(O, m, rng)
            ref = _lowest_first_playout(O, m)
            if end != ref or moves != shot_vector(O, end, m).total:
                bad = f"O={O} m={m} end={end} ref={ref} moves={moves}"
                break
        rows.append(Row(n, "random", "strongly_convergent_playouts", not bad, bad or f"playouts={playouts}"))
    return rows


def _lowest_first_playout(O: Composition, m: int) -> Composition:
    cur = O
    while True:
        for i in range(1, O.n - m + 1):
            nxt = cfg_step(cur, i, m)
            if nxt is not None:
                cur = nxt
                break
        else:
            return cur


def suite_thm5(n: int, widths: Iterable[int] = (1, 2)) -> list[Row]:
    rows = []
    for m in cfg_widths(n, widths):
        bad = ""
        words = 0
        for O in partitions(n):
            depth = cfg_graph(O, m).depth
            rep = greedoid_check(O, m, depth)
            words += rep.words
            if not rep.passed:
                bad = f"O={O} {rep.counterexample}"
                break
        rows.append(Row(n, f"m={m}", "greedoid", not bad, bad or f"words={words}"))
    return rows



def suite_thm6(n: int) -> list[Row]:
    rows = []
    for theta in theta_range(n):
        bfs = set(theta_graph(n, theta).nodes)
        filt = generate_by_filter(n, theta)
        witness = ""
        if bfs != filt:
            witness = f"bfs_only={sorted(bfs - filt)[:3]} filter_only={sorted(filt - bfs)[:3]}"
        rows.append(Row(n, f"theta={theta}", "bfs_equals_membership_filter", bfs == filt, witness or f"size={len(bfs)}"))
    return rows


def suite_thm7(n: int) -> list[Row]:
    rows = []
    for theta in theta_range(n):
        g = theta_graph(n, theta)
        R = g.reach_matrix()
        D = dominance_matrix(g)
        diff = np.argwhere(R != D)
        witness = ""
        if len(diff):
            i, j = diff[0]
            witness = f"{g.nodes[i]} vs {g.nodes[j]}"
        rows.append(Row(n, f"theta={theta}", "order_equals_dominance", not len(diff), witness))
    return rows


def suite_thm8(n: int) -> list[Row]:
    rows = []
    for theta in theta_range(n):
        g = theta_graph(n, theta)
        nodes = g.nodes
        down = g.down_sets()
        bad = ""
        for i in range(len(nodes)):
            a = nodes[i]
            for j in range(i, len(nodes)):
                c = _inf_index(down, i, j)
                formula = inf_prefix_min(a, nodes[j])
                if c is None or nodes[c] != formula:
                    bad = f"a={a} b={nodes[j]} oracle={None if c is None else nodes[c]} formula={formula}"
                    break
            if bad:
                break
        lat = is_lattice(g)
        rows.append(Row(n, f"theta={theta}", "inf_equals_prefix_min", not bad, bad))
        rows.append(Row(n, f"theta={theta}", "is_lattice", lat.is_lattice, "" if lat.witness is None else str(lat.witness)))
    return rows


def suite_thm9(n: int) -> list[Row]:
    rows = []
    thetas = list(theta_range(n))
    for hi, lo in zip(thetas, thetas[1:]):
        ok = suborder_check(theta_graph(n, hi), theta_graph(n, lo))
        rows.append(Row(n, f"theta={hi}->{lo}", "suborder", ok, ""))
    size = len(theta_graph(n, -n + 2))
    expected = comb(2 * n - 1, n)
    rows.append(Row(n, f"theta={-n + 2}", "all_compositions_count", size == expected,
                    f"size={size} expected={expected}"))
    return rows


def suite_prop3(n: int) -> list[Row]:
    spm = _graph(n, "spm")
    l2 = theta_graph(n, 2)
    same = spm.nodes == l2.nodes and suborder_check(spm, l2) and suborder_check(l2, spm)
    lb = _graph(n, "lb")
    return [
        Row(n, "", "spm_equals_theta2", same, f"|spm|={len(spm)} |L(n,2)|={len(l2)}"),
        Row(n, "", "lb_suborder_of_theta1", suborder_check(lb, theta_graph(n, 1)),
            f"|lb|={len(lb)} |L(n,1)|={len(theta_graph(n, 1))}"),
    ]


def suite_prop4(n: int) -> list[Row]:
    rows = []
    for theta in theta_range(n):
        ends = terminals(theta_graph(n, theta))
        try:
            P = fixed_point(n, theta)
        except AssertionError as exc:
            rows.append(Row(n, f"theta={theta}", "fixed_point", False, str(exc)))
            continue
        ok = len(ends) == 1 and ends[0] == P
        rows.append(Row(n, f"theta={theta}", "fixed_point", ok, str(P) if ok else f"formula={P} bfs={ends}"))
    return rows


def suite_prop5(n: int) -> list[Row]:
    rows = []
    for theta in theta_range(n):
        if theta == 1:
            continue
        g = theta_graph(n, theta)
        ends = terminals(g)
        length = max_chain_length(n, theta)
        e = energy(fixed_point(n, theta))
        depth = g.level_of(ends[0]) if len(ends) == 1 else -1
        ok = length == e == depth
        rows.append(Row(n, f"theta={theta}", "max_chain_length", ok,
                        f"formula={length} energy={e} bfs_depth={depth}"))
    return rows


def suite_cor2(n: int) -> list[Row]:
    rows = []
    for theta in theta_range(n):
        bad = ""
        for a in theta_graph(n, theta).nodes:
            v = gap_bound_violations(a, theta)
            if v:
                bad = f"{a} at (i,l)={v[0]}"
                break
        rows.append(Row(n, f"theta={theta}", "gap_bound", not bad, bad))
    return rows


SUITES: dict[str, Callable[[int], list[Row]]] = {
    "thm1": suite_thm1,
    "thm2": suite_thm2,
    "thm3": suite_thm3,
    "prop1": suite_prop1,
    "prop2": suite_prop2,
    "lemma2": suite_lemma2,
    "shots": suite_shots,
    "cor1": suite_cor1,
    "thm5": suite_thm5,
    "thm6": suite_thm6,
    "thm7": suite_thm7,
    "thm8": suite_thm8,
    "thm9": suite_thm9,
    "prop3": suite_prop3,
    "prop4": suite_prop4,
    "prop5": suite_prop5,
    "cor2": suite_cor2,
}


def run_suite(name: str, n: int) -> list[Row]:
    return SUITES[name](n)


def run_suites(names: Iterable[str], ns: Iterable[int]) -> list[Row]:
    rows: list[Row] = []
    for name in names:
        for n in ns:
            rows.extend(SUITES[name](n))
    return rows
