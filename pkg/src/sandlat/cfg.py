"""Chip firing on a line: shot vectors, order test, meets, play and words."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .core import Composition, _check_same_n, is_partition
from .errors import Negative, NegativeHeight, NonIntegral, NotAPartition, PositionOutOfRange
from .rules import TransitionRule, cfg_step
from .statespace import StateGraph, generate, terminals

__all__ = [
    "ShotVector",
    "shot_vector",
    "reconstruct",
    "cfg_leq",
    "cfg_inf",
    "ConvergenceReport",
    "strong_convergence_check",
    "random_playout",
    "word_valid",
    "play_word",
    "valid_words",
    "GreedoidReport",
    "greedoid_check",
]


@dataclass(frozen=True)
class ShotVector:
    origin: Composition
    k: tuple[int, ...]
    m: int

    def __len__(self) -> int:
        return len(self.k)

    @property
    def total(self) -> int:
        return sum(self.k)

    def __le__(self, other: ShotVector) -> bool:
        return all(x <= y for x, y in zip(self.k, other.k))


def shot_vector(origin: Composition, a: Composition, m: int) -> ShotVector:
    """Per-column firing counts taking ``origin`` to ``a``, solved left to right."""
    _check_same_n(origin, a)
    if not (is_partition(origin) and is_partition(a)):
        raise NotAPartition(f"{origin} or {a} is not weakly decreasing")
    k: list[int] = []
    for i in range(origin.n):
        inflow = sum(k[max(0, i - m):i])
        num = origin[i] - a[i] + inflow
        q, r = divmod(num, m)
        if r:
            raise NonIntegral(i + 1)
        if q < 0:
            raise Negative(i + 1)
        k.append(q)
    return ShotVector(origin, tuple(k), m)


def reconstruct(origin: Composition, k: ShotVector | Sequence[int], m: Optional[int] = None) -> Composition:
    """Configuration reached from ``origin`` after firing column i ``k[i]`` times."""
    if isinstance(k, ShotVector):
        m = k.m if m is None else m
        k = k.k
    if m is None:
        raise ValueError("firing width m is required for a bare count vector")
    if any(x < 0 for x in k):
        raise ValueError(f"negative shot count in {tuple(k)}")
    out = []
    for i in range(origin.n):
        h = origin[i] - m * k[i] + sum(k[max(0, i - m):i])
        if h < 0:
            raise NegativeHeight(f"column {i + 1} would hold {h} grains")
        out.append(h)
    return Composition(tuple(out))


def cfg_leq(origin: Composition, a: Composition, b: Composition, m: int) -> bool:
    """``b`` is reachable from ``a`` iff a's shot vector is below b's."""
    return shot_vector(origin, a, m) <= shot_vector(origin, b, m)


def cfg_inf(origin: Composition, a: Composition, b: Composition, m: int) -> Composition:
    ka = shot_vector(origin, a, m).k
    kb = shot_vector(origin, b, m).k
    return reconstruct(origin, [max(x, y) for x, y in zip(ka, kb)], m)


@dataclass
class ConvergenceReport:
    origin: Composition
    m: int
    terminal: Optional[Composition]
    length: Optional[int]
    passed: bool
    sequences_checked: int = 0
    problems: list[str] = field(default_factory=list)


def _count_maximal_paths(g: StateGraph, limit: int) -> Optional[dict[int, dict[int, int]]]:
    """Map node -> {terminal index: number of maximal plays} by DFS, or None past ``limit``."""
    memo: dict[int, dict[int, int]] = {}
    for i in range(len(g.nodes) - 1, -1, -1):
        succ = g.successors_of(i)
        if not succ:
            memo[i] = {i: 1}
            continue
        acc: dict[int, int] = {}
        for j in succ:
            for t, c in memo[j].items():
                acc[t] = acc.get(t, 0) + c
        if sum(acc.values()) > limit:
            return None
        memo[i] = acc
    return memo


def _enumerate_plays(g: StateGraph, limit: int) -> Iterator[list[int]]:
    """Every maximal play from the seed as a list of node indices."""
    stack = [[0]]
    produced = 0
    while stack:
        path = stack.pop()
        succ = g.successors_of(path[-1])
        if not succ:
            produced += 1
            if produced > limit:
                return
            yield path
            continue
        for j in reversed(succ):
            stack.append(path + [j])


def strong_convergence_check(origin: Composition, m: int, exhaustive_limit: int = 200_000,
                             cap: Optional[int] = None) -> ConvergenceReport:
    """Every maximal play from ``origin`` ends at one terminal after the same number of moves.

    Plays are enumerated one by one when there are at most
    ``exhaustive_limit`` of them; otherwise the graded structure of the
    generated graph stands in for the path lengths.
    """
    g = generate(origin, TransitionRule.cfg(m), cap=cap)
    ends = terminals(g)
    report = ConvergenceReport(origin, m, None, None, False)
    if len(ends) != 1:
        report.problems.append(f"{len(ends)} terminal positions")
        return report
    end = ends[0]
    shots = shot_vector(origin, end, m).total
    report.terminal, report.length = end, shots
    counts = _count_maximal_paths(g, exhaustive_limit)
    if counts is not None:
        for path in _enumerate_plays(g, exhaustive_limit):
            report.sequences_checked += 1
            final = g.nodes[path[-1]]
            if final != end:
                report.problems.append(f"play ends at {final}")
            if len(path) - 1 != shots:
                report.problems.append(f"play of length {len(path) - 1} != {shots}")
            if len(report.problems) > 10:
                break
    else:
        depth = g.levels[g.idx(end)]
        if depth != shots:
            report.problems.append(f"depth {depth} != shot total {shots}")
    report.passed = not report.problems
    return report


def random_playout(origin: Composition, m: int, rng: random.Random) -> tuple[Composition, int]:
    """Fire uniformly random legal columns until none is left."""
    cur, moves = origin, 0
    n = origin.n
    while True:
        legal = [i for i in range(1, n - m + 1) if cur[i - 1] - cur[i] >= m + 1]
        if not legal:
            return cur, moves
        cur = cfg_step(cur, rng.choice(legal), m)
        moves += 1


def play_word(origin: Composition, word: Sequence[int], m: int) -> Optional[Composition]:
    """State reached by firing the positions of ``word`` in order, or None if a step is illegal."""
    cur = origin
    for i in word:
        try:
            cur = cfg_step(cur, i, m)
        except PositionOutOfRange:
            return None
        if cur is None:
            return None
    return cur


def word_valid(origin: Composition, word: Sequence[int], m: int) -> bool:
    return play_word(origin, word, m) is not None


def valid_words(origin: Composition, m: int, max_len: int) -> Iterator[tuple[tuple[int, ...], Composition]]:
    """All valid words up to ``max_len`` letters with their end states, shortest first."""
    layer = [((), origin)]
    n = origin.n
    for length in range(max_len + 1):
        yield from layer
        if length == max_len:
            return
        nxt = []
        for word, state in layer:
            for i in range(1, n - m + 1):
                b = cfg_step(state, i, m)
                if b is not None:
                    nxt.append((word + (i,), b))
        if not nxt:
            return
        layer = nxt


@dataclass
class GreedoidReport:
    origin: Composition
    m: int
    max_len: int
    words: int
    passed: bool
    counterexample: Optional[str] = None


def greedoid_check(origin: Composition, m: int, max_len: int, word_cap: int = 2_000_000) -> GreedoidReport:
    """Left-heredity and the exchange axiom over every valid word up to ``max_len``."""
    from .errors import CapacityExceeded

    words: list[tuple[tuple[int, ...], Composition]] = []
    for item in valid_words(origin, m, max_len):
        words.append(item)
        if len(words) > word_cap:
            raise CapacityExceeded(f"more than {word_cap} words")
    language = {w for w, _ in words}
    for w, _ in words:
        if w and w[:-1] not in language:
            return GreedoidReport(origin, m, max_len, len(words), False, f"prefix of {w} invalid")

    # exchange only depends on alpha's end state and on beta's length and letter set
    letter_sets: dict[int, set[frozenset[int]]] = {}
    for w, _ in words:
        letter_sets.setdefault(len(w), set()).add(frozenset(w))
    longer_sets: dict[int, set[frozenset[int]]] = {}
    acc: set[frozenset[int]] = set()
    for length in sorted(letter_sets, reverse=True):
        longer_sets[length] = set(acc)
        acc |= letter_sets[length]
    for alpha, state in words:
        extendable = {i for i in range(1, origin.n - m + 1) if cfg_step(state, i, m) is not None}
        for letters in longer_sets.get(len(alpha), ()):
            if not letters & extendable:
                beta = next(w for w, _ in words if len(w) > len(alpha) and frozenset(w) == letters)
                return GreedoidReport(origin, m, max_len, len(words), False,
                                      f"alpha={alpha} beta={beta}: no letter of beta extends alpha")
    return GreedoidReport(origin, m, max_len, len(words), True)


def firing_counts(origin: Composition, word: Sequence[int]) -> tuple[int, ...]:
    """Shot vector read directly off a play, independent of the recurrence."""
    k = [0] * origin.n
    for i in word:
        k[i - 1] += 1
    return tuple(k)

