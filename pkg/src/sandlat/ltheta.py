"""Threshold models L(n, theta): membership test, fixed points, chain lengths.

A grain may fall from column i to i+1 when a_i - a_{i+1} >= theta. For
theta >= 2 every reachable state is a partition and is read without its
trailing zeros; for theta <= 1 the full length-n vector is used.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Optional

from .core import Composition, compositions, energy, staircase_seed
from .errors import ThetaOneDegenerate
from .order import is_lattice, suborder_check
from .rules import TransitionRule, clamp_theta, successors
from .statespace import StateGraph, generate, terminals

__all__ = [
    "ThetaPattern",
    "ThetaDecomposition",
    "scan_view",
    "find_theta_pattern",
    "member",
    "generate_by_filter",
    "decompose",
    "fixed_point",
    "max_chain_length",
    "gap_bound_violations",
    "ThetaRow",
    "ThetaChainReport",
    "theta_chain_report",
    "theta_graph",
]


@dataclass(frozen=True)
class ThetaPattern:
    start: int  # 1-based index of the leading entry
    length: int  # l; the pattern covers l + 2 entries
    leading: int  # value of the leading entry


@dataclass(frozen=True)
class ThetaDecomposition:
    n: int
    theta: int
    k: int
    l: int
    p: int

    def total(self) -> int:
        d = abs(1 - self.theta)
        return self.k * (self.k + 1) // 2 * d + self.l * (self.k + 1) + self.p


def scan_view(a: Composition, theta: int) -> tuple[int, ...]:
    return a.trimmed() if theta >= 2 else a.parts


def find_theta_pattern(a: Composition, theta: int) -> Optional[ThetaPattern]:
    """Leftmost forbidden run in ``a``.

    Writing the run's entries as k, k-theta+2, k-2theta+3, ..., the
    consecutive drops are theta-2, then theta-1 repeated l-1 times, then
    theta-2 again. Matching on drops is what is done here.
    """
    s = scan_view(a, theta)
    gaps = [s[j] - s[j + 1] for j in range(len(s) - 1)]
    edge, inner = theta - 2, theta - 1
    for i, g in enumerate(gaps):
        if g != edge:
            continue
        t = i + 1
        while t < len(gaps) and gaps[t] == inner:
            t += 1
        if t < len(gaps) and gaps[t] == edge:
            return ThetaPattern(i + 1, t - i, s[i])
    return None


def member(a: Composition, theta: int) -> bool:
    """Closed-form test for a in L(n, theta): drops never below theta-2 and no forbidden run."""
    s = scan_view(a, theta)
    if any(s[j] - s[j + 1] < theta - 2 for j in range(len(s) - 1)):
        return False
    return find_theta_pattern(a, theta) is None


def generate_by_filter(n: int, theta: int) -> set[Composition]:
    return {a for a in compositions(n) if member(a, theta)}


def theta_graph(n: int, theta: int, cap: Optional[int] = None) -> StateGraph:
    return generate(staircase_seed(n), TransitionRule.theta(theta), cap=cap)


def decompose(n: int, theta: int) -> ThetaDecomposition:
    """Write n = d*k(k+1)/2 + l(k+1) + p with d = |1-theta|, k maximal, 0 <= l < d, 0 <= p <= k.

    The ranges [d*T(k), d*T(k+1) - 1] tile the integers, so this choice is unique.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    theta = clamp_theta(theta, n)
    d = abs(1 - theta)
    if d == 0:
        raise ThetaOneDegenerate("theta = 1 has no decomposition")
    k = 0
    while d * (k + 1) * (k + 2) // 2 <= n:
        k += 1
    rest = n - d * k * (k + 1) // 2
    l, p = divmod(rest, k + 1)
    assert l < d and p <= k
    return ThetaDecomposition(n, theta, k, l, p)


def _formula_fixed_point(n: int, theta: int) -> Composition:
    dec = decompose(n, theta)
    k, l, p = dec.k, dec.l, dec.p
    theta = dec.theta
    if theta >= 2:
        vals = [l + j * (theta - 1) + (1 if j < p else 0) for j in range(k, -1, -1)]
        while len(vals) > n:
            if vals[-1] != 0:
                raise AssertionError(f"fixed point for n={n}, theta={theta} does not fit")
            vals.pop()
        vals += [0] * (n - len(vals))
    else:
        d = 1 - theta
        vals = [l + j * d + (1 if j > k - p else 0) for j in range(k + 1)]
        while len(vals) > n:
            if vals[0] != 0:
                raise AssertionError(f"fixed point for n={n}, theta={theta} does not fit")
            vals.pop(0)
        vals = [0] * (n - len(vals)) + vals
    return Composition(tuple(vals))


def fixed_point(n: int, theta: int, check: bool = True) -> Composition:
    """Bottom element of L(n, theta).

    Closed form for theta != 1; theta = 1 is simulated. With ``check`` the
    result is confirmed to be a member on which no move applies.
    """
    theta = clamp_theta(theta, n)
    if theta == 1:
        ends = terminals(theta_graph(n, 1))
        assert len(ends) == 1
        return ends[0]
    P = _formula_fixed_point(n, theta)
    if check:
        if sum(P.parts) != n or min(P.parts) < 0:
            raise AssertionError(f"{P} is not a composition of {n}")
        if not member(P, theta):
            raise AssertionError(f"{P} fails the membership test for theta={theta}")
        if successors(P, TransitionRule.theta(theta)):
            raise AssertionError(f"{P} still admits a move for theta={theta}")
    return P


def max_chain_length(n: int, theta: int) -> int:
    """Length of every maximal chain of L(n, theta), i.e. the energy of its bottom."""
    theta = clamp_theta(theta, n)
    if theta == 1:
        return energy(fixed_point(n, 1))
    dec = decompose(n, theta)
    k, l, p = dec.k, dec.l, dec.p
    if theta >= 2:
        value = (Fraction((theta - 1) * (k - 1) * k * (k + 1), 6) + Fraction(l * k * (k + 1), 2)
                 + Fraction(p * (2 * k - p + 1), 2))
    else:
        value = (Fraction((1 - theta) * (3 * n - k - 2) * k * (k + 1), 6)
                 + Fraction(l * (k + 1) * (2 * n - k - 2), 2) + Fraction(p * (2 * n - p - 1), 2))
    if value.denominator != 1:
        raise AssertionError(f"non-integral chain length {value} for n={n}, theta={theta}")
    return int(value)


def gap_bound_violations(a: Composition, theta: int) -> list[tuple[int, int]]:
    """Pairs (i, l) where a_i - a_{i+l} <= l(theta-1) - 2; members have none."""
    s = scan_view(a, theta)
    bad = []
    for i in range(len(s)):
        for l in range(1, len(s) - i):
            if s[i] - s[i + l] <= l * (theta - 1) - 2:
                bad.append((i + 1, l))
    return bad


@dataclass
class ThetaRow:
    theta: int
    size: int
    fixed_point: Composition
    chain_length: int
    depth: int
    lattice: bool
    suborder: Optional[bool]
    filter_match: bool
    fixed_point_match: bool


@dataclass
class ThetaChainReport:
    n: int
    rows: list[ThetaRow] = field(default_factory=list)
    spm_equals_l2: bool = True
    lb_in_l1: bool = True
    full_count: bool = True
    notes: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        rows_ok = all(
            r.lattice and r.suborder is not False and r.filter_match and r.fixed_point_match
            and r.chain_length == r.depth
            for r in self.rows
        )
        return rows_ok and self.spm_equals_l2 and self.lb_in_l1 and self.full_count


def theta_chain_report(n: int, with_filter: bool = True, check_lattice: bool = True,
                       cap: Optional[int] = None) -> ThetaChainReport:
    """Walk theta from n down to -n+2 checking every structural claim along the way."""
    seed = staircase_seed(n)
    report = ThetaChainReport(n)
    low = -n + 2
    report.notes.append(f"theta below {low} is clamped to {low}")
    graphs: dict[int, StateGraph] = {}
    prev: Optional[StateGraph] = None
    for theta in range(n, low - 1, -1):
        g = theta_graph(n, theta, cap=cap)
        graphs[theta] = g
        ends = terminals(g)
        bottom = ends[0] if len(ends) == 1 else None
        try:
            P = fixed_point(n, theta)
        except AssertionError as exc:
            report.notes.append(f"theta={theta}: {exc}")
            P = _formula_fixed_point(n, theta) if theta != 1 else bottom
        try:
            length = max_chain_length(n, theta)
        except AssertionError as exc:
            report.notes.append(f"theta={theta}: {exc}")
            length = -1
        filter_ok = (generate_by_filter(n, theta) == set(g.nodes)) if with_filter else True
        report.rows.append(ThetaRow(
            theta=theta,
            size=len(g),
            fixed_point=P,
            chain_length=length,
            depth=g.depth,
            lattice=is_lattice(g).is_lattice if check_lattice else True,
            suborder=None if prev is None else suborder_check(prev, g),
            filter_match=filter_ok,
            fixed_point_match=(P == bottom),
        ))
        prev = g
    spm = generate(seed, TransitionRule.vertical(), cap=cap)
    l2 = graphs.get(2) or theta_graph(n, 2, cap=cap)
    report.spm_equals_l2 = spm.nodes == l2.nodes and suborder_check(spm, l2) and suborder_check(l2, spm)
    lb = generate(seed, TransitionRule.brylawski(), cap=cap)
    report.lb_in_l1 = suborder_check(lb, graphs[1])
    report.full_count = len(graphs[low]) == comb(2 * n - 1, n)
    return report
