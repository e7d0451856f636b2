"""The four grain-moving rules as pure step functions.

Positions are 1-based throughout, as are the ``pos`` labels on moves.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .core import Composition, is_partition
from .errors import InvalidRule, NotAPartition, PositionOutOfRange

__all__ = [
    "TransitionRule",
    "Move",
    "vertical_step",
    "horizontal_step",
    "theta_step",
    "cfg_step",
    "successors",
    "parse_rule",
    "clamp_theta",
]

VERTICAL = "vertical"
HORIZONTAL = "horizontal"
THETA = "theta"
CFG = "cfg"
BRYLAWSKI = "lb"


@dataclass(frozen=True)
class TransitionRule:
    """Tagged rule choice.

    ``kind`` is one of ``"vertical"``, ``"horizontal"``, ``"lb"`` (vertical
    and horizontal together), ``"theta"`` or ``"cfg"``. ``param`` carries
    theta or m.
    """

    kind: str
    param: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in (VERTICAL, HORIZONTAL, BRYLAWSKI, THETA, CFG):
            raise InvalidRule(f"unknown rule kind {self.kind!r}")
        if self.kind in (THETA, CFG) and self.param is None:
            raise InvalidRule(f"{self.kind} rule needs a parameter")
        if self.kind == CFG and self.param < 1:
            raise InvalidRule(f"cfg width must be >= 1, got {self.param}")

    @classmethod
    def vertical(cls) -> TransitionRule:
        return cls(VERTICAL)

    @classmethod
    def horizontal(cls) -> TransitionRule:
        return cls(HORIZONTAL)

    @classmethod
    def brylawski(cls) -> TransitionRule:
        return cls(BRYLAWSKI)

    @classmethod
    def theta(cls, theta: int) -> TransitionRule:
        return cls(THETA, int(theta))

    @classmethod
    def cfg(cls, m: int) -> TransitionRule:
        return cls(CFG, int(m))

    @property
    def needs_partition(self) -> bool:
        return self.kind in (HORIZONTAL, BRYLAWSKI, CFG)

    @property
    def energy_step(self) -> int:
        """Energy gained by every single application of the rule."""
        if self.kind == CFG:
            return self.param * (self.param + 1) // 2
        return 1

    def validate_for(self, n: int) -> None:
        if self.kind == CFG and not 1 <= self.param <= max(n - 1, 1):
            raise InvalidRule(f"cfg width m={self.param} outside 1..{n - 1}")

    def __str__(self) -> str:
        if self.kind in (THETA, CFG):
            return f"{self.kind}:{self.param}"
        return {VERTICAL: "spm", HORIZONTAL: "horizontal", BRYLAWSKI: "lb"}[self.kind]


def clamp_theta(theta: int, n: int) -> int:
    """Thresholds below -n+2 all generate the full composition lattice."""
    return max(theta, -n + 2)


_RULE_RE = re.compile(r"^(lb|spm|vertical|horizontal|cfg:(\d+)|theta:(-?\d+))$")


def parse_rule(text: str) -> TransitionRule:
    """Parse ``lb``, ``spm``, ``cfg:<m>`` or ``theta:<theta>``."""
    m = _RULE_RE.match(text.strip().lower())
    if m is None:
        raise InvalidRule(f"cannot parse rule {text!r}")
    head = m.group(1)
    if head == "lb":
        return TransitionRule.brylawski()
    if head in ("spm", "vertical"):
        return TransitionRule.vertical()
    if head == "horizontal":
        return TransitionRule.horizontal()
    if m.group(2) is not None:
        return TransitionRule.cfg(int(m.group(2)))
    return TransitionRule.theta(int(m.group(3)))


@dataclass(frozen=True)
class Move:
    pos: int
    result: Composition
    kind: str = ""


def _check_pos(a: Composition, i: int, last: int) -> None:
    if not 1 <= i <= last:
        raise PositionOutOfRange(f"position {i} outside 1..{last} for {a}")


def _move_one(a: Composition, i: int) -> Composition:
    parts = list(a.parts)
    parts[i - 1] -= 1
    parts[i] += 1
    return Composition(tuple(parts))


def vertical_step(a: Composition, i: int) -> Optional[Composition]:
    _check_pos(a, i, a.n - 1)
    if a[i - 1] - a[i] >= 2:
        return _move_one(a, i)
    return None


def horizontal_step(a: Composition, i: int) -> Optional[Composition]:
    """Slide a grain off a cliff ``p+1`` across a plateau of ``p`` to a ``p-1``.

    The plateau must be non-empty; a bare gap of 2 is a vertical move.
    """
    _check_pos(a, i, a.n - 1)
    if not is_partition(a):
        raise NotAPartition(f"{a} is not weakly decreasing")
    parts = a.parts
    p = parts[i - 1] - 1
    if p < 1 or parts[i] != p:
        return None
    j = i + 1
    while j < a.n and parts[j] == p:
        j += 1
    if j == a.n or parts[j] != p - 1:
        return None
    out = list(parts)
    out[i - 1] -= 1
    out[j] += 1
    return Composition(tuple(out))


def theta_step(a: Composition, i: int, theta: int) -> Optional[Composition]:
    _check_pos(a, i, a.n - 1)
    # the a_i >= 1 guard keeps every state a composition when theta <= 0
    if a[i - 1] >= 1 and a[i - 1] - a[i] >= theta:
        return _move_one(a, i)
    return None


def cfg_step(a: Composition, i: int, m: int) -> Optional[Composition]:
    """Fire column i: it loses m grains, each of the next m columns gains one."""
    if m < 1:
        raise InvalidRule(f"cfg width must be >= 1, got {m}")
    _check_pos(a, i, a.n - m)
    if not is_partition(a):
        raise NotAPartition(f"{a} is not weakly decreasing")
    if a[i - 1] - a[i] < m + 1:
        return None
    parts = list(a.parts)
    parts[i - 1] -= m
    for j in range(i, i + m):
        parts[j] += 1
    return Composition(tuple(parts))


def successors(a: Composition, rule: TransitionRule) -> list[Move]:
    """Every legal move from ``a`` in increasing position order."""
    n = a.n
    kind = rule.kind
    moves: list[Move] = []
    if kind == CFG:
        m = rule.param
        if not is_partition(a):
            raise NotAPartition(f"{a} is not weakly decreasing")
        for i in range(1, n - m + 1):
            b = cfg_step(a, i, m)
            if b is not None:
                moves.append(Move(i, b, CFG))
        return moves
    if rule.needs_partition and not is_partition(a):
        raise NotAPartition(f"{a} is not weakly decreasing")
    for i in range(1, n):
        if kind == THETA:
            b = theta_step(a, i, rule.param)
            if b is not None:
                moves.append(Move(i, b, THETA))
            continue
        if kind in (VERTICAL, BRYLAWSKI):
            b = vertical_step(a, i)
            if b is not None:
                moves.append(Move(i, b, VERTICAL))
                continue
        if kind in (HORIZONTAL, BRYLAWSKI):
            b = horizontal_step(a, i)
            if b is not None:
                moves.append(Move(i, b, HORIZONTAL))
    return moves
