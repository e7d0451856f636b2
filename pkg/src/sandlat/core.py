"""Compositions of n, dominance ordering, energy and conjugation."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from itertools import accumulate
from typing import Iterable, Iterator, Sequence

from .errors import InvalidN, MismatchedN, NegativePart, NotAPartition, SumMismatch, TooLong

__all__ = [
    "Composition",
    "CompositionKind",
    "make_composition",
    "staircase_seed",
    "energy",
    "dual",
    "dominance_leq",
    "classify",
    "parse_composition",
    "partitions",
    "strict_partitions",
    "compositions",
]


@dataclass(frozen=True, slots=True)
class Composition:
    """A length-n vector of non-negative grain counts summing to n.

    Always stored at full length; trailing zeros are kept so that equality
    and hashing are uniform across all models.
    """

    parts: tuple[int, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.parts, tuple):
            object.__setattr__(self, "parts", tuple(self.parts))

    @property
    def n(self) -> int:
        return len(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __getitem__(self, i):
        return self.parts[i]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.parts)) + "]"

    def __repr__(self) -> str:
        return f"Composition({self})"

    def __lt__(self, other: Composition) -> bool:
        # lexicographic; only used for deterministic sorting
        return self.parts < other.parts

    def prefix_sums(self) -> tuple[int, ...]:
        return tuple(accumulate(self.parts))

    def trimmed(self) -> tuple[int, ...]:
        """Parts with trailing zeros removed."""
        end = len(self.parts)
        while end > 0 and self.parts[end - 1] == 0:
            end -= 1
        return self.parts[:end]

    def replace(self, updates: dict[int, int]) -> Composition:
        """Return a copy with 0-based positions adjusted by the given deltas."""
        parts = list(self.parts)
        for i, delta in updates.items():
            parts[i] += delta
        return Composition(tuple(parts))


class CompositionKind(enum.Enum):
    GENERAL = "General"
    PARTITION = "Partition"
    STRICT_PARTITION = "StrictPartition"


def make_composition(parts: Iterable[int], n: int) -> Composition:
    """Validate ``parts`` and pad them with zeros to length ``n``."""
    parts = [int(x) for x in parts]
    if n < 1:
        raise InvalidN(f"n must be >= 1, got {n}")
    if any(x < 0 for x in parts):
        raise NegativePart(f"negative entry in {parts}")
    if sum(parts) != n:
        raise SumMismatch(f"parts sum to {sum(parts)}, expected {n}")
    if len(parts) > n:
        # only trailing zeros may be dropped
        if any(parts[n:]):
            raise TooLong(f"{len(parts)} entries with nonzero beyond position {n}")
        parts = parts[:n]
    return Composition(tuple(parts) + (0,) * (n - len(parts)))


def staircase_seed(n: int) -> Composition:
    """The seed N = (n, 0, ..., 0)."""
    if n < 1:
        raise InvalidN(f"n must be >= 1, got {n}")
    return Composition((n,) + (0,) * (n - 1))


def energy(a: Composition) -> int:
    return sum(i * x for i, x in enumerate(a.parts))


def is_partition(a: Composition | Sequence[int]) -> bool:
    parts = a.parts if isinstance(a, Composition) else a
    return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


def dual(a: Composition) -> Composition:
    """Conjugate partition: entry i counts the parts that are >= i."""
    if not is_partition(a):
        raise NotAPartition(f"{a} is not weakly decreasing")
    n = a.n
    out = [sum(1 for x in a.parts if x >= i) for i in range(1, n + 1)]
    return Composition(tuple(out))


def _check_same_n(a: Composition, b: Composition) -> None:
    if a.n != b.n:
        raise MismatchedN(f"{a} and {b} have different n")


def dominance_leq(a: Composition, b: Composition) -> bool:
    """True iff every prefix sum of ``a`` is at most that of ``b``."""
    _check_same_n(a, b)
    sa = sb = 0
    for x, y in zip(a.parts, b.parts):
        sa += x
        sb += y
        if sa > sb:
            return False
    return True


def classify(a: Composition | Sequence[int]) -> CompositionKind:
    parts = tuple(a.parts if isinstance(a, Composition) else a)
    if not is_partition(parts):
        return CompositionKind.GENERAL
    positive = [x for x in parts if x > 0]
    if all(positive[i] > positive[i + 1] for i in range(len(positive) - 1)):
        return CompositionKind.STRICT_PARTITION
    return CompositionKind.PARTITION


_TEXT_RE = re.compile(r"^\s*\[?\s*(-?\d+(?:\s*,\s*-?\d+)*)?\s*\]?\s*$")


def parse_composition(text: str, n: int | None = None) -> Composition:
    """Parse the bracketed text form, e.g. ``"[3,1,0,0]"``.

    Missing trailing zeros are accepted; when ``n`` is omitted it is taken
    to be the sum of the parts.
    """
    m = _TEXT_RE.match(text)
    if m is None:
        raise ValueError(f"cannot parse composition from {text!r}")
    body = m.group(1)
    parts = [int(tok) for tok in body.split(",")] if body else []
    if n is None:
        n = sum(parts)
    return make_composition(parts, n)


def partitions(n: int) -> Iterator[Composition]:
    """All partitions of n as padded vectors, in reverse lexicographic order."""

    def rec(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest

    for p in rec(n, n):
        yield Composition(p + (0,) * (n - len(p)))


def strict_partitions(n: int) -> Iterator[Composition]:
    def rec(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first - 1):
                yield (first,) + rest

    for p in rec(n, n):
        yield Composition(p + (0,) * (n - len(p)))


def compositions(n: int) -> Iterator[Composition]:
    """Every length-n composition of n (C(2n-1, n) of them)."""

    def rec(remaining: int, slots: int) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            yield (remaining,)
            return
        for first in range(remaining, -1, -1):
            for rest in rec(remaining - first, slots - 1):
                yield (first,) + rest

    for p in rec(n, n):
        yield Composition(p)
