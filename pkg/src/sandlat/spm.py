"""Fixed points of the SPM rule inside the dominance lattice.

The fixed points are the partitions whose consecutive parts drop by at
most one; conjugation sends them to strict partitions, reversing dominance.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Composition,
    CompositionKind,
    classify,
    dominance_leq,
    dual,
    is_partition,
    partitions,
    staircase_seed,
    strict_partitions,
)
from .errors import NotAPartition, TriangularCase
from .order import inf_prefix_min
from .rules import vertical_step

__all__ = [
    "FixedPointAtlas",
    "ClassPartition",
    "spm_normalize",
    "is_spm_fixed",
    "enumerate_fixed_points",
    "check_duality",
    "partition_classes",
    "smallest_strict_partition",
]


@dataclass(frozen=True)
class FixedPointAtlas:
    n: int
    phi: list[Composition]
    strict: list[Composition]
    pairing: dict[Composition, Composition]
    top: Composition
    bottom: Composition


@dataclass(frozen=True)
class ClassPartition:
    n: int
    classes: dict[Composition, list[Composition]]

    def sizes(self) -> dict[Composition, int]:
        return {p: len(members) for p, members in self.classes.items()}


def is_spm_fixed(a: Composition) -> bool:
    return is_partition(a) and all(a[j] - a[j + 1] <= 1 for j in range(a.n - 1))


def spm_normalize(a: Composition) -> Composition:
    """Fire the lowest legal column until the SPM rule no longer applies."""
    if not is_partition(a):
        raise NotAPartition(f"{a} is not weakly decreasing")
    cur = a
    while True:
        for i in range(1, cur.n):
            nxt = vertical_step(cur, i)
            if nxt is not None:
                cur = nxt
                break
        else:
            return cur


def enumerate_fixed_points(n: int) -> FixedPointAtlas:
    phi = sorted((p for p in partitions(n) if is_spm_fixed(p)), reverse=True)
    strict = sorted(strict_partitions(n), reverse=True)
    pairing = {p: dual(p) for p in phi}
    return FixedPointAtlas(
        n=n,
        phi=phi,
        strict=strict,
        pairing=pairing,
        top=spm_normalize(staircase_seed(n)),
        bottom=Composition((1,) * n),
    )


def check_duality(n: int) -> bool:
    """Conjugation is an order-reversing bijection from the fixed points onto
    strict partitions, and strict partitions are closed under prefix-min."""
    atlas = enumerate_fixed_points(n)
    images = [atlas.pairing[p] for p in atlas.phi]
    if sorted(images) != sorted(atlas.strict) or len(set(images)) != len(images):
        return False
    if any(classify(s) is not CompositionKind.STRICT_PARTITION for s in images):
        return False
    for p in atlas.phi:
        for q in atlas.phi:
            if dominance_leq(q, p) != dominance_leq(atlas.pairing[p], atlas.pairing[q]):
                return False
    for s in atlas.strict:
        for t in atlas.strict:
            if classify(inf_prefix_min(s, t)) is not CompositionKind.STRICT_PARTITION:
                return False
    return True


def partition_classes(n: int) -> ClassPartition:
    """Group every partition of n under the fixed point it falls to."""
    classes: dict[Composition, list[Composition]] = {p: [] for p in enumerate_fixed_points(n).phi}
    for a in partitions(n):
        key = spm_normalize(a)
        if key not in classes:
            raise AssertionError(f"{a} normalizes to {key}, which is not a fixed point")
        classes[key].append(a)
    return ClassPartition(n, classes)


def smallest_strict_partition(n: int) -> Composition:
    """Closed form of the dominance-minimal strict partition.

    Defined for n = k(k+1)/2 + r with 0 < r <= k; triangular n raise
    ``TriangularCase`` and callers fall back to enumeration.
    """
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    k = 1
    while (k + 1) * (k + 2) // 2 <= n:
        k += 1
    r = n - k * (k + 1) // 2
    if r == 0:
        raise TriangularCase(f"n={n} is triangular")
    # (k+1, k, ..., k+2-r) then (k-r, k-r-1, ..., 1)
    head = list(range(k + 1, k + 1 - r, -1))
    tail = list(range(k - r, 0, -1))
    parts = head + tail
    return Composition(tuple(parts) + (0,) * (n - len(parts)))


def minimal_strict_partition(n: int) -> Composition:
    """Dominance-minimum of the strict partitions of n, by enumeration."""
    strict = list(strict_partitions(n))
    lows = [s for s in strict if all(dominance_leq(s, t) for t in strict)]
    if len(lows) != 1:
        raise AssertionError(f"strict partitions of {n} have no unique minimum")
    return lows[0]
