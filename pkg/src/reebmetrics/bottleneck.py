"""Exact bottleneck distance between typed extended persistence diagrams.

Matchings must pair points of the same kind, so the optimum decomposes as a
maximum of per-kind optima. Each per-kind optimum is found by binary search
over the finite candidate set (pairwise l-infinity distances and diagonal
costs); feasibility at a threshold is a maximum bipartite matching question
with the standard diagonal-slot doubling.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .diagram import KINDS, Diagram, DiagramPoint, linf
from .graph import ReebGraph
from .persistence import extended_diagram
from .rationals import ValueLike, to_fraction


@dataclass(frozen=True)
class PartialMatching:
    """Pairing between two diagrams by point index, plus unmatched indices."""

    pairs: tuple[tuple[int, int], ...]
    unmatched_left: tuple[int, ...]
    unmatched_right: tuple[int, ...]

    def validate(self, d1: Diagram, d2: Diagram) -> None:
        left = [i for i, _ in self.pairs] + list(self.unmatched_left)
        right = [j for _, j in self.pairs] + list(self.unmatched_right)
        if sorted(left) != list(range(len(d1.points))):
            raise ValueError("matching does not cover the left diagram exactly once")
        if sorted(right) != list(range(len(d2.points))):
            raise ValueError("matching does not cover the right diagram exactly once")
        for i, j in self.pairs:
            if d1.points[i].kind != d2.points[j].kind:
                raise ValueError(
                    f"matched points of different kinds: "
                    f"{d1.points[i].kind} vs {d2.points[j].kind}"
                )


@dataclass(frozen=True)
class BottleneckResult:
    value: Fraction
    witness: PartialMatching


def matching_cost(d1: Diagram, d2: Diagram, m: PartialMatching) -> Fraction:
    """Max over matched l-infinity distances and unmatched diagonal costs."""
    m.validate(d1, d2)
    cost = Fraction(0)
    for i, j in m.pairs:
        cost = max(cost, linf(d1.points[i], d2.points[j]))
    for i in m.unmatched_left:
        cost = max(cost, d1.points[i].diagonal_distance)
    for j in m.unmatched_right:
        cost = max(cost, d2.points[j].diagonal_distance)
    return cost


def _kind_matching(
    left: Sequence[DiagramPoint],
    right: Sequence[DiagramPoint],
    delta: Fraction,
) -> Optional[list[Optional[int]]]:
    """Perfect matching in the doubled graph at threshold delta, or None.

    Nodes: every left point and a diagonal slot per right point; targets:
    every right point and a diagonal slot per left point. Returns, for each
    left point, the matched right index or None for its diagonal slot.
    """
    n, k = len(left), len(right)
    # left side: 0..n-1 real points, n..n+k-1 diagonal slots of right points
    # right side: 0..k-1 real points, k..k+n-1 diagonal slots of left points
    def neighbors(a: int) -> list[int]:
        if a < n:
            p = left[a]
            out = [j for j in range(k) if linf(p, right[j]) <= delta]
            if p.diagonal_distance <= delta:
                out.append(k + a)
            return out
        j = a - n
        out = list(range(k, k + n))  # diagonal-to-diagonal is free
        if right[j].diagonal_distance <= delta:
            out.append(j)
        return out

    match_right: dict[int, int] = {}

    def augment(a: int, seen: set[int]) -> bool:
        for b in neighbors(a):
            if b in seen:
                continue
            seen.add(b)
            if b not in match_right or augment(match_right[b], seen):
                match_right[b] = a
                return True
        return False

    for a in range(n + k):
        if not augment(a, set()):
            return None
    assignment: list[Optional[int]] = [None] * n
    for b, a in match_right.items():
        if a < n and b < k:
            assignment[a] = b
    return assignment


def feasible(d1: Diagram, d2: Diagram, delta: ValueLike) -> bool:
    """Does some valid partial matching have cost <= delta?"""
    delta = to_fraction(delta)
    if delta < 0:
        raise ValueError("delta must be nonnegative")
    for kind in KINDS:
        if _kind_matching(d1.of_kind(kind), d2.of_kind(kind), delta) is None:
            return False
    return True


def bottleneck(d1: Diagram, d2: Diagram) -> BottleneckResult:
    """Exact optimum over partial matchings, with a witness attaining it.

    The optimum is one of finitely many candidate values; per kind we binary
    search the sorted candidates for the smallest feasible threshold.
    """
    kind_indices_1 = {kind: [] for kind in KINDS}
    kind_indices_2 = {kind: [] for kind in KINDS}
    for i, p in enumerate(d1.points):
        kind_indices_1[p.kind].append(i)
    for j, q in enumerate(d2.points):
        kind_indices_2[q.kind].append(j)

    value = Fraction(0)
    pairs: list[tuple[int, int]] = []
    unmatched_left: list[int] = []
    unmatched_right: list[int] = []

    for kind in KINDS:
        left = [d1.points[i] for i in kind_indices_1[kind]]
        right = [d2.points[j] for j in kind_indices_2[kind]]
        if not left and not right:
            continue
        candidates = {Fraction(0)}
        for p in left:
            candidates.add(p.diagonal_distance)
            for q in right:
                candidates.add(linf(p, q))
        for q in right:
            candidates.add(q.diagonal_distance)
        ordered = sorted(candidates)
        lo, hi = 0, len(ordered) - 1
        best = ordered[-1]
        while lo <= hi:
            mid = (lo + hi) // 2
            if _kind_matching(left, right, ordered[mid]) is not None:
                best = ordered[mid]
                hi = mid - 1
            else:
                lo = mid + 1
        assignment = _kind_matching(left, right, best)
        assert assignment is not None
        value = max(value, best)
        for a, b in enumerate(assignment):
            if b is None:
                unmatched_left.append(kind_indices_1[kind][a])
            else:
                pairs.append((kind_indices_1[kind][a], kind_indices_2[kind][b]))
        matched_right = {b for b in assignment if b is not None}
        for j in range(len(right)):
            if j not in matched_right:
                unmatched_right.append(kind_indices_2[kind][j])

    witness = PartialMatching(
        tuple(sorted(pairs)),
        tuple(sorted(unmatched_left)),
        tuple(sorted(unmatched_right)),
    )
    result = BottleneckResult(value=value, witness=witness)
    check = matching_cost(d1, d2, witness)
    if check != value:  # pragma: no cover - internal consistency
        raise AssertionError(f"witness cost {check} != optimum {value}")
    return result


def graph_bottleneck(g1: ReebGraph, g2: ReebGraph) -> Fraction:
    """Bottleneck distance between graphs via their extended diagrams."""
    return bottleneck(extended_diagram(g1), extended_diagram(g2)).value
