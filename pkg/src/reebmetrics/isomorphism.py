"""Value-preserving multigraph isomorphism.

A level-preserving isomorphism certifies functional distortion distance zero
between two Reeb graphs. The search groups vertices by value and backtracks
over value classes; with only down-neighbors assigned at each stage, edge
multiplicities can be checked incrementally.
"""

from __future__ import annotations

from collections import Counter
from typing import Optional

from .graph import ReebGraph


def _degree_profile(g: ReebGraph, vid: str) -> tuple[int, int]:
    return (g.down_degree(vid), g.up_degree(vid))


def _down_multiset(g: ReebGraph, vid: str) -> Counter:
    fv = g.value(vid)
    counter: Counter = Counter()
    for _, w in g.neighbors(vid):
        if g.value(w) < fv:
            counter[w] += 1
    return counter


def level_isomorphism(g1: ReebGraph, g2: ReebGraph) -> Optional[dict[str, str]]:
    """A vertex bijection preserving values and edge multiplicities, or None."""
    if len(g1.vertex_ids) != len(g2.vertex_ids) or len(g1.edges) != len(g2.edges):
        return None
    classes1: dict = {}
    classes2: dict = {}
    for vid in g1.vertex_ids:
        classes1.setdefault(g1.value(vid), []).append(vid)
    for vid in g2.vertex_ids:
        classes2.setdefault(g2.value(vid), []).append(vid)
    if set(classes1) != set(classes2):
        return None
    levels = sorted(classes1)
    for lvl in levels:
        if len(classes1[lvl]) != len(classes2[lvl]):
            return None
        prof1 = sorted(_degree_profile(g1, v) for v in classes1[lvl])
        prof2 = sorted(_degree_profile(g2, v) for v in classes2[lvl])
        if prof1 != prof2:
            return None

    mapping: dict[str, str] = {}
    used: set[str] = set()

    def assign_class(level_idx: int, pos: int) -> bool:
        if level_idx == len(levels):
            return True
        members = classes1[levels[level_idx]]
        if pos == len(members):
            return assign_class(level_idx + 1, 0)
        v = members[pos]
        want = Counter({mapping[u]: c for u, c in _down_multiset(g1, v).items()})
        for w in classes2[levels[level_idx]]:
            if w in used:
                continue
            if _degree_profile(g2, w) != _degree_profile(g1, v):
                continue
            if _down_multiset(g2, w) != want:
                continue
            mapping[v] = w
            used.add(w)
            if assign_class(level_idx, pos + 1):
                return True
            del mapping[v]
            used.remove(w)
        return False

    if assign_class(0, 0):
        return dict(mapping)
    return None


def is_level_isomorphic(g1: ReebGraph, g2: ReebGraph) -> bool:
    return level_isomorphism(g1, g2) is not None


def structure_isomorphisms(
    g1: ReebGraph, g2: ReebGraph, limit: int = 32
) -> list[dict[str, str]]:
    """Orientation-preserving multigraph isomorphisms that ignore exact values.

    Vertices are matched compatibly with the value ORDER on each edge (the
    arc orientations), which is what a monotone linear interpolation of
    vertex values between the two graphs needs. Values themselves may differ.
    Returns up to `limit` witnesses.
    """
    if len(g1.vertex_ids) != len(g2.vertex_ids) or len(g1.edges) != len(g2.edges):
        return []
    order1 = sorted(g1.vertex_ids, key=lambda v: (g1.value(v), v))
    verts2 = list(g2.vertex_ids)
    found: list[dict[str, str]] = []
    mapping: dict[str, str] = {}
    used: set[str] = set()

    def down_up_counts(g: ReebGraph, vid: str, fixed: dict[str, str] | None = None) -> tuple[int, int]:
        return (g.down_degree(vid), g.up_degree(vid))

    def compatible(v: str, w: str) -> bool:
        if down_up_counts(g1, v) != down_up_counts(g2, w):
            return False
        # edges between v and already-assigned vertices must match with the
        # same orientation and multiplicity
        for u, sigma_u in mapping.items():
            m1 = sum(1 for a, b in g1.edges if {a, b} == {u, v})
            m2 = sum(1 for a, b in g2.edges if {a, b} == {sigma_u, w})
            if m1 != m2:
                return False
            if m1:
                o1 = g1.value(u) < g1.value(v)
                o2 = g2.value(sigma_u) < g2.value(w)
                if o1 != o2:
                    return False
        return True

    def backtrack(i: int) -> None:
        if len(found) >= limit:
            return
        if i == len(order1):
            found.append(dict(mapping))
            return
        v = order1[i]
        for w in verts2:
            if w in used:
                continue
            if not compatible(v, w):
                continue
            mapping[v] = w
            used.add(w)
            backtrack(i + 1)
            del mapping[v]
            used.remove(w)

    backtrack(0)
    return found
