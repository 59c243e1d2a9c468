"""Graph transformations: band merge, simplification, and the full transform.

`merge` contracts every connected component of the preimage of a closed band
[a, b] to a vertex at the band midpoint; on diagrams this acts by snapping
coordinates inside the band to the midpoint (`snap_diagram`), which is the
testable contract pairing the two.

`simplify` removes every diagram point within the stated offset of the
diagonal by merging bands around the near features' spans, widened so that
snapping cannot drag a surviving point into the cleared zone, and recomputes
the diagram between passes. Each move's metric cost is the width of its
band, so the emitted certificate stays proportional to the clearance
parameter.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .diagram import EXT0, Diagram, DiagramPoint
from .graph import (
    CriticalValues,
    InvalidGraphError,
    ReebGraph,
    canonicalize,
    validate,
)
from .persistence import extended_diagram
from .rationals import ValueLike, to_fraction


@dataclass(frozen=True)
class MergeParams:
    a: Fraction
    b: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", to_fraction(self.a))
        object.__setattr__(self, "b", to_fraction(self.b))
        if self.a > self.b:
            raise ValueError("merge band needs a <= b")

    @property
    def mid(self) -> Fraction:
        return (self.a + self.b) / 2

    @property
    def width(self) -> Fraction:
        return self.b - self.a


@dataclass(frozen=True)
class BandComponent:
    """One contracted component: its new vertex and the vertices it absorbed."""

    mid_id: str
    members: tuple[str, ...]
    representative: Optional[str]  # absorbed vertex closest in value to the mid


def _merge_raw(
    g: ReebGraph, params: MergeParams, mid_prefix: str = "m"
) -> tuple[ReebGraph, tuple[BandComponent, ...]]:
    a, b = params.a, params.b
    in_band = {v for v in g.vertex_ids if a <= g.value(v) <= b}
    overlapping = [
        idx
        for idx, (u, v) in enumerate(g.edges)
        if g.value(u) <= b and g.value(v) >= a
    ]

    parent: dict[object, object] = {("v", v): ("v", v) for v in in_band}
    for idx in overlapping:
        parent[("e", idx)] = ("e", idx)

    def find(x: object) -> object:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: object, y: object) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for idx in overlapping:
        u, v = g.edges[idx]
        if u in in_band:
            union(("e", idx), ("v", u))
        if v in in_band:
            union(("e", idx), ("v", v))

    roots = sorted({find(x) for x in parent}, key=repr)
    mid_of: dict[object, str] = {}
    components: list[BandComponent] = []
    taken = set(g.vertex_ids)
    counter = 0
    for root in roots:
        members = tuple(
            sorted(v for v in in_band if find(("v", v)) == root)
        )
        rep = None
        if members:
            rep = min(members, key=lambda v: (abs(g.value(v) - params.mid), v))
        if len(members) == 1 and g.value(members[0]) == params.mid:
            # a lone vertex already at the midpoint keeps its identity
            mid_id = members[0]
        else:
            while f"{mid_prefix}{counter}" in taken:
                counter += 1
            mid_id = f"{mid_prefix}{counter}"
            taken.add(mid_id)
        mid_of[root] = mid_id
        components.append(BandComponent(mid_id, members, rep))

    vertices: list[tuple[str, Fraction]] = [
        (v, g.value(v)) for v in g.vertex_ids if v not in in_band
    ]
    vertices.extend((comp.mid_id, params.mid) for comp in components)

    edges: list[tuple[str, str]] = []
    for idx, (u, v) in enumerate(g.edges):
        fu, fv = g.value(u), g.value(v)
        if not (fu <= b and fv >= a):
            edges.append((u, v))
            continue
        mid_id = mid_of[find(("e", idx))]
        if fu < a:
            edges.append((u, mid_id))
        if fv > b:
            edges.append((mid_id, v))

    merged = ReebGraph(vertices, edges, name=g.name)
    return merged, tuple(components)


def merge(g: ReebGraph, params: MergeParams) -> ReebGraph:
    """Contract the band [a, b]; output is canonical.

    Post-contract, pass-through vertices left by arcs that crossed the whole
    band are removed, so merging a band free of critical values is a no-op.
    """
    raw, _ = _merge_raw(g, params)
    return canonicalize(raw)


def snap_diagram(d: Diagram, params: MergeParams) -> Diagram:
    """Coordinate-wise snapping: values inside [a, b] move to the midpoint.

    Points whose snapped coordinates coincide survive only if their kind
    admits diagonal membership (Ext0); snapped-flat Ord0/Rel1/Ext1 features
    are destroyed by the merge and leave the multiset.
    """
    a, b, mid = params.a, params.b, params.mid

    def snap(x: Fraction) -> Fraction:
        return mid if a <= x <= b else x

    points = []
    for p in d.points:
        birth, death = snap(p.birth), snap(p.death)
        if birth == death and p.kind != EXT0:
            continue
        points.append(DiagramPoint(p.kind, birth, death))
    return Diagram(points)


# ---------------------------------------------------------------------------
# simplification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Move:
    kind: str  # "band-merge" or "stretch"
    band: tuple[Fraction, Fraction]
    cost: Fraction

    @property
    def width(self) -> Fraction:
        return self.band[1] - self.band[0]


@dataclass(frozen=True)
class SimplifyResult:
    graph: ReebGraph
    alpha: Fraction
    certificate: Fraction  # upper bound on the functional distortion distance
    moves: tuple[Move, ...]


def _stretched_segment(g: ReebGraph, alpha: Fraction) -> tuple[ReebGraph, Move]:
    """Replace a graph of tiny span by a segment clearing the diagonal offset.

    A value-preserving projection onto the segment and a clamped monotone
    section back bound the distortion cost by half the output span.
    """
    lo, hi = g.min_value(), g.max_value()
    mid = (lo + hi) / 2
    half = (hi - lo + 2 * alpha) / 2
    seg = ReebGraph(
        [("bot", mid - half), ("top", mid + half)],
        [("bot", "top")],
        name=g.name,
    )
    cost = max(alpha, half)
    return seg, Move("stretch", (mid - half, mid + half), cost)


def _near_bands(diagram: Diagram, alpha: Fraction) -> list[tuple[Fraction, Fraction]]:
    """Merge bands clearing every near-diagonal feature, with cascade closure.

    Bands start as the overlap-clusters of the near features' own spans. A
    merge snaps coordinates inside its band to the midpoint, which can pull a
    surviving point's persistence below alpha (typically a taller feature
    sharing a coordinate with a cleared one); the closure widens each band by
    the spans of the points it would drag into nearness, so one pass leaves
    no near feature behind.
    """
    spans = sorted(
        (min(p.birth, p.death), max(p.birth, p.death))
        for p in diagram
        if p.kind != EXT0 and p.persistence <= alpha
    )
    if not spans:
        return []

    def overlap_merge(bands: list[list[Fraction]]) -> list[list[Fraction]]:
        bands = sorted(bands)
        out: list[list[Fraction]] = []
        for lo, hi in bands:
            if out and lo <= out[-1][1]:
                out[-1][1] = max(out[-1][1], hi)
            else:
                out.append([lo, hi])
        return out

    bands = overlap_merge([[lo, hi] for lo, hi in spans])
    others = [
        (min(p.birth, p.death), max(p.birth, p.death))
        for p in diagram
        if p.kind != EXT0 and p.persistence > alpha
    ]
    changed = True
    while changed:
        changed = False
        for band in bands:
            lo, hi = band
            mid = (lo + hi) / 2
            for a, b in others:
                inside_a, inside_b = lo <= a <= hi, lo <= b <= hi
                if inside_a == inside_b:
                    continue
                survivor = b if inside_a else a
                if abs(mid - survivor) <= alpha:
                    band[0] = min(lo, a)
                    band[1] = max(hi, b)
                    changed = True
        if changed:
            bands = overlap_merge(bands)
    return [(lo, hi) for lo, hi in bands]


def clear_features(g: ReebGraph, alpha: Fraction) -> tuple[ReebGraph, tuple[Move, ...]]:
    """Remove every non-trunk feature of persistence <= alpha by band merges.

    Each pass merges closure-widened bands around the near features and
    recomputes the diagram; by the snapping principle every near point lands
    on the diagonal and disappears, so the point count strictly decreases
    and the loop terminates.
    """
    work = g
    moves: list[Move] = []
    guard = len(extended_diagram(g)) + 2
    for step in range(guard):
        diagram = extended_diagram(work)
        bands = _near_bands(diagram, alpha)
        if not bands:
            break
        for lo, hi in bands:
            params = MergeParams(lo, hi)
            raw, _ = _merge_raw(work, params, mid_prefix=f"s{step}_")
            moves.append(Move("band-merge", (lo, hi), params.width))
            work = canonicalize(raw)
    else:  # pragma: no cover - termination is structural
        raise AssertionError("simplification failed to terminate")
    return work, tuple(moves)


def move_certificate(moves: Sequence[Move]) -> Fraction:
    """Distortion bound for a composed sequence of band merges.

    The value action of the composition is a chain of clamps, so the maximal
    displacement is computed exactly from each band midpoint's trajectory
    through the later bands, and the back-and-forth path term is bounded by
    the hull of the bands each trajectory visits. The per-move widths always
    add up to a valid bound (triangle inequality), so the minimum of the two
    is taken. A stretch move's cost simply adds.
    """
    if not moves:
        return Fraction(0)
    stretch_cost = sum(
        (m.cost for m in moves if m.kind == "stretch"), Fraction(0)
    )
    bands = [m.band for m in moves if m.kind != "stretch"]
    if not bands:
        return stretch_cost
    total = sum(b - a for a, b in bands)
    displacement = Fraction(0)
    path_term = Fraction(0)
    for i, (lo_i, hi_i) in enumerate(bands):
        position = (lo_i + hi_i) / 2
        hull_lo, hull_hi = lo_i, hi_i
        for lo_j, hi_j in bands[i + 1 :]:
            if lo_j <= position <= hi_j:
                position = (lo_j + hi_j) / 2
                hull_lo = min(hull_lo, lo_j)
                hull_hi = max(hull_hi, hi_j)
        displacement = max(displacement, position - lo_i, hi_i - position)
        path_term = max(path_term, hull_hi - hull_lo)
    composed = displacement + path_term
    return min(total, composed) + stretch_cost


def simplify(g: ReebGraph, alpha: ValueLike) -> SimplifyResult:
    """Clear the diagram of all points within alpha/2 of the diagonal.

    Branch and hole features of persistence <= alpha are removed by
    `clear_features`; if the remaining trunk itself sits inside the diagonal
    offset, it is stretched into a longer segment. The certificate is an
    upper bound for the functional distortion distance between input and
    output.
    """
    alpha = to_fraction(alpha)
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    report = validate(g)
    if not report.ok:
        raise InvalidGraphError(str(report))

    work, cleared = clear_features(g, alpha)
    moves = list(cleared)

    # a trunk of tiny span sits inside the diagonal offset; stretch it out
    if work.span() <= alpha:
        work, stretch = _stretched_segment(work, alpha)
        moves.append(stretch)

    if not moves:
        return SimplifyResult(g, alpha, Fraction(0), ())
    return SimplifyResult(work, alpha, move_certificate(moves), tuple(moves))


# ---------------------------------------------------------------------------
# anchored merges and the full transform
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TransformParams:
    alpha: Fraction
    anchors: CriticalValues

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", to_fraction(self.alpha))
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")

    def bands_disjoint(self) -> bool:
        vals = self.anchors.values
        width = 18 * self.alpha
        return all(b - a > width for a, b in zip(vals, vals[1:]))


@dataclass(frozen=True)
class MergeSequenceResult:
    graph: ReebGraph
    certificate: Fraction
    overlap: bool


def merge_sequence(
    g: ReebGraph, anchors: CriticalValues | Sequence[ValueLike], halfwidth: ValueLike
) -> MergeSequenceResult:
    """Merge a band around every anchor, lowest anchor first.

    Disjoint bands compose at the cost of the widest one (the maps act
    independently around each anchor); overlapping bands are applied in the
    same order with a warning, and their costs add.
    """
    halfwidth = to_fraction(halfwidth)
    if isinstance(anchors, CriticalValues):
        values = list(anchors.values)
    else:
        values = sorted(to_fraction(v) for v in anchors)
    disjoint = all(b - a > 2 * halfwidth for a, b in zip(values, values[1:]))
    if not disjoint:
        warnings.warn(
            "anchor bands overlap (18*alpha >= minimal critical gap); "
            "merging sequentially from the lowest anchor",
            stacklevel=2,
        )
    work = g
    for c in values:
        work = merge(work, MergeParams(c - halfwidth, c + halfwidth))
    if not values:
        cert = Fraction(0)
    elif disjoint:
        cert = 2 * halfwidth
    else:
        cert = 2 * halfwidth * len(values)
    return MergeSequenceResult(work, cert, not disjoint)


@dataclass(frozen=True)
class TransformResult:
    graph: ReebGraph
    certificate: Fraction
    simplification: SimplifyResult
    merge_certificate: Fraction
    overlap: bool


def full_transform(g: ReebGraph, params: TransformParams) -> TransformResult:
    """Simplify at 2*alpha, then merge 9*alpha-bands around the anchors."""
    simplified = simplify(g, 2 * params.alpha)
    merged = merge_sequence(simplified.graph, params.anchors, 9 * params.alpha)
    return TransformResult(
        graph=merged.graph,
        certificate=simplified.certificate + merged.certificate,
        simplification=simplified,
        merge_certificate=merged.certificate,
        overlap=merged.overlap,
    )


def crit_ball_check(d_h: Diagram, d_f: Diagram, r: ValueLike) -> bool:
    """Is every point of d_h within l-infinity distance r of a same-kind
    point of d_f?"""
    r = to_fraction(r)
    if r < 0:
        raise ValueError("radius must be nonnegative")
    for p in d_h:
        targets = d_f.of_kind(p.kind)
        if not any(
            max(abs(p.birth - q.birth), abs(p.death - q.death)) <= r
            for q in targets
        ):
            return False
    return True
