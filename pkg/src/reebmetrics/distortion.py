"""Functional-distortion machinery: correspondences and certified bounds.

The functional distortion distance itself has no known exact algorithm; all
outputs here are certified intervals. Lower bounds come from half the
bottleneck distance; upper bounds come from evaluating the distortion
functional on an explicit pair of maps (a correspondence) or from analytic
witnesses such as value reassignments on a fixed graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional, Union

from .bottleneck import graph_bottleneck
from .graph import (
    GraphPoint,
    InvalidGraphError,
    ReebGraph,
    critical_values,
    travel_distance,
)
from .isomorphism import structure_isomorphisms
from .rationals import ValueLike, to_fraction


def default_resolution(g: ReebGraph) -> Fraction:
    """Sampling resolution: an eighth of the minimal critical gap."""
    crit = critical_values(g)
    if len(crit) >= 2:
        return crit.min_gap() / 8
    span = g.span()
    return span / 8 if span > 0 else Fraction(1)


def sample_net(g: ReebGraph, resolution: Optional[ValueLike] = None) -> tuple[GraphPoint, ...]:
    """All vertices plus interior points so value spacing stays <= resolution."""
    h = to_fraction(resolution) if resolution is not None else default_resolution(g)
    if h <= 0:
        raise ValueError("resolution must be positive")
    points = [g.vertex_point(v) for v in g.vertex_ids]
    for idx in range(len(g.edges)):
        lo, hi = g.edge_values(idx)
        span = hi - lo
        pieces = -(-span // h)  # ceil(span / h)
        for k in range(1, int(pieces)):
            points.append(g.edge_point(idx, lo + span * Fraction(k, int(pieces))))
    return tuple(points)


@dataclass(frozen=True)
class Correspondence:
    """Discretized map pair (phi, psi) between two graphs.

    phi sends every sample of g1 to a point of g2 and psi every sample of g2
    to a point of g1; samples include all vertices and arc-interior points at
    the stated resolution.
    """

    g1: ReebGraph
    g2: ReebGraph
    phi: dict[GraphPoint, GraphPoint]
    psi: dict[GraphPoint, GraphPoint]
    resolution: Fraction
    exact: bool = False  # True when the maps are value-exact witnesses

    def validate(self) -> None:
        for x, y in self.phi.items():
            if not self.g1.contains_point(x) or not self.g2.contains_point(y):
                raise ValueError("phi maps outside the graphs")
        for y, x in self.psi.items():
            if not self.g2.contains_point(y) or not self.g1.contains_point(x):
                raise ValueError("psi maps outside the graphs")
        if not self.phi or not self.psi:
            raise ValueError("correspondence must cover both sample sets")

    def continuity_defects(self) -> tuple[Fraction, Fraction]:
        """Worst continuity-surrogate slack of phi and psi.

        Consecutive samples along an arc must map to points joinable by a
        path of value-span at most their own gap plus twice the value
        defect; returns the largest overage on each side (zero when the
        surrogate holds).
        """

        def side(src: ReebGraph, dst: ReebGraph, mapping: dict[GraphPoint, GraphPoint]) -> Fraction:
            defect = max(
                (abs(x.value - y.value) for x, y in mapping.items()),
                default=Fraction(0),
            )
            worst = Fraction(0)
            per_edge: dict[int, list[GraphPoint]] = {}
            for p in mapping:
                if p.edge is not None:
                    per_edge.setdefault(p.edge, []).append(p)
            for idx, pts in per_edge.items():
                u, v = src.edges[idx]
                chain = [src.vertex_point(u)] + sorted(pts, key=lambda p: p.value)
                chain.append(src.vertex_point(v))
                for a, b in zip(chain, chain[1:]):
                    if a not in mapping or b not in mapping:
                        continue
                    gap = b.value - a.value
                    allowed = gap + 2 * defect
                    spanned = travel_distance(dst, mapping[a], mapping[b])
                    if spanned > allowed:
                        worst = max(worst, spanned - allowed)
            return worst

        return side(self.g1, self.g2, self.phi), side(self.g2, self.g1, self.psi)


def identity_correspondence(g: ReebGraph, resolution: Optional[ValueLike] = None) -> Correspondence:
    pts = sample_net(g, resolution)
    h = to_fraction(resolution) if resolution is not None else default_resolution(g)
    ident = {p: p for p in pts}
    return Correspondence(g, g, dict(ident), dict(ident), h, exact=True)


def _monotone_spine(g: ReebGraph) -> list[GraphPoint]:
    """A value-monotone vertex path from a global min to a global max.

    Not every connected graph has one (a bridge can force a descent); callers
    get an InvalidGraphError in that case.
    """
    bottom = min(g.vertex_ids, key=lambda v: (g.value(v), v))
    target_value = g.max_value()
    stack = [(bottom, [bottom])]
    seen = {bottom}
    while stack:
        v, path = stack.pop()
        if g.value(v) == target_value:
            return [g.vertex_point(u) for u in path]
        for _, w in sorted(g.neighbors(v), key=lambda t: (g.value(t[1]), t[1])):
            if w not in seen and g.value(w) > g.value(v):
                seen.add(w)
                stack.append((w, path + [w]))
    raise InvalidGraphError("no ascending path from a minimum to a maximum")


def _point_on_spine(g: ReebGraph, spine: list[GraphPoint], value: Fraction) -> GraphPoint:
    value = max(g.min_value(), min(g.max_value(), value))
    prev = spine[0]
    if value <= prev.value:
        return prev
    for nxt in spine[1:]:
        if value <= nxt.value:
            if value == nxt.value:
                return nxt
            # locate the edge between prev and nxt
            for idx, w in g.neighbors(prev.vertex):  # type: ignore[arg-type]
                if w == nxt.vertex:
                    lo, hi = g.edge_values(idx)
                    if lo <= value <= hi:
                        return g.edge_point(idx, value)
            raise AssertionError("spine edge not found")
        prev = nxt
    return spine[-1]


def projection_correspondence(
    g: ReebGraph, seg: ReebGraph, resolution: Optional[ValueLike] = None
) -> Correspondence:
    """Collapse g onto a segment value-preservingly; include the segment back.

    phi sends a point of g to the segment point at the same (clamped) value;
    psi follows a monotone spine of g. Used as the constructive witness when
    comparing a graph with its fully simplified trunk.
    """
    if len(seg.vertex_ids) == 1:
        seg_point: Callable[[Fraction], GraphPoint] = lambda _v: seg.vertex_point(
            seg.vertex_ids[0]
        )
    else:
        if len(seg.edges) != 1:
            raise ValueError("projection target must be a segment or a point")

        def seg_point(v: Fraction) -> GraphPoint:
            lo, hi = seg.edge_values(0)
            return seg.edge_point(0, max(lo, min(hi, v)))

    h1 = to_fraction(resolution) if resolution is not None else default_resolution(g)
    spine = _monotone_spine(g)
    phi = {p: seg_point(p.value) for p in sample_net(g, h1)}
    psi = {
        q: _point_on_spine(g, spine, q.value)
        for q in sample_net(seg, h1)
    }
    return Correspondence(g, seg, phi, psi, h1)


def natural_correspondence(
    g1: ReebGraph,
    g2: ReebGraph,
    vertex_map: dict[str, str],
    resolution: Optional[ValueLike] = None,
) -> Correspondence:
    """Correspondence induced by a structure isomorphism (values may differ).

    Edge samples map by linear reparameterization along matched arcs.
    """
    inverse = {w: v for v, w in vertex_map.items()}
    if len(inverse) != len(vertex_map):
        raise ValueError("vertex map is not a bijection")

    def edge_match(src: ReebGraph, dst: ReebGraph, mapping: dict[str, str]) -> dict[int, int]:
        used: set[int] = set()
        out: dict[int, int] = {}
        for idx, (u, v) in enumerate(src.edges):
            mu, mv = mapping[u], mapping[v]
            found = None
            for jdx, (a, b) in enumerate(dst.edges):
                if jdx in used:
                    continue
                if {a, b} == {mu, mv}:
                    found = jdx
                    break
            if found is None:
                raise ValueError("vertex map does not carry edges to edges")
            used.add(found)
            out[idx] = found
        return out

    fwd_edges = edge_match(g1, g2, vertex_map)
    bwd_edges = edge_match(g2, g1, inverse)

    h = to_fraction(resolution) if resolution is not None else min(
        default_resolution(g1), default_resolution(g2)
    )

    def transport(
        src: ReebGraph, dst: ReebGraph, vmap: dict[str, str], emap: dict[int, int]
    ) -> dict[GraphPoint, GraphPoint]:
        out: dict[GraphPoint, GraphPoint] = {}
        for p in sample_net(src, h):
            if p.vertex is not None:
                out[p] = dst.vertex_point(vmap[p.vertex])
            else:
                lo, hi = src.edge_values(p.edge)  # type: ignore[arg-type]
                t = (p.value - lo) / (hi - lo)
                jdx = emap[p.edge]  # type: ignore[index]
                # matched edge may be traversed in either vertical order
                a, b = src.edges[p.edge]  # type: ignore[index]
                la, lb = dst.edges[jdx]
                if vmap[a] == la:
                    out[p] = dst.point_at_parameter(jdx, t)
                else:
                    out[p] = dst.point_at_parameter(jdx, 1 - t)
        return out

    phi = transport(g1, g2, vertex_map, fwd_edges)
    psi = transport(g2, g1, inverse, bwd_edges)
    return Correspondence(g1, g2, phi, psi, h)


# ---------------------------------------------------------------------------
# the distortion functional and bound certificates
# ---------------------------------------------------------------------------


class _TravelCache:
    def __init__(self, g: ReebGraph):
        self.g = g
        self.memo: dict[tuple, Fraction] = {}

    def __call__(self, x: GraphPoint, y: GraphPoint) -> Fraction:
        key = tuple(sorted((x.location_key(), y.location_key())))
        if key not in self.memo:
            self.memo[key] = travel_distance(self.g, x, y)
        return self.memo[key]


def distortion(g1: ReebGraph, g2: ReebGraph, c: Correspondence) -> Fraction:
    """Max over sampled correspondence pairs of |d_f - d_g|, exact on samples.

    The sampling remainder (twice the resolution) is reported separately by
    `certify_fd_upper`.
    """
    c.validate()
    d1 = _TravelCache(g1)
    d2 = _TravelCache(g2)
    pairs = [(x, y) for x, y in c.phi.items()] + [(x, y) for y, x in c.psi.items()]
    worst = Fraction(0)
    for i in range(len(pairs)):
        x1, y1 = pairs[i]
        for j in range(i + 1, len(pairs)):
            x2, y2 = pairs[j]
            gap = abs(d1(x1, x2) - d2(y1, y2))
            if gap > worst:
                worst = gap
    return worst


def value_defect(c: Correspondence, side: str = "phi") -> Fraction:
    mapping = c.phi if side == "phi" else c.psi
    return max(
        (abs(x.value - y.value) for x, y in mapping.items()), default=Fraction(0)
    )


def fd_upper(g1: ReebGraph, g2: ReebGraph, c: Correspondence) -> Fraction:
    """max of half the distortion and the two value defects, on the samples."""
    return max(
        distortion(g1, g2, c) / 2,
        value_defect(c, "phi"),
        value_defect(c, "psi"),
    )


def fd_lower(g1: ReebGraph, g2: ReebGraph) -> Fraction:
    """Half the bottleneck distance (stability makes this a true lower bound)."""
    return graph_bottleneck(g1, g2) / 2


@dataclass(frozen=True)
class FDBoundCertificate:
    """Certified interval around the functional distortion distance."""

    lower: Fraction
    upper: Fraction
    upper_witness: Union[Correspondence, str]
    lower_source: str = "bottleneck"
    remainder: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        if self.lower > self.upper:
            raise ValueError(
                f"certificate is empty: lower {self.lower} > upper {self.upper}"
            )


def certify_fd_upper(
    g1: ReebGraph,
    g2: ReebGraph,
    witness: Union[Correspondence, str],
    upper: Optional[ValueLike] = None,
    with_lower: bool = True,
) -> FDBoundCertificate:
    """Build a certificate from a correspondence or a stated analytic bound.

    Sampled correspondences contribute their sampling remainder to the upper
    bound; analytic witnesses (operator moves, value shifts) do not.
    """
    if isinstance(witness, Correspondence):
        value = fd_upper(g1, g2, witness)
        remainder = Fraction(0) if witness.exact else 2 * witness.resolution
        upper_total = value + remainder
    else:
        if upper is None:
            raise ValueError("an analytic witness needs an explicit bound")
        upper_total = to_fraction(upper)
        remainder = Fraction(0)
    lower = fd_lower(g1, g2) if with_lower else Fraction(0)
    return FDBoundCertificate(
        lower=lower,
        upper=upper_total,
        upper_witness=witness,
        lower_source="bottleneck" if with_lower else "trivial",
        remainder=remainder,
    )


def value_shift_upper(g1: ReebGraph, g2: ReebGraph, vertex_map: dict[str, str]) -> Fraction:
    """Exact witness bound for a pure value reassignment on a fixed graph.

    With identity maps in both directions, the value defects equal the
    largest vertex displacement and the distortion is at most twice it, so
    the displacement itself bounds the functional distortion distance.
    """
    if set(vertex_map) != set(g1.vertex_ids) or set(vertex_map.values()) != set(
        g2.vertex_ids
    ):
        raise ValueError("vertex map must be a bijection between the vertex sets")
    from collections import Counter

    mapped = Counter(
        tuple(sorted((vertex_map[u], vertex_map[v]))) for u, v in g1.edges
    )
    actual = Counter(tuple(sorted(e)) for e in g2.edges)
    if mapped != actual:
        raise ValueError("vertex map must carry the edge multiset exactly")
    return max(abs(g1.value(v) - g2.value(vertex_map[v])) for v in g1.vertex_ids)


def best_structure_shift(g1: ReebGraph, g2: ReebGraph) -> Optional[Fraction]:
    """Smallest value-shift bound over found structure isomorphisms, if any."""
    best: Optional[Fraction] = None
    for sigma in structure_isomorphisms(g1, g2):
        try:
            bound = value_shift_upper(g1, g2, sigma)
        except ValueError:
            continue
        if best is None or bound < best:
            best = bound
    return best
