"""Reeb graphs as combinatorial objects.

A Reeb graph is a finite multigraph whose vertices carry exact rational
function values and whose edges are monotone arcs (endpoints at strictly
different values). Graphs are immutable after construction; every operation
in this module is a pure function.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .rationals import ValueLike, format_value, to_fraction


class InvalidGraphError(ValueError):
    """Raised when an operation requires invariants the input violates."""


@dataclass(frozen=True)
class GraphPoint:
    """A point on a Reeb graph: either a vertex or an edge-interior point.

    Interior points are parameterized linearly in value along their edge,
    so `value` alone pins the location once the edge is fixed.
    """

    value: Fraction
    vertex: Optional[str] = None
    edge: Optional[int] = None

    def __post_init__(self) -> None:
        if (self.vertex is None) == (self.edge is None):
            raise ValueError("a GraphPoint is either a vertex or an edge point")

    def location_key(self) -> tuple:
        if self.vertex is not None:
            return ("v", self.vertex)
        return ("e", self.edge, self.value)

    def __str__(self) -> str:
        if self.vertex is not None:
            return f"{self.vertex}@{format_value(self.value)}"
        return f"edge{self.edge}@{format_value(self.value)}"


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    location: str


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations

    def codes(self) -> tuple[str, ...]:
        return tuple(v.code for v in self.violations)

    def __str__(self) -> str:
        if self.ok:
            return "valid"
        return "\n".join(f"{v.code} at {v.location}: {v.message}" for v in self.violations)


class ReebGraph:
    """Level-labeled multigraph with monotone arcs.

    `vertices` is an iterable of (id, value) pairs; ids are strings, values
    anything `to_fraction` accepts. `edges` is an iterable of id pairs;
    parallel edges are allowed and kept as distinct arcs.
    """

    def __init__(
        self,
        vertices: Iterable[tuple[str, ValueLike]],
        edges: Iterable[tuple[str, str]] = (),
        name: Optional[str] = None,
    ):
        values: dict[str, Fraction] = {}
        order: list[str] = []
        for vid, raw in vertices:
            vid = str(vid)
            if vid in values:
                raise ValueError(f"duplicate vertex id {vid!r}")
            values[vid] = to_fraction(raw)
            order.append(vid)
        if not values:
            raise ValueError("vertex set must be nonempty")

        edge_list: list[tuple[str, str]] = []
        for u, v in edges:
            u, v = str(u), str(v)
            if u not in values or v not in values:
                raise ValueError(f"edge ({u}, {v}) references unknown vertex")
            if u == v:
                raise ValueError(f"self-loop at {u} is a level edge")
            # orient lower endpoint first when values differ
            if (values[u], u) > (values[v], v):
                u, v = v, u
            edge_list.append((u, v))

        self._values = values
        self._order = tuple(order)
        self.edges: tuple[tuple[str, str], ...] = tuple(edge_list)
        self.name = name

        adj: dict[str, list[tuple[int, str]]] = {vid: [] for vid in order}
        for idx, (u, v) in enumerate(self.edges):
            adj[u].append((idx, v))
            adj[v].append((idx, u))
        self._adj = adj

    # ---- basic accessors ----

    @property
    def vertex_ids(self) -> tuple[str, ...]:
        return self._order

    def value(self, vid: str) -> Fraction:
        return self._values[vid]

    def vertices(self) -> tuple[tuple[str, Fraction], ...]:
        return tuple((vid, self._values[vid]) for vid in self._order)

    def neighbors(self, vid: str) -> tuple[tuple[int, str], ...]:
        return tuple(self._adj[vid])

    def degree(self, vid: str) -> int:
        return len(self._adj[vid])

    def up_degree(self, vid: str) -> int:
        fv = self._values[vid]
        return sum(
            1 for _, w in self._adj[vid] if (self._values[w], w) > (fv, vid)
        )

    def down_degree(self, vid: str) -> int:
        return self.degree(vid) - self.up_degree(vid)

    def is_pass_through(self, vid: str) -> bool:
        """True for a removable regular vertex: one arc down, one arc up."""
        if self.degree(vid) != 2:
            return False
        fv = self._values[vid]
        ups = sum(1 for _, w in self._adj[vid] if self._values[w] > fv)
        downs = sum(1 for _, w in self._adj[vid] if self._values[w] < fv)
        return ups == 1 and downs == 1

    def is_critical(self, vid: str) -> bool:
        return not self.is_pass_through(vid)

    def min_value(self) -> Fraction:
        return min(self._values.values())

    def max_value(self) -> Fraction:
        return max(self._values.values())

    def span(self) -> Fraction:
        return self.max_value() - self.min_value()

    def first_betti(self) -> int:
        return len(self.edges) - len(self._order) + 1

    def edge_values(self, index: int) -> tuple[Fraction, Fraction]:
        u, v = self.edges[index]
        return self._values[u], self._values[v]

    # ---- points ----

    def vertex_point(self, vid: str) -> GraphPoint:
        return GraphPoint(value=self._values[vid], vertex=vid)

    def edge_point(self, index: int, value: ValueLike) -> GraphPoint:
        lo, hi = self.edge_values(index)
        val = to_fraction(value)
        if not (lo <= val <= hi):
            raise ValueError(
                f"value {format_value(val)} outside edge {index} span "
                f"[{format_value(lo)}, {format_value(hi)}]"
            )
        if val == lo:
            return self.vertex_point(self.edges[index][0])
        if val == hi:
            return self.vertex_point(self.edges[index][1])
        return GraphPoint(value=val, edge=index)

    def point_at_parameter(self, index: int, t: ValueLike) -> GraphPoint:
        t = to_fraction(t)
        if not (0 <= t <= 1):
            raise ValueError("edge parameter t must lie in [0, 1]")
        lo, hi = self.edge_values(index)
        return self.edge_point(index, lo + t * (hi - lo))

    def contains_point(self, p: GraphPoint) -> bool:
        if p.vertex is not None:
            return p.vertex in self._values and self._values[p.vertex] == p.value
        if p.edge is None or not (0 <= p.edge < len(self.edges)):
            return False
        lo, hi = self.edge_values(p.edge)
        return lo <= p.value <= hi

    # ---- structural helpers ----

    def is_connected(self) -> bool:
        return len(self._component_ids()) == 1

    def _component_ids(self) -> list[set[str]]:
        seen: set[str] = set()
        comps: list[set[str]] = []
        for start in self._order:
            if start in seen:
                continue
            comp = {start}
            queue = deque([start])
            while queue:
                v = queue.popleft()
                for _, w in self._adj[v]:
                    if w not in comp:
                        comp.add(w)
                        queue.append(w)
            seen |= comp
            comps.append(comp)
        return comps

    def with_values(self, values: dict[str, ValueLike], name: Optional[str] = None) -> "ReebGraph":
        """Same combinatorial structure with reassigned vertex values."""
        new_vals = dict(self._values)
        for vid, raw in values.items():
            if vid not in new_vals:
                raise ValueError(f"unknown vertex id {vid!r}")
            new_vals[vid] = to_fraction(raw)
        return ReebGraph(
            [(vid, new_vals[vid]) for vid in self._order],
            self.edges,
            name=name if name is not None else self.name,
        )

    def negated(self) -> "ReebGraph":
        return ReebGraph(
            [(vid, -self._values[vid]) for vid in self._order],
            self.edges,
            name=self.name,
        )

    # ---- equality is structural; the name is metadata ----

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ReebGraph):
            return NotImplemented
        return (
            self._values == other._values
            and Counter(self.edges) == Counter(other.edges)
        )

    def __hash__(self) -> int:  # pragma: no cover - structural identity only
        return hash((frozenset(self._values.items()), frozenset(Counter(self.edges).items())))

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"<ReebGraph{label} V={len(self._order)} E={len(self.edges)}>"


# ---------------------------------------------------------------------------
# validation / canonicalization
# ---------------------------------------------------------------------------


def validate(g: ReebGraph) -> ValidationReport:
    """Report every invariant violation; an empty report means a valid graph."""
    violations: list[Violation] = []
    for idx, (u, v) in enumerate(g.edges):
        if g.value(u) == g.value(v):
            violations.append(
                Violation(
                    "level-edge",
                    f"edge joins two vertices at value {format_value(g.value(u))}",
                    f"edge {idx} ({u}, {v})",
                )
            )
    if not g.is_connected():
        violations.append(
            Violation(
                "disconnected",
                f"graph has {len(g._component_ids())} connected components",
                "graph",
            )
        )
    for vid in g.vertex_ids:
        if g.is_pass_through(vid):
            violations.append(
                Violation(
                    "pass-through",
                    "non-critical degree-2 vertex (one arc down, one arc up)",
                    f"vertex {vid}",
                )
            )
    return ValidationReport(tuple(violations))


def canonicalize(g: ReebGraph) -> ReebGraph:
    """Remove pass-through vertices; the quotient representation is unique.

    The input must be valid except possibly for pass-through vertices.
    """
    report = validate(g)
    hard = [v for v in report.violations if v.code != "pass-through"]
    if hard:
        raise InvalidGraphError(str(ValidationReport(tuple(hard))))

    values = {vid: g.value(vid) for vid in g.vertex_ids}
    edges = list(g.edges)
    changed = True
    while changed:
        changed = False
        adj: dict[str, list[int]] = {vid: [] for vid in values}
        for idx, (u, v) in enumerate(edges):
            if u is None:
                continue
            adj[u].append(idx)
            adj[v].append(idx)
        for vid in sorted(values, key=lambda x: (values[x], x)):
            incident = adj[vid]
            if len(incident) != 2:
                continue
            fv = values[vid]
            others = []
            for idx in incident:
                u, v = edges[idx]
                others.append(u if v == vid else v)
            if len(others) != 2:
                continue
            a, b = others
            if not (values[a] < fv < values[b] or values[b] < fv < values[a]):
                continue
            lo, hi = (a, b) if values[a] < values[b] else (b, a)
            edges[incident[0]] = (lo, hi)
            edges[incident[1]] = (None, None)  # type: ignore[assignment]
            del values[vid]
            changed = True
            break
    kept = [(u, v) for u, v in edges if u is not None]
    return ReebGraph(sorted(values.items(), key=lambda item: (item[1], item[0])), kept, name=g.name)


def require_canonical(g: ReebGraph) -> None:
    report = validate(g)
    if not report.ok:
        raise InvalidGraphError(str(report))


# ---------------------------------------------------------------------------
# critical structure
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CriticalValues:
    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        for a, b in zip(self.values, self.values[1:]):
            if not a < b:
                raise ValueError("critical values must be strictly increasing")

    def __iter__(self):
        return iter(self.values)

    def __len__(self) -> int:
        return len(self.values)

    def min_gap(self) -> Fraction:
        if len(self.values) < 2:
            raise InvalidGraphError("minimal gap needs at least two critical values")
        return min(b - a for a, b in zip(self.values, self.values[1:]))


def critical_values(g: ReebGraph) -> CriticalValues:
    vals = sorted({g.value(v) for v in g.vertex_ids if g.is_critical(v)})
    return CriticalValues(tuple(vals))


def min_critical_gap(g: ReebGraph) -> Fraction:
    return critical_values(g).min_gap()


@dataclass(frozen=True)
class Arc:
    """A topological arc of the preimage of an open band, on one edge."""

    edge: int
    lower: str
    upper: str


def arcs_in_interval(g: ReebGraph, lo: ValueLike, hi: ValueLike) -> tuple[Arc, ...]:
    lo = to_fraction(lo)
    hi = to_fraction(hi)
    if not lo < hi:
        raise ValueError("interval must satisfy lo < hi")
    for val in critical_values(g):
        if lo < val < hi:
            raise InvalidGraphError(
                f"interval ({format_value(lo)}, {format_value(hi)}) contains "
                f"critical value {format_value(val)}"
            )
    arcs = []
    for idx, (u, v) in enumerate(g.edges):
        if g.value(u) <= lo and g.value(v) >= hi:
            arcs.append(Arc(edge=idx, lower=u, upper=v))
    return tuple(arcs)


# ---------------------------------------------------------------------------
# travel distance d_f
# ---------------------------------------------------------------------------


def _window_connected(g: ReebGraph, x: GraphPoint, y: GraphPoint, lo: Fraction, hi: Fraction) -> bool:
    """Can x reach y inside the preimage of [lo, hi]?"""

    def anchors(p: GraphPoint) -> list[str]:
        if p.vertex is not None:
            return [p.vertex] if lo <= p.value <= hi else []
        out = []
        u, v = g.edges[p.edge]  # type: ignore[arg-type]
        if lo <= p.value <= hi:
            if lo <= g.value(u) <= hi:
                out.append(u)
            if lo <= g.value(v) <= hi:
                out.append(v)
        return out

    if not (lo <= x.value <= hi and lo <= y.value <= hi):
        return False
    if x.location_key() == y.location_key():
        return True
    # two interior points of the same edge reach each other along it
    if x.edge is not None and x.edge == y.edge:
        return True
    start = anchors(x)
    target = set(anchors(y))
    if y.vertex is not None and y.vertex in start:
        return True
    if not start or not target:
        return False
    seen = set(start)
    queue = deque(start)
    while queue:
        v = queue.popleft()
        if v in target:
            return True
        for _, w in g.neighbors(v):
            if w in seen:
                continue
            if lo <= g.value(w) <= hi:
                seen.add(w)
                queue.append(w)
    return bool(seen & target)


def travel_distance(g: ReebGraph, x: GraphPoint, y: GraphPoint) -> Fraction:
    """Minimal value-span over paths joining x and y.

    Exact: within an edge the function is monotone, so the optimum window is
    delimited by vertex values or by the endpoints themselves.
    """
    for p in (x, y):
        if not g.contains_point(p):
            raise ValueError(f"point {p} is not on the graph")
    if x.location_key() == y.location_key():
        return Fraction(0)
    if x.edge is not None and x.edge == y.edge:
        return abs(x.value - y.value)

    floor = min(x.value, y.value)
    ceil = max(x.value, y.value)
    values = sorted({g.value(v) for v in g.vertex_ids} | {x.value, y.value})
    lows = [v for v in values if v <= floor]
    highs = [v for v in values if v >= ceil]

    best: Optional[Fraction] = None
    for hi in highs:
        if best is not None and hi - floor >= best:
            break
        # largest feasible lo for this hi (feasibility is monotone in lo)
        feasible_lo: Optional[Fraction] = None
        a, b = 0, len(lows) - 1
        while a <= b:
            mid = (a + b) // 2
            if _window_connected(g, x, y, lows[mid], hi):
                feasible_lo = lows[mid]
                a = mid + 1
            else:
                b = mid - 1
        if feasible_lo is not None:
            span = hi - feasible_lo
            if best is None or span < best:
                best = span
    if best is None:
        raise InvalidGraphError("points are not connected in the graph")
    return best


# ---------------------------------------------------------------------------
# components
# ---------------------------------------------------------------------------


def split_components(g: ReebGraph) -> tuple[ReebGraph, ...]:
    """Connected components as separate graphs, in order of their minima."""
    comps = g._component_ids()
    out = []
    for comp in comps:
        verts = [(vid, g.value(vid)) for vid in g.vertex_ids if vid in comp]
        edges = [(u, v) for u, v in g.edges if u in comp]
        out.append(ReebGraph(verts, edges, name=g.name))
    out.sort(key=lambda h: (h.min_value(), h.vertex_ids))
    return tuple(out)


@dataclass(frozen=True)
class GraphStats:
    vertices: int
    edges: int
    betti1: int
    critical_values: tuple[Fraction, ...]
    min_gap: Optional[Fraction]


def stats(g: ReebGraph) -> GraphStats:
    crit = critical_values(g)
    gap = crit.min_gap() if len(crit) >= 2 else None
    return GraphStats(
        vertices=len(g.vertex_ids),
        edges=len(g.edges),
        betti1=g.first_betti(),
        critical_values=crit.values,
        min_gap=gap,
    )
