"""Named experiment suites verifying the theory end to end at desk scale.

Every experiment draws exact rational instances from a seeded generator,
checks its statement with exact arithmetic, and reports one record per
trial. Reports are deterministic functions of (seed, config).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .bottleneck import graph_bottleneck
from .diagram import diagram_equal
from .distortion import value_shift_upper
from .generators import figure1_left, figure1_right, figure5, random_graph
from .graph import ReebGraph, critical_values, min_critical_gap, validate
from .isomorphism import is_level_isomorphic
from .operators import (
    MergeParams,
    TransformParams,
    full_transform,
    merge,
    simplify,
    snap_diagram,
)
from .paths import (
    check_path,
    contraction_path,
    intrinsic_upper,
    linear_path,
    path_length,
)
from .persistence import extended_diagram
from .rationals import format_value, to_fraction

EXPERIMENTS = (
    "stability",
    "snapping",
    "simplify-contract",
    "recovery",
    "figure1",
    "figure5",
    "lowerbound-consistency",
    "path-equivalence",
)


@dataclass(frozen=True)
class ExperimentConfig:
    seed: int = 1
    trials: int = 100
    K: Fraction = Fraction(1, 22)
    epsilon_fraction: Fraction = Fraction(1, 2)
    min_critical: int = 4
    max_critical: int = 8
    value_range: tuple[Fraction, Fraction] = (Fraction(0), Fraction(10))

    def __post_init__(self) -> None:
        object.__setattr__(self, "K", to_fraction(self.K))
        object.__setattr__(self, "epsilon_fraction", to_fraction(self.epsilon_fraction))
        if not 0 < self.K <= Fraction(1, 22):
            raise ValueError("K must lie in (0, 1/22]")
        if not 0 < self.epsilon_fraction < 1:
            raise ValueError("epsilon_fraction must lie in (0, 1)")
        if self.trials < 1:
            raise ValueError("trials must be positive")
        if not 2 <= self.min_critical <= self.max_critical:
            raise ValueError("need 2 <= min_critical <= max_critical")


@dataclass(frozen=True)
class TrialRecord:
    experiment: str
    index: int
    passed: bool
    values: dict[str, str] = field(default_factory=dict)

    def to_json(self) -> str:
        payload = {
            "experiment": self.experiment,
            "trial": self.index,
            "pass": self.passed,
        }
        payload.update(self.values)
        return json.dumps(payload, sort_keys=True)


@dataclass(frozen=True)
class ExperimentReport:
    name: str
    config: ExperimentConfig
    records: tuple[TrialRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def counts(self) -> tuple[int, int]:
        good = sum(1 for r in self.records if r.passed)
        return good, len(self.records)

    def to_records_text(self) -> str:
        return "\n".join(r.to_json() for r in self.records) + "\n"

    def to_text(self) -> str:
        good, total = self.counts
        status = "PASS" if self.passed else "FAIL"
        lines = [f"{status} {self.name}: {good}/{total} trials"]
        for r in self.records:
            if not r.passed:
                lines.append(f"  FAIL trial {r.index}: {r.values}")
        return "\n".join(lines) + "\n"


def _fmt(values: dict[str, object]) -> dict[str, str]:
    out = {}
    for key, val in values.items():
        if isinstance(val, Fraction):
            out[key] = format_value(val)
        else:
            out[key] = str(val)
    return out


def _random_instance(rng: random.Random, config: ExperimentConfig) -> ReebGraph:
    n = rng.randint(config.min_critical, config.max_critical)
    return random_graph(rng, n_critical=n, value_range=config.value_range)


def _min_edge_gap(g: ReebGraph) -> Fraction:
    return min(abs(g.value(u) - g.value(v)) for u, v in g.edges)


def _jitter(g: ReebGraph, rng: random.Random, bound: Fraction) -> ReebGraph:
    """Independent per-vertex jitter of magnitude <= bound, kept valid."""
    safe = min(bound, _min_edge_gap(g) / 4)
    values = {
        v: g.value(v) + safe * Fraction(rng.randint(-64, 64), 64)
        for v in g.vertex_ids
    }
    out = g.with_values(values)
    if not validate(out).ok:  # pragma: no cover - jitter bound guarantees this
        raise AssertionError("jitter produced an invalid graph")
    return out


# ---------------------------------------------------------------------------
# individual experiments
# ---------------------------------------------------------------------------


def _run_stability(config: ExperimentConfig) -> list[TrialRecord]:
    rng = random.Random(config.seed)
    records = []
    for i in range(config.trials):
        g = _random_instance(rng, config)
        delta = _min_edge_gap(g) / 4 * Fraction(rng.randint(1, 64), 64)
        perturbed = _jitter(g, rng, delta)
        db = graph_bottleneck(g, perturbed)
        records.append(
            TrialRecord(
                "stability",
                i,
                db <= delta,
                _fmt({"delta": delta, "bottleneck": db}),
            )
        )
    return records


def _run_snapping(config: ExperimentConfig) -> list[TrialRecord]:
    rng = random.Random(config.seed)
    lo, hi = config.value_range
    records = []
    for i in range(config.trials):
        g = _random_instance(rng, config)
        a = lo - 1 + Fraction(rng.randint(0, 1000), 1000) * (hi - lo + 2)
        b = a + Fraction(rng.randint(0, 1000), 1000) * (hi - a + 1)
        params = MergeParams(a, b)
        merged = merge(g, params)
        left = extended_diagram(merged)
        right = snap_diagram(extended_diagram(g), params)
        records.append(
            TrialRecord(
                "snapping",
                i,
                diagram_equal(left, right),
                _fmt({"a": a, "b": b, "points": len(left)}),
            )
        )
    return records


def _run_simplify_contract(config: ExperimentConfig) -> list[TrialRecord]:
    rng = random.Random(config.seed)
    records = []
    for i in range(config.trials):
        g = _random_instance(rng, config)
        alpha = g.span() / 3 * Fraction(rng.randint(1, 100), 100)
        result = simplify(g, alpha)
        out_diagram = extended_diagram(result.graph)
        clearance = all(p.diagonal_distance > alpha / 2 for p in out_diagram)
        db = graph_bottleneck(g, result.graph)
        stable = db <= 4 * alpha
        certified = result.certificate <= 2 * alpha
        records.append(
            TrialRecord(
                "simplify-contract",
                i,
                clearance and stable and certified,
                _fmt(
                    {
                        "alpha": alpha,
                        "bottleneck": db,
                        "certificate": result.certificate,
                        "moves": len(result.moves),
                        "clearance": clearance,
                        "stable": stable,
                        "certified": certified,
                    }
                ),
            )
        )
    return records


def _run_recovery(config: ExperimentConfig) -> list[TrialRecord]:
    rng = random.Random(config.seed)
    records = []
    K = config.K
    for i in range(config.trials):
        f = _random_instance(rng, config)
        a_f = min_critical_gap(f)
        eps = config.epsilon_fraction * a_f / (8 * (1 + 22 * K))
        # jitter at half the bottleneck threshold keeps every trial applicable
        g = _jitter(f, rng, K * eps / 2)
        hypothesis = value_shift_upper(f, g, {v: v for v in f.vertex_ids})
        db = graph_bottleneck(f, g)
        applicable = db < K * eps
        if applicable:
            result = full_transform(g, TransformParams(K * eps, critical_values(f)))
            recovered = is_level_isomorphic(result.graph, f)
            passed = recovered
        else:  # pragma: no cover - jitter scale rules this out
            recovered = False
            passed = True
        records.append(
            TrialRecord(
                "recovery",
                i,
                passed,
                _fmt(
                    {
                        "epsilon": eps,
                        "fd_hypothesis": hypothesis,
                        "bottleneck": db,
                        "applicable": applicable,
                        "recovered": recovered,
                    }
                ),
            )
        )
    return records


def _run_figure1(config: ExperimentConfig) -> list[TrialRecord]:
    left = figure1_left()
    right = figure1_right()
    same_diagram = diagram_equal(extended_diagram(left), extended_diagram(right))
    db = graph_bottleneck(left, right)
    iso = is_level_isomorphic(left, right)
    upper = intrinsic_upper(left, right)
    passed = same_diagram and db == 0 and not iso and upper > 0
    return [
        TrialRecord(
            "figure1",
            0,
            passed,
            _fmt(
                {
                    "diagram_equal": same_diagram,
                    "bottleneck": db,
                    "isomorphic": iso,
                    "intrinsic_upper": upper,
                }
            ),
        )
    ]


def _run_figure5(config: ExperimentConfig) -> list[TrialRecord]:
    records = []
    graphs = {n: figure5(n) for n in range(1, 10)}
    for n in range(1, 9):
        count = len(critical_values(graphs[n]))
        records.append(
            TrialRecord(
                "figure5",
                n,
                count == n + 2,
                _fmt({"check": "critical-count", "n": n, "count": count}),
            )
        )
    previous: Optional[Fraction] = None
    for n in range(1, 8):
        db = graph_bottleneck(graphs[n], graphs[n + 1])
        height = Fraction(1, 2 ** (n + 1))
        ok = db <= height / 2 and (previous is None or db < previous)
        records.append(
            TrialRecord(
                "figure5",
                8 + n,
                ok,
                _fmt(
                    {
                        "check": "consecutive-bottleneck",
                        "n": n,
                        "bottleneck": db,
                        "feature_height": height,
                    }
                ),
            )
        )
        previous = db
    return records


def _run_lowerbound(config: ExperimentConfig) -> list[TrialRecord]:
    rng = random.Random(config.seed)
    records = []

    def check(i: int, kind: str, g1: ReebGraph, g2: ReebGraph, upper: Fraction) -> None:
        db = graph_bottleneck(g1, g2)
        records.append(
            TrialRecord(
                "lowerbound-consistency",
                i,
                db <= 2 * upper,
                _fmt({"pair": kind, "bottleneck": db, "fd_upper": upper}),
            )
        )

    for i in range(config.trials):
        g = _random_instance(rng, config)
        mode = i % 3
        if mode == 0:
            bound = _min_edge_gap(g) / 4 * Fraction(rng.randint(1, 64), 64)
            other = _jitter(g, rng, bound)
            upper = value_shift_upper(g, other, {v: v for v in g.vertex_ids})
            check(i, "jitter", g, other, upper)
        elif mode == 1:
            alpha = g.span() / 4 * Fraction(rng.randint(1, 100), 100)
            result = simplify(g, alpha)
            check(i, "simplify", g, result.graph, result.certificate)
        else:
            lo, hi = config.value_range
            a = lo + Fraction(rng.randint(0, 1000), 1000) * (hi - lo)
            width = (hi - lo) / 5 * Fraction(rng.randint(0, 100), 100)
            params = MergeParams(a, a + width)
            check(i, "merge", g, merge(g, params), params.width)

    from .distortion import certify_fd_upper, projection_correspondence
    from .generators import cycle, segment, y_graph

    left, right = figure1_left(), figure1_right()
    check(config.trials, "figure1", left, right, intrinsic_upper(left, right))
    y = y_graph()
    perturbed = y.with_values({"b": Fraction("1.05"), "c": Fraction("1.95")})
    check(
        config.trials + 1,
        "y-perturbed",
        y,
        perturbed,
        value_shift_upper(y, perturbed, {v: v for v in y.vertex_ids}),
    )
    for offset, (name, graph) in enumerate((("y", y), ("cycle", cycle()))):
        seg = segment()
        cert = certify_fd_upper(graph, seg, projection_correspondence(graph, seg))
        check(config.trials + 2 + offset, f"{name}-collapse", graph, seg, cert.upper)
    return records


def _run_path_equivalence(config: ExperimentConfig) -> list[TrialRecord]:
    rng = random.Random(config.seed)
    refinements = (2, 4, 8, 16)
    records = []
    index = 0

    def record(passed: bool, values: dict[str, object]) -> None:
        nonlocal index
        records.append(
            TrialRecord("path-equivalence", index, passed, _fmt(values))
        )
        index += 1

    pair_count = max(2, config.trials // 20)
    for _ in range(pair_count):
        g = _random_instance(rng, config)
        bound = _min_edge_gap(g) / 4
        target_graph = _jitter(g, rng, bound)
        target = {v: target_graph.value(v) for v in g.vertex_ids}
        sums = []
        for n in refinements:
            path = linear_path(g, target, n)
            length = path_length(path, "bottleneck")
            sums.append(length.total)
            segment_ok = all(
                s.bottleneck <= 2 * s.fd_upper
                for s in check_path(path, f"linear-{n}").segments
            )
            record(
                segment_ok,
                {"check": "linear-segments", "n": n, "bottleneck_sum": length.total},
            )
        monotone = all(a <= b for a, b in zip(sums, sums[1:]))
        record(monotone, {"check": "linear-refinement", "sums": [format_value(s) for s in sums]})

    for label, graph in (("figure1_left", figure1_left()), ("random", _random_instance(rng, config))):
        sums = []
        for n in refinements:
            path = contraction_path(graph, n)
            chk = check_path(path, f"contraction-{n}")
            sums.append(chk.bottleneck_total)
            record(
                chk.ok,
                {
                    "check": "contraction-segments",
                    "graph": label,
                    "n": n,
                    "bottleneck_sum": chk.bottleneck_total,
                    "fd_sum": chk.fd_upper_total,
                },
            )
        monotone = all(a <= b for a, b in zip(sums, sums[1:]))
        record(
            monotone,
            {"check": "contraction-refinement", "graph": label, "sums": [format_value(s) for s in sums]},
        )
    return records


_RUNNERS: dict[str, Callable[[ExperimentConfig], list[TrialRecord]]] = {
    "stability": _run_stability,
    "snapping": _run_snapping,
    "simplify-contract": _run_simplify_contract,
    "recovery": _run_recovery,
    "figure1": _run_figure1,
    "figure5": _run_figure5,
    "lowerbound-consistency": _run_lowerbound,
    "path-equivalence": _run_path_equivalence,
}


def run_experiment(name: str, config: Optional[ExperimentConfig] = None) -> ExperimentReport:
    if name not in _RUNNERS:
        raise ValueError(f"unknown experiment {name!r}; choose from {EXPERIMENTS}")
    config = config or ExperimentConfig()
    records = _RUNNERS[name](config)
    return ExperimentReport(name, config, tuple(records))


def run_all(config: Optional[ExperimentConfig] = None) -> list[ExperimentReport]:
    return [run_experiment(name, config) for name in EXPERIMENTS]
