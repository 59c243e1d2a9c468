import random
from fractions import Fraction as F

import pytest

from reebmetrics import (
    InvalidGraphError,
    check_strong_equivalence,
    constant_path,
    contraction_path,
    cycle,
    direct_linear_path,
    figure1_left,
    figure1_right,
    intrinsic_upper,
    join_via_contractions,
    linear_path,
    path_length,
    random_graph,
    segment,
    y_graph,
)
from reebmetrics.paths import GraphPath, check_path


def test_constant_path_length_zero():
    p = constant_path(y_graph())
    assert path_length(p, "bottleneck").total == 0
    assert path_length(p, "fd_upper").total == 0


def test_linear_path_steps_and_certificates():
    y = y_graph()
    p = linear_path(y, {"b": F("1.05"), "c": F("1.95")}, 5)
    assert len(p.steps) == 6
    assert all(c.upper == F(1, 100) for c in p.certificates)
    assert p.steps[0][1] == y
    assert p.steps[-1][1].value("b") == F("1.05")


def test_linear_path_segment_growth():
    s = segment(0, 3)
    p = linear_path(s, {"top": 5}, 2)
    values = [g.value("top") for _, g in p.steps]
    assert values == [F(3), F(4), F(5)]


def test_linear_path_rejects_orientation_flip():
    s = segment(0, 3)
    with pytest.raises(InvalidGraphError):
        linear_path(s, {"top": -1, "bot": 2}, 4)


def test_linear_path_reports_level_collision():
    s = segment(0, 2)
    with pytest.raises(InvalidGraphError) as err:
        linear_path(s, {"top": 0, "bot": 2}, 2)
    assert "step" in str(err.value)


def test_path_length_needs_metric():
    p = constant_path(segment())
    with pytest.raises(ValueError):
        path_length(p, "hausdorff")


def test_graph_path_validation():
    s = segment()
    with pytest.raises(ValueError):
        GraphPath(((F(0), s),), ())  # endpoint times missing
    with pytest.raises(ValueError):
        GraphPath(((F(0), s), (F(1), s)), ())  # certificate count mismatch


# ---------------------------------------------------------------------------
# contraction paths
# ---------------------------------------------------------------------------


def test_contraction_path_segment_goes_straight_to_shrink():
    p = contraction_path(segment(), 4)
    assert len(p.steps) == 6  # 4 shrink steps + terminal collapse
    final = p.steps[-1][1]
    assert len(final.vertex_ids) == 1
    assert final.value(final.vertex_ids[0]) == F(3, 2)


def test_contraction_path_y_prunes_then_shrinks():
    p = contraction_path(y_graph(), 2)
    stage = p.certificates[0]
    # clearing the branch of persistence 1/2... the branch has persistence 1
    assert stage.upper <= 2 * 1
    assert len(p.steps[1][1].vertex_ids) == 2
    final = p.steps[-1][1]
    assert len(final.vertex_ids) == 1


def test_contraction_path_cycle():
    p = contraction_path(cycle(), 2)
    final = p.steps[-1][1]
    assert len(final.vertex_ids) == 1
    assert path_length(p, "fd_upper").total > 0


def test_contraction_path_figure1_certified_length_finite():
    p = contraction_path(figure1_left(), 4)
    total = path_length(p, "fd_upper").total
    assert total > 0
    db_total = path_length(p, "bottleneck").total
    assert db_total <= 2 * total


def test_contraction_clears_random_graphs():
    rng = random.Random(21)
    for _ in range(10):
        g = random_graph(rng, n_critical=rng.randint(4, 8))
        p = contraction_path(g, 2)
        final = p.steps[-1][1]
        assert len(final.vertex_ids) == 1
        assert path_length(p, "fd_upper").total > 0


# ---------------------------------------------------------------------------
# intrinsic upper bounds
# ---------------------------------------------------------------------------


def test_intrinsic_upper_identity_zero():
    y = y_graph()
    assert intrinsic_upper(y, y) == 0


def test_intrinsic_upper_perturbation_linear():
    y = y_graph()
    perturbed = y.with_values({"b": F("1.05"), "c": F("1.95")})
    assert intrinsic_upper(y, perturbed) <= F("0.05")


def test_intrinsic_upper_figure1_positive_finite():
    bound = intrinsic_upper(figure1_left(), figure1_right())
    assert bound > 0


def test_join_path_endpoints():
    y, s = y_graph(), segment(0, 5)
    p = join_via_contractions(y, s, 2)
    assert p.steps[0][1] == y
    assert p.steps[-1][1] == s


def test_direct_linear_path_found_for_shared_structure():
    y = y_graph()
    stretched = y.with_values({"b": F("0.8"), "d": F("3.5")})
    p = direct_linear_path(y, stretched, 4)
    assert p is not None
    assert p.steps[-1][1] == stretched


def test_direct_linear_path_none_for_different_structure():
    assert direct_linear_path(y_graph(), cycle(), 2) is None


# ---------------------------------------------------------------------------
# two-sided consistency checks
# ---------------------------------------------------------------------------


def test_check_strong_equivalence_on_perturbation():
    y = y_graph()
    perturbed = y.with_values({"b": F("1.05"), "c": F("1.95")})
    for n in (2, 4, 8, 16):
        report = check_strong_equivalence(y, perturbed, n)
        assert report.ok
        labels = [c.label for c in report.checks]
        assert "direct-linear" in labels


def test_check_strong_equivalence_figure1():
    report = check_strong_equivalence(figure1_left(), figure1_right(), 4)
    assert report.ok
    for chk in report.checks:
        for seg in chk.segments:
            assert seg.bottleneck <= 2 * seg.fd_upper


def test_refining_linear_partition_never_decreases_bottleneck_sum():
    rng = random.Random(64)
    for _ in range(5):
        g = random_graph(rng, n_critical=rng.randint(4, 7))
        gap = min(abs(g.value(u) - g.value(v)) for u, v in g.edges)
        target = {
            v: g.value(v) + gap / 4 * F(rng.randint(-64, 64), 64)
            for v in g.vertex_ids
        }
        sums = []
        for n in (2, 4, 8, 16):
            p = linear_path(g, target, n)
            sums.append(path_length(p, "bottleneck").total)
        assert all(a <= b for a, b in zip(sums, sums[1:]))


def test_per_segment_two_sided_bound_on_contraction():
    chk = check_path(contraction_path(figure1_left(), 4), "contraction")
    assert chk.ok


def test_admissibility_surrogate_step_bounds_vanish_under_refinement():
    y = y_graph()
    target = {"b": F("1.05"), "c": F("1.95")}
    uppers = []
    for n in (2, 4, 8, 16):
        p = linear_path(y, target, n)
        uppers.append(max(c.upper for c in p.certificates))
    assert all(b == a / 2 for a, b in zip(uppers, uppers[1:]))
    assert uppers[-1] == F("0.05") / 16


def test_linear_path_bottleneck_total_bounded_by_sup_norm():
    rng = random.Random(77)
    g = random_graph(rng, n_critical=6)
    gap = min(abs(g.value(u) - g.value(v)) for u, v in g.edges)
    target = {
        v: g.value(v) + gap / 4 * F(rng.randint(-64, 64), 64) for v in g.vertex_ids
    }
    sup = max(abs(target[v] - g.value(v)) for v in g.vertex_ids)
    p = linear_path(g, target, 16)
    total = path_length(p, "bottleneck").total
    assert total <= sup
    assert all(step <= sup / 16 for step in path_length(p, "bottleneck").per_step)


def test_check_strong_equivalence_identical_graphs():
    y = y_graph()
    report = check_strong_equivalence(y, y, 2)
    assert report.ok
    direct = [c for c in report.checks if c.label == "direct-linear"]
    assert direct and direct[0].bottleneck_total == 0
