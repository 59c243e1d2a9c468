import random
from fractions import Fraction as F

import pytest

from reebmetrics import (
    Diagram,
    DiagramPoint,
    validate,
    InvalidGraphError,
    ReebGraph,
    cycle,
    diagram_equal,
    extended_diagram,
    figure1_left,
    figure1_right,
    graph_bottleneck,
    random_graph,
    reduce_extended_filtration,
    segment,
    y_graph,
)
from reebmetrics.persistence import ord0_unionfind, rel1_unionfind


def point(kind, b, d):
    return DiagramPoint(kind, F(b), F(d))


# ---------------------------------------------------------------------------
# worked examples
# ---------------------------------------------------------------------------


def test_segment_diagram():
    assert extended_diagram(segment()) == Diagram([point("Ext0", 0, 3)])


def test_y_diagram():
    assert extended_diagram(y_graph()) == Diagram(
        [point("Ext0", 0, 3), point("Ord0", 1, 2)]
    )


def test_cycle_diagram():
    assert extended_diagram(cycle()) == Diagram(
        [point("Ext0", 0, 3), point("Ext1", 3, 0)]
    )


def test_two_handles_on_a_chain():
    # chain 0-1-2-4-6-7 with extra arcs (1,4) and (2,6): holes span [1,4], [2,6]
    g = ReebGraph(
        [("a", 0), ("b", 1), ("c", 2), ("d", 4), ("e", 6), ("f", 7)],
        [
            ("a", "b"),
            ("b", "c"),
            ("c", "d"),
            ("d", "e"),
            ("e", "f"),
            ("b", "d"),
            ("c", "e"),
        ],
    )
    d = extended_diagram(g)
    assert d.of_kind("Ext1") == (point("Ext1", 4, 1), point("Ext1", 6, 2))


def test_wedge_of_cycle_and_branch():
    g = ReebGraph(
        [("bot", 0), ("m", 1), ("p", F("1.5")), ("top", 2)],
        [("bot", "top"), ("bot", "p"), ("p", "top"), ("p", "m")],
    )
    assert extended_diagram(g) == Diagram(
        [
            point("Ext0", 0, 2),
            point("Ext1", 2, 0),
            point("Ord0", 1, "3/2"),
        ]
    )


def test_upside_down_y_rel1():
    g = ReebGraph(
        [("a", 3), ("b", 2), ("c", 1), ("d", 0)],
        [("a", "c"), ("b", "c"), ("c", "d")],
    )
    assert rel1_unionfind(g) == (point("Rel1", 2, 1),)
    assert extended_diagram(g).of_kind("Rel1") == (point("Rel1", 2, 1),)


def test_single_vertex_diagram():
    g = ReebGraph([("a", F("1.5"))], [])
    assert extended_diagram(g) == Diagram([point("Ext0", "1.5", "1.5")])


def test_unionfind_examples():
    assert ord0_unionfind(y_graph()) == (point("Ord0", 1, 2),)
    assert ord0_unionfind(segment()) == ()


def test_extended_diagram_rejects_invalid():
    g = ReebGraph([("a", 0), ("b", 1), ("c", 2), ("d", 3)], [("a", "b"), ("c", "d")])
    with pytest.raises(InvalidGraphError):
        extended_diagram(g)


def test_diagram_equal():
    assert diagram_equal(extended_diagram(figure1_left()), extended_diagram(figure1_right()))
    assert not diagram_equal(extended_diagram(y_graph()), extended_diagram(segment()))
    d = extended_diagram(cycle())
    assert diagram_equal(d, d)


# ---------------------------------------------------------------------------
# oracle equivalence and structural invariants
# ---------------------------------------------------------------------------


def test_matrix_reduction_matches_unionfind_on_random_graphs():
    rng = random.Random(101)
    for _ in range(100):
        g = random_graph(rng, n_critical=rng.randint(4, 9))
        d = reduce_extended_filtration(g)
        assert d.of_kind("Ord0") == ord0_unionfind(g)
        assert d.of_kind("Rel1") == rel1_unionfind(g)


def test_extended_invariants_on_random_graphs():
    rng = random.Random(577)
    for _ in range(60):
        g = random_graph(rng, n_critical=rng.randint(4, 9))
        d = extended_diagram(g)
        ext0 = d.of_kind("Ext0")
        assert len(ext0) == 1
        assert ext0[0].birth == g.min_value()
        assert ext0[0].death == g.max_value()
        assert len(d.of_kind("Ext1")) == g.first_betti()
        vertex_values = {g.value(v) for v in g.vertex_ids}
        for p in d:
            assert p.birth in vertex_values
            assert p.death in vertex_values


def test_point_type_geometry_on_random_graphs():
    rng = random.Random(31)
    for _ in range(40):
        g = random_graph(rng, n_critical=rng.randint(4, 9))
        for p in extended_diagram(g):
            if p.kind == "Ord0":
                assert p.birth < p.death
            elif p.kind == "Rel1":
                assert p.birth > p.death
            elif p.kind == "Ext0":
                assert p.birth <= p.death
            else:
                assert p.birth >= p.death


def test_tie_handling_equal_values_across_branches():
    # two branch tips share a value; both orders must give the same multiset
    g = ReebGraph(
        [("a", 0), ("t1", 1), ("t2", 1), ("s1", 2), ("s2", 3), ("top", 4)],
        [("a", "s1"), ("t1", "s1"), ("s1", "s2"), ("t2", "s2"), ("s2", "top")],
    )
    d = reduce_extended_filtration(g)
    assert d.of_kind("Ord0") == ord0_unionfind(g)
    assert d.of_kind("Ord0") == (point("Ord0", 1, 2), point("Ord0", 1, 3))


def test_stability_under_jitter():
    rng = random.Random(9)
    for _ in range(40):
        g = random_graph(rng, n_critical=rng.randint(4, 8))
        gap = min(abs(g.value(u) - g.value(v)) for u, v in g.edges)
        delta = gap / 4 * F(rng.randint(1, 64), 64)
        jitters = {
            v: g.value(v) + delta * F(rng.randint(-64, 64), 64) for v in g.vertex_ids
        }
        perturbed = g.with_values(jitters)
        assert graph_bottleneck(g, perturbed) <= delta


def test_tie_handling_rel1_mirror():
    g = ReebGraph(
        [("a", 4), ("t1", 3), ("t2", 3), ("s1", 2), ("s2", 1), ("top", 0)],
        [("a", "s1"), ("t1", "s1"), ("s1", "s2"), ("t2", "s2"), ("s2", "top")],
    )
    d = reduce_extended_filtration(g)
    assert d.of_kind("Rel1") == rel1_unionfind(g)
    assert d.of_kind("Rel1") == (point("Rel1", 3, 1), point("Rel1", 3, 2))


def test_tie_rich_graph_cross_oracle():
    # shared fork/tip levels, parallel edges, and a loop hitting tie values
    g = ReebGraph(
        [
            ("m1", 0),
            ("m2", 0),
            ("s", 1),
            ("f1", 2),
            ("f2", 2),
            ("t1", 3),
            ("t2", 3),
            ("top", 4),
        ],
        [
            ("m1", "s"),
            ("m2", "s"),
            ("s", "f1"),
            ("s", "f2"),
            ("f1", "t1"),
            ("f1", "t2"),
            ("f2", "t2"),
            ("f2", "top"),
        ],
    )
    assert validate(g).ok
    d = reduce_extended_filtration(g)
    assert d.of_kind("Ord0") == ord0_unionfind(g)
    assert d.of_kind("Rel1") == rel1_unionfind(g)
    assert len(d.of_kind("Ext1")) == g.first_betti()
    ext0 = d.of_kind("Ext0")
    assert ext0 == (point("Ext0", 0, 4),)
