from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from reebmetrics import (
    Diagram,
    DiagramPoint,
    ParseError,
    ReebGraph,
    diagram_to_text,
    extended_diagram,
    figure1_left,
    graph_from_json,
    graph_to_json,
    graph_to_text,
    load_graph_or_diagram,
    parse_diagram_text,
    parse_graph_text,
    random_graph,
    y_graph,
)
from reebmetrics.rationals import format_value, parse_value


# ---------------------------------------------------------------------------
# value formatting
# ---------------------------------------------------------------------------


def test_format_value_canonical_decimals():
    assert format_value(F(3, 2)) == "1.5"
    assert format_value(F(1, 10)) == "0.1"
    assert format_value(F(-3, 2)) == "-1.5"
    assert format_value(F(7)) == "7"
    assert format_value(F(1, 8)) == "0.125"


def test_format_value_non_decimal_denominator():
    assert format_value(F(5, 11)) == "5/11"
    assert parse_value("5/11") == F(5, 11)


@given(st.integers(min_value=-10**6, max_value=10**6), st.integers(min_value=1, max_value=10**6))
@settings(max_examples=200, deadline=None)
def test_value_round_trip(num, den):
    x = F(num, den)
    assert parse_value(format_value(x)) == x


def test_parse_value_rejects_garbage():
    with pytest.raises(ValueError):
        parse_value("1.2.3")
    with pytest.raises(ValueError):
        parse_value("abc")


# ---------------------------------------------------------------------------
# graph text format
# ---------------------------------------------------------------------------


def test_graph_text_round_trip():
    g = y_graph()
    assert parse_graph_text(graph_to_text(g)) == g


def test_graph_text_round_trip_random():
    import random

    rng = random.Random(5)
    for _ in range(20):
        g = random_graph(rng, n_critical=rng.randint(4, 9))
        assert parse_graph_text(graph_to_text(g)) == g


def test_print_parse_identity_on_canonical_text():
    g = figure1_left()
    text = graph_to_text(g)
    assert graph_to_text(parse_graph_text(text)) == text


def test_graph_text_comments_and_blanks():
    text = "# a comment\n\nv a 0\nv b 2.5\ne a b\n"
    g = parse_graph_text(text)
    assert g.value("b") == F("2.5")


def test_graph_text_parse_errors_carry_line_numbers():
    with pytest.raises(ParseError) as err:
        parse_graph_text("v a 0\nz nonsense\n")
    assert err.value.line_number == 2
    with pytest.raises(ParseError) as err:
        parse_graph_text("v a 0\nv b xx\n")
    assert err.value.line_number == 2
    with pytest.raises(ParseError) as err:
        parse_graph_text("v a 0 extra junk\n")
    assert err.value.line_number == 1


def test_graph_json_round_trip():
    g = figure1_left()
    assert graph_from_json(graph_to_json(g)) == g
    assert graph_from_json(graph_to_json(g)).name == g.name


# ---------------------------------------------------------------------------
# diagram format
# ---------------------------------------------------------------------------


def test_diagram_round_trip():
    d = extended_diagram(figure1_left())
    assert parse_diagram_text(diagram_to_text(d)) == d


def test_diagram_files_compare_bytewise():
    left = diagram_to_text(extended_diagram(figure1_left()))
    from reebmetrics import figure1_right

    right = diagram_to_text(extended_diagram(figure1_right()))
    assert left == right


def test_diagram_text_sorted_canonically():
    d = Diagram(
        [
            DiagramPoint("Ext0", 0, 3),
            DiagramPoint("Ord0", 1, 2),
            DiagramPoint("Ord0", 0, 2),
        ]
    )
    lines = diagram_to_text(d).splitlines()
    assert lines == ["Ord0 0 2", "Ord0 1 2", "Ext0 0 3"]


def test_diagram_parse_error_line_number():
    with pytest.raises(ParseError) as err:
        parse_diagram_text("Ord0 1 2\nBogus 1 2\n")
    assert err.value.line_number == 2


def test_empty_diagram_round_trip():
    assert parse_diagram_text(diagram_to_text(Diagram())) == Diagram()


# ---------------------------------------------------------------------------
# sniffing
# ---------------------------------------------------------------------------


def test_load_graph_or_diagram():
    g = y_graph()
    assert isinstance(load_graph_or_diagram(graph_to_text(g)), ReebGraph)
    assert isinstance(load_graph_or_diagram(graph_to_json(g)), ReebGraph)
    d = extended_diagram(g)
    assert isinstance(load_graph_or_diagram(diagram_to_text(d)), Diagram)
    with pytest.raises(ValueError):
        load_graph_or_diagram("nothing here\n")
