"""Graph parsing, validation, intersection forms, and Seifert expansion."""

from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from conftest import (
    E8_EDGES,
    E8_VERTICES,
    SEIFERT_2_3_5,
    SEIFERT_2_7_15,
    SEIFERT_3_5_7,
    TWO_BAD_EDGES,
    TWO_BAD_VERTICES,
    random_negdef_trees,
)
from latticeroot import (
    InvalidSeifertData,
    MalformedGraph,
    ParseError,
    PlumbingGraph,
    build_intersection_form,
    from_seifert,
    graph_from_json,
    graph_to_json,
    negative_continued_fraction,
    seifert_from_json,
    validate,
)


def test_single_vertex_form():
    g = PlumbingGraph(vertices=((0, -1),), edges=())
    form = build_intersection_form(g)
    assert form.rows == ((-1,),)


def test_two_vertex_chain_form():
    g = PlumbingGraph(vertices=((0, -2), (1, -2)), edges=((0, 1),))
    form = build_intersection_form(g)
    assert form.rows == ((-2, 1), (1, -2))


def test_two_bad_vertex_graph_matrix():
    g = PlumbingGraph(vertices=TWO_BAD_VERTICES, edges=TWO_BAD_EDGES)
    form = build_intersection_form(g)
    assert form.diagonal == (-13, -1, -1, -2, -3, -2, -3)
    off = sorted(
        (i, j)
        for i in range(7)
        for j in range(i + 1, 7)
        if form.rows[i][j] == 1
    )
    assert off == [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]
    for i in range(7):
        for j in range(7):
            assert form.rows[i][j] == form.rows[j][i]


def test_e8_validation_report():
    g = PlumbingGraph(vertices=E8_VERTICES, edges=E8_EDGES)
    report = validate(g)
    assert report.is_tree
    assert report.is_negative_definite
    assert report.signature == -8
    assert abs(report.determinant) == 1
    # exactly one vertex satisfies m(v) > -d(v): the trivalent -2 vertex
    assert report.bad_vertex_ids == (0,)


def test_two_bad_graph_validation_report():
    g = PlumbingGraph(vertices=TWO_BAD_VERTICES, edges=TWO_BAD_EDGES)
    report = validate(g)
    assert report.is_tree
    assert report.is_negative_definite
    assert report.signature == -7
    assert abs(report.determinant) == 1
    assert report.bad_vertex_ids == (1, 2)


def test_positive_vertex_not_definite():
    g = PlumbingGraph(vertices=((0, 1),), edges=())
    report = validate(g)
    assert not report.is_negative_definite


def test_malformed_graphs_rejected():
    with pytest.raises(MalformedGraph):
        PlumbingGraph(vertices=((0, -2), (0, -3)), edges=())
    with pytest.raises(MalformedGraph):
        PlumbingGraph(vertices=((0, -2),), edges=((0, 1),))
    with pytest.raises(MalformedGraph):
        PlumbingGraph(vertices=((0, -2),), edges=((0, 0),))
    with pytest.raises(MalformedGraph):
        PlumbingGraph(vertices=((0, -2), (1, -2)), edges=((0, 1), (1, 0)))
    cycle = PlumbingGraph(
        vertices=((0, -2), (1, -2), (2, -2)),
        edges=((0, 1), (1, 2), (0, 2)),
    )
    with pytest.raises(MalformedGraph):
        build_intersection_form(cycle)
    disconnected = PlumbingGraph(vertices=((0, -2), (1, -2)), edges=())
    with pytest.raises(MalformedGraph):
        build_intersection_form(disconnected)


def test_negative_continued_fraction_small_cases():
    assert negative_continued_fraction(2, 1) == [2]
    assert negative_continued_fraction(15, 1) == [15]
    assert negative_continued_fraction(7, 3) == [3, 2, 2]


def test_negative_continued_fraction_random_roundtrip():
    rng = random.Random(99)
    for _ in range(300):
        alpha = rng.randint(2, 60)
        omega = rng.randint(1, alpha - 1)
        if math.gcd(alpha, omega) != 1:
            continue
        coeffs = negative_continued_fraction(alpha, omega)
        assert all(c >= 2 for c in coeffs)
        value = Fraction(coeffs[-1])
        for c in reversed(coeffs[:-1]):
            value = c - 1 / value
        assert value == Fraction(alpha, omega)


def test_from_seifert_poincare_sphere():
    g = from_seifert(*SEIFERT_2_3_5)
    report = validate(g)
    assert len(g.vertex_ids) == 8
    assert report.is_negative_definite
    assert abs(report.determinant) == 1


def test_from_seifert_one_bad_star():
    g = from_seifert(*SEIFERT_2_7_15)
    report = validate(g)
    assert report.is_negative_definite
    assert len(report.bad_vertex_ids) == 1


def test_from_seifert_third_example_negdef():
    g = from_seifert(*SEIFERT_3_5_7)
    report = validate(g)
    assert report.is_negative_definite
    assert abs(report.determinant) == 1


def test_from_seifert_rejects_bad_data():
    with pytest.raises(InvalidSeifertData):
        from_seifert(2, [(1, 1)])  # alpha < 2
    with pytest.raises(InvalidSeifertData):
        from_seifert(2, [(4, 4)])  # omega not < alpha
    with pytest.raises(InvalidSeifertData):
        from_seifert(2, [(4, 2)])  # gcd != 1
    with pytest.raises(InvalidSeifertData):
        from_seifert(2, [(4, 0)])  # omega not positive


def test_graph_json_roundtrip():
    for graph in random_negdef_trees(seed=11, count=10, max_bad=None):
        data = graph_to_json(graph)
        back = graph_from_json(data)
        assert set(back.vertices) == set(graph.vertices)
        assert set(back.edges) == set(graph.edges)


def test_graph_from_json_rejects_garbage():
    with pytest.raises(ParseError):
        graph_from_json({"edges": []})
    with pytest.raises(ParseError):
        graph_from_json([1, 2, 3])
    with pytest.raises(ParseError):
        graph_from_json({"vertices": [{"id": 0}], "edges": []})


def test_seifert_from_json_matches_from_seifert():
    data = {"b": 2, "arms": [[2, 1], [3, 2], [5, 4]]}
    g = seifert_from_json(data)
    assert g == from_seifert(2, ((2, 1), (3, 2), (5, 4)))
