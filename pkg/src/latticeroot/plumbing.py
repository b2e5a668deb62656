"""Plumbing trees, their intersection forms, and Seifert star graphs.

A plumbing graph is a finite tree with an integer weight on every vertex.
Its intersection form M has the weights on the diagonal and a 1 in entry
(u, v) exactly when u-v is an edge.  All reports (signature, determinant,
bad vertices) are exact.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from . import linalg
from .errors import InvalidSeifertData, MalformedGraph, ParseError

__all__ = [
    "PlumbingGraph",
    "IntersectionForm",
    "ValidationReport",
    "build_intersection_form",
    "validate",
    "from_seifert",
    "negative_continued_fraction",
    "graph_from_json",
    "graph_to_json",
    "seifert_from_json",
]


@dataclass(frozen=True)
class PlumbingGraph:
    """Weighted graph given by (id, weight) pairs and undirected edges.

    Construction checks local structure (unique ids, known endpoints, no
    self-loops or multi-edges); global tree-ness is reported by validate()
    and enforced by build_intersection_form().
    """

    vertices: tuple[tuple[int, int], ...]
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        ids = [vid for vid, _ in self.vertices]
        if len(set(ids)) != len(ids):
            raise MalformedGraph("duplicate vertex ids")
        known = set(ids)
        seen: set[tuple[int, int]] = set()
        normalized = []
        for a, b in self.edges:
            if a == b:
                raise MalformedGraph(f"self-loop at vertex {a}")
            if a not in known or b not in known:
                raise MalformedGraph(f"edge ({a}, {b}) references unknown vertex")
            key = (min(a, b), max(a, b))
            if key in seen:
                raise MalformedGraph(f"multi-edge between {key[0]} and {key[1]}")
            seen.add(key)
            normalized.append(key)
        object.__setattr__(self, "edges", tuple(normalized))

    @property
    def vertex_ids(self) -> tuple[int, ...]:
        return tuple(vid for vid, _ in self.vertices)

    @property
    def weights(self) -> dict[int, int]:
        return dict(self.vertices)

    def degree(self, vertex_id: int) -> int:
        return sum(1 for a, b in self.edges if vertex_id in (a, b))

    def neighbors(self, vertex_id: int) -> list[int]:
        out = []
        for a, b in self.edges:
            if a == vertex_id:
                out.append(b)
            elif b == vertex_id:
                out.append(a)
        return sorted(out)

    def is_tree(self) -> bool:
        ids = self.vertex_ids
        if not ids:
            return False
        if len(self.edges) != len(ids) - 1:
            return False
        adjacency = {vid: [] for vid in ids}
        for a, b in self.edges:
            adjacency[a].append(b)
            adjacency[b].append(a)
        seen = {ids[0]}
        stack = [ids[0]]
        while stack:
            for nxt in adjacency[stack.pop()]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        return len(seen) == len(ids)

    def bad_vertex_ids(self) -> tuple[int, ...]:
        """Vertices whose weight exceeds the negative of their valency."""
        return tuple(
            vid for vid, weight in sorted(self.vertices) if weight > -self.degree(vid)
        )


@dataclass(frozen=True)
class IntersectionForm:
    """Symmetric integer matrix of a plumbing tree, with exact helpers."""

    vertex_ids: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> int:
        return len(self.vertex_ids)

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.rows[i][i] for i in range(self.size))

    def determinant(self) -> int:
        return linalg.bareiss_determinant(self.rows)

    def inverse(self) -> list[list[Fraction]]:
        inv = linalg.invert_rational(self.rows)
        if inv is None:
            raise MalformedGraph("intersection form is singular")
        return inv

    def apply(self, vec: Sequence[int]) -> list[int]:
        return [sum(r * x for r, x in zip(row, vec)) for row in self.rows]

    def solve(self, vec: Sequence[int | Fraction]) -> list[Fraction]:
        sol = linalg.solve_rational(self.rows, vec)
        if sol is None:
            raise MalformedGraph("intersection form is singular")
        return sol

    def pairing(self, a: Sequence[int], b: Sequence[int]) -> int:
        return sum(x * y for x, y in zip(self.apply(a), b))


@dataclass(frozen=True)
class ValidationReport:
    """Exact structural facts about a plumbing graph."""

    vertex_count: int
    is_tree: bool
    is_negative_definite: bool
    signature: int
    determinant: int
    bad_vertex_ids: tuple[int, ...]

    def to_dict(self) -> dict[str, Any]:
        return {
            "vertex_count": self.vertex_count,
            "is_tree": self.is_tree,
            "is_negative_definite": self.is_negative_definite,
            "signature": self.signature,
            "determinant": self.determinant,
            "bad_vertex_ids": list(self.bad_vertex_ids),
        }


def build_intersection_form(graph: PlumbingGraph) -> IntersectionForm:
    """Intersection form of a plumbing tree (raises MalformedGraph otherwise).

    Rows follow sorted vertex-id order, so the matrix is deterministic.
    """
    if not graph.is_tree():
        raise MalformedGraph("plumbing graph must be a tree")
    ids = tuple(sorted(graph.vertex_ids))
    index = {vid: i for i, vid in enumerate(ids)}
    weights = graph.weights
    size = len(ids)
    rows = [[0] * size for _ in range(size)]
    for vid in ids:
        rows[index[vid]][index[vid]] = weights[vid]
    for a, b in graph.edges:
        rows[index[a]][index[b]] = 1
        rows[index[b]][index[a]] = 1
    return IntersectionForm(ids, tuple(tuple(row) for row in rows))


def validate(graph: PlumbingGraph) -> ValidationReport:
    """Exact validation report; never raises on a structurally sound graph."""
    tree = graph.is_tree()
    if tree:
        form = build_intersection_form(graph)
        neg, zero, pos = linalg.symmetric_inertia(form.rows)
        return ValidationReport(
            vertex_count=len(graph.vertices),
            is_tree=True,
            is_negative_definite=(zero == 0 and pos == 0),
            signature=pos - neg,
            determinant=form.determinant(),
            bad_vertex_ids=graph.bad_vertex_ids(),
        )
    ids = tuple(sorted(graph.vertex_ids))
    index = {vid: i for i, vid in enumerate(ids)}
    size = len(ids)
    rows = [[0] * size for _ in range(size)]
    for vid, weight in graph.vertices:
        rows[index[vid]][index[vid]] = weight
    for a, b in graph.edges:
        rows[index[a]][index[b]] = 1
        rows[index[b]][index[a]] = 1
    neg, zero, pos = linalg.symmetric_inertia(rows)
    return ValidationReport(
        vertex_count=size,
        is_tree=False,
        is_negative_definite=(zero == 0 and pos == 0),
        signature=pos - neg,
        determinant=linalg.bareiss_determinant(rows),
        bad_vertex_ids=graph.bad_vertex_ids(),
    )


# ---------------------------------------------------------------------------
# Seifert fibered star graphs


def negative_continued_fraction(alpha: int, omega: int) -> list[int]:
    """Coefficients [c_1, c_2, ...] with alpha/omega = c_1 - 1/(c_2 - ...),
    every c_i >= 2."""
    if alpha < 2 or not (0 < omega < alpha) or math.gcd(alpha, omega) != 1:
        raise InvalidSeifertData(f"invalid pair (alpha, omega) = ({alpha}, {omega})")
    coefficients: list[int] = []
    a, w = alpha, omega
    while w > 0:
        c = -(-a // w)  # ceil(a / w)
        coefficients.append(c)
        a, w = w, c * w - a
    return coefficients


def from_seifert(b: int, arms: Sequence[Sequence[int]]) -> PlumbingGraph:
    """Star-shaped plumbing of the Seifert data (b; (alpha_1, omega_1), ...).

    The central vertex has weight -b and id 0; arm vertices continue with
    consecutive ids, each arm a chain of weights -c_i from the negative
    continued fraction of alpha/omega.  The omega_i are used exactly as
    given — no normalization is applied.
    """
    vertices: list[tuple[int, int]] = [(0, -int(b))]
    edges: list[tuple[int, int]] = []
    next_id = 1
    for arm in arms:
        if len(arm) != 2:
            raise InvalidSeifertData(f"arm {arm!r} is not a pair")
        alpha, omega = int(arm[0]), int(arm[1])
        chain = negative_continued_fraction(alpha, omega)
        previous = 0
        for c in chain:
            vertices.append((next_id, -c))
            edges.append((previous, next_id))
            previous = next_id
            next_id += 1
    return PlumbingGraph(tuple(vertices), tuple(edges))


# ---------------------------------------------------------------------------
# JSON formats


def graph_from_json(data: Any) -> PlumbingGraph:
    """Parse {"vertices": [{"id": int, "weight": int}, ...], "edges": [[a, b], ...]}."""
    if not isinstance(data, dict):
        raise ParseError("graph JSON must be an object")
    try:
        raw_vertices = data["vertices"]
        raw_edges = data["edges"]
    except KeyError as missing:
        raise ParseError(f"graph JSON missing key {missing}") from None
    if not isinstance(raw_vertices, list) or not isinstance(raw_edges, list):
        raise ParseError("graph JSON 'vertices' and 'edges' must be lists")
    vertices: list[tuple[int, int]] = []
    for item in raw_vertices:
        if (
            not isinstance(item, dict)
            or not isinstance(item.get("id"), int)
            or not isinstance(item.get("weight"), int)
            or isinstance(item.get("id"), bool)
            or isinstance(item.get("weight"), bool)
        ):
            raise ParseError(f"bad vertex entry {item!r}")
        vertices.append((item["id"], item["weight"]))
    edges: list[tuple[int, int]] = []
    for item in raw_edges:
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in item)
        ):
            raise ParseError(f"bad edge entry {item!r}")
        edges.append((item[0], item[1]))
    return PlumbingGraph(tuple(vertices), tuple(edges))


def graph_to_json(graph: PlumbingGraph) -> dict[str, Any]:
    return {
        "vertices": [{"id": vid, "weight": weight} for vid, weight in sorted(graph.vertices)],
        "edges": [list(edge) for edge in sorted(graph.edges)],
    }


def seifert_from_json(data: Any) -> PlumbingGraph:
    """Parse {"b": int, "arms": [[alpha, omega], ...]} into a star graph."""
    if not isinstance(data, dict):
        raise ParseError("seifert JSON must be an object")
    try:
        b = data["b"]
        arms = data["arms"]
    except KeyError as missing:
        raise ParseError(f"seifert JSON missing key {missing}") from None
    if not isinstance(b, int) or isinstance(b, bool) or not isinstance(arms, list):
        raise ParseError("seifert JSON needs integer 'b' and list 'arms'")
    for arm in arms:
        if (
            not isinstance(arm, list)
            or len(arm) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in arm)
        ):
            raise ParseError(f"bad arm entry {arm!r}")
    return from_seifert(b, arms)


def load_graph_file(path: str) -> PlumbingGraph:
    """Load a graph JSON file; accepts either the graph or the Seifert format."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(f"cannot read graph file {path}: {exc}") from exc
    if isinstance(data, dict) and "vertices" in data:
        return graph_from_json(data)
    if isinstance(data, dict) and "b" in data:
        return seifert_from_json(data)
    raise ParseError("JSON is neither a plumbing graph nor Seifert data")
