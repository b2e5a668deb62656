"""Shared fixtures: frozen inputs, random corpora, and brute-force oracles.

Every random corpus is seeded, so the suite is deterministic end to end.
The oracles recompute results by the most naive method available (full box
scans, union-find flood fill, exhaustive 0/1 enumeration) and are the ground
truth the fast implementations are checked against.
"""

from __future__ import annotations

import heapq
import itertools
import random

import pytest

from latticeroot import (
    PlumbingGraph,
    RankProfile,
    WeightedLattice,
    build_intersection_form,
    from_seifert,
    validate,
)

# ---------------------------------------------------------------------------
# frozen inputs

# Poincare sphere, Brieskorn description
SEIFERT_2_3_5 = (2, ((2, 1), (3, 2), (5, 4)))
SEIFERT_3_5_7 = (2, ((3, 1), (5, 4), (7, 6)))
SEIFERT_2_7_15 = (1, ((2, 1), (7, 3), (15, 1)))

# the seven-vertex tree with two bad vertices used throughout: a -13 center,
# two -1 neighbors, each -1 vertex adjacent to a -2 leaf and a -3 leaf
TWO_BAD_VERTICES = ((0, -13), (1, -1), (2, -1), (3, -2), (4, -3), (5, -2), (6, -3))
TWO_BAD_EDGES = ((0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6))

# characteristic vector with k^2 = -15 pinning the shift sigma = 2 used by
# the reference display of that example (any k^2 = -15 vector gives the same
# lattice-graded output; this one is frozen for byte-stable tests)
TWO_BAD_CHAR_SIGMA2 = (13, -1, -1, 0, 1, 0, -1)

E8_VERTICES = tuple((i, -2) for i in range(8))
E8_EDGES = ((0, 1), (0, 2), (0, 4), (2, 3), (4, 5), (5, 6), (6, 7))


@pytest.fixture(scope="session")
def two_bad_graph() -> PlumbingGraph:
    return PlumbingGraph(vertices=TWO_BAD_VERTICES, edges=TWO_BAD_EDGES)


@pytest.fixture(scope="session")
def e8_graph() -> PlumbingGraph:
    return from_seifert(*SEIFERT_2_3_5)


@pytest.fixture(scope="session")
def two_bad_lattice(two_bad_graph) -> WeightedLattice:
    form = build_intersection_form(two_bad_graph)
    return WeightedLattice(form, TWO_BAD_CHAR_SIGMA2)


@pytest.fixture(scope="session")
def two_bad_region(two_bad_lattice):
    from latticeroot import build_region

    return build_region(two_bad_lattice)


@pytest.fixture(scope="session")
def poincare_region():
    from latticeroot import build_region

    form = build_intersection_form(from_seifert(*SEIFERT_2_3_5))
    return build_region(WeightedLattice(form, (0,) * 8))


@pytest.fixture(scope="session")
def one_bad_star_wu_region():
    from latticeroot import build_region, enumerate_orbits, wu_vector

    form = build_intersection_form(from_seifert(*SEIFERT_2_7_15))
    (orbit,) = enumerate_orbits(form)
    wu = wu_vector(form, orbit.representative)
    return build_region(WeightedLattice(form, tuple(form.apply(wu.w))))


# ---------------------------------------------------------------------------
# random corpora


def prufer_tree_edges(rng: random.Random, n: int) -> list[tuple[int, int]]:
    """Uniformly random labeled tree on vertices 0..n-1."""
    if n <= 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    for v in seq:
        leaf = heapq.heappop(leaves)
        degree[leaf] = 0
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    last = [v for v in range(n) if degree[v] == 1]
    assert len(last) == 2
    edges.append((last[0], last[1]))
    return edges


def random_tree(
    rng: random.Random,
    n: int,
    weight_range: tuple[int, int] = (-5, -1),
) -> PlumbingGraph:
    edges = prufer_tree_edges(rng, n)
    vertices = tuple(
        (i, rng.randint(weight_range[0], weight_range[1])) for i in range(n)
    )
    return PlumbingGraph(vertices=vertices, edges=tuple(edges))


def random_negdef_trees(
    seed: int,
    count: int,
    max_vertices: int = 6,
    max_bad: int | None = 1,
    weight_range: tuple[int, int] = (-5, -1),
) -> list[PlumbingGraph]:
    """Seeded corpus of negative definite trees, filtered by bad-vertex count."""
    rng = random.Random(seed)
    out: list[PlumbingGraph] = []
    while len(out) < count:
        graph = random_tree(rng, rng.randint(1, max_vertices), weight_range)
        report = validate(graph)
        if not report.is_negative_definite:
            continue
        if max_bad is not None and len(report.bad_vertex_ids) > max_bad:
            continue
        out.append(graph)
    return out


def random_star(rng: random.Random) -> PlumbingGraph:
    """Random star-shaped tree: <= 5 arms of length <= 3, arm weights <= -2."""
    arms = rng.randint(1, 5)
    vertices = [(0, rng.randint(-10, -1))]
    edges = []
    next_id = 1
    for _ in range(arms):
        prev = 0
        for _ in range(rng.randint(1, 3)):
            vertices.append((next_id, rng.randint(-5, -2)))
            edges.append((prev, next_id))
            prev = next_id
            next_id += 1
    return PlumbingGraph(vertices=tuple(vertices), edges=tuple(edges))


def random_negdef_stars(seed: int, count: int) -> list[PlumbingGraph]:
    rng = random.Random(seed)
    out: list[PlumbingGraph] = []
    while len(out) < count:
        graph = random_star(rng)
        if validate(graph).is_negative_definite:
            out.append(graph)
    return out


def gf2_wu_solution(form) -> tuple[int, ...]:
    """A 0/1 vector w with M*w characteristic, via GF(2) elimination.

    Solves (M mod 2) w = diag mod 2; a solution always exists because the
    diagonal functional kills the mod-2 radical of a symmetric form.
    """
    n = form.size
    rows = []
    for i in range(n):
        bits = 0
        for j in range(n):
            if form.rows[i][j] % 2:
                bits |= 1 << j
        bits |= (form.diagonal[i] % 2) << n
        rows.append(bits)
    pivot_of: dict[int, int] = {}
    for row in rows:
        for col, prow in pivot_of.items():
            if row >> col & 1:
                row ^= prow
        if row & ((1 << n) - 1):
            col = (row & -row).bit_length() - 1
            pivot_of[col] = row
        else:
            assert row == 0, "inconsistent Wu system"
    w = [0] * n
    for col in sorted(pivot_of, reverse=True):
        row = pivot_of[col]
        acc = row >> n & 1
        for j in range(col + 1, n):
            if row >> j & 1:
                acc ^= w[j]
        w[col] = acc
    return tuple(w)


def star_region_cases(
    seed: int, count: int, budget: int = 400_000
) -> list[tuple[PlumbingGraph, "WeightedLattice", "Region"]]:
    """Star instances whose full sublevel enumeration fits a point budget.

    Per accepted graph: the canonical orbit of the diagonal characteristic
    vector, plus the Wu (self-conjugate) orbit when that is a different
    orbit.  Graphs whose enumeration exceeds the budget are redrawn, so the
    corpus stays tractable while the shape constraints (<= 5 arms, arm
    length <= 3) are untouched.
    """
    from latticeroot import (
        Region,
        WeightedLattice,
        build_intersection_form,
        build_region,
        canonical_representative,
        is_same_orbit,
    )
    from latticeroot.errors import CapacityExceeded, StabilizationNotReached

    rng = random.Random(seed)
    cases: list[tuple[PlumbingGraph, WeightedLattice, Region]] = []
    accepted = 0
    while accepted < count:
        graph = random_star(rng)
        if not validate(graph).is_negative_definite:
            continue
        form = build_intersection_form(graph)
        try:
            chars = [canonical_representative(form, form.diagonal, budget=budget)]
            wu_char = tuple(form.apply(gf2_wu_solution(form)))
            if not is_same_orbit(form, chars[0], wu_char):
                chars.append(wu_char)
            built = []
            for char in chars:
                lattice = WeightedLattice(form, char, budget=budget)
                built.append((graph, lattice, build_region(lattice)))
        except (CapacityExceeded, StabilizationNotReached):
            continue
        cases.extend(built)
        accepted += 1
    return cases


# ---------------------------------------------------------------------------
# brute-force oracles


def box_points_up_to(lattice: WeightedLattice, level: int) -> set[tuple[int, ...]]:
    """All lattice points of weight <= level, by a certified complete scan.

    w(x) <= n is the ellipsoid (x + kappa/2)^T (-M) (x + kappa/2) <= 2n - k^2/4
    of the positive definite -M; every solution obeys the exact coordinate
    bound (x_i - c_i)^2 <= r^2 * ((-M)^-1)_ii, so a box that wide is complete.
    """
    from fractions import Fraction

    from latticeroot.linalg import invert_rational

    radius2 = 2 * Fraction(level) - lattice.k_square / 4
    if radius2 < 0:
        return set()
    center = [-k / 2 for k in lattice.kappa]
    inv = invert_rational(lattice.positive)
    assert inv is not None
    ranges = []
    for i in range(lattice.size):
        bound2 = radius2 * inv[i][i]
        b = 0
        while Fraction(b * b) <= bound2:
            b += 1
        ranges.append(range(int(center[i]) - b - 1, int(center[i]) + b + 2))
    return {
        p
        for p in itertools.product(*ranges)
        if lattice.weight(p) <= level
    }


def flood_components(points: set[tuple[int, ...]]) -> list[set[tuple[int, ...]]]:
    """Connected components under unit steps (1-skeleton of the cube complex)."""
    remaining = set(points)
    comps = []
    while remaining:
        start = remaining.pop()
        comp = {start}
        stack = [start]
        while stack:
            p = stack.pop()
            for i in range(len(p)):
                for d in (-1, 1):
                    q = p[:i] + (p[i] + d,) + p[i + 1 :]
                    if q in remaining:
                        remaining.discard(q)
                        comp.add(q)
                        stack.append(q)
        comps.append(comp)
    return comps


def brute_wu_vectors(form, char) -> list[tuple[int, ...]]:
    """All 0/1 vectors w with M*w in the orbit of char (exhaustive search)."""
    from latticeroot import is_same_orbit

    hits = []
    for bits in itertools.product((0, 1), repeat=form.size):
        candidate = tuple(form.apply(bits))
        characteristic = all(
            (c - d) % 2 == 0 for c, d in zip(candidate, form.diagonal)
        )
        if characteristic and is_same_orbit(form, candidate, char):
            hits.append(bits)
    return hits


# ---------------------------------------------------------------------------
# random Gysin decompositions


def random_rank_profile(
    rng: random.Random,
    max_entries: int,
    grading_span: tuple[int, int] = (-10, 20),
    max_rank: int = 3,
) -> RankProfile:
    entries = {}
    for _ in range(rng.randint(0, max_entries)):
        g = rng.randint(*grading_span)
        entries[g] = entries.get(g, 0) + rng.randint(1, max_rank)
    return RankProfile.from_pairs(entries.items())


def random_decomposition(rng: random.Random, max_summands: int = 40):
    """Random (mult0, mult1, mult2) with <= max_summands finite summands plus
    one periodic tower tail in the third family."""
    budget = rng.randint(0, max_summands)
    split_a = rng.randint(0, budget)
    split_b = rng.randint(split_a, budget)
    mult0 = random_rank_profile(rng, max_entries=split_a)
    mult1 = random_rank_profile(rng, max_entries=split_b - split_a)
    mult2 = random_rank_profile(rng, max_entries=budget - split_b)
    tail_start = rng.randint(-10, 30)
    mult2 = mult2.with_tail(tail_start, 4, 1)
    return mult0, mult1, mult2
