"""Sublevel-set engine for the weighted lattice of a plumbing tree.

The chosen characteristic vector l induces the weight function
w0(x) = -(x^T M x + l^T x) / 2 on Z^s.  Sublevel sets S_n carry the cubical
complex whose cells are the unit cubes with all corners of weight <= n.  This
module enumerates points exactly, builds slices (components and GF(2)
cohomology ranks), tracks the merge tree into a graded root, and assembles
the graded F[U]-module of the associated monopole Floer groups of the
reversed-orientation boundary.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg, spinc
from .errors import (
    CapacityExceeded,
    MoreThanTwoBadVertices,
    NotDefinite,
    StabilizationNotReached,
)
from .modules import GradedModule
from .plumbing import IntersectionForm

Point = tuple[int, ...]

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "LATTICEROOT_BUDGET"

__all__ = [
    "WeightedLattice",
    "SublevelSlice",
    "LevelSummary",
    "Region",
    "GradedRoot",
    "default_budget",
    "bad_vertices_of_form",
    "enumerate_points",
    "build_slice",
    "build_region",
    "graded_root",
    "hm_module",
]


def default_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        value = int(raw)
    except ValueError as exc:
        raise CapacityExceeded(f"invalid {BUDGET_ENV}={raw!r}") from exc
    if value <= 0:
        raise CapacityExceeded(f"{BUDGET_ENV} must be positive")
    return value


def bad_vertices_of_form(form: IntersectionForm) -> tuple[int, ...]:
    """Vertex ids with weight exceeding the negative of their valency."""
    out = []
    for i, vid in enumerate(form.vertex_ids):
        valency = sum(1 for j in range(form.size) if j != i and form.rows[i][j] != 0)
        if form.rows[i][i] > -valency:
            out.append(vid)
    return tuple(out)


class WeightedLattice:
    """Z^s with the exact weight function of one characteristic vector."""

    def __init__(
        self,
        form: IntersectionForm,
        char: Sequence[int],
        budget: int | None = None,
    ) -> None:
        if not linalg.is_negative_definite(form.rows):
            raise NotDefinite(
                "the weight lattice requires a negative definite form"
            )
        spinc.check_characteristic(form, char)
        self.form = form
        self.char = tuple(int(c) for c in char)
        self.size = form.size
        self.rows = form.rows
        self.positive = [[-entry for entry in row] for row in form.rows]
        self.kappa = form.solve(self.char)
        self.k_square = sum(Fraction(c) * k for c, k in zip(self.char, self.kappa))
        self.sigma = -(Fraction(self.size) + self.k_square) / 4
        self.budget = default_budget() if budget is None else int(budget)
        self._min_cache: tuple[int, tuple[Point, ...]] | None = None

    # -- weights ------------------------------------------------------------

    def weight(self, point: Sequence[int]) -> int:
        """w0(x) = -(x^T M x + l^T x) / 2, always an integer."""
        total = 0
        rows = self.rows
        for i, xi in enumerate(point):
            if xi:
                row = rows[i]
                total += xi * sum(row[j] * point[j] for j in range(self.size))
        total += sum(c * x for c, x in zip(self.char, point))
        assert total % 2 == 0, "characteristic vector parity violated"
        return -total // 2

    def cube_weight(self, base: Sequence[int], directions: Sequence[int]) -> int:
        """max of w0 over the corners of the cube spanned at base."""
        best = None
        base = tuple(base)
        for bits in itertools.product((0, 1), repeat=len(directions)):
            corner = list(base)
            for flag, d in zip(bits, directions):
                corner[d] += flag
            value = self.weight(corner)
            best = value if best is None else max(best, value)
        assert best is not None
        return best

    # -- global minimum -----------------------------------------------------

    def _minimum(self) -> tuple[int, tuple[Point, ...]]:
        if self._min_cache is None:
            center = [-k / 2 for k in self.kappa]
            quad_min, argmins = linalg.quadratic_integer_minimum(
                self.positive, center, budget=self.budget
            )
            value = (quad_min + self.k_square / 4) / 2
            assert value.denominator == 1
            self._min_cache = (int(value), tuple(argmins))
        return self._min_cache

    @property
    def min_level(self) -> int:
        return self._minimum()[0]

    @property
    def minimizers(self) -> tuple[Point, ...]:
        return self._minimum()[1]

    # -- enumeration ----------------------------------------------------------

    def points_up_to(self, level: int) -> dict[Point, int]:
        """All lattice points of weight <= level, mapped to their weights."""
        radius2 = 2 * Fraction(level) - self.k_square / 4
        if radius2 < 0:
            return {}
        center = [-k / 2 for k in self.kappa]
        points: dict[Point, int] = {}
        for point in linalg.enumerate_quadratic(
            self.positive, center, radius2, budget=self.budget
        ):
            w = self.weight(point)
            assert w <= level, "enumerated point above requested level"
            points[point] = w
        return points


# ---------------------------------------------------------------------------
# single slices


@dataclass(frozen=True)
class SublevelSlice:
    """Connectivity and cohomology summary of one sublevel set."""

    level: int
    point_count: int
    component_count: int
    component_reps: tuple[Point, ...]
    h_ranks: tuple[tuple[int, int], ...]  # (q, rank) for 1 <= q <= q_cap

    def h(self, q: int) -> int:
        if q == 0:
            return self.component_count
        for qq, rank in self.h_ranks:
            if qq == q:
                return rank
        raise KeyError(f"h^{q} not computed for this slice")

    def is_acyclic(self) -> bool:
        return self.component_count == 1 and all(r == 0 for _, r in self.h_ranks)


class _UnionFind:
    """Union-find over lattice points with elder-rule merge records."""

    def __init__(self) -> None:
        self.parent: dict[Point, Point] = {}
        self.birth: dict[Point, int] = {}

    def add(self, point: Point, level: int) -> None:
        self.parent[point] = point
        self.birth[point] = level

    def find(self, point: Point) -> Point:
        root = point
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[point] != root:
            self.parent[point], point = root, self.parent[point]
        return root

    def union(self, a: Point, b: Point, level: int) -> tuple[Point, int] | None:
        """Merge the components of a and b; returns (dying_root, its birth).

        The elder component survives (earlier birth; ties go to the
        lexicographically smaller root).  Returns None when already joined.
        """
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return None
        keep, drop = ra, rb
        if (self.birth[rb], rb) < (self.birth[ra], ra):
            keep, drop = rb, ra
        self.parent[drop] = keep
        return drop, self.birth[drop]


def _cohomology_ranks(
    points: Iterable[Point], size: int, q_cap: int
) -> dict[int, int]:
    """GF(2) ranks h^q, 1 <= q <= q_cap, of the cubical sublevel complex.

    Cells in dimension q are pairs (base point, q directions) whose 2^q
    corners all belong to the point set; the coboundary ranks are computed by
    bitset elimination.  h^0 (the component count) is returned under key 0 as
    a cross-check against union-find.
    """
    point_set = set(points)
    sorted_points = sorted(point_set)
    index_of: dict[Point, int] = {p: i for i, p in enumerate(sorted_points)}
    cap = min(q_cap, size)
    cells: dict[int, list[tuple[Point, tuple[int, ...]]]] = {0: []}
    indices: dict[int, dict[tuple[Point, tuple[int, ...]], int]] = {}
    top_dim = min(cap + 1, size)

    def corners_present(base: Point, dirs: tuple[int, ...]) -> bool:
        for bits in itertools.product((0, 1), repeat=len(dirs)):
            corner = list(base)
            for flag, d in zip(bits, dirs):
                corner[d] += flag
            if tuple(corner) not in point_set:
                return False
        return True

    for q in range(1, top_dim + 1):
        found: list[tuple[Point, tuple[int, ...]]] = []
        for base in sorted_points:
            for dirs in itertools.combinations(range(size), q):
                if corners_present(base, dirs):
                    found.append((base, dirs))
        cells[q] = found
        indices[q] = {cell: i for i, cell in enumerate(found)}

    def boundary_rank(q: int) -> int:
        """Rank of the boundary map from q-cells to (q-1)-cells."""
        if q <= 0 or not cells.get(q):
            return 0
        rows = []
        if q == 1:
            for base, dirs in cells[1]:
                d = dirs[0]
                other = list(base)
                other[d] += 1
                rows.append(
                    (1 << index_of[base]) ^ (1 << index_of[tuple(other)])
                )
        else:
            lower = indices[q - 1]
            for base, dirs in cells[q]:
                row = 0
                for d in dirs:
                    rest = tuple(x for x in dirs if x != d)
                    row ^= 1 << lower[(base, rest)]
                    shifted = list(base)
                    shifted[d] += 1
                    row ^= 1 << lower[(tuple(shifted), rest)]
                rows.append(row)
        return linalg.gf2_rank(rows)

    ranks = {q: boundary_rank(q) for q in range(1, top_dim + 1)}
    h: dict[int, int] = {0: len(sorted_points) - ranks.get(1, 0)}
    for q in range(1, cap + 1):
        dim_q = len(cells.get(q, []))
        h[q] = dim_q - ranks.get(q, 0) - ranks.get(q + 1, 0)
        assert h[q] >= 0
    if cap >= size:
        euler_cells = len(sorted_points) + sum(
            (-1) ** q * len(cells.get(q, [])) for q in range(1, size + 1)
        )
        euler_ranks = h[0] + sum((-1) ** q * h.get(q, 0) for q in range(1, size + 1))
        assert euler_cells == euler_ranks, "Euler characteristic mismatch"
    return h


def enumerate_points(lattice: WeightedLattice, level: int) -> list[Point]:
    """Sorted lattice points of weight <= level (empty below the minimum)."""
    return sorted(lattice.points_up_to(level))


def build_slice(
    lattice: WeightedLattice, level: int, q_cap: int = 2
) -> SublevelSlice:
    """Standalone slice summary at one level."""
    weights = lattice.points_up_to(level)
    uf = _UnionFind()
    for point in sorted(weights):
        uf.add(point, weights[point])
    for point in sorted(weights):
        for d in range(lattice.size):
            step = list(point)
            step[d] += 1
            neighbor = tuple(step)
            if neighbor in weights:
                uf.union(point, neighbor, level)
    reps = sorted({uf.find(p) for p in weights})
    h = _cohomology_ranks(weights.keys(), lattice.size, q_cap)
    assert h[0] == len(reps), "component count mismatch (union-find vs rank)"
    return SublevelSlice(
        level=level,
        point_count=len(weights),
        component_count=len(reps),
        component_reps=tuple(reps),
        h_ranks=tuple((q, h[q]) for q in sorted(h) if q >= 1),
    )


# ---------------------------------------------------------------------------
# regions: all levels up to stabilization


@dataclass(frozen=True)
class LevelSummary:
    level: int
    point_count: int
    component_reps: tuple[Point, ...]
    comp_of: dict[Point, Point]
    h: dict[int, int]

    def component_count(self) -> int:
        return len(self.component_reps)

    def is_acyclic(self) -> bool:
        return len(self.component_reps) == 1 and all(
            rank == 0 for q, rank in self.h.items() if q >= 1
        )


@dataclass(frozen=True)
class Region:
    """Levels min_level .. stable_level+1 of the sublevel filtration."""

    lattice: WeightedLattice
    q_cap: int
    min_level: int
    stable_level: int
    levels: dict[int, LevelSummary]
    h0_intervals: tuple[tuple[int, int | None], ...]  # (birth, death) death excl.
    weights: dict[Point, int]

    def level(self, n: int) -> LevelSummary:
        return self.levels[n]

    def level_range(self) -> range:
        return range(self.min_level, self.stable_level + 2)


def build_region(
    lattice: WeightedLattice,
    q_cap: int = 2,
    max_level: int | None = None,
) -> Region:
    """Scan levels upward until the slices stabilize.

    Stabilization: the first level n such that S_n and S_{n+1} are both
    connected with h^q = 0 for 1 <= q <= q_cap; the infinite stem starts
    there.  Raises StabilizationNotReached when the cap is hit first.
    """
    n_min = lattice.min_level
    hard_cap = max_level if max_level is not None else n_min + 256
    target = n_min + 6
    while True:
        target = min(target, hard_cap)
        weights = lattice.points_up_to(target)
        region = _scan_levels(lattice, weights, n_min, target, q_cap)
        if region is not None:
            return region
        if target >= hard_cap:
            raise StabilizationNotReached(
                f"no stabilization through level {hard_cap} "
                f"(started at {n_min}); raise max_level"
            )
        target += 8


def _scan_levels(
    lattice: WeightedLattice,
    weights: dict[Point, int],
    n_min: int,
    top: int,
    q_cap: int,
) -> Region | None:
    by_level: dict[int, list[Point]] = {}
    for point, w in weights.items():
        by_level.setdefault(w, []).append(point)
    for bucket in by_level.values():
        bucket.sort()
    assert min(by_level, default=n_min) == n_min

    uf = _UnionFind()
    present: set[Point] = set()
    summaries: dict[int, LevelSummary] = {}
    intervals: list[tuple[int, int | None]] = []
    size = lattice.size
    stable: int | None = None

    for n in range(n_min, top + 1):
        for point in by_level.get(n, []):
            uf.add(point, n)
        for point in by_level.get(n, []):
            present.add(point)
        for point in by_level.get(n, []):
            for d in range(size):
                for delta in (1, -1):
                    step = list(point)
                    step[d] += delta
                    neighbor = tuple(step)
                    if neighbor in present:
                        died = uf.union(point, neighbor, n)
                        if died is not None:
                            intervals.append((died[1], n))
        comp_of = {p: uf.find(p) for p in present}
        reps = tuple(sorted(set(comp_of.values())))
        h = _cohomology_ranks(present, size, q_cap)
        assert h[0] == len(reps), "component count mismatch (union-find vs rank)"
        summaries[n] = LevelSummary(
            level=n,
            point_count=len(present),
            component_reps=reps,
            comp_of=comp_of,
            h={q: rank for q, rank in h.items() if q >= 1},
        )
        if stable is None and n > n_min:
            prev = summaries[n - 1]
            if prev.is_acyclic() and summaries[n].is_acyclic():
                stable = n - 1
                break

    if stable is None:
        return None
    # merges at the birth level never form a separate component of any slice
    finite = [(b, d) for b, d in intervals if d is not None and d > b]
    survivors = {uf.find(p) for p in present}
    assert len(survivors) == 1
    survivor = survivors.pop()
    all_intervals = tuple(sorted(finite)) + ((uf.birth[survivor], None),)
    trimmed = {n: summaries[n] for n in range(n_min, stable + 2)}
    return Region(
        lattice=lattice,
        q_cap=q_cap,
        min_level=n_min,
        stable_level=stable,
        levels=trimmed,
        h0_intervals=all_intervals,
        weights=weights,
    )


# ---------------------------------------------------------------------------
# graded roots


@dataclass(frozen=True)
class GradedRoot:
    """The merge tree of sublevel components, with an infinite upward stem.

    Nodes are (level, index) pairs, indices following the sorted component
    representatives of that level; edges join each node to its component at
    the next level.  Above stable_level every slice is a single connected,
    acyclic piece.
    """

    min_level: int
    stable_level: int
    sigma: Fraction
    node_counts: tuple[tuple[int, int], ...]  # (level, #components)
    edges: tuple[tuple[tuple[int, int], tuple[int, int]], ...]
    node_reps: tuple[tuple[int, tuple[Point, ...]], ...]

    def components_at(self, level: int) -> int:
        for lvl, count in self.node_counts:
            if lvl == level:
                return count
        return 1 if level > self.stable_level else 0

    def canonical_form(self) -> tuple:
        """Shape-and-levels normal form for structural comparison."""
        children: dict[tuple[int, int], list[tuple[int, int]]] = {}
        for child, parent in self.edges:
            children.setdefault(parent, []).append(child)

        def canon(node: tuple[int, int]) -> tuple:
            subtrees = tuple(sorted(canon(c) for c in children.get(node, [])))
            return (node[0], subtrees)

        return canon((self.stable_level, 0))

    def leaf_levels(self) -> list[int]:
        with_children = {parent for _, parent in self.edges}
        leaves = []
        for level, count in self.node_counts:
            for idx in range(count):
                if (level, idx) not in with_children:
                    leaves.append(level)
        return sorted(leaves)

    def to_json(self) -> dict:
        return {
            "min_level": self.min_level,
            "stable_level": self.stable_level,
            "sigma": str(self.sigma),
            "levels": [[lvl, count] for lvl, count in self.node_counts],
            "edges": [
                [[c_lvl, c_idx], [p_lvl, p_idx]]
                for (c_lvl, c_idx), (p_lvl, p_idx) in self.edges
            ],
        }


def graded_root(region: Region) -> GradedRoot:
    levels = region.levels
    node_counts = []
    node_reps = []
    edges = []
    for n in range(region.min_level, region.stable_level + 1):
        summary = levels[n]
        node_counts.append((n, len(summary.component_reps)))
        node_reps.append((n, summary.component_reps))
        if n + 1 <= region.stable_level:
            upper = levels[n + 1]
            upper_index = {rep: i for i, rep in enumerate(upper.component_reps)}
            for i, rep in enumerate(summary.component_reps):
                parent_rep = upper.comp_of[rep]
                edges.append(((n, i), (n + 1, upper_index[parent_rep])))
    return GradedRoot(
        min_level=region.min_level,
        stable_level=region.stable_level,
        sigma=region.lattice.sigma,
        node_counts=tuple(node_counts),
        edges=tuple(edges),
        node_reps=tuple(node_reps),
    )


# ---------------------------------------------------------------------------
# HM modules


def _h1_intervals(region: Region) -> list[tuple[int, int]]:
    """Interval decomposition of n -> H^1(S_n) under restriction.

    Returns (birth, death) pairs, death exclusive; the module is finite
    because h^1 vanishes at the stable level.
    """
    lattice = region.lattice
    size = lattice.size
    relevant = [
        n
        for n in range(region.min_level, region.stable_level + 1)
        if region.levels[n].h.get(1, 0) > 0
    ]
    if not relevant:
        return []
    lo, hi = min(relevant), max(relevant)
    span = list(range(lo, hi + 1))

    weights = region.weights
    bases: dict[int, "_CocycleBasis"] = {}
    for n in span:
        points = sorted(p for p, w in weights.items() if w <= n)
        bases[n] = _CocycleBasis(points, size)
        assert len(bases[n].h_basis) == region.levels[n].h.get(1, 0)

    # r[(m, n)] = rank of the restriction H^1(S_n) -> H^1(S_m), m <= n
    r: dict[tuple[int, int], int] = {}
    for n in span:
        r[(n, n)] = len(bases[n].h_basis)
    for n in span:
        for m in span:
            if m >= n:
                continue
            rows = []
            for vec in bases[n].h_basis:
                projected = bases[m].project_from(bases[n], vec)
                rows.append(bases[m].coefficients(projected))
            r[(m, n)] = linalg.gf2_rank(rows)

    def rank_at(m: int, n: int) -> int:
        if m < lo or n > hi or m > n:
            return 0
        return r[(m, n)]

    intervals = []
    for a in span:
        for b in span:
            if a > b:
                continue
            mult = (
                rank_at(a, b)
                - rank_at(a - 1, b)
                - rank_at(a, b + 1)
                + rank_at(a - 1, b + 1)
            )
            assert mult >= 0, "negative interval multiplicity"
            intervals.extend([(a, b + 1)] * mult)
    total = sum(b - a for a, b in intervals)
    expected = sum(region.levels[n].h.get(1, 0) for n in span)
    assert total == expected, "interval decomposition lost rank"
    return sorted(intervals)


class _CocycleBasis:
    """Edge-indexed cocycle data of one sublevel complex.

    Stores a basis of H^1 as explicit cocycles together with a reducer that
    expresses any cocycle as (coboundary) + (combination of basis vectors).
    """

    def __init__(self, points: list[Point], size: int) -> None:
        self.size = size
        point_set = set(points)
        self.edges: list[tuple[Point, int]] = []
        for base in points:
            for d in range(size):
                step = list(base)
                step[d] += 1
                if tuple(step) in point_set:
                    self.edges.append((base, d))
        self.edge_index = {edge: i for i, edge in enumerate(self.edges)}

        squares = []
        for base in points:
            for di, dj in itertools.combinations(range(size), 2):
                corners = []
                good = True
                for bi, bj in ((0, 0), (1, 0), (0, 1), (1, 1)):
                    corner = list(base)
                    corner[di] += bi
                    corner[dj] += bj
                    corner_t = tuple(corner)
                    if corner_t not in point_set:
                        good = False
                        break
                    corners.append(corner_t)
                if good:
                    row = 0
                    row ^= 1 << self.edge_index[(base, di)]
                    row ^= 1 << self.edge_index[(base, dj)]
                    up_i = list(base)
                    up_i[di] += 1
                    up_j = list(base)
                    up_j[dj] += 1
                    row ^= 1 << self.edge_index[(tuple(up_j), di)]
                    row ^= 1 << self.edge_index[(tuple(up_i), dj)]
                    squares.append(row)

        cocycles = linalg.gf2_nullspace(squares, len(self.edges))

        self.reducer = linalg.Gf2Reducer()
        # coboundaries first: tags below h_offset mark the coboundary part
        coboundary_count = 0
        for point in points:
            vec = 0
            for d in range(size):
                fwd = (point, d)
                if fwd in self.edge_index:
                    vec ^= 1 << self.edge_index[fwd]
                back = list(point)
                back[d] -= 1
                bwd = (tuple(back), d)
                if bwd in self.edge_index:
                    vec ^= 1 << self.edge_index[bwd]
            if self.reducer.add(vec, coboundary_count) is not None:
                coboundary_count += 1
        self.h_offset = coboundary_count
        self.h_basis: list[int] = []
        for vec in cocycles:
            tag = self.h_offset + len(self.h_basis)
            if self.reducer.add(vec, tag) is not None:
                self.h_basis.append(vec)

    def project_from(self, other: "_CocycleBasis", vec: int) -> int:
        """Restrict a cocycle from a larger complex to this one."""
        out = 0
        for i, edge in enumerate(self.edges):
            if vec & (1 << other.edge_index[edge]):
                out |= 1 << i
        return out

    def coefficients(self, vec: int) -> int:
        """Coordinates of a cocycle in the stored H^1 basis (bitmask)."""
        residue, expr = self.reducer.reduce(vec)
        assert residue == 0, "vector is not a cocycle of this complex"
        return expr >> self.h_offset


def hm_module(
    region: Region,
) -> GradedModule:
    """Graded F[U]-module of the monopole groups from a computed region.

    Even part: one infinite tower from the surviving component (bottom
    2*min_level + sigma) plus a finite chain per dying component.  Odd part:
    the H^1 intervals, placed at gradings 2n + sigma - 1.  Requires at most
    two bad vertices for the identification to hold.
    """
    lattice = region.lattice
    bad = bad_vertices_of_form(lattice.form)
    if len(bad) > 2:
        raise MoreThanTwoBadVertices(
            f"{len(bad)} bad vertices {bad}; supported: at most 2"
        )
    sigma = lattice.sigma
    towers = []
    chains = []
    for birth, death in region.h0_intervals:
        if death is None:
            towers.append((2 * birth + sigma, "even"))
        else:
            chains.append((2 * birth + sigma, death - birth, "even"))
    assert len(towers) == 1, "expected exactly one infinite tower"
    assert towers[0][0] == 2 * region.min_level + sigma
    for birth, death in _h1_intervals(region):
        chains.append((2 * birth + sigma - 1, death - birth, "odd"))
    return GradedModule.build(towers, chains)
