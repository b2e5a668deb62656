"""Fast path: one-dimensional fiber-minimum profiles of the weight function.

For a tree with at most one bad vertex, the sublevel topology is captured by
the profile tau(i) = min{ w0(x) : x_{v0} = i } along a distinguished vertex
v0: sublevel sets deformation-retract onto the corresponding fiber intervals,
so the merge tree of tau equals the graded root.  Removing v0 splits the tree
into independent subtrees, so each fiber minimum is a product of small exact
sphere-decoded minimizations; the enumeration window is certified by the
convex continuous relaxation, which bounds tau from below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import InternalMismatch, StabilizationNotReached, TooManyBadVertices
from .lattice import GradedRoot, WeightedLattice, bad_vertices_of_form
from .modules import GradedModule

__all__ = ["TauProfile", "tau_profile", "select_profile_vertex"]


@dataclass(frozen=True)
class TauProfile:
    """Certified fiber-minimum profile and its merge-tree data."""

    vertex_id: int
    window_lo: int
    window_hi: int
    values: tuple[int, ...]
    sigma: Fraction
    min_level: int
    stable_level: int
    root: GradedRoot
    h0_intervals: tuple[tuple[int, int | None], ...]
    kappa_v: Fraction

    def value(self, i: int) -> int:
        if not self.window_lo <= i <= self.window_hi:
            raise IndexError(f"fiber {i} outside certified window")
        return self.values[i - self.window_lo]

    def hm(self) -> GradedModule:
        towers = []
        chains = []
        for birth, death in self.h0_intervals:
            if death is None:
                towers.append((2 * birth + self.sigma, "even"))
            else:
                chains.append((2 * birth + self.sigma, death - birth, "even"))
        assert len(towers) == 1
        return GradedModule.build(towers, chains)

    def fixed_and_paired_runs(self) -> tuple[dict[int, int], dict[int, int]]:
        """Per-level counts of J-fixed runs and of swapped run pairs.

        Requires a self-conjugate characteristic vector; J acts on fibers by
        i -> -kappa_v - i, so a run [a, b] is fixed exactly when a+b equals
        -kappa_v.
        """
        if self.kappa_v.denominator != 1:
            raise InternalMismatch("J-action requested without integral kappa")
        kv = int(self.kappa_v)
        fixed: dict[int, int] = {}
        pairs: dict[int, int] = {}
        for n in range(self.min_level, self.stable_level + 1):
            runs = _runs_at(self.values, self.window_lo, n)
            f = sum(1 for a, b in runs if a + b == -kv)
            assert (len(runs) - f) % 2 == 0, "non-fixed runs must pair up"
            fixed[n] = f
            pairs[n] = (len(runs) - f) // 2
        return fixed, pairs


def select_profile_vertex(lattice: WeightedLattice) -> int:
    """The distinguished vertex: the bad vertex if there is exactly one,
    otherwise a vertex of maximal valency (smallest id on ties)."""
    form = lattice.form
    bad = bad_vertices_of_form(form)
    if len(bad) > 1:
        raise TooManyBadVertices(
            f"profile fast path supports at most one bad vertex, found {bad}"
        )
    if len(bad) == 1:
        return bad[0]
    best_id = None
    best_valency = -1
    for i, vid in enumerate(form.vertex_ids):
        valency = sum(1 for j in range(form.size) if j != i and form.rows[i][j] != 0)
        if valency > best_valency:
            best_valency = valency
            best_id = vid
    assert best_id is not None
    return best_id


class _FiberMinimizer:
    """Exact per-fiber minimization across the subtrees hanging off v0."""

    def __init__(self, lattice: WeightedLattice, vertex_id: int) -> None:
        self.lattice = lattice
        form = lattice.form
        self.idx0 = form.vertex_ids.index(vertex_id)
        size = form.size
        pos = lattice.positive
        others = [i for i in range(size) if i != self.idx0]
        adjacency = {
            i: [j for j in others if j != i and pos[i][j] != 0] for i in others
        }
        components: list[list[int]] = []
        seen: set[int] = set()
        for start in others:
            if start in seen:
                continue
            stack = [start]
            seen.add(start)
            comp = []
            while stack:
                node = stack.pop()
                comp.append(node)
                for nxt in adjacency[node]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
            components.append(sorted(comp))
        self.blocks = []
        for comp in components:
            sub = [[pos[i][j] for j in comp] for i in comp]
            inv = linalg.invert_rational(sub)
            assert inv is not None
            coupling = [pos[i][self.idx0] for i in comp]
            ell = [lattice.char[i] for i in comp]
            self.blocks.append((sub, inv, coupling, ell))
        self.p00 = pos[self.idx0][self.idx0]
        self.ell0 = lattice.char[self.idx0]

    def continuous(self, i: Fraction | int) -> Fraction:
        """Convex lower bound: the fiber minimum over real coordinates."""
        i = Fraction(i)
        total = (self.p00 * i * i - self.ell0 * i) / 2
        for sub, inv, coupling, ell in self.blocks:
            c = [2 * i * b - l for b, l in zip(coupling, ell)]
            quad = sum(
                c[r] * sum(inv[r][s] * c[s] for s in range(len(c)))
                for r in range(len(c))
            )
            total -= quad / 8
        return total

    def exact(self, i: int) -> int:
        """tau(i): exact integer minimum of w0 over the fiber x_{v0} = i."""
        total = Fraction(self.p00 * i * i - self.ell0 * i, 2)
        for sub, inv, coupling, ell in self.blocks:
            c = [Fraction(2 * i * b - l) for b, l in zip(coupling, ell)]
            center = [
                -sum(inv[r][s] * c[s] for s in range(len(c))) / 2
                for r in range(len(c))
            ]
            const = sum(
                center[r] * sum(Fraction(sub[r][s]) * center[s] for s in range(len(c)))
                for r in range(len(c))
            )
            quad_min, _ = linalg.quadratic_integer_minimum(
                sub, center, budget=self.lattice.budget
            )
            total += (quad_min - const) / 2
        assert total.denominator == 1, "fiber minimum must be an integer"
        return int(total)


def _runs_at(values: tuple[int, ...], lo: int, level: int) -> list[tuple[int, int]]:
    """Maximal index intervals with value <= level, as inclusive (a, b)."""
    runs = []
    start = None
    for offset, value in enumerate(values):
        if value <= level:
            if start is None:
                start = lo + offset
        else:
            if start is not None:
                runs.append((start, lo + offset - 1))
                start = None
    if start is not None:
        runs.append((start, lo + len(values) - 1))
    return runs


def tau_profile(
    lattice: WeightedLattice,
    max_level: int | None = None,
) -> TauProfile:
    """Compute the certified profile and its merge tree (<= 1 bad vertex)."""
    vertex_id = select_profile_vertex(lattice)
    minimizer = _FiberMinimizer(lattice, vertex_id)
    idx0 = minimizer.idx0
    kappa_v = lattice.kappa[idx0]

    n_min_global = lattice.min_level
    hard_cap = max_level if max_level is not None else n_min_global + 256
    target = n_min_global + 6
    while True:
        target = min(target, hard_cap)
        window = _certified_window(minimizer, target)
        if window is None:
            raise StabilizationNotReached("continuous relaxation has empty window")
        lo, hi = window
        values = tuple(minimizer.exact(i) for i in range(lo, hi + 1))
        n_min = min(values)
        assert n_min == n_min_global, "fiber minimum disagrees with global minimum"
        result = _scan_profile(values, lo, n_min, target)
        if result is not None:
            stable, intervals, node_counts, node_reps, edges = result
            root = GradedRoot(
                min_level=n_min,
                stable_level=stable,
                sigma=lattice.sigma,
                node_counts=node_counts,
                edges=edges,
                node_reps=node_reps,
            )
            return TauProfile(
                vertex_id=vertex_id,
                window_lo=lo,
                window_hi=hi,
                values=values,
                sigma=lattice.sigma,
                min_level=n_min,
                stable_level=stable,
                root=root,
                h0_intervals=intervals,
                kappa_v=kappa_v,
            )
        if target >= hard_cap:
            raise StabilizationNotReached(
                f"profile did not stabilize through level {hard_cap}"
            )
        target += 8


def _certified_window(
    minimizer: _FiberMinimizer, level: int
) -> tuple[int, int] | None:
    """Integer fiber window certainly containing {i : tau(i) <= level}.

    Uses the quadratic continuous relaxation A i^2 + B i + C <= level; the
    coefficients are recovered exactly from three evaluations.
    """
    c0 = minimizer.continuous(0)
    c1 = minimizer.continuous(1)
    cm1 = minimizer.continuous(-1)
    a = (c1 + cm1 - 2 * c0) / 2
    b = (c1 - cm1) / 2
    assert a > 0, "fiber relaxation must be strictly convex"
    # A i^2 + B i + C <= level  <=>  (i + B/2A)^2 <= (level - C)/A + (B/2A)^2
    t = b / (2 * a)
    bound = (Fraction(level) - c0) / a + t * t
    lo, hi = linalg._integer_interval(t, bound)
    if lo > hi:
        return None
    return lo, hi


def _scan_profile(
    values: tuple[int, ...], lo: int, n_min: int, top: int
):
    """1-D elder-rule merge scan; returns stabilization data or None."""
    indices_by_level: dict[int, list[int]] = {}
    for offset, value in enumerate(values):
        if value <= top:
            indices_by_level.setdefault(value, []).append(lo + offset)

    parent: dict[int, int] = {}
    birth: dict[int, int] = {}

    def find(i: int) -> int:
        root = i
        while parent[root] != root:
            root = parent[root]
        while parent[i] != root:
            parent[i], i = root, parent[i]
        return root

    intervals: list[tuple[int, int | None]] = []
    node_counts: list[tuple[int, int]] = []
    node_reps: list[tuple[int, tuple[tuple[int, ...], ...]]] = []
    edges: list[tuple[tuple[int, int], tuple[int, int]]] = []
    prev_reps: list[int] | None = None
    stable: int | None = None

    present: set[int] = set()
    for n in range(n_min, top + 1):
        for i in indices_by_level.get(n, []):
            parent[i] = i
            birth[i] = n
            present.add(i)
        for i in indices_by_level.get(n, []):
            for j in (i - 1, i + 1):
                if j in present:
                    ri, rj = find(i), find(j)
                    if ri == rj:
                        continue
                    keep, drop = ri, rj
                    if (birth[rj], rj) < (birth[ri], ri):
                        keep, drop = rj, ri
                    parent[drop] = keep
                    intervals.append((birth[drop], n))
        comp_of = {i: find(i) for i in present}
        reps = sorted(set(comp_of.values()))
        node_counts.append((n, len(reps)))
        node_reps.append((n, tuple((rep,) for rep in reps)))
        if prev_reps is not None:
            rep_index = {rep: k for k, rep in enumerate(reps)}
            for k, rep in enumerate(prev_reps):
                edges.append(((n - 1, k), (n, rep_index[comp_of[rep]])))
        prev_reps = reps
        if n > n_min and node_counts[-1][1] == 1 and node_counts[-2][1] == 1:
            stable = n - 1
            break

    if stable is None:
        return None
    survivor = next(iter({find(i) for i in present}))
    all_intervals = tuple(sorted((b, d) for b, d in intervals if d > b)) + (
        (birth[survivor], None),
    )
    # trim node data beyond the stable level
    node_counts = [(n, c) for n, c in node_counts if n <= stable]
    node_reps = [(n, reps) for n, reps in node_reps if n <= stable]
    edges = [e for e in edges if e[1][0] <= stable]
    return stable, all_intervals, tuple(node_counts), tuple(node_reps), tuple(edges)
