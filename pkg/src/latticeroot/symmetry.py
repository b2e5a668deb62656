"""The weight-preserving involution J(x) = -x - kappa on sublevel sets.

When the characteristic vector is self-conjugate (kappa = M^{-1} l integral),
J is a cubical automorphism of every sublevel complex.  This module records
how J permutes connected components level by level (fixed components versus
swapped pairs), locates the first level with an invariant component, and
computes the induced derived data: the fixed-part tower and the rank profiles
of the total derived module in even degrees (fixed-component counts) and odd
degrees (the Tate quotient of J acting on H^1).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import InternalMismatch, NotSelfConjugate
from .lattice import Point, Region, _CocycleBasis, bad_vertices_of_form
from .modules import GradedModule, RankProfile

__all__ = [
    "LevelSymmetry",
    "SymmetrySummary",
    "DerivedProfiles",
    "involution",
    "invariant_cube",
    "symmetry_summary",
    "derived_cohomology",
    "derived_total",
]


@dataclass(frozen=True)
class LevelSymmetry:
    """How J permutes the components of one sublevel set."""

    level: int
    fixed_reps: tuple[Point, ...]
    paired_reps: tuple[tuple[Point, Point], ...]

    def fixed_count(self) -> int:
        return len(self.fixed_reps)

    def pair_count(self) -> int:
        return len(self.paired_reps)


@dataclass(frozen=True)
class SymmetrySummary:
    """Component-level J data across a computed region.

    r_lattice is twice the first level whose slice contains a J-invariant
    component; cube_r is twice the weight of the unique J-invariant unit
    cube.  The two agree whenever every component is acyclic (in particular
    for at most one bad vertex); both are recorded otherwise.  rho is the
    shifted grading r_lattice + sigma.
    """

    min_level: int
    stable_level: int
    sigma: Fraction
    r_lattice: int
    cube_r: int
    rho: Fraction
    fixed_counts: dict[int, int]
    pair_counts: dict[int, int]
    levels: tuple[LevelSymmetry, ...]

    def to_json(self) -> dict:
        return {
            "r": self.r_lattice,
            "cube_r": self.cube_r,
            "rho": str(self.rho),
            "levels": [
                {
                    "level": n,
                    "fixed": self.fixed_counts[n],
                    "pairs": self.pair_counts[n],
                }
                for n in sorted(self.fixed_counts)
            ],
        }


def involution(kappa: list[Fraction]):
    """The map x -> -x - kappa; requires an integral kappa."""
    ints = []
    for k in kappa:
        if k.denominator != 1:
            raise NotSelfConjugate(
                "characteristic vector is not self-conjugate (kappa not integral)"
            )
        ints.append(int(k))

    def apply(point: Point) -> Point:
        return tuple(-x - k for x, k in zip(point, ints))

    return apply


def invariant_cube(kappa: list[Fraction]) -> tuple[Point, tuple[int, ...]]:
    """The unique J-invariant cube: base corner and spanned directions.

    Directions are the coordinates where kappa is odd; the base is the lower
    corner -(kappa + e_D)/2.
    """
    ints = []
    for k in kappa:
        if k.denominator != 1:
            raise NotSelfConjugate(
                "characteristic vector is not self-conjugate (kappa not integral)"
            )
        ints.append(int(k))
    directions = tuple(i for i, k in enumerate(ints) if k % 2 != 0)
    base = tuple(
        (-k - 1) // 2 if k % 2 != 0 else -k // 2 for k in ints
    )
    return base, directions


def _level_symmetry(region: Region, n: int, j_apply) -> LevelSymmetry:
    summary = region.levels[n]
    comp_of = summary.comp_of
    mapping: dict[Point, Point] = {}
    for rep in summary.component_reps:
        image = j_apply(rep)
        if image not in comp_of:
            raise InternalMismatch(
                f"J-image of component representative missing at level {n}"
            )
        mapping[rep] = comp_of[image]
    for rep, target in mapping.items():
        if mapping[target] != rep:
            raise InternalMismatch("component involution failed to square to id")
    fixed = tuple(rep for rep, target in mapping.items() if rep == target)
    pairs = tuple(
        sorted(
            tuple(sorted((rep, target)))
            for rep, target in mapping.items()
            if rep < target
        )
    )
    return LevelSymmetry(level=n, fixed_reps=fixed, paired_reps=pairs)


def symmetry_summary(region: Region) -> SymmetrySummary:
    """Analyze the J-action on every level of the region."""
    lattice = region.lattice
    j_apply = involution(lattice.kappa)

    # global sanity: J preserves the enumerated point set and its weights
    weights = region.weights
    for point, w in weights.items():
        image = j_apply(point)
        if weights.get(image) != w:
            raise InternalMismatch("J failed to preserve the weight function")

    levels = []
    fixed_counts: dict[int, int] = {}
    pair_counts: dict[int, int] = {}
    for n in range(region.min_level, region.stable_level + 1):
        sym = _level_symmetry(region, n, j_apply)
        levels.append(sym)
        fixed_counts[n] = sym.fixed_count()
        pair_counts[n] = sym.pair_count()

    first_fixed = None
    for n in range(region.min_level, region.stable_level + 1):
        if fixed_counts[n] >= 1:
            first_fixed = n
            break
    if first_fixed is None:
        raise InternalMismatch("no J-invariant component up to the stable level")
    for n in range(first_fixed, region.stable_level + 1):
        if fixed_counts[n] < 1:
            raise InternalMismatch("invariant components are not upward closed")

    base, directions = invariant_cube(lattice.kappa)
    cube_r = 2 * lattice.cube_weight(base, directions)
    r_lattice = 2 * first_fixed
    if r_lattice > cube_r:
        raise InternalMismatch(
            "invariant component appeared after the invariant cube"
        )
    if len(bad_vertices_of_form(lattice.form)) <= 1 and r_lattice != cube_r:
        raise InternalMismatch(
            f"first invariant level {first_fixed} disagrees with the invariant "
            f"cube weight {cube_r // 2}"
        )

    return SymmetrySummary(
        min_level=region.min_level,
        stable_level=region.stable_level,
        sigma=lattice.sigma,
        r_lattice=r_lattice,
        cube_r=cube_r,
        rho=r_lattice + lattice.sigma,
        fixed_counts=fixed_counts,
        pair_counts=pair_counts,
        levels=tuple(levels),
    )


def derived_cohomology(
    region: Region, summary: SymmetrySummary | None = None
) -> GradedModule:
    """The fixed-part module: one tower with bottom rho (shifted grading).

    Valid when every slice component is acyclic, which the at-most-one-bad
    hypothesis guarantees; the fixed-component counts must then be exactly
    0, ..., 0, 1, 1, ... and anything else raises InternalMismatch.
    """
    if summary is None:
        summary = symmetry_summary(region)
    first = summary.r_lattice // 2
    for n in range(summary.min_level, summary.stable_level + 1):
        expected = 1 if n >= first else 0
        if summary.fixed_counts[n] != expected:
            raise InternalMismatch(
                "fixed-component counts do not form a single tower; "
                "use derived_total for the full profile"
            )
    return GradedModule.build([(summary.rho, "even")], [])


@dataclass(frozen=True)
class DerivedProfiles:
    """Integer-graded rank profiles of the total derived module.

    Gradings are rebased by -sigma, so a component of the level-n slice sits
    in degree 2n.  The even profile counts fixed components (eventually one
    at every even degree); the odd profile is the Tate quotient
    dim ker(1+T)/im(1+T) of J acting on H^1, supported in degrees 2n-1.
    """

    even: RankProfile
    odd: RankProfile

    def total(self) -> RankProfile:
        return self.even + self.odd

    def has_odd(self) -> bool:
        return not self.odd.is_zero()


def derived_total(
    region: Region, summary: SymmetrySummary | None = None
) -> DerivedProfiles:
    if summary is None:
        summary = symmetry_summary(region)
    even = RankProfile.from_pairs(
        (2 * n, summary.fixed_counts[n])
        for n in range(summary.min_level, summary.stable_level + 1)
    ).with_tail(2 * (summary.stable_level + 1), 2, 1)

    lattice = region.lattice
    j_apply = involution(lattice.kappa)
    odd_pairs = []
    for n in range(region.min_level, region.stable_level + 1):
        h1 = region.levels[n].h.get(1, 0)
        if h1 == 0:
            continue
        points = sorted(p for p, w in region.weights.items() if w <= n)
        basis = _CocycleBasis(points, lattice.size)
        assert len(basis.h_basis) == h1
        tate = _tate_rank(basis, j_apply)
        if tate:
            odd_pairs.append((2 * n - 1, tate))
    odd = RankProfile.from_pairs(odd_pairs)
    return DerivedProfiles(even=even, odd=odd)


def _tate_rank(basis: _CocycleBasis, j_apply) -> int:
    """dim ker(1+T)/im(1+T) = h^1 - 2 rank(1+T) for the induced T = J#."""
    edge_perm = []
    for base, d in basis.edges:
        image_base = list(j_apply(base))
        image_base[d] -= 1
        edge_perm.append(basis.edge_index[(tuple(image_base), d)])

    def push(vec: int) -> int:
        out = 0
        for i, source in enumerate(edge_perm):
            if vec >> source & 1:
                out |= 1 << i
        return out

    dim = len(basis.h_basis)
    columns = [basis.coefficients(push(vec)) for vec in basis.h_basis]
    # involution check: T^2 = identity on the basis coordinates
    for k in range(dim):
        square = 0
        col = columns[k]
        j = 0
        while col:
            if col & 1:
                square ^= columns[j]
            col >>= 1
            j += 1
        if square != 1 << k:
            raise InternalMismatch("induced H^1 involution fails T^2 = id")
    rank = linalg.gf2_rank([columns[k] ^ (1 << k) for k in range(dim)])
    assert 2 * rank <= dim
    return dim - 2 * rank
