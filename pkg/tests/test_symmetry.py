"""J-involution, invariant cube, fixed/paired components, derived profiles."""

from __future__ import annotations

from fractions import Fraction

import pytest

from conftest import (
    SEIFERT_2_3_5,
    SEIFERT_2_7_15,
    TWO_BAD_CHAR_SIGMA2,
    TWO_BAD_EDGES,
    TWO_BAD_VERTICES,
    box_points_up_to,
    random_negdef_trees,
)
from latticeroot import (
    PlumbingGraph,
    RankProfile,
    WeightedLattice,
    build_intersection_form,
    build_region,
    derived_total,
    enumerate_orbits,
    from_seifert,
    invariant_cube,
    involution,
    symmetry_summary,
    wu_vector,
)


def _self_conjugate_lattices(seed: int, count: int, max_vertices: int = 4):
    out = []
    for graph in random_negdef_trees(
        seed, count, max_vertices=max_vertices, max_bad=1
    ):
        form = build_intersection_form(graph)
        for orbit in enumerate_orbits(form):
            if orbit.self_conjugate:
                wu = wu_vector(form, orbit.representative)
                out.append(WeightedLattice(form, tuple(form.apply(wu.w))))
    return out


def test_involution_is_weight_preserving_and_involutive():
    for lat in _self_conjugate_lattices(seed=61, count=8, max_vertices=3):
        j = involution(lat.kappa)
        for p in box_points_up_to(lat, lat.min_level + 2):
            q = j(p)
            assert j(q) == p
            assert lat.weight(q) == lat.weight(p)


def test_invariant_cube_is_fixed_by_involution():
    for lat in _self_conjugate_lattices(seed=62, count=8, max_vertices=3):
        j = involution(lat.kappa)
        base, directions = invariant_cube(lat.kappa)
        corners = [tuple(base)]
        for index in directions:
            corners = corners + [
                tuple(x + (1 if k == index else 0) for k, x in enumerate(c))
                for c in corners
            ]
        assert set(j(c) for c in corners) == set(corners)


def test_symmetry_summary_counts_match_components():
    for lat in _self_conjugate_lattices(seed=63, count=6, max_vertices=3):
        region = build_region(lat)
        summary = symmetry_summary(region)
        for n in range(summary.min_level, summary.stable_level + 1):
            total = region.level(n).component_count()
            assert summary.fixed_counts[n] + 2 * summary.pair_counts[n] == total
            # one-bad-or-less graphs: at most one fixed component per level
            assert summary.fixed_counts[n] <= 1
        assert summary.rho == summary.r_lattice + lat.sigma
        assert summary.cube_r == summary.r_lattice


def test_derived_total_is_single_tower_for_at_most_one_bad():
    for lat in _self_conjugate_lattices(seed=64, count=6, max_vertices=3):
        region = build_region(lat)
        summary = symmetry_summary(region)
        derived = derived_total(region, summary)
        assert derived.odd.is_zero()
        expected = RankProfile().with_tail(summary.r_lattice, 2, 1)
        assert derived.even == expected


def test_poincare_sphere_symmetry_frozen(poincare_region):
    summary = symmetry_summary(poincare_region)
    assert summary.r_lattice == 0
    assert summary.rho == -2
    assert summary.fixed_counts[0] == 1


def test_one_bad_star_symmetry_frozen(one_bad_star_wu_region):
    region = one_bad_star_wu_region
    summary = symmetry_summary(region)
    wu = wu_vector(region.lattice.form, region.lattice.char)
    assert summary.rho == 4
    assert summary.rho == 2 * wu.mubar


def test_two_bad_symmetry_summary(two_bad_lattice, two_bad_region):
    lat, region = two_bad_lattice, two_bad_region
    summary = symmetry_summary(region)
    # rho = 2 in shifted gradings: r_lattice = 0 with sigma = 2
    assert lat.sigma == 2
    assert summary.rho == 2
    # level -1: a symmetric pair; level 0: pair + one invariant component
    assert summary.fixed_counts[-1] == 0
    assert summary.pair_counts[-1] == 1
    assert summary.fixed_counts[0] == 1
    assert summary.pair_counts[0] == 1
    derived = derived_total(region, summary)
    # the invariant level-0 component also carries the h^1 class: the derived
    # odd part has rank 1 in (lattice) grading 2*0 - 1
    assert derived.odd == RankProfile.from_pairs([(-1, 1)])
