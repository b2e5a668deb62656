"""Equivariant invariants from the coupled exact-triangle rank algebra.

The non-equivariant module HM, the derived profile A' (first page of the
involution data), and the second-derived profile A'' together force a unique
decomposition of the equivariant theory HS into three standard summand
types, graded here by integers (shifted gradings minus sigma):

  I0[n]: HM gains 2 at n;        A', A'' gain nothing;   HS gains 1 at n.
  I1[n]: HM gains 1 at n, n+1;   A' gains 1 at n, n+1;   HS gains 1 at n, n+1
         with a degree -1 connecting action from n+1 to n.
  I2[n]: HM gains 1 at n, n+2;   A' and A'' gain 1 at n and n+2;
         HS gains 1 at n, n+1, n+2 with connecting actions
         (n+2) -> (n+1) -> (n).

Summing over summands yields three identities, solved here exactly on
eventually-periodic rank profiles:

  hm(n)  = 2 mult0(n) + a1(n)
  a1(n)  = mult1(n) + mult1(n-1) + mult2(n) + mult2(n-2) + a2-free part
  a2(n)  = mult2(n) + mult2(n-2)

The three infinite towers of HS sit at bottoms determined by the minimum
level (via 2*delta), the first invariant level (via rho), and the residue
class of the periodic I2 family; the correction terms alpha >= beta >= gamma
are read off the tower bottoms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .errors import (
    AmbiguousForcing,
    CapacityExceeded,
    ConjectureRequired,
    InconsistentRanks,
    InternalMismatch,
    MoreThanTwoBadVertices,
    ParityMismatch,
    TooManyBadVertices,
)
from .lattice import Region, WeightedLattice, bad_vertices_of_form, hm_module
from .modules import GradedModule, RankProfile, format_grading
from .spinc import WuData, wu_vector
from .symmetry import (
    DerivedProfiles,
    SymmetrySummary,
    derived_total,
    invariant_cube,
    symmetry_summary,
)
from .tau import TauProfile, tau_profile

__all__ = [
    "CorrectionTerms",
    "PinModule",
    "GysinDecomposition",
    "PinResult",
    "correction_terms",
    "tower_bottoms",
    "module_int_profile",
    "hs_profile_one_bad",
    "gysin_decompose",
    "force_second_derived",
    "pin_invariants",
    "pin_invariants_profile",
]


# ---------------------------------------------------------------------------
# tower bottoms and correction terms


def _ceil_to_residue(x: int, residue: int) -> int:
    """Smallest integer >= x congruent to residue mod 4."""
    return x + (residue - x) % 4


def tower_bottoms(two_delta: int, rho: int, g0: int) -> tuple[int, int, int]:
    """Integer-graded bottoms (a, b, c) of the three infinite towers.

    g0 is the mod-4 residue of the periodic even family; the even towers sit
    at residues g0 (the a-tower) and g0+2 (the c-tower), the odd tower at
    g0+1.  The a-tower clears both the non-equivariant bottom (two_delta)
    and the first invariant level (rho); the c-tower clears two_delta; the
    b-tower bottom x satisfies x+1 >= max(rho, c).
    """
    if two_delta % 2 or rho % 2 or g0 % 2:
        raise ParityMismatch(
            f"two_delta={two_delta}, rho={rho}, g0={g0} must all be even"
        )
    a = _ceil_to_residue(max(two_delta, rho), g0 % 4)
    c = _ceil_to_residue(two_delta, (g0 + 2) % 4)
    b = _ceil_to_residue(max(rho, c) - 1, (g0 + 1) % 4)
    return a, b, c


@dataclass(frozen=True)
class CorrectionTerms:
    """Numerical invariants read off the tower bottoms (shifted gradings)."""

    delta: Fraction
    rho: Fraction
    mubar: Fraction | None
    a: Fraction
    b: Fraction
    c: Fraction
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    tail_offset: int  # (g0 - rho) mod 4 of the periodic family, 0 or 2

    def to_json(self) -> dict[str, Any]:
        out = {
            "delta": format_grading(self.delta),
            "rho": format_grading(self.rho),
            "a": format_grading(self.a),
            "b": format_grading(self.b),
            "c": format_grading(self.c),
            "alpha": format_grading(self.alpha),
            "beta": format_grading(self.beta),
            "gamma": format_grading(self.gamma),
        }
        if self.mubar is not None:
            out["mubar"] = format_grading(self.mubar)
        return out


def correction_terms(
    rho: Fraction | int,
    delta: Fraction | int,
    mubar: Fraction | int | None = None,
    tail_offset: int = 0,
) -> CorrectionTerms:
    """Correction terms from rho, delta and the periodic-family phase.

    rho and delta are shifted (rational) gradings with rho - 2*delta an even
    integer; tail_offset is the mod-4 offset of the periodic even family
    relative to rho (0 unless a decomposition forced the other phase).
    """
    rho = Fraction(rho)
    delta = Fraction(delta)
    diff = rho - 2 * delta
    if diff.denominator != 1 or int(diff) % 2 != 0:
        raise ParityMismatch(
            f"rho - 2*delta = {diff} must be an even integer"
        )
    if tail_offset % 2 != 0:
        raise ParityMismatch(f"tail offset {tail_offset} must be even")
    rho_i = int(diff)  # integer gradings rebased at 2*delta
    a_i, b_i, c_i = tower_bottoms(0, rho_i, (rho_i + tail_offset) % 4)
    base = 2 * delta
    a, b, c = base + a_i, base + b_i, base + c_i
    alpha, beta, gamma = a / 2, (b - 1) / 2, (c - 2) / 2
    if not (alpha >= beta >= gamma):
        raise InternalMismatch("tower bottoms violate alpha >= beta >= gamma")
    terms = CorrectionTerms(
        delta=delta,
        rho=rho,
        mubar=Fraction(mubar) if mubar is not None else None,
        a=a,
        b=b,
        c=c,
        alpha=alpha,
        beta=beta,
        gamma=gamma,
        tail_offset=tail_offset % 4,
    )
    return terms


# ---------------------------------------------------------------------------
# profiles


def module_int_profile(module: GradedModule, sigma: Fraction) -> RankProfile:
    """Rank profile of a graded module, rebased to integer gradings."""
    pairs = []
    for g, r in module.finite_profile().items():
        gi = g - sigma
        if gi.denominator != 1:
            raise InternalMismatch(f"grading {g} is not aligned with sigma")
        pairs.append((int(gi), r))
    prof = RankProfile.from_pairs(pairs)
    for bottom, _parity in module.towers:
        bi = bottom - sigma
        if bi.denominator != 1:
            raise InternalMismatch(f"tower bottom {bottom} not aligned with sigma")
        prof = prof.with_tail(int(bi), 2, 1)
    return prof


def hs_profile_one_bad(summary: SymmetrySummary) -> RankProfile:
    """Equivariant rank profile via the residue rules (<= 1 bad vertex).

    Integer grading x: for even x = 2n the rank is fixed(n) + pairs(n) —
    which equals ceil(components(n)/2) because at most one component is
    invariant; for x = rho+1 mod 4 the rank is 1 once x >= rho+1; for
    x = rho+3 mod 4 the rank is 0.
    """
    rho = summary.r_lattice
    pairs = []
    for n in range(summary.min_level, summary.stable_level + 1):
        f = summary.fixed_counts[n]
        p = summary.pair_counts[n]
        if f > 1:
            raise InternalMismatch(
                f"{f} invariant components at level {n}; residue rules "
                "require at most one"
            )
        components = f + 2 * p
        assert f + p == (components + 1) // 2
        pairs.append((2 * n, f + p))
    evens = RankProfile.from_pairs(pairs).with_tail(
        2 * (summary.stable_level + 1), 2, 1
    )
    odds = RankProfile().with_tail(rho + 1, 4, 1)
    return evens + odds


# ---------------------------------------------------------------------------
# decomposition algebra


def _alternating_spread_inverse(profile: RankProfile, step: int) -> RankProfile:
    """Solve m(n) + m(n - step) = profile(n) for a non-negative m.

    The unique solution is the alternating sum m(n) = p(n) - p(n-step) +
    p(n-2*step) - ...; raises InconsistentRanks if it goes negative or fails
    to become 4-periodic.
    """
    if profile.is_zero():
        return RankProfile()
    lo = profile.min_support()
    assert lo is not None
    hi = profile.horizon + 4
    m: dict[int, int] = {}
    for n in range(lo, hi + 8):
        val = profile.value(n) - m.get(n - step, 0)
        if val < 0:
            raise InconsistentRanks(
                f"negative summand multiplicity at grading {n}"
            )
        if val:
            m[n] = val
    for n in range(hi, hi + 4):
        if m.get(n, 0) != m.get(n + 4, 0):
            raise InconsistentRanks(
                "summand multiplicities do not become periodic"
            )
    window = {g: r for g, r in m.items() if g < hi}
    tail = {n % 4: m.get(n, 0) for n in range(hi, hi + 4)}
    return RankProfile(window, hi, tail)


@dataclass(frozen=True)
class GysinDecomposition:
    """Multiplicities of the three summand types, by integer bottom grading."""

    mult0: RankProfile
    mult1: RankProfile
    mult2: RankProfile

    def a_second_profile(self) -> RankProfile:
        return self.mult2 + self.mult2.shift(2)

    def a_first_profile(self) -> RankProfile:
        return self.a_second_profile() + self.mult1 + self.mult1.shift(1)

    def hm_profile(self) -> RankProfile:
        return self.mult0.scale(2) + self.a_first_profile()

    def hs_profile(self) -> RankProfile:
        return (
            self.mult0
            + self.mult1
            + self.mult1.shift(1)
            + self.mult2
            + self.mult2.shift(1)
            + self.mult2.shift(2)
        )

    def forced_tail_residue(self) -> int:
        """Mod-4 residue of the periodic I2 family (must be a single one)."""
        residues = [r for r in range(4) if self.mult2.tail_rank(r)]
        if len(residues) != 1 or self.mult2.tail_rank(residues[0]) != 1:
            raise InconsistentRanks(
                "periodic part is not a single I2 family; "
                f"tail residues {residues}"
            )
        return residues[0]

    def to_json(self, sigma: Fraction | int = 0) -> dict[str, Any]:
        sigma = Fraction(sigma)

        def shifted(profile: RankProfile) -> dict[str, Any]:
            raw = profile.to_json()
            return {
                "finite": [
                    [format_grading(g + sigma), r] for g, r in raw["finite"]
                ],
                "tails": [
                    {
                        "start": format_grading(t["start"] + sigma),
                        "step": t["step"],
                        "rank": t["rank"],
                    }
                    for t in raw["tails"]
                ],
            }

        return {
            "i0": shifted(self.mult0),
            "i1": shifted(self.mult1),
            "i2": shifted(self.mult2),
        }


def gysin_decompose(
    hm: RankProfile, a_first: RankProfile, a_second: RankProfile
) -> GysinDecomposition:
    """Solve the three coupled identities exactly; raises InconsistentRanks
    when the profiles admit no decomposition."""
    mult2 = _alternating_spread_inverse(a_second, 2)
    mult1 = _alternating_spread_inverse(a_first - a_second, 1)
    mult0 = (hm - a_first).exact_div(2)
    decomp = GysinDecomposition(mult0=mult0, mult1=mult1, mult2=mult2)
    if decomp.a_second_profile() != a_second:
        raise InternalMismatch("I2 multiplicities fail to reconstruct A''")
    if decomp.a_first_profile() != a_first:
        raise InternalMismatch("multiplicities fail to reconstruct A'")
    if decomp.hm_profile() != hm:
        raise InternalMismatch("multiplicities fail to reconstruct HM")
    return decomp


def force_second_derived(
    hm: RankProfile, a_first: RankProfile, node_budget: int = 200_000
) -> RankProfile:
    """The unique second-derived profile consistent with hm and a_first.

    Searches all non-negative I2 multiplicity assignments (finite window
    plus an optional periodic family) whose induced decomposition
    reconstructs both inputs.  Raises InconsistentRanks if none exists and
    AmbiguousForcing if more than one distinct profile survives.
    """
    (hm - a_first).exact_div(2)  # precheck: I0 part must be even and >= 0
    if a_first.is_zero():
        return RankProfile()
    lo = a_first.min_support()
    assert lo is not None
    horizon = max(hm.horizon, a_first.horizon) + 4

    # candidate periodic parts: per-residue constant multiplicities t_r with
    # t_r + t_{r+2} <= a_first tail at both residues r, r+2
    tail_candidates: list[tuple[int, int, int, int]] = []

    def tail_ok(t: tuple[int, int, int, int]) -> bool:
        for r in range(4):
            spread = t[r] + t[(r + 2) % 4]
            if spread > min(
                a_first.tail_rank(r), a_first.tail_rank((r + 2) % 4)
            ):
                return False
        return True

    bounds = [
        min(a_first.tail_rank(r), a_first.tail_rank((r + 2) % 4))
        for r in range(4)
    ]
    for t0 in range(bounds[0] + 1):
        for t1 in range(bounds[1] + 1):
            for t2 in range(bounds[2] + 1):
                for t3 in range(bounds[3] + 1):
                    t = (t0, t1, t2, t3)
                    if tail_ok(t):
                        tail_candidates.append(t)

    candidates: set[RankProfile] = set()
    nodes = 0

    def validate(window: dict[int, int], tail: tuple[int, int, int, int]) -> None:
        m2 = RankProfile(dict(window), horizon, dict(enumerate(tail)))
        a_second = m2 + m2.shift(2)
        try:
            decomp = gysin_decompose(hm, a_first, a_second)
        except InconsistentRanks:
            return
        assert decomp.mult2 == m2
        candidates.add(a_second)

    for tail in tail_candidates:
        window: dict[int, int] = {}

        def dfs(n: int, m1_prev: int) -> None:
            nonlocal nodes
            nodes += 1
            if nodes > node_budget:
                raise CapacityExceeded(
                    "second-derived search exceeded its node budget"
                )
            if n >= horizon:
                validate(window, tail)
                return
            below = window.get(n - 2, 0)
            room = a_first.value(n) - below
            for v in range(max(room, -1) + 1):
                d = a_first.value(n) - (v + below)
                m1_here = d - m1_prev
                if m1_here < 0:
                    continue
                if v:
                    window[n] = v
                dfs(n + 1, m1_here)
                window.pop(n, None)

        dfs(lo, 0)

    if not candidates:
        raise InconsistentRanks(
            "no second-derived profile is consistent with the rank data"
        )
    if len(candidates) > 1:
        raise AmbiguousForcing(
            f"{len(candidates)} distinct second-derived profiles are "
            "consistent with the rank data"
        )
    return candidates.pop()


# ---------------------------------------------------------------------------
# the assembled equivariant module


@dataclass(frozen=True)
class PinModule:
    """Three V-towers (V of degree -4) plus a finite part, shifted gradings.

    q_arrows lists the degree -1 connecting actions contributed by finite I1
    and I2 summands (upper grading, lower grading); q_tail_start, when set,
    is the bottom of the periodic I2 family whose connecting actions repeat
    every 4 gradings up the towers.
    """

    a_bottom: Fraction
    b_bottom: Fraction
    c_bottom: Fraction
    finite: tuple[tuple[Fraction, int], ...]
    q_arrows: tuple[tuple[Fraction, Fraction], ...] = ()
    q_tail_start: Fraction | None = None

    def towers(self) -> dict[str, Fraction]:
        return {"a": self.a_bottom, "b": self.b_bottom, "c": self.c_bottom}

    def same_underlying(self, other: "PinModule") -> bool:
        """Equality of towers and finite ranks, ignoring connecting maps."""
        return (
            self.a_bottom == other.a_bottom
            and self.b_bottom == other.b_bottom
            and self.c_bottom == other.c_bottom
            and self.finite == other.finite
        )

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "towers": {
                "a": format_grading(self.a_bottom),
                "b": format_grading(self.b_bottom),
                "c": format_grading(self.c_bottom),
            },
            "finite": [[format_grading(g), r] for g, r in self.finite],
            "q_arrows": [
                [format_grading(hi), format_grading(lo)]
                for hi, lo in self.q_arrows
            ],
        }
        if self.q_tail_start is not None:
            out["q_tail_start"] = format_grading(self.q_tail_start)
        return out


def _assemble_pin_module(
    hs_int: RankProfile,
    bottoms: tuple[int, int, int],
    sigma: Fraction,
    decomp: GysinDecomposition | None = None,
) -> PinModule:
    a_i, b_i, c_i = bottoms
    towers_prof = (
        RankProfile()
        .with_tail(a_i, 4, 1)
        .with_tail(b_i, 4, 1)
        .with_tail(c_i, 4, 1)
    )
    try:
        finite = hs_int - towers_prof
    except InconsistentRanks as exc:
        raise InternalMismatch(
            f"tower bottoms {bottoms} do not embed in the rank profile"
        ) from exc
    if not finite.is_finite():
        raise InternalMismatch("rank profile leaves a periodic remainder")
    finite_t = tuple(
        (Fraction(g) + sigma, r) for g, r in finite.window_items()
    )
    q_arrows: list[tuple[Fraction, Fraction]] = []
    q_tail: Fraction | None = None
    if decomp is not None:
        if not decomp.mult1.is_finite():
            raise InconsistentRanks("infinite I1 family is not representable")
        for g, m in decomp.mult1.window_items():
            q_arrows.extend([(g + 1 + sigma, g + sigma)] * m)
        for g, m in decomp.mult2.window_items():
            q_arrows.extend(
                [(g + 2 + sigma, g + 1 + sigma), (g + 1 + sigma, g + sigma)] * m
            )
        residues = [r for r in range(4) if decomp.mult2.tail_rank(r)]
        if residues:
            r = residues[0]
            start = decomp.mult2.horizon + ((r - decomp.mult2.horizon) % 4)
            q_tail = start + sigma
    return PinModule(
        a_bottom=a_i + sigma,
        b_bottom=b_i + sigma,
        c_bottom=c_i + sigma,
        finite=finite_t,
        q_arrows=tuple(sorted(q_arrows)),
        q_tail_start=q_tail,
    )


# ---------------------------------------------------------------------------
# the full pipeline


@dataclass(frozen=True)
class PinResult:
    """Everything the equivariant pipeline produces for one spin structure."""

    sigma: Fraction
    bad_count: int
    hm: GradedModule
    summary: SymmetrySummary
    derived: DerivedProfiles
    decomposition: GysinDecomposition
    module: PinModule
    correction: CorrectionTerms
    conjecture_assumed: bool

    def to_json(self) -> dict[str, Any]:
        sigma = self.sigma

        def shifted_profile(profile: RankProfile) -> dict[str, Any]:
            raw = profile.to_json()
            return {
                "finite": [
                    [format_grading(g + sigma), r] for g, r in raw["finite"]
                ],
                "tails": [
                    {
                        "start": format_grading(t["start"] + sigma),
                        "step": t["step"],
                        "rank": t["rank"],
                    }
                    for t in raw["tails"]
                ],
            }

        return {
            "sigma": format_grading(sigma),
            "bad_vertices": self.bad_count,
            "hm": self.hm.to_json(),
            "symmetry": self.summary.to_json(),
            "derived": {
                "even": shifted_profile(self.derived.even),
                "odd": shifted_profile(self.derived.odd),
            },
            "gysin": self.decomposition.to_json(sigma),
            "pin_module": self.module.to_json(),
            "correction_terms": self.correction.to_json(),
            "conjecture_assumed": self.conjecture_assumed,
        }


def pin_invariants(
    region: Region,
    assume_conjecture: bool = False,
) -> PinResult:
    """Equivariant invariants of the reversed-orientation boundary.

    Requires a self-conjugate characteristic vector and at most two bad
    vertices.  With two bad vertices and non-trivial odd derived classes the
    identification is conjectural: pass assume_conjecture=True to proceed
    (the result is labeled) or receive ConjectureRequired.
    """
    lattice = region.lattice
    bad = bad_vertices_of_form(lattice.form)
    if len(bad) > 2:
        raise MoreThanTwoBadVertices(
            f"{len(bad)} bad vertices {bad}; supported: at most 2"
        )
    hm = hm_module(region)
    summary = symmetry_summary(region)
    derived = derived_total(region, summary)
    wu = wu_vector(lattice.form, lattice.char)
    return _pin_from_parts(
        sigma=lattice.sigma,
        bad_count=len(bad),
        hm=hm,
        summary=summary,
        derived=derived,
        two_delta_int=2 * region.min_level,
        wu=wu,
        assume_conjecture=assume_conjecture,
    )


def pin_invariants_profile(
    lattice: WeightedLattice,
    profile: TauProfile | None = None,
    max_level: int | None = None,
) -> PinResult:
    """Equivariant invariants via the certified single-variable profile.

    Valid with at most one bad vertex: there every sublevel component is
    contractible, so the merge data of the fiber-minimum profile carries
    exactly the ranks the full lattice scan would produce, including the
    J-action on components (J acts on profile runs by i -> -kappa_v - i).
    """
    bad = bad_vertices_of_form(lattice.form)
    if len(bad) > 1:
        raise TooManyBadVertices(
            f"{len(bad)} bad vertices {bad}; the profile route needs at most 1"
        )
    wu = wu_vector(lattice.form, lattice.char)  # enforces self-conjugacy early
    if profile is None:
        profile = tau_profile(lattice, max_level=max_level)
    fixed, pairs = profile.fixed_and_paired_runs()
    first_fixed = min((n for n, f in fixed.items() if f), default=None)
    if first_fixed is None:
        raise InternalMismatch("no J-invariant run up to the stable level")
    base, directions = invariant_cube(lattice.kappa)
    cube_r = 2 * lattice.cube_weight(base, directions)
    if 2 * first_fixed != cube_r:
        raise InternalMismatch(
            f"first invariant run level {first_fixed} disagrees with the "
            f"invariant cube weight {cube_r // 2}"
        )
    summary = SymmetrySummary(
        min_level=profile.min_level,
        stable_level=profile.stable_level,
        sigma=profile.sigma,
        r_lattice=cube_r,
        cube_r=cube_r,
        rho=cube_r + profile.sigma,
        fixed_counts=fixed,
        pair_counts=pairs,
        levels=(),
    )
    even = RankProfile.from_pairs(
        (2 * n, fixed[n])
        for n in range(profile.min_level, profile.stable_level + 1)
    ).with_tail(2 * (profile.stable_level + 1), 2, 1)
    derived = DerivedProfiles(even=even, odd=RankProfile())
    return _pin_from_parts(
        sigma=profile.sigma,
        bad_count=len(bad),
        hm=profile.hm(),
        summary=summary,
        derived=derived,
        two_delta_int=2 * profile.min_level,
        wu=wu,
        assume_conjecture=False,
    )


def _pin_from_parts(
    sigma: Fraction,
    bad_count: int,
    hm: GradedModule,
    summary: SymmetrySummary,
    derived: DerivedProfiles,
    two_delta_int: int,
    wu: WuData,
    assume_conjecture: bool,
) -> PinResult:
    """Shared rank algebra: from computed profiles to the full package."""
    hm_int = module_int_profile(hm, sigma)
    a_first = derived.total()
    rho_int = summary.r_lattice
    conjecture_assumed = False

    if any(parity != "even" for _, parity in hm.towers):
        raise InternalMismatch("unexpected odd infinite tower")

    if bad_count <= 1:
        if derived.has_odd():
            raise InternalMismatch(
                "odd derived classes with at most one bad vertex"
            )
        if any(parity != "even" for _, _, parity in hm.chains):
            raise InternalMismatch(
                "odd-degree classes with at most one bad vertex"
            )
        a_second = a_first
        decomp = gysin_decompose(hm_int, a_first, a_second)
        g0 = decomp.forced_tail_residue()
        if g0 != rho_int % 4:
            raise InternalMismatch(
                f"periodic family residue {g0} disagrees with rho ({rho_int})"
            )
        hs_residue = hs_profile_one_bad(summary)
        if hs_residue != decomp.hs_profile():
            raise InternalMismatch(
                "residue-rule and decomposition ranks disagree"
            )
        if rho_int + sigma != 2 * wu.mubar:
            raise InternalMismatch(
                f"rho = {rho_int + sigma} is not twice mubar = {wu.mubar}"
            )
    else:
        if derived.has_odd():
            if not assume_conjecture:
                raise ConjectureRequired(
                    "two bad vertices with odd derived classes: the "
                    "identification is conjectural; pass "
                    "assume_conjecture=True to proceed"
                )
            conjecture_assumed = True
            a_second = force_second_derived(hm_int, a_first)
        else:
            a_second = a_first
        decomp = gysin_decompose(hm_int, a_first, a_second)
        g0 = decomp.forced_tail_residue()

    bottoms = tower_bottoms(two_delta_int, rho_int, g0)
    module = _assemble_pin_module(
        decomp.hs_profile(), bottoms, sigma, decomp
    )
    correction = correction_terms(
        rho=rho_int + sigma,
        delta=(two_delta_int + sigma) / 2,
        mubar=wu.mubar,
        tail_offset=(g0 - rho_int) % 4,
    )
    if (correction.a, correction.b, correction.c) != (
        module.a_bottom,
        module.b_bottom,
        module.c_bottom,
    ):
        raise InternalMismatch(
            "correction-term towers disagree with the assembled module"
        )
    return PinResult(
        sigma=sigma,
        bad_count=bad_count,
        hm=hm,
        summary=summary,
        derived=derived,
        decomposition=decomp,
        module=module,
        correction=correction,
        conjecture_assumed=conjecture_assumed,
    )
