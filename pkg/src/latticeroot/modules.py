"""Graded F[U]-module and rank-profile containers.

GradedModule describes a finitely generated graded module over F[U] (U of
degree -2): a finite list of infinite towers (bottom gradings) plus finite
U-chains (bottom grading and length).  Gradings are exact rationals.

RankProfile is the integer-graded rank function used by the Gysin
decomposition algebra: finitely many exceptional values plus an eventually
periodic tail (period dividing 4).  Profiles are kept in canonical form so
equality is structural.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .errors import InconsistentRanks

__all__ = ["GradedModule", "RankProfile", "format_grading"]


def format_grading(value: Fraction | int) -> str:
    return str(Fraction(value))


@dataclass(frozen=True)
class GradedModule:
    """Direct sum of U-towers and finite U-chains, with exact gradings.

    towers: tuple of (bottom_grading, parity) — infinite towers where U acts
        surjectively with degree -2 above the bottom.
    chains: tuple of (bottom_grading, length, parity) — finite chains
        spanning bottom, bottom+2, ..., bottom+2(length-1), U mapping each
        rung onto the one below and the bottom rung to zero.
    """

    towers: tuple[tuple[Fraction, str], ...]
    chains: tuple[tuple[Fraction, int, str], ...]

    @staticmethod
    def build(
        towers: Iterable[tuple[Fraction | int, str]],
        chains: Iterable[tuple[Fraction | int, int, str]],
    ) -> "GradedModule":
        t = tuple(sorted(((Fraction(g), parity) for g, parity in towers),
                         key=lambda item: (item[0], item[1])))
        c = tuple(sorted(((Fraction(g), int(n), parity) for g, n, parity in chains),
                         key=lambda item: (item[0], -item[1], item[2])))
        for _, length, _ in c:
            if length <= 0:
                raise ValueError("chain length must be positive")
        return GradedModule(t, c)

    def finite_profile(self) -> dict[Fraction, int]:
        """Aggregated rank of the finite part, grading -> rank."""
        profile: dict[Fraction, int] = {}
        for bottom, length, _parity in self.chains:
            for j in range(length):
                g = bottom + 2 * j
                profile[g] = profile.get(g, 0) + 1
        return dict(sorted(profile.items()))

    def rank_at(self, grading: Fraction | int) -> int:
        """Total rank at one grading (towers contribute above their bottom)."""
        g = Fraction(grading)
        rank = self.finite_profile().get(g, 0)
        for bottom, _parity in self.towers:
            if g >= bottom and (g - bottom) % 2 == 0:
                rank += 1
        return rank

    def to_json(self) -> dict[str, Any]:
        return {
            "towers": [
                {"bottom": format_grading(bottom), "parity": parity}
                for bottom, parity in self.towers
            ],
            "finite": [
                [format_grading(g), rank] for g, rank in self.finite_profile().items()
            ],
            "finite_chains": [
                {"bottom": format_grading(bottom), "length": length, "parity": parity}
                for bottom, length, parity in self.chains
            ],
        }


class RankProfile:
    """Non-negative integer-graded rank function, eventually 4-periodic.

    Stored as explicit window values for gradings below a horizon plus a
    per-residue (mod 4) constant tail at and above the horizon.  All
    constructors canonicalize, so == compares mathematical equality.
    """

    __slots__ = ("_window", "_horizon", "_tail")

    def __init__(
        self,
        window: Mapping[int, int] | None = None,
        horizon: int = 0,
        tail: Mapping[int, int] | None = None,
    ) -> None:
        self._window = {int(g): int(r) for g, r in (window or {}).items() if r != 0}
        self._horizon = int(horizon)
        self._tail = {int(res) % 4: int(r) for res, r in (tail or {}).items() if r != 0}
        self._canonicalize()

    # -- construction -----------------------------------------------------

    @staticmethod
    def from_pairs(pairs: Iterable[tuple[int, int]]) -> "RankProfile":
        window: dict[int, int] = {}
        horizon = 0
        for g, r in pairs:
            if r < 0:
                raise InconsistentRanks(f"negative rank {r} at grading {g}")
            if r:
                window[int(g)] = window.get(int(g), 0) + int(r)
                horizon = max(horizon, int(g) + 1)
        return RankProfile(window, horizon, {})

    def with_tail(self, start: int, step: int, rank: int) -> "RankProfile":
        """Profile plus rank at start, start+step, ... (step 2 or 4)."""
        if step not in (2, 4):
            raise ValueError("tail step must be 2 or 4")
        if rank < 0:
            raise InconsistentRanks("negative tail rank")
        if rank == 0:
            return self.copy()
        horizon = max(self._horizon, start)
        window = dict(self._materialized_window(horizon))
        tail = dict(self._tail)
        for g in range(start, horizon, step):
            window[g] = window.get(g, 0) + rank
        residues = {start % 4} if step == 4 else {start % 4, (start + 2) % 4}
        for res in residues:
            tail[res] = tail.get(res, 0) + rank
        return RankProfile(window, horizon, tail)

    def copy(self) -> "RankProfile":
        return RankProfile(self._window, self._horizon, self._tail)

    @staticmethod
    def from_json(data: Mapping[str, Any]) -> "RankProfile":
        """Inverse of to_json; also accepts step-2 tails."""
        if not isinstance(data, Mapping):
            raise InconsistentRanks("rank profile must be a JSON object")
        profile = RankProfile.from_pairs(
            (int(g), int(r)) for g, r in data.get("finite", ())
        )
        for tail in data.get("tails", ()):
            profile = profile.with_tail(
                int(tail["start"]), int(tail.get("step", 4)), int(tail["rank"])
            )
        return profile

    # -- internals ---------------------------------------------------------

    def _materialized_window(self, new_horizon: int) -> dict[int, int]:
        window = dict(self._window)
        for g in range(self._horizon, new_horizon):
            r = self._tail.get(g % 4, 0)
            if r:
                window[g] = r
        return window

    def _canonicalize(self) -> None:
        window = {g: r for g, r in self._window.items() if r != 0}
        tail = {res: r for res, r in self._tail.items() if r != 0}
        horizon = self._horizon
        for g in sorted(window):
            if g >= horizon:
                if window[g] != tail.get(g % 4, 0):
                    raise InconsistentRanks(
                        "window value at/above horizon conflicts with tail"
                    )
                del window[g]
        if not tail:
            horizon = (max(window) + 1) if window else 0
        else:
            # lower the horizon to its minimum: the tail already describes
            # every grading whose window value matches its residue rank
            floor = min(window, default=horizon) - 4
            while horizon > floor and window.get(horizon - 1, 0) == tail.get(
                (horizon - 1) % 4, 0
            ):
                window.pop(horizon - 1, None)
                horizon -= 1
        self._window = window
        self._horizon = horizon
        self._tail = tail

    # -- queries -----------------------------------------------------------

    def value(self, grading: int) -> int:
        g = int(grading)
        if g >= self._horizon:
            return self._tail.get(g % 4, 0)
        return self._window.get(g, 0)

    def is_zero(self) -> bool:
        return not self._window and not self._tail

    def is_finite(self) -> bool:
        return not self._tail

    def min_support(self) -> int | None:
        if self._window:
            return min(self._window)
        if self._tail:
            return min(
                self._horizon + ((res - self._horizon) % 4) for res in self._tail
            )
        return None

    @property
    def horizon(self) -> int:
        return self._horizon

    def tail_rank(self, residue: int) -> int:
        return self._tail.get(residue % 4, 0)

    def window_items(self) -> list[tuple[int, int]]:
        return sorted(self._window.items())

    def support_window(self, lo: int, hi: int) -> list[tuple[int, int]]:
        return [(g, self.value(g)) for g in range(lo, hi) if self.value(g)]

    # -- algebra -----------------------------------------------------------

    def _binary(self, other: "RankProfile", sign: int) -> "RankProfile":
        horizon = max(self._horizon, other._horizon)
        window = self._materialized_window(horizon)
        for g, r in other._materialized_window(horizon).items():
            window[g] = window.get(g, 0) + sign * r
        tail = dict(self._tail)
        for res, r in other._tail.items():
            tail[res] = tail.get(res, 0) + sign * r
        for g, r in window.items():
            if r < 0:
                raise InconsistentRanks(f"negative rank {r} at grading {g}")
        for res, r in tail.items():
            if r < 0:
                raise InconsistentRanks(f"negative tail rank {r} at residue {res}")
        return RankProfile(window, horizon, tail)

    def __add__(self, other: "RankProfile") -> "RankProfile":
        return self._binary(other, 1)

    def __sub__(self, other: "RankProfile") -> "RankProfile":
        """Pointwise difference; raises InconsistentRanks if negative anywhere."""
        return self._binary(other, -1)

    def shift(self, delta: int) -> "RankProfile":
        window = {g + delta: r for g, r in self._window.items()}
        tail = {(res + delta) % 4: r for res, r in self._tail.items()}
        return RankProfile(window, self._horizon + delta, tail)

    def scale(self, factor: int) -> "RankProfile":
        if factor < 0:
            raise InconsistentRanks("negative scale factor")
        window = {g: r * factor for g, r in self._window.items()}
        tail = {res: r * factor for res, r in self._tail.items()}
        return RankProfile(window, self._horizon, tail)

    def exact_div(self, divisor: int) -> "RankProfile":
        """Pointwise exact division; raises InconsistentRanks on a remainder."""
        if divisor <= 0:
            raise InconsistentRanks("divisor must be positive")
        window = {}
        for g, r in self._window.items():
            if r % divisor:
                raise InconsistentRanks(
                    f"rank {r} at grading {g} is not divisible by {divisor}"
                )
            window[g] = r // divisor
        tail = {}
        for res, r in self._tail.items():
            if r % divisor:
                raise InconsistentRanks(
                    f"tail rank {r} at residue {res} is not divisible by {divisor}"
                )
            tail[res] = r // divisor
        return RankProfile(window, self._horizon, tail)

    # -- comparison / serialization -----------------------------------------

    def _key(self) -> tuple:
        return (
            tuple(sorted(self._window.items())),
            self._horizon if self._tail else None,
            tuple(sorted(self._tail.items())),
        )

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RankProfile) and self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        parts = [f"{g}:{r}" for g, r in sorted(self._window.items())]
        for res, r in sorted(self._tail.items()):
            first = self._horizon + ((res - self._horizon) % 4)
            parts.append(f"[{first}+4k]:{r}")
        return "RankProfile(" + ", ".join(parts) + ")"

    def to_json(self) -> dict[str, Any]:
        tails = []
        for res, r in sorted(self._tail.items()):
            first = self._horizon + ((res - self._horizon) % 4)
            tails.append({"start": first, "step": 4, "rank": r})
        return {
            "finite": [[g, r] for g, r in sorted(self._window.items())],
            "tails": tails,
        }
