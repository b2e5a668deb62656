"""Characteristic vectors and their orbits for a negative definite form.

A characteristic vector is stored as its evaluation tuple l (coordinates in
sorted vertex-id order) with l_v = m_v (mod 2).  Two characteristic vectors
lie in the same orbit when they differ by an element of 2*M*Z^s.  Orbits
correspond to the torsion group Z^s / M Z^s, so there are exactly |det M| of
them; the orbit is self-conjugate (spin) exactly when kappa = M^-1 l is
integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .errors import (
    AmbiguousWu,
    NotCharacteristic,
    NotDefinite,
    NotSelfConjugate,
    NoWuRepresentative,
)
from .plumbing import IntersectionForm

__all__ = [
    "CharVector",
    "SpinCOrbit",
    "WuData",
    "check_characteristic",
    "k_square",
    "sigma_shift",
    "is_same_orbit",
    "canonical_representative",
    "enumerate_orbits",
    "wu_vector",
    "kappa_vector",
]


@dataclass(frozen=True)
class CharVector:
    """Characteristic vector, validated against its intersection form."""

    values: tuple[int, ...]

    @staticmethod
    def of(form: IntersectionForm, values: Sequence[int]) -> "CharVector":
        check_characteristic(form, values)
        return CharVector(tuple(int(v) for v in values))


@dataclass(frozen=True)
class SpinCOrbit:
    """One orbit of characteristic vectors.

    representative is canonical: it maximizes k^2 over the orbit (k^2 <= 0
    always, so this is the minimal |k^2|) and is lexicographically smallest
    among the maximizers.
    """

    orbit_index: int
    representative: tuple[int, ...]
    k_square: Fraction
    sigma: Fraction
    self_conjugate: bool


@dataclass(frozen=True)
class WuData:
    """The unique 0/1 Wu vector of a self-conjugate orbit and its invariant."""

    w: tuple[int, ...]
    wu_set: tuple[int, ...]
    w_square: int
    signature: int
    mubar: Fraction


def check_characteristic(form: IntersectionForm, values: Sequence[int]) -> None:
    if len(values) != form.size:
        raise NotCharacteristic(
            f"vector length {len(values)} != form size {form.size}"
        )
    for value, diag in zip(values, form.diagonal):
        if (int(value) - diag) % 2 != 0:
            raise NotCharacteristic(
                f"entry {value} has wrong parity against diagonal {diag}"
            )


def kappa_vector(form: IntersectionForm, char: Sequence[int]) -> list[Fraction]:
    """kappa = M^-1 l, the coordinate vector of the characteristic element."""
    return form.solve(list(char))


def k_square(form: IntersectionForm, char: Sequence[int]) -> Fraction:
    """Exact self-pairing l^T M^-1 l (non-positive for negative definite M)."""
    check_characteristic(form, char)
    kappa = kappa_vector(form, char)
    return sum(Fraction(c) * k for c, k in zip(char, kappa))


def sigma_shift(form: IntersectionForm, char: Sequence[int]) -> Fraction:
    """Grading shift -(s + k^2) / 4 attached to the characteristic vector."""
    return -(form.size + k_square(form, char)) / 4


def is_same_orbit(
    form: IntersectionForm, first: Sequence[int], second: Sequence[int]
) -> bool:
    check_characteristic(form, first)
    check_characteristic(form, second)
    half_diff = [(int(b) - int(a)) // 2 for a, b in zip(first, second)]
    solution = form.solve(half_diff)
    return all(value.denominator == 1 for value in solution)


def _weight_minimizers(
    form: IntersectionForm, char: Sequence[int], budget: int | None
) -> tuple[Fraction, list[tuple[int, ...]]]:
    """Global minimum of the vertex weight function for this representative.

    w0(x) = -(x^T M x + l^T x)/2 is a positive definite quadratic in x; its
    integer minimizers are found by certified sphere decoding around the
    continuous minimum -kappa/2.
    """
    pos = [[-entry for entry in row] for row in form.rows]
    kappa = kappa_vector(form, char)
    center = [-k / 2 for k in kappa]
    quad_min, argmins = linalg.quadratic_integer_minimum(pos, center, budget=budget)
    ksq = sum(Fraction(c) * k for c, k in zip(char, kappa))
    min_value = (quad_min + ksq / 4) / 2
    assert min_value.denominator == 1, "weight minimum must be an integer"
    return min_value, argmins


def canonical_representative(
    form: IntersectionForm, char: Sequence[int], budget: int | None = None
) -> tuple[int, ...]:
    """Maximal-k^2 representative of the orbit, lex-smallest among ties.

    Shifting l by 2Mx changes k^2 by -8*w0(x), so the maximizers of k^2 are
    exactly the shifts by global minimizers of the weight function.
    """
    check_characteristic(form, char)
    if not linalg.is_negative_definite(form.rows):
        raise NotDefinite("canonical representative requires negative definite form")
    _, argmins = _weight_minimizers(form, char, budget)
    candidates = []
    for x in argmins:
        shift = form.apply(x)
        candidates.append(tuple(int(c) + 2 * s for c, s in zip(char, shift)))
    return min(candidates)


def enumerate_orbits(
    form: IntersectionForm, budget: int | None = None
) -> list[SpinCOrbit]:
    """All |det M| orbits, canonically represented and deterministically ordered.

    Ordering: k^2 descending (i.e. |k^2| ascending), then representative
    lexicographic.  Raises NotDefinite unless M is negative definite.
    """
    if not linalg.is_negative_definite(form.rows):
        raise NotDefinite("orbit enumeration requires negative definite form")
    size = form.size
    det = abs(form.determinant())
    d, u_mat, _v = linalg.smith_normal_form(form.rows)
    u_inv = linalg.invert_rational(u_mat)
    assert u_inv is not None, "SNF transform must be unimodular"
    diag = form.diagonal
    elementary = [d[i][i] for i in range(size)]
    reps: list[tuple[int, ...]] = []

    def residues(level: int, current: list[Fraction]) -> None:
        if level == size:
            values = []
            for i in range(size):
                value = current[i]
                assert value.denominator == 1
                values.append(diag[i] + 2 * int(value))
            reps.append(tuple(values))
            return
        for residue in range(max(elementary[level], 1)):
            if residue and elementary[level] == 0:
                break
            nxt = [
                current[i] + residue * u_inv[i][level] for i in range(size)
            ]
            residues(level + 1, nxt)

    residues(0, [Fraction(0)] * size)
    assert len(reps) == det, f"expected {det} orbits, enumerated {len(reps)}"

    orbits = []
    for rep in reps:
        canon = canonical_representative(form, rep, budget=budget)
        kappa = kappa_vector(form, canon)
        ksq = sum(Fraction(c) * k for c, k in zip(canon, kappa))
        orbits.append(
            (
                canon,
                ksq,
                -(size + ksq) / 4,
                all(value.denominator == 1 for value in kappa),
            )
        )
    orbits.sort(key=lambda item: (-item[1], item[0]))
    return [
        SpinCOrbit(
            orbit_index=index,
            representative=canon,
            k_square=ksq,
            sigma=sigma,
            self_conjugate=spin,
        )
        for index, (canon, ksq, sigma, spin) in enumerate(orbits)
    ]


def wu_vector(form: IntersectionForm, char: Sequence[int]) -> WuData:
    """The unique 0/1 vector w with M*w in the orbit of char.

    For a self-conjugate orbit kappa = M^-1 l is integral and w must agree
    with kappa mod 2, which pins w down entirely; existence and uniqueness
    are re-verified defensively.
    """
    check_characteristic(form, char)
    kappa = kappa_vector(form, char)
    if any(value.denominator != 1 for value in kappa):
        raise NotSelfConjugate("orbit is not self-conjugate; no Wu vector")
    w = tuple(int(value) % 2 for value in kappa)
    m_w = form.apply(w)
    try:
        check_characteristic(form, m_w)
        same = is_same_orbit(form, char, m_w)
    except NotCharacteristic:
        same = False
    if not same:
        raise NoWuRepresentative("parity candidate failed orbit verification")
    others = [
        other
        for other in _all_zero_one_in_orbit(form, char)
        if other != w
    ]
    if others:
        raise AmbiguousWu(f"multiple Wu vectors: {w} and {others[0]}")
    neg, zero, pos = linalg.symmetric_inertia(form.rows)
    signature = pos - neg
    w_square = form.pairing(w, w)
    wu_set = tuple(
        vid for vid, flag in zip(form.vertex_ids, w) if flag
    )
    return WuData(
        w=w,
        wu_set=wu_set,
        w_square=w_square,
        signature=signature,
        mubar=Fraction(signature - w_square, 8),
    )


def _all_zero_one_in_orbit(
    form: IntersectionForm, char: Sequence[int]
) -> list[tuple[int, ...]]:
    """Defensive check helper: 0/1 vectors in the orbit, via the parity rule.

    w - kappa must be even coordinatewise, so each coordinate of w is forced;
    the list therefore has at most one element without any 2^s search.
    """
    kappa = kappa_vector(form, char)
    if any(value.denominator != 1 for value in kappa):
        return []
    w = tuple(int(value) % 2 for value in kappa)
    m_w = form.apply(w)
    try:
        if is_same_orbit(form, char, m_w):
            return [w]
    except NotCharacteristic:
        pass
    return []
