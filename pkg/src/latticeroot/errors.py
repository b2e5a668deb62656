"""Exception hierarchy for the latticeroot package.

Every error raised by the public API derives from LatticeRootError.  The CLI
maps these onto its exit codes: unparseable or structurally malformed input
(ParseError, MalformedGraph, InvalidSeifertData) exits 1; semantically invalid
input or failed validation (definiteness, characteristic parity, conjugacy,
bad-vertex limits, inconsistent rank profiles) exits 2; capacity limits exit 3;
conjecture gating exits 4; genuinely ambiguous results exit 5.
"""

from __future__ import annotations

__all__ = [
    "LatticeRootError",
    "ParseError",
    "MalformedGraph",
    "InvalidSeifertData",
    "NotDefinite",
    "NotCharacteristic",
    "NotSelfConjugate",
    "NoWuRepresentative",
    "AmbiguousWu",
    "CapacityExceeded",
    "StabilizationNotReached",
    "TooManyBadVertices",
    "MoreThanTwoBadVertices",
    "InternalMismatch",
    "InconsistentRanks",
    "ParityMismatch",
    "ConjectureRequired",
    "AmbiguousForcing",
]


class LatticeRootError(Exception):
    """Base class for all latticeroot errors."""


class ParseError(LatticeRootError):
    """Input text could not be parsed (bad JSON, missing keys, wrong types)."""


class MalformedGraph(LatticeRootError):
    """Graph data is structurally invalid: duplicate ids, dangling edge
    endpoints, self-loops, multi-edges, or a non-tree (disconnected/cyclic)."""


class InvalidSeifertData(LatticeRootError):
    """Seifert invariants violate alpha >= 2, 0 < omega < alpha, or
    gcd(alpha, omega) = 1."""


class NotDefinite(LatticeRootError):
    """Operation requires a negative definite intersection form."""


class NotCharacteristic(LatticeRootError):
    """Vector is not characteristic for the form (l_v != m_v mod 2)."""


class NotSelfConjugate(LatticeRootError):
    """Operation requires a self-conjugate (spin) orbit."""


class NoWuRepresentative(LatticeRootError):
    """No 0/1 vector w with M*w in the requested orbit.

    Unreachable for valid self-conjugate orbits (w = kappa mod 2 always
    works); kept as a defensive re-check.
    """


class AmbiguousWu(LatticeRootError):
    """More than one 0/1 Wu vector in one orbit.

    Unreachable for valid inputs (the Wu vector is unique per orbit); kept as
    a defensive re-check.
    """


class CapacityExceeded(LatticeRootError):
    """Predicted or actual enumeration size exceeds the point budget."""


class StabilizationNotReached(LatticeRootError):
    """Sublevel slices did not stabilize within the allowed level range."""


class TooManyBadVertices(LatticeRootError):
    """Graph has more bad vertices than the requested operation supports."""


class MoreThanTwoBadVertices(TooManyBadVertices):
    """Graph has three or more bad vertices; the lattice model computes the
    monopole invariants only up to two."""


class InternalMismatch(LatticeRootError):
    """Two independent computations of the same quantity disagreed."""


class InconsistentRanks(LatticeRootError):
    """Rank profiles admit no valid summand decomposition."""


class ParityMismatch(LatticeRootError):
    """Gradings fed to the correction-term rules have incompatible parities."""


class ConjectureRequired(LatticeRootError):
    """Requested identification is conjectural in odd gradings for two bad
    vertices; pass assume_conjecture=True (CLI: --assume-conjecture)."""


class AmbiguousForcing(LatticeRootError):
    """More than one second-derived profile is consistent with the data."""
