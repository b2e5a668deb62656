"""Exact linear algebra over the integers, rationals, and GF(2).

Everything here is certified-exact: rational arithmetic uses
fractions.Fraction, integer determinants use fraction-free (Bareiss)
elimination, inertia uses symmetric pivoting with hyperbolic-pair handling,
and lattice-point enumeration uses a recursive sphere decoder whose per-level
integer intervals are derived with integer square roots — no floating point
decides membership anywhere.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from .errors import CapacityExceeded

Matrix = Sequence[Sequence[int]]
QMatrix = list[list[Fraction]]

__all__ = [
    "bareiss_determinant",
    "symmetric_inertia",
    "is_negative_definite",
    "solve_rational",
    "invert_rational",
    "smith_normal_form",
    "gf2_rank",
    "gf2_nullspace",
    "Gf2Reducer",
    "ldl_decompose",
    "enumerate_quadratic",
    "quadratic_integer_minimum",
]


# ---------------------------------------------------------------------------
# rational / integer dense routines


def _as_fraction_matrix(mat: Matrix) -> QMatrix:
    return [[Fraction(entry) for entry in row] for row in mat]


def bareiss_determinant(mat: Matrix) -> int:
    """Exact determinant of an integer matrix by fraction-free elimination."""
    n = len(mat)
    if n == 0:
        return 1
    a = [[int(entry) for entry in row] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def symmetric_inertia(mat: Matrix) -> tuple[int, int, int]:
    """Inertia (n_negative, n_zero, n_positive) of a symmetric matrix.

    Uses exact symmetric pivoting; a pair of indices coupled only through an
    off-diagonal entry contributes one positive and one negative eigenvalue
    (hyperbolic pair), so zero diagonals are handled without breakdown.
    """
    a = _as_fraction_matrix(mat)
    live = list(range(len(a)))
    neg = zero = pos = 0
    while live:
        pivot = next((i for i in live if a[i][i] != 0), None)
        if pivot is not None:
            d = a[pivot][pivot]
            if d < 0:
                neg += 1
            else:
                pos += 1
            live.remove(pivot)
            col = {i: a[i][pivot] for i in live}
            for i in live:
                if col[i] == 0:
                    continue
                ci = col[i] / d
                for j in live:
                    if col[j] != 0:
                        a[i][j] -= ci * col[j]
            continue
        off = next(
            ((i, j) for i in live for j in live if i < j and a[i][j] != 0),
            None,
        )
        if off is None:
            zero += len(live)
            break
        i0, j0 = off
        b = a[i0][j0]
        neg += 1
        pos += 1
        live.remove(i0)
        live.remove(j0)
        ci = {i: a[i][i0] for i in live}
        cj = {i: a[i][j0] for i in live}
        for i in live:
            for j in live:
                a[i][j] -= (ci[i] * cj[j] + cj[i] * ci[j]) / b
    return neg, zero, pos


def is_negative_definite(mat: Matrix) -> bool:
    neg, zero, pos = symmetric_inertia(mat)
    return zero == 0 and pos == 0 and neg == len(mat)


def solve_rational(mat: Matrix, rhs: Sequence[int | Fraction]) -> list[Fraction] | None:
    """Solve mat * x = rhs exactly; returns None if the matrix is singular."""
    n = len(mat)
    a = [[Fraction(entry) for entry in row] + [Fraction(rhs[i])] for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [entry * inv for entry in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [a[r][n] for r in range(n)]


def invert_rational(mat: Matrix) -> QMatrix | None:
    """Exact inverse of an integer/rational matrix, or None if singular."""
    n = len(mat)
    a = [[Fraction(entry) for entry in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(mat)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return None
        a[col], a[pivot] = a[pivot], a[col]
        inv = 1 / a[col][col]
        a[col] = [entry * inv for entry in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def smith_normal_form(mat: Matrix) -> tuple[list[list[int]], list[list[int]], list[list[int]]]:
    """Smith normal form with transforms: returns (D, U, V) with U*mat*V = D.

    U and V are unimodular; D is diagonal with non-negative entries satisfying
    the divisibility chain d_1 | d_2 | ... .
    """
    a = [[int(entry) for entry in row] for row in mat]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i: int, j: int, factor: int) -> None:  # row_i -= factor * row_j
        a[i] = [x - factor * y for x, y in zip(a[i], a[j])]
        u[i] = [x - factor * y for x, y in zip(u[i], u[j])]

    def col_op(i: int, j: int, factor: int) -> None:  # col_i -= factor * col_j
        for r in range(rows):
            a[r][i] -= factor * a[r][j]
        for r in range(cols):
            v[r][i] -= factor * v[r][j]

    def swap_rows(i: int, j: int) -> None:
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i: int, j: int) -> None:
        for r in range(rows):
            a[r][i], a[r][j] = a[r][j], a[r][i]
        for r in range(cols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    t = 0
    while t < min(rows, cols):
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                if a[i][j] != 0 and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, rows):
                if a[i][t] != 0:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t] != 0:  # remainder smaller than pivot: promote it
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, cols):
                if a[t][j] != 0:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if not dirty:
                # enforce divisibility of the remaining block by the pivot
                stop = False
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if a[i][j] % a[t][t] != 0:
                            row_op(t, i, -1)
                            dirty = True
                            stop = True
                            break
                    if stop:
                        break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    d = [[a[i][j] if i == j else 0 for j in range(cols)] for i in range(rows)]
    return d, u, v


# ---------------------------------------------------------------------------
# GF(2) bitset routines (vectors are Python ints, bit i = coordinate i)


def gf2_rank(rows: Iterable[int]) -> int:
    """Rank over GF(2) of the given bitmask rows (forward elimination)."""
    pivots: dict[int, int] = {}
    rank = 0
    for row in rows:
        while row:
            low = row & -row
            other = pivots.get(low)
            if other is None:
                pivots[low] = row
                rank += 1
                break
            row ^= other
    return rank


def gf2_nullspace(rows: Sequence[int], width: int) -> list[int]:
    """Basis of {x in GF(2)^width : <row, x> = 0 for every row}."""
    reduced: list[int] = []
    pivots: dict[int, int] = {}
    for row in rows:
        while row:
            low = row & -row
            other = pivots.get(low)
            if other is None:
                pivots[low] = row
                reduced.append(row)
                break
            row ^= other
    # back-substitute to RREF so each pivot column appears in one row only
    reduced.sort(key=lambda r: r & -r)
    for idx, row in enumerate(reduced):
        low = row & -row
        for j in range(len(reduced)):
            if j != idx and reduced[j] & low:
                reduced[j] ^= row
    pivot_bits = {row & -row for row in reduced}
    basis: list[int] = []
    for col in range(width):
        bit = 1 << col
        if bit in pivot_bits:
            continue
        vec = bit
        for row in reduced:
            if row & bit:
                vec |= row & -row
        basis.append(vec)
    return basis


class Gf2Reducer:
    """Incremental GF(2) elimination that tracks expressions.

    Each stored pivot row remembers which of the added generators it is a sum
    of (as a bitmask over generator indices), so reduce() can report the
    coordinates of a vector in terms of the added generators.
    """

    def __init__(self) -> None:
        self._pivots: dict[int, tuple[int, int]] = {}
        self._count = 0

    def __len__(self) -> int:
        return len(self._pivots)

    def reduce(self, vec: int) -> tuple[int, int]:
        """Reduce vec; returns (residue, expression over added generators)."""
        expr = 0
        while vec:
            low = vec & -vec
            hit = self._pivots.get(low)
            if hit is None:
                break
            vec ^= hit[0]
            expr ^= hit[1]
        return vec, expr

    def add(self, vec: int, tag: int | None = None) -> int | None:
        """Add a generator; returns its tag if independent, else None."""
        residue, expr = self.reduce(vec)
        if residue == 0:
            return None
        if tag is None:
            tag = self._count
        self._count = max(self._count, tag + 1)
        self._pivots[residue & -residue] = (residue, expr ^ (1 << tag))
        return tag


# ---------------------------------------------------------------------------
# exact positive definite quadratic minimization / enumeration


def ldl_decompose(mat: Matrix) -> tuple[QMatrix, list[Fraction]]:
    """LDL^T factorization of a symmetric positive definite matrix.

    Returns (L, d) with L unit lower triangular and d the positive pivots.
    Raises ValueError when a pivot fails to be positive.
    """
    n = len(mat)
    a = _as_fraction_matrix(mat)
    lower = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    d: list[Fraction] = []
    for k in range(n):
        pivot = a[k][k] - sum(d[j] * lower[k][j] * lower[k][j] for j in range(k))
        if pivot <= 0:
            raise ValueError("matrix is not positive definite")
        d.append(pivot)
        for i in range(k + 1, n):
            value = a[i][k] - sum(d[j] * lower[i][j] * lower[k][j] for j in range(k))
            lower[i][k] = value / pivot
    return lower, d


def _integer_interval(t: Fraction, bound: Fraction) -> tuple[int, int]:
    """All integers x with (x + t)^2 <= bound, as [lo, hi] (possibly empty)."""
    if bound < 0:
        return 1, 0
    p, q = t.numerator, t.denominator
    a, b = bound.numerator, bound.denominator
    # (x*q + p)^2 <= a*q*q/b  <=>  |x*q + p| <= isqrt(floor(a*q*q/b))
    m = math.isqrt(a * q * q // b)
    lo = -(-(-m - p) // q)  # ceil((-m - p) / q)
    hi = (m - p) // q
    return lo, hi


def enumerate_quadratic(
    mat: Matrix,
    center: Sequence[Fraction],
    radius2: Fraction,
    budget: int | None = None,
) -> Iterator[tuple[int, ...]]:
    """Yield every integer x with (x - center)^T mat (x - center) <= radius2.

    mat must be symmetric positive definite.  The enumeration is a recursive
    sphere decoder on the exact LDL factorization; every interval bound is an
    exact integer computation, so the point set is certified complete.  When
    budget is given, both the width-product prediction and the actual yield
    count are capped, raising CapacityExceeded beyond it.
    """
    n = len(mat)
    if n == 0:
        if radius2 >= 0:
            yield ()
        return
    if radius2 < 0:
        return
    lower, d = ldl_decompose(mat)
    if budget is not None:
        predicted = 1.0
        for dk in d:
            predicted *= 2.0 * math.sqrt(float(radius2 / dk)) + 1.0
            if predicted > 4.0 * budget:
                raise CapacityExceeded(
                    f"predicted enumeration size {predicted:.3g} exceeds budget {budget}"
                )
    center = [Fraction(c) for c in center]
    x = [0] * n
    yielded = 0

    def descend(level: int, remaining: Fraction) -> Iterator[tuple[int, ...]]:
        nonlocal yielded
        t = -center[level]
        for j in range(level + 1, n):
            t += lower[j][level] * (x[j] - center[j])
        lo, hi = _integer_interval(t, remaining / d[level])
        for value in range(lo, hi + 1):
            x[level] = value
            used = d[level] * (value + t) ** 2
            if level == 0:
                yielded += 1
                if budget is not None and yielded > budget:
                    raise CapacityExceeded(f"enumeration exceeded budget {budget}")
                yield tuple(x)
            else:
                yield from descend(level - 1, remaining - used)

    yield from descend(n - 1, radius2)


def quadratic_integer_minimum(
    mat: Matrix,
    center: Sequence[Fraction],
    budget: int | None = None,
) -> tuple[Fraction, list[tuple[int, ...]]]:
    """Exact minimum of (x-center)^T mat (x-center) over integer x.

    Returns (min_value, sorted list of all integer minimizers).  The rounded
    continuous minimizer certifies the search radius.
    """
    n = len(mat)
    center = [Fraction(c) for c in center]
    rounded = tuple(round(c) for c in center)

    def value_at(point: Sequence[int]) -> Fraction:
        diff = [Fraction(p) - c for p, c in zip(point, center)]
        return sum(diff[i] * sum(Fraction(mat[i][j]) * diff[j] for j in range(n))
                   for i in range(n))

    radius2 = value_at(rounded)
    best = radius2
    argmins: list[tuple[int, ...]] = []
    for point in enumerate_quadratic(mat, center, radius2, budget=budget):
        val = value_at(point)
        if val < best:
            best = val
            argmins = [point]
        elif val == best:
            argmins.append(point)
    return best, sorted(argmins)
