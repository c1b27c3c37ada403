"""Exact linear algebra over rational scalars.

Vectors are sequences of Fraction and matrices are tuples of row tuples.
The row-vector convention is used throughout: an operator with matrix M
sends x to x @ M, so composition reads left to right.

Large homogeneous systems (centroid, centralizer, nucleus) go through
`kernel_basis`, which eliminates constraints incrementally on an integer
copy of the data; everything it returns is re-canonicalised as exact
Fractions.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

import numpy as np

ZERO = Fraction(0)
ONE = Fraction(1)

_INT_LIMIT = 2**62


def frac(value) -> Fraction:
    """Coerce an int or Fraction; floats are refused (exactness)."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"not an exact scalar: {value!r}")


# ---------------------------------------------------------------------------
# vectors / matrices


def vec_zero(n: int) -> list:
    return [ZERO] * n


def vec_is_zero(v) -> bool:
    return all(not c for c in v)


def vec_add(a, b) -> list:
    return [x + y for x, y in zip(a, b, strict=True)]


def vec_sub(a, b) -> list:
    return [x - y for x, y in zip(a, b, strict=True)]


def vec_scale(a, c) -> list:
    c = frac(c)
    return [c * x for x in a]


def dot(a, b) -> Fraction:
    return sum((x * y for x, y in zip(a, b, strict=True)), ZERO)


def mat_identity(n: int) -> tuple:
    return tuple(tuple(ONE if i == k else ZERO for k in range(n)) for i in range(n))


def mat_transpose(m) -> tuple:
    return tuple(tuple(row[i] for row in m) for i in range(len(m[0])))


def mat_mul(a, b) -> tuple:
    bt = mat_transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)


def row_times_mat(x, m) -> list:
    """x @ M for a row vector x."""
    n = len(m[0])
    out = vec_zero(n)
    for i, xi in enumerate(x):
        if not xi:
            continue
        row = m[i]
        for k in range(n):
            c = row[k]
            if c:
                out[k] += xi * c
    return out


def mat_eq(a, b) -> bool:
    return len(a) == len(b) and all(
        len(ra) == len(rb) and all(x == y for x, y in zip(ra, rb)) for ra, rb in zip(a, b)
    )


# ---------------------------------------------------------------------------
# Gaussian elimination


def rref(rows) -> tuple[list, list]:
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [list(map(frac, r)) for r in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(m)):
            if m[i][c]:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        lead = m[r][c]
        if lead != ONE:
            m[r] = [x / lead for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return [tuple(row) for row in m[:r]], pivots


def mat_rank(rows) -> int:
    return len(rref(rows)[1])


def invert(matrix) -> tuple:
    """Inverse of a square matrix; raises ValueError when singular."""
    n = len(matrix)
    aug = [list(map(frac, row)) + [ONE if i == k else ZERO for k in range(n)]
           for i, row in enumerate(matrix)]
    reduced, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("singular matrix")
    return tuple(tuple(row[n:]) for row in reduced[:n])


def solve_xm(matrix, target):
    """One solution x of x @ M = target, or None.

    M has len(matrix) rows; x is a row vector of that length.
    """
    nrows = len(matrix)
    ncols = len(matrix[0]) if nrows else len(target)
    # equations indexed by columns of M: sum_i x_i M[i][c] = target[c]
    aug = [[frac(matrix[i][c]) for i in range(nrows)] + [frac(target[c])]
           for c in range(ncols)]
    reduced, pivots = rref(aug)
    if nrows in pivots:
        return None
    x = vec_zero(nrows)
    for row, p in zip(reduced, pivots):
        x[p] = row[-1]
    return x


# ---------------------------------------------------------------------------
# incremental span with coordinate tracking


class Span:
    """Growing subspace kept in reduced echelon form.

    Tracks, for every stored echelon row, its expression over the
    independent vectors that were added (in add order), so coordinates of
    later members can be recovered exactly.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self._rows: list[list] = []      # echelon rows (lists of Fraction)
        self._coords: list[dict] = []    # row -> {added_index: Fraction}
        self._pivots: list[int] = []
        self.added = 0                   # number of independent vectors added

    @property
    def dim(self) -> int:
        return len(self._rows)

    def copy(self) -> "Span":
        s = Span(self.ncols)
        s._rows = [list(r) for r in self._rows]
        s._coords = [dict(c) for c in self._coords]
        s._pivots = list(self._pivots)
        s.added = self.added
        return s

    def _reduce(self, vec):
        v = [frac(c) for c in vec]
        combo: dict[int, Fraction] = {}
        for idx, p in enumerate(self._pivots):
            c = v[p]
            if c:
                row = self._rows[idx]
                for k in range(p, self.ncols):
                    if row[k]:
                        v[k] -= c * row[k]
                for t, val in self._coords[idx].items():
                    combo[t] = combo.get(t, ZERO) + c * val
        return v, combo

    def add(self, vec) -> bool:
        """Insert a vector; True when the dimension grew."""
        v, combo = self._reduce(vec)
        pivot = next((k for k, c in enumerate(v) if c), None)
        if pivot is None:
            return False
        lead = v[pivot]
        v = [c / lead for c in v]
        coords = {t: -val / lead for t, val in combo.items() if val}
        coords[self.added] = ONE / lead
        # clear the new pivot from existing rows
        for idx in range(len(self._rows)):
            c = self._rows[idx][pivot]
            if c:
                row = self._rows[idx]
                for k in range(self.ncols):
                    if v[k]:
                        row[k] -= c * v[k]
                cc = self._coords[idx]
                for t, val in coords.items():
                    nv = cc.get(t, ZERO) - c * val
                    if nv:
                        cc[t] = nv
                    else:
                        cc.pop(t, None)
        pos = next((i for i, p in enumerate(self._pivots) if p > pivot), len(self._pivots))
        self._rows.insert(pos, v)
        self._coords.insert(pos, coords)
        self._pivots.insert(pos, pivot)
        self.added += 1
        return True

    def contains(self, vec) -> bool:
        v, _ = self._reduce(vec)
        return vec_is_zero(v)

    def coordinates(self, vec):
        """Coordinates over the added independent vectors, or None."""
        v, combo = self._reduce(vec)
        if not vec_is_zero(v):
            return None
        out = vec_zero(self.added)
        for t, val in combo.items():
            out[t] = val
        return out

    def basis_rows(self) -> list[tuple]:
        return [tuple(r) for r in self._rows]


# ---------------------------------------------------------------------------
# homogeneous kernels


def _scaled_int_row(row, ncols: int):
    """Sparse/dense rational row -> integer list (common denominator cleared)."""
    if isinstance(row, dict):
        items = sorted(row.items())
    else:
        items = [(i, c) for i, c in enumerate(row)]
    items = [(i, frac(c)) for i, c in items if c]
    if not items:
        return None
    den = 1
    for _, c in items:
        den = lcm(den, c.denominator)
    out = [0] * ncols
    for i, c in items:
        out[i] = int(c * den)
    g = 0
    for v in out:
        g = gcd(g, abs(v))
    if g > 1:
        out = [v // g for v in out]
    return out


def kernel_basis(rows, ncols: int) -> list[tuple]:
    """Basis of {x : x . row = 0 for every constraint row}.

    Maintains an integer basis of the current solution space and knocks it
    down one constraint at a time; per-row gcd reduction keeps entries
    small and the dtype escalates to exact Python integers if they ever
    threaten 64-bit range.
    """
    basis = np.eye(ncols, dtype=np.int64)
    exact = False
    for row in rows:
        if basis.shape[0] == 0:
            break
        r = _scaled_int_row(row, ncols)
        if r is None:
            continue
        rmax = max(abs(v) for v in r)
        if not exact:
            bmax = int(np.abs(basis).max(initial=0))
            if ncols * bmax * rmax >= _INT_LIMIT:
                basis = basis.astype(object)
                exact = True
        rv = np.array(r, dtype=object if exact else np.int64)
        d = basis @ rv
        nz = np.flatnonzero(d)
        if nz.size == 0:
            continue
        absd = np.abs(d[nz])
        p = int(nz[int(np.argmin(absd))])
        dp = d[p]
        pivot_row = basis[p].copy()
        if not exact:
            bmax = int(np.abs(basis).max(initial=0))
            dmax = int(np.abs(d).max(initial=0))
            if abs(int(dp)) * bmax + dmax * int(np.abs(pivot_row).max(initial=0)) >= _INT_LIMIT:
                basis = basis.astype(object)
                d = d.astype(object)
                pivot_row = pivot_row.astype(object)
                dp = d[p]
                exact = True
        keep = np.arange(basis.shape[0]) != p
        basis = basis[keep] * dp - np.outer(d[keep], pivot_row)
        if basis.shape[0]:
            if exact:
                for i in range(basis.shape[0]):
                    g = 0
                    for v in basis[i]:
                        g = gcd(g, abs(int(v)))
                    if g > 1:
                        basis[i] = np.array([int(v) // g for v in basis[i]], dtype=object)
            else:
                g = np.gcd.reduce(np.abs(basis), axis=1)
                g[g == 0] = 1
                basis = basis // g[:, None]
    reduced, _ = rref([[Fraction(int(v)) for v in r] for r in basis])
    return list(reduced)
