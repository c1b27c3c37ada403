"""Structure-constant (super)algebras over exact rationals.

An `Algebra` is a finite-dimensional algebra given by a sparse
multiplication table over `fractions.Fraction`, optionally Z2-graded.
`Element` is a coefficient vector over the basis, `Operator` a square
matrix acting on elements on the right (x -> x @ M).

The named multilinear functions of Malcev theory live here as well:
the Jacobian, the antiassociator, the braces {x,y,z}, the five-argument
function h, the four-argument function p and the operator x -> p(x,y,z,t).
On graded algebras they switch to their signed super forms and require
homogeneous arguments.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .errors import (
    AlgebraMismatch,
    ArityError,
    GradingError,
    NotHomogeneous,
)
from .linalg import ONE, ZERO, frac, mat_mul, vec_is_zero

__all__ = [
    "Algebra",
    "Element",
    "Operator",
    "multiply",
    "jacobian",
    "antiassociator",
    "braces",
    "h_function",
    "p_function",
    "special_form",
    "alpha_operator",
]


def _normalise_entry(entry, dim: int):
    """Accept {k: c}, [(k, c), ...] or a dense length-dim vector."""
    if isinstance(entry, dict):
        pairs = entry.items()
    elif len(entry) == dim and entry and not (
        isinstance(entry[0], (tuple, list)) and len(entry[0]) == 2
    ):
        pairs = enumerate(entry)
    else:
        pairs = entry
    out = []
    for k, c in pairs:
        c = frac(c)
        if not c:
            continue
        k = int(k)
        if not 0 <= k < dim:
            raise ValueError(f"basis index {k} out of range")
        out.append((k, c))
    out.sort()
    return tuple(out)


class Algebra:
    """Finite-dimensional algebra given by structure constants.

    `table` maps a basis pair (i, j) to the coefficient vector of the
    product b_i b_j; missing pairs mean the product is zero.  When a
    parity vector is given, every table entry must respect the grading
    parity(k) = parity(i) + parity(j) mod 2.
    """

    def __init__(self, labels, table, parity=None, name: str | None = None):
        self.labels = tuple(str(l) for l in labels)
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be distinct")
        self.dim = len(self.labels)
        if parity is None:
            self.parity = (0,) * self.dim
        else:
            self.parity = tuple(int(p) % 2 for p in parity)
            if len(self.parity) != self.dim:
                raise ValueError("parity vector length mismatch")
        self.name = name
        tbl = {}
        for (i, j), entry in sorted(table.items()):
            i, j = int(i), int(j)
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise ValueError(f"table key ({i},{j}) out of range")
            pairs = _normalise_entry(entry, self.dim)
            if not pairs:
                continue
            want = (self.parity[i] + self.parity[j]) % 2
            for k, _ in pairs:
                if self.parity[k] != want:
                    raise GradingError(
                        f"product ({i},{j}) hits basis {k} of wrong parity"
                    )
            tbl[(i, j)] = pairs
        self._table = tbl
        self._cache = {}

    # -- basic queries ------------------------------------------------

    @property
    def is_graded(self) -> bool:
        return any(self.parity)

    def product_basis(self, i: int, j: int):
        return self._table.get((i, j), ())

    def structure_constant(self, i: int, j: int, k: int) -> Fraction:
        for kk, c in self._table.get((i, j), ()):
            if kk == k:
                return c
        return ZERO

    def table_items(self):
        for key in sorted(self._table):
            yield key, self._table[key]

    def table_equals(self, other: "Algebra") -> bool:
        return self.dim == other.dim and self._table == other._table

    def has_products(self) -> bool:
        return bool(self._table)

    # -- element factories ---------------------------------------------

    def element(self, coeffs) -> "Element":
        coeffs = tuple(frac(c) for c in coeffs)
        if len(coeffs) != self.dim:
            raise ValueError("coefficient vector length mismatch")
        return Element(self, coeffs)

    def basis_element(self, i: int) -> "Element":
        return Element(self, tuple(ONE if k == i else ZERO for k in range(self.dim)))

    def basis(self):
        return [self.basis_element(i) for i in range(self.dim)]

    def zero(self) -> "Element":
        return Element(self, (ZERO,) * self.dim)

    # -- misc -----------------------------------------------------------

    def label_of(self, i: int) -> str:
        return self.labels[i]

    def __repr__(self):
        tag = self.name or "algebra"
        grade = " graded" if self.is_graded else ""
        return f"<{tag} dim={self.dim}{grade}>"


def _same_algebra(*elements) -> Algebra:
    a = elements[0].algebra
    for e in elements[1:]:
        if e.algebra is not a:
            raise AlgebraMismatch("elements belong to different algebras")
    return a


class Element:
    """Coefficient vector over the basis of an Algebra."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra: Algebra, coeffs):
        self.algebra = algebra
        self.coeffs = tuple(coeffs)

    def is_zero(self) -> bool:
        return vec_is_zero(self.coeffs)

    def support(self):
        return tuple(i for i, c in enumerate(self.coeffs) if c)

    def is_homogeneous(self) -> bool:
        parities = {self.algebra.parity[i] for i in self.support()}
        return len(parities) <= 1

    def parity(self) -> int:
        """Parity of a homogeneous element (zero counts as even)."""
        parities = {self.algebra.parity[i] for i in self.support()}
        if not parities:
            return 0
        if len(parities) > 1:
            raise NotHomogeneous(f"mixed-parity element {self}")
        return parities.pop()

    def homogeneous_part(self, p: int) -> "Element":
        return Element(
            self.algebra,
            tuple(c if self.algebra.parity[i] == p % 2 else ZERO
                  for i, c in enumerate(self.coeffs)),
        )

    def __add__(self, other):
        _same_algebra(self, other)
        return Element(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        _same_algebra(self, other)
        return Element(self.algebra, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return Element(self.algebra, tuple(-c for c in self.coeffs))

    def scale(self, c) -> "Element":
        c = frac(c)
        return Element(self.algebra, tuple(c * x for x in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, Element):
            return multiply(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return (
            isinstance(other, Element)
            and other.algebra is self.algebra
            and other.coeffs == self.coeffs
        )

    def __hash__(self):
        return hash((id(self.algebra), self.coeffs))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            lbl = self.algebra.labels[i]
            if c == 1:
                terms.append(lbl)
            elif c == -1:
                terms.append(f"-{lbl}")
            else:
                terms.append(f"{c}*{lbl}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def multiply(x: Element, y: Element) -> Element:
    """Bilinear product from the structure-constant table."""
    a = _same_algebra(x, y)
    out = [ZERO] * a.dim
    table = a._table
    for i, xi in enumerate(x.coeffs):
        if not xi:
            continue
        for j, yj in enumerate(y.coeffs):
            if not yj:
                continue
            entry = table.get((i, j))
            if not entry:
                continue
            s = xi * yj
            for k, c in entry:
                out[k] += s * c
    return Element(a, out)


class Operator:
    """Square matrix acting on elements on the right: x -> x @ matrix.

    A graded operator of parity p maps parity-q basis vectors into the
    parity-(q+p) span; this block structure is validated on construction
    whenever a parity is supplied.
    """

    __slots__ = ("algebra", "matrix", "parity")

    def __init__(self, algebra: Algebra, matrix, parity: int | None = None):
        self.algebra = algebra
        rows = tuple(tuple(frac(c) for c in row) for row in matrix)
        if len(rows) != algebra.dim or any(len(r) != algebra.dim for r in rows):
            raise ValueError("operator matrix must be dim x dim")
        self.matrix = rows
        self.parity = None if parity is None else int(parity) % 2
        if self.parity is not None and algebra.is_graded:
            for i in range(algebra.dim):
                want = (algebra.parity[i] + self.parity) % 2
                for k in range(algebra.dim):
                    if rows[i][k] and algebra.parity[k] != want:
                        raise GradingError(
                            f"operator of parity {self.parity} breaks grading at ({i},{k})"
                        )

    @classmethod
    def identity(cls, algebra: Algebra) -> "Operator":
        return cls(
            algebra,
            [[ONE if i == k else ZERO for k in range(algebra.dim)] for i in range(algebra.dim)],
            parity=0,
        )

    def apply(self, x: Element) -> Element:
        if x.algebra is not self.algebra:
            raise AlgebraMismatch("operator applied to foreign element")
        n = self.algebra.dim
        out = [ZERO] * n
        for i, xi in enumerate(x.coeffs):
            if not xi:
                continue
            row = self.matrix[i]
            for k in range(n):
                if row[k]:
                    out[k] += xi * row[k]
        return Element(self.algebra, out)

    def then(self, other: "Operator") -> "Operator":
        """Composition: apply self first, then other."""
        if other.algebra is not self.algebra:
            raise AlgebraMismatch("composition across algebras")
        par = None
        if self.parity is not None and other.parity is not None:
            par = (self.parity + other.parity) % 2
        return Operator(self.algebra, mat_mul(self.matrix, other.matrix), parity=par)

    def flat(self) -> tuple:
        return tuple(c for row in self.matrix for c in row)

    def is_zero(self) -> bool:
        return all(not c for row in self.matrix for c in row)

    def scale(self, c) -> "Operator":
        c = frac(c)
        return Operator(
            self.algebra, [[c * x for x in row] for row in self.matrix], parity=self.parity
        )

    def __add__(self, other):
        par = self.parity if self.parity == other.parity else None
        return Operator(
            self.algebra,
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.matrix, other.matrix)],
            parity=par,
        )

    def __sub__(self, other):
        par = self.parity if self.parity == other.parity else None
        return Operator(
            self.algebra,
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.matrix, other.matrix)],
            parity=par,
        )

    def __eq__(self, other):
        return (
            isinstance(other, Operator)
            and other.algebra is self.algebra
            and other.matrix == self.matrix
        )

    def __hash__(self):
        return hash((id(self.algebra), self.matrix))

    def is_scalar(self):
        """Return c when the matrix is c * identity, else None."""
        c = self.matrix[0][0]
        for i in range(self.algebra.dim):
            for k in range(self.algebra.dim):
                want = c if i == k else ZERO
                if self.matrix[i][k] != want:
                    return None
        return c

    def __repr__(self):
        return f"<operator on {self.algebra!r} parity={self.parity}>"


# ---------------------------------------------------------------------------
# the multilinear functions of the theory


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def _parities(algebra: Algebra, *elements) -> tuple:
    """Parities of homogeneous arguments; all zero on ungraded algebras."""
    if not algebra.is_graded:
        return (0,) * len(elements)
    return tuple(e.parity() for e in elements)


def jacobian(x: Element, y: Element, z: Element) -> Element:
    """(xy)z + (yz)x + (zx)y, or its signed super form on graded algebras."""
    a = _same_algebra(x, y, z)
    if not a.is_graded:
        return (x * y) * z + (y * z) * x + (z * x) * y
    _, py, pz = _parities(a, x, y, z)
    return (x * y) * z - x * (y * z) - _sign(py * pz) * ((x * z) * y)


def antiassociator(x: Element, y: Element, z: Element) -> Element:
    """(xy)z + x(yz)."""
    _same_algebra(x, y, z)
    return (x * y) * z + x * (y * z)


def braces(x: Element, y: Element, z: Element) -> Element:
    """{x,y,z} = (xy)z - (xz)y + 2x(yz), with a sign on (xz)y when graded.

    Only the parities of the second and third slots enter, so the first
    argument may be any element (products of homogeneous ones included).
    """
    a = _same_algebra(x, y, z)
    s = _sign(_parities(a, y)[0] * _parities(a, z)[0])
    return (x * y) * z - s * ((x * z) * y) + 2 * (x * (y * z))


def h_function(y: Element, z: Element, t: Element, x: Element, u: Element) -> Element:
    """{yz,t,u}x + {yz,t,x}u + {yx,z,u}t + {yu,z,x}t and its super form."""
    a = _same_algebra(y, z, t, x, u)
    py, pz, pt, px, pu = _parities(a, y, z, t, x, u)
    s2 = _sign(px * pu)
    s3 = _sign(px * (pz + pt + pu) + pu * pt)
    s4 = _sign(pu * (pz + pt) + px * pt)
    yz = y * z
    return (
        braces(yz, t, u) * x
        + s2 * (braces(yz, t, x) * u)
        + s3 * (braces(y * x, z, u) * t)
        + s4 * (braces(y * u, z, x) * t)
    )


def _sparse(e: Element) -> dict:
    return {i: c for i, c in enumerate(e.coeffs) if c}


def _mul_sparse(a: Algebra, x: dict, y: dict) -> dict:
    out: dict = {}
    table = a._table
    for i, xi in x.items():
        for j, yj in y.items():
            entry = table.get((i, j))
            if not entry:
                continue
            s = xi * yj
            for k, c in entry:
                v = out.get(k)
                v = s * c if v is None else v + s * c
                if v:
                    out[k] = v
                elif k in out:
                    del out[k]
    return out


def _axpy_sparse(out: dict, scalar, x: dict) -> None:
    for k, c in x.items():
        v = out.get(k)
        nv = scalar * c if v is None else v + scalar * c
        if nv:
            out[k] = nv
        elif k in out:
            del out[k]


def _p_sparse(a: Algebra, xd, yd, zd, td, px, py, pz, pt, hoisted=None) -> dict:
    """Sparse evaluation of p; `hoisted` caches the x-independent products
    (zt, yt, yz, (zt)y, (yt)z) across a whole operator column."""
    if hoisted is None:
        zt = _mul_sparse(a, zd, td)
        yt = _mul_sparse(a, yd, td)
        yz = _mul_sparse(a, yd, zd)
        zt_y = _mul_sparse(a, zt, yd)
        yt_z = _mul_sparse(a, yt, zd)
    else:
        zt, yt, yz, zt_y, yt_z = hoisted
    s1 = _sign((px + py) * (pz + pt))
    s2 = _sign(px * (py + pz + pt) + pz * pt)
    s3 = _sign(pt * (py + pz))
    # {zt, x, y} = ((zt)x)y - sgn(|x||y|)((zt)y)x + 2(zt)(xy)
    b1 = _mul_sparse(a, _mul_sparse(a, zt, xd), yd)
    _axpy_sparse(b1, -_sign(px * py), _mul_sparse(a, zt_y, xd))
    _axpy_sparse(b1, 2, _mul_sparse(a, zt, _mul_sparse(a, xd, yd)))
    # {yt, z, x} = ((yt)z)x - sgn(|z||x|)((yt)x)z + 2(yt)(zx)
    b2 = _mul_sparse(a, yt_z, xd)
    _axpy_sparse(b2, -_sign(pz * px), _mul_sparse(a, _mul_sparse(a, yt, xd), zd))
    _axpy_sparse(b2, 2, _mul_sparse(a, yt, _mul_sparse(a, zd, xd)))
    # {xt, y, z} = ((xt)y)z - sgn(|y||z|)((xt)z)y + 2(xt)(yz)
    xt = _mul_sparse(a, xd, td)
    b3 = _mul_sparse(a, _mul_sparse(a, xt, yd), zd)
    _axpy_sparse(b3, -_sign(py * pz), _mul_sparse(a, _mul_sparse(a, xt, zd), yd))
    _axpy_sparse(b3, 2, _mul_sparse(a, xt, yz))
    out: dict = {}
    _axpy_sparse(out, -s1, b1)
    _axpy_sparse(out, -s2, b2)
    _axpy_sparse(out, s3, b3)
    return out


def p_function(x: Element, y: Element, z: Element, t: Element) -> Element:
    """-{zt,x,y} - {yt,z,x} + {xt,y,z} with Koszul signs in the super case."""
    a = _same_algebra(x, y, z, t)
    px, py, pz, pt = _parities(a, x, y, z, t)
    out = _p_sparse(a, _sparse(x), _sparse(y), _sparse(z), _sparse(t),
                    px, py, pz, pt)
    return Element(a, tuple(out.get(k, ZERO) for k in range(a.dim)))


_FORMS = {
    "antiassociator": (antiassociator, 3),
    "braces": (braces, 3),
    "h": (h_function, 5),
    "p": (p_function, 4),
}


def special_form(kind: str, *args: Element) -> Element:
    """Dispatch to one of the named multilinear functions by name."""
    if kind not in _FORMS:
        raise ArityError(f"unknown form {kind!r}")
    fn, arity = _FORMS[kind]
    if len(args) != arity:
        raise ArityError(f"{kind} takes {arity} arguments, got {len(args)}")
    return fn(*args)


def alpha_operator(y: Element, z: Element, t: Element) -> Operator:
    """Matrix of x -> p(x, y, z, t) over the basis; parity |y|+|z|+|t|."""
    a = _same_algebra(y, z, t)
    rows = [p_function(a.basis_element(i), y, z, t).coeffs for i in range(a.dim)]
    par = sum(_parities(a, y, z, t)) % 2
    return Operator(a, rows, parity=par)
