"""Constructors for the two models of the 7-dimensional simple non-Lie
Malcev algebra and their coordinate extensions.

Split route:   C(F) (2x2 Cayley matrices with 3-vector corners)
               -> commutator algebra -> quotient by the central identity.
Division route: octonions H + vH with v^2 = gamma, built from the Cayley
               bimodule relations a(vb) = v(a~ b), (va)b = v(ba),
               (va)(vb) = gamma b a~  -> commutator -> quotient.

`m7_split` / `m7_division` return the reference tables directly; the
pipeline constructors exist so tests can confirm both routes agree entry
by entry.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Algebra, Element
from .errors import NotHomogeneous, VerificationError
from .linalg import ONE, ZERO, Span, frac, rref, solve_xm

__all__ = [
    "build_cayley_matrix_algebra",
    "build_division_octonions",
    "commutator_algebra",
    "central_quotient",
    "quotient_by_central_subspace",
    "tensor_with_coordinates",
    "build_sample_coordinates",
    "m7_split",
    "m7_division",
    "m7_over_coordinates",
    "identity_element",
    "verify_coordinate_algebra",
    "CAYLEY_LABELS",
    "OCTONION_LABELS",
]

CAYLEY_LABELS = ("e0", "e1", "e2", "e3", "e4", "e5", "e6", "e7")
OCTONION_LABELS = ("1", "i", "j", "k", "v", "vi", "vj", "vk")
M7_LABELS = ("e1", "e2", "e3", "e4", "e5", "e6", "e7")
M7_DIVISION_LABELS = ("i", "j", "k", "v", "vi", "vj", "vk")


# ---------------------------------------------------------------------------
# split Cayley matrices


def _v_dot(a, b):
    return sum((x * y for x, y in zip(a, b)), ZERO)


def _v_cross(a, b):
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def _cayley_rep(i: int):
    """(a, alpha, beta, b) matrix picture of the basis vector e_i."""
    zero3 = (ZERO, ZERO, ZERO)
    if i == 0:
        return (ONE, zero3, zero3, ONE)
    if i == 1:
        return (ONE, zero3, zero3, -ONE)
    unit = lambda p: tuple(ONE if q == p else ZERO for q in range(3))
    if 2 <= i <= 4:
        return (ZERO, unit(i - 2), zero3, ZERO)
    return (ZERO, zero3, unit(i - 5), ZERO)


def _cayley_mul(x, y):
    a, alpha, beta, b = x
    c, gamma, delta, d = y
    cross_bd = _v_cross(beta, delta)
    cross_ag = _v_cross(alpha, gamma)
    return (
        a * c + _v_dot(alpha, delta),
        tuple(a * g + d * al - cr for g, al, cr in zip(gamma, alpha, cross_bd)),
        tuple(c * be + b * de + cr for be, de, cr in zip(beta, delta, cross_ag)),
        _v_dot(beta, gamma) + b * d,
    )


def _cayley_coeffs(rep):
    a, alpha, beta, b = rep
    return (
        (a + b) / 2,
        (a - b) / 2,
        alpha[0], alpha[1], alpha[2],
        beta[0], beta[1], beta[2],
    )


_CAYLEY8 = None


def _cayley8_table():
    global _CAYLEY8
    if _CAYLEY8 is None:
        table = {}
        for i in range(8):
            for j in range(8):
                coeffs = _cayley_coeffs(_cayley_mul(_cayley_rep(i), _cayley_rep(j)))
                entry = {k: c for k, c in enumerate(coeffs) if c}
                if entry:
                    table[(i, j)] = entry
        _CAYLEY8 = table
    return _CAYLEY8


# ---------------------------------------------------------------------------
# division octonions


_QUAT = {
    (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
    (1, 0): (1, 1), (1, 1): (0, -1), (1, 2): (3, 1), (1, 3): (2, -1),
    (2, 0): (2, 1), (2, 1): (3, -1), (2, 2): (0, -1), (2, 3): (1, 1),
    (3, 0): (3, 1), (3, 1): (2, 1), (3, 2): (1, -1), (3, 3): (0, -1),
}


def _quat_mul(x, y):
    out = [ZERO] * 4
    for i, xi in enumerate(x):
        if not xi:
            continue
        for j, yj in enumerate(y):
            if not yj:
                continue
            k, s = _QUAT[(i, j)]
            out[k] += xi * yj * s
    return tuple(out)


def _quat_conj(x):
    return (x[0], -x[1], -x[2], -x[3])


def _oct_mul(x, y, gamma: Fraction):
    """(a + vb)(c + vd) = [ac + gamma d b~] + v[a~ d + cb]."""
    a, b = x
    c, d = y
    h_part = tuple(
        p + gamma * q for p, q in zip(_quat_mul(a, c), _quat_mul(d, _quat_conj(b)))
    )
    v_part = tuple(
        p + q for p, q in zip(_quat_mul(_quat_conj(a), d), _quat_mul(c, b))
    )
    return (h_part, v_part)


def _oct_rep(i: int):
    h = [ZERO] * 4
    v = [ZERO] * 4
    if i < 4:
        h[i] = ONE
    else:
        v[i - 4] = ONE
    return (tuple(h), tuple(v))


def build_division_octonions(gamma) -> Algebra:
    """8-dimensional division-type Cayley-Dickson algebra H + vH, v^2 = gamma."""
    gamma = frac(gamma)
    if not gamma:
        raise VerificationError("gamma must be nonzero")
    table = {}
    for i in range(8):
        for j in range(8):
            h, v = _oct_mul(_oct_rep(i), _oct_rep(j), gamma)
            coeffs = h + v
            entry = {k: c for k, c in enumerate(coeffs) if c}
            if entry:
                table[(i, j)] = entry
    return Algebra(OCTONION_LABELS, table, name=f"octonions(gamma={gamma})")


# ---------------------------------------------------------------------------
# coordinate algebras


def identity_element(u: Algebra) -> Element:
    """The two-sided identity of u; raises when there is none."""
    d = u.dim
    matrix = [[u.structure_constant(r, j, m) for j in range(d) for m in range(d)]
              for r in range(d)]
    target = [ONE if j == m else ZERO for j in range(d) for m in range(d)]
    x = solve_xm(matrix, target)
    if x is None:
        raise VerificationError("algebra has no identity element")
    e = u.element(x)
    for j in range(d):
        bj = u.basis_element(j)
        if e * bj != bj or bj * e != bj:
            raise VerificationError("algebra has no two-sided identity")
    return e


def verify_coordinate_algebra(u: Algebra):
    """Check unital + (super)commutative + associative; returns the identity."""
    one = identity_element(u)
    for i in range(u.dim):
        bi = u.basis_element(i)
        for j in range(u.dim):
            bj = u.basis_element(j)
            sign = -1 if (u.parity[i] * u.parity[j]) % 2 else 1
            if bi * bj != sign * (bj * bi):
                raise VerificationError(
                    "coordinate algebra is not (super)commutative",
                    witness=(i, j),
                )
    for i in range(u.dim):
        bi = u.basis_element(i)
        for j in range(u.dim):
            bj = u.basis_element(j)
            for k in range(u.dim):
                bk = u.basis_element(k)
                if (bi * bj) * bk != bi * (bj * bk):
                    raise VerificationError(
                        "coordinate algebra is not associative",
                        witness=(i, j, k),
                    )
    return one


def build_cayley_matrix_algebra(u: Algebra | None = None) -> Algebra:
    """Cayley-Dickson matrix algebra over F, or over a verified unital
    (super)commutative associative coordinate algebra u."""
    base = _cayley8_table()
    if u is None:
        return Algebra(CAYLEY_LABELS, dict(base), name="C(F)")
    verify_coordinate_algebra(u)
    return _tensor_even_left(
        Algebra(CAYLEY_LABELS, dict(base), name="C(F)"), u, name=f"C({u.name or 'U'})"
    )


def _tensor_even_left(a: Algebra, u: Algebra, name: str | None = None) -> Algebra:
    """Tensor product of an even algebra with a coordinate algebra.

    Basis is coordinate-major: index = r * dim(a) + t for b_t (x) u_r;
    parity comes from u alone, so no Koszul sign arises.
    """
    if a.is_graded:
        raise VerificationError("left factor of the tensor must be purely even")
    da, du = a.dim, u.dim
    labels = [f"{a.labels[t]}⊗{u.labels[r]}" for r in range(du) for t in range(da)]
    parity = [u.parity[r] for r in range(du) for t in range(da)]
    table = {}
    for (t, t2), entry_a in a.table_items():
        for (r, r2), entry_u in u.table_items():
            row = {}
            for k, ca in entry_a:
                for q, cu in entry_u:
                    row[q * da + k] = ca * cu
            table[(r * da + t, r2 * da + t2)] = row
    return Algebra(labels, table, parity=parity, name=name)


def tensor_with_coordinates(a7: Algebra, u: Algebra) -> Algebra:
    """a7 (x) u for purely even a7 and verified coordinate algebra u."""
    verify_coordinate_algebra(u)
    return _tensor_even_left(a7, u, name=f"{a7.name or 'A'}⊗{u.name or 'U'}")


def build_sample_coordinates(kind: str, **params) -> Algebra:
    """Small test-corpus coordinate algebras.

    kinds: "field"; "truncated" (degree n: F[t]/(t^n)); "dual"
    (= truncated n=2); "quadratic" (c: F[t]/(t^2 - c)); "grassmann"
    (generators n); "dual_odd" (F[t,θ]/(t^2, tθ, θ^2) with θ odd).
    """
    if kind == "field":
        return Algebra(("1",), {(0, 0): {0: 1}}, name="F")
    if kind == "dual":
        kind, params = "truncated", {"degree": 2}
    if kind == "truncated":
        n = int(params.get("degree", 2))
        if n < 1:
            raise ValueError("degree must be >= 1")
        labels = ["1"] + [f"t^{p}" if p > 1 else "t" for p in range(1, n)]
        table = {}
        for i in range(n):
            for j in range(n):
                if i + j < n:
                    table[(i, j)] = {i + j: 1}
        return Algebra(labels, table, name=f"F[t]/(t^{n})")
    if kind == "quadratic":
        c = frac(params.get("constant", 0))
        table = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}}
        if c:
            table[(1, 1)] = {0: c}
        return Algebra(("1", "t"), table, name=f"F[t]/(t^2-{c})")
    if kind == "grassmann":
        n = int(params.get("generators", 1))
        from .structure import _exterior_monomials, _exterior_product, _monomial_label

        monomials = _exterior_monomials(n)
        index = {m: i for i, m in enumerate(monomials)}
        labels = [_monomial_label(m) for m in monomials]
        parity = [len(m) % 2 for m in monomials]
        table = {}
        for s, m1 in enumerate(monomials):
            for t, m2 in enumerate(monomials):
                ext = _exterior_product(m1, m2)
                if ext is None:
                    continue
                sign, merged = ext
                table[(s, t)] = {index[merged]: sign}
        return Algebra(labels, table, parity=parity, name=f"Λ({n})")
    if kind == "dual_odd":
        table = {
            (0, 0): {0: 1},
            (0, 1): {1: 1}, (1, 0): {1: 1},
            (0, 2): {2: 1}, (2, 0): {2: 1},
        }
        return Algebra(("1", "t", "θ"), table, parity=(0, 0, 1),
                       name="F[t,θ]/(t²,tθ,θ²)")
    raise ValueError(f"unknown coordinate kind {kind!r}")


# ---------------------------------------------------------------------------
# commutator algebras and central quotients


def commutator_algebra(a: Algebra) -> Algebra:
    """Same space with product [x,y] = xy - (-1)^{|x||y|} yx."""
    table = {}
    for i in range(a.dim):
        for j in range(a.dim):
            sign = -1 if (a.parity[i] * a.parity[j]) % 2 else 1
            entry = {}
            for k, c in a.product_basis(i, j):
                entry[k] = entry.get(k, ZERO) + c
            for k, c in a.product_basis(j, i):
                entry[k] = entry.get(k, ZERO) - sign * c
            entry = {k: c for k, c in entry.items() if c}
            if entry:
                table[(i, j)] = entry
    return Algebra(a.labels, table, parity=a.parity,
                   name=f"{a.name or 'A'}^(-)")


def quotient_by_central_subspace(a: Algebra, zs) -> tuple[Algebra, tuple]:
    """Quotient by span(zs) where every z multiplies everything to zero.

    Returns the quotient algebra on the surviving basis vectors (original
    order) and the dim x (dim-k) projection matrix.
    """
    span = Span(a.dim)
    for z in zs:
        if z.is_zero():
            raise VerificationError("cannot quotient by the zero vector")
        if a.is_graded and not z.is_homogeneous():
            raise NotHomogeneous("central generators must be homogeneous")
        for i in range(a.dim):
            bi = a.basis_element(i)
            if not (z * bi).is_zero() or not (bi * z).is_zero():
                raise VerificationError(
                    "generator is not central",
                    witness=(str(z), a.labels[i]),
                )
        span.add(z.coeffs)
    rows = span.basis_rows()
    pivots = [next(k for k, c in enumerate(row) if c) for row in rows]
    kept = [i for i in range(a.dim) if i not in pivots]
    pos = {i: p for p, i in enumerate(kept)}

    def project(coeffs):
        v = list(coeffs)
        for row, piv in zip(rows, pivots):
            c = v[piv]
            if c:
                for k in range(a.dim):
                    if row[k]:
                        v[k] -= c * row[k]
        return [v[i] for i in kept]

    projection = tuple(tuple(project([ONE if k == i else ZERO for k in range(a.dim)]))
                       for i in range(a.dim))
    table = {}
    for ii, i in enumerate(kept):
        for jj, j in enumerate(kept):
            entry = a.product_basis(i, j)
            if not entry:
                continue
            vec = [ZERO] * a.dim
            for k, c in entry:
                vec[k] = c
            img = project(vec)
            row = {m: c for m, c in enumerate(img) if c}
            if row:
                table[(ii, jj)] = row
    labels = [a.labels[i] for i in kept]
    parity = [a.parity[i] for i in kept]
    quotient = Algebra(labels, table, parity=parity,
                       name=f"{a.name or 'A'}/center")
    return quotient, projection


def central_quotient(a: Algebra, z: Element) -> tuple[Algebra, tuple]:
    """Quotient by one central vector z (z != 0, z.x = x.z = 0 for all x)."""
    return quotient_by_central_subspace(a, [z])


# ---------------------------------------------------------------------------
# the two reference tables


_SPLIT_TABLE = {
    (0, 1): {1: 2}, (0, 2): {2: 2}, (0, 3): {3: 2},
    (0, 4): {4: -2}, (0, 5): {5: -2}, (0, 6): {6: -2},
    (1, 0): {1: -2}, (1, 2): {6: 2}, (1, 3): {5: -2}, (1, 4): {0: 1},
    (2, 0): {2: -2}, (2, 1): {6: -2}, (2, 3): {4: 2}, (2, 5): {0: 1},
    (3, 0): {3: -2}, (3, 1): {5: 2}, (3, 2): {4: -2}, (3, 6): {0: 1},
    (4, 0): {4: 2}, (4, 1): {0: -1}, (4, 5): {3: -2}, (4, 6): {2: 2},
    (5, 0): {5: 2}, (5, 2): {0: -1}, (5, 4): {3: 2}, (5, 6): {1: -2},
    (6, 0): {6: 2}, (6, 3): {0: -1}, (6, 4): {2: -2}, (6, 5): {1: 2},
}

# (target, coefficient, gamma power); the (v,k) entry is +2vk, forced by
# anticommutativity and the Cayley bimodule relations.
_DIVISION_TABLE = {
    (0, 1): (2, 2, 0), (0, 2): (1, -2, 0), (0, 3): (4, -2, 0),
    (0, 4): (3, 2, 0), (0, 5): (6, -2, 0), (0, 6): (5, 2, 0),
    (1, 0): (2, -2, 0), (1, 2): (0, 2, 0), (1, 3): (5, -2, 0),
    (1, 4): (6, 2, 0), (1, 5): (3, 2, 0), (1, 6): (4, -2, 0),
    (2, 0): (1, 2, 0), (2, 1): (0, -2, 0), (2, 3): (6, -2, 0),
    (2, 4): (5, -2, 0), (2, 5): (4, 2, 0), (2, 6): (3, 2, 0),
    (3, 0): (4, 2, 0), (3, 1): (5, 2, 0), (3, 2): (6, 2, 0),
    (3, 4): (0, 2, 1), (3, 5): (1, 2, 1), (3, 6): (2, 2, 1),
    (4, 0): (3, -2, 0), (4, 1): (6, -2, 0), (4, 2): (5, 2, 0),
    (4, 3): (0, -2, 1), (4, 5): (2, 2, 1), (4, 6): (1, -2, 1),
    (5, 0): (6, 2, 0), (5, 1): (3, -2, 0), (5, 2): (4, -2, 0),
    (5, 3): (1, -2, 1), (5, 4): (2, -2, 1), (5, 6): (0, 2, 1),
    (6, 0): (5, -2, 0), (6, 1): (4, 2, 0), (6, 2): (3, -2, 0),
    (6, 3): (2, -2, 1), (6, 4): (1, 2, 1), (6, 5): (0, -2, 1),
}


def m7_split() -> Algebra:
    """The reference table of the split model on e1..e7."""
    return Algebra(M7_LABELS, {k: dict(v) for k, v in _SPLIT_TABLE.items()},
                   name="M7(F)")


def m7_division(gamma=-1) -> Algebra:
    """The reference table of the division model on i,j,k,v,vi,vj,vk."""
    gamma = frac(gamma)
    if not gamma:
        raise VerificationError("gamma must be nonzero")
    table = {}
    for (i, j), (k, c, power) in _DIVISION_TABLE.items():
        table[(i, j)] = {k: frac(c) * gamma**power}
    return Algebra(M7_DIVISION_LABELS, table, name=f"M7(gamma={gamma})")


def m7_over_coordinates(u: Algebra) -> tuple[Algebra, tuple]:
    """C(u)^(-) modulo its center e0 (x) u; dimension 7 * dim(u).

    Basis is coordinate-major (e1..e7 per coordinate basis vector), which
    matches `tensor_with_coordinates(m7_split(), u)` entry for entry.
    """
    cu = build_cayley_matrix_algebra(u)
    minus = commutator_algebra(cu)
    zs = [minus.basis_element(r * 8) for r in range(u.dim)]
    return quotient_by_central_subspace(minus, zs)
