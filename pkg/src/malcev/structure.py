"""Structural subspaces and constructions on one algebra.

Centroid and supercentroid bases, the associator nucleus, ideal closures
with the derived simplicity test, and the Grassmann envelope used to
cross-validate super identities against honest ungraded ones.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Algebra, Element, Operator
from .errors import NotHomogeneous, VerificationError
from .linalg import ONE, ZERO, Span, kernel_basis, rref

__all__ = [
    "centroid_basis",
    "operator_in_centroid",
    "nucleus",
    "ideal_closure",
    "is_simple",
    "grassmann_envelope",
]


def _centroid_rows(a: Algebra, parity: int, unknowns: dict):
    """Constraint rows (sparse dicts over unknown slots) for the
    (super)centroid: (xy)a = x(ya) = (-1)^{p |y|}(xa)y on basis pairs."""
    d = a.dim
    for (i, j), entry in a.table_items():
        prod = dict(entry)
        sign = -1 if (parity * a.parity[j]) % 2 else 1
        for m in range(d):
            # (b_i b_j) alpha - b_i (b_j alpha) = 0, output component m
            row = {}
            for k, c in prod.items():
                slot = unknowns.get((k, m))
                if slot is not None:
                    row[slot] = row.get(slot, ZERO) + c
            for mm in range(d):
                c = a.structure_constant(i, mm, m)
                if c:
                    slot = unknowns.get((j, mm))
                    if slot is not None:
                        row[slot] = row.get(slot, ZERO) - c
            if row:
                yield row
            # (b_i b_j) alpha - sign * (b_i alpha) b_j = 0
            row = {}
            for k, c in prod.items():
                slot = unknowns.get((k, m))
                if slot is not None:
                    row[slot] = row.get(slot, ZERO) + c
            for mm in range(d):
                c = a.structure_constant(mm, j, m)
                if c:
                    slot = unknowns.get((i, mm))
                    if slot is not None:
                        row[slot] = row.get(slot, ZERO) - sign * c
            if row:
                yield row
    # entries outside the allowed parity block are forced to vanish by the
    # unknown set itself, so no extra rows are needed.


def _missing_rows(a: Algebra, parity: int, unknowns: dict):
    """Rows fixing products that the sparse table omits entirely.

    A missing (i, j) entry still yields equations b_i (b_j alpha) = 0 and
    (b_i alpha) b_j = 0 ... but only together with (b_i b_j) alpha = 0,
    which is automatic.  Those equations are not automatic, so emit them.
    """
    d = a.dim
    for i in range(d):
        for j in range(d):
            if a.product_basis(i, j):
                continue
            sign = -1 if (parity * a.parity[j]) % 2 else 1
            for m in range(d):
                row = {}
                for mm in range(d):
                    c = a.structure_constant(i, mm, m)
                    if c:
                        slot = unknowns.get((j, mm))
                        if slot is not None:
                            row[slot] = row.get(slot, ZERO) + c
                if row:
                    yield row
                row = {}
                for mm in range(d):
                    c = a.structure_constant(mm, j, m)
                    if c:
                        slot = unknowns.get((i, mm))
                        if slot is not None:
                            row[slot] = row.get(slot, ZERO) + sign * c
                if row:
                    yield row


def centroid_basis(a: Algebra) -> list[Operator]:
    """Basis of the (super)centroid, split by parity when graded.

    The identity operator is listed first whenever it lies in the span
    (it always does once the algebra has any nonzero product).
    """
    d = a.dim
    out: list[Operator] = []
    parities = (0, 1) if a.is_graded else (0,)
    for par in parities:
        unknowns = {}
        for i in range(d):
            for k in range(d):
                if a.parity[k] == (a.parity[i] + par) % 2:
                    unknowns[(i, k)] = len(unknowns)
        slots = {v: k for k, v in unknowns.items()}

        def rows():
            yield from _centroid_rows(a, par, unknowns)
            yield from _missing_rows(a, par, unknowns)

        vectors = kernel_basis(rows(), len(unknowns))
        mats = []
        for vec in vectors:
            m = [[ZERO] * d for _ in range(d)]
            for slot, value in enumerate(vec):
                if value:
                    i, k = slots[slot]
                    m[i][k] = value
            mats.append(Operator(a, m, parity=par))
        if par == 0 and mats:
            ident = Operator.identity(a)
            span = Span(d * d)
            if_added = span.add(ident.flat())
            reduced = []
            for op in mats:
                if span.add(op.flat()):
                    reduced.append(op)
            if span.dim == len(mats) and if_added:
                # identity is in the span: emit it first, then the rest
                # reduced against it for a deterministic basis.
                rows_, _ = rref([op.flat() for op in reduced])
                mats = [ident] + [
                    Operator(a, [row[i * d:(i + 1) * d] for i in range(d)], parity=0)
                    for row in rows_
                ]
        out.extend(mats)
    return out


def operator_in_centroid(op: Operator, a: Algebra):
    """First basis pair breaking a centroid relation for op, or None."""
    par = op.parity or 0
    for i in range(a.dim):
        bi = a.basis_element(i)
        for j in range(a.dim):
            bj = a.basis_element(j)
            sign = -1 if (par * a.parity[j]) % 2 else 1
            prod = bi * bj
            left = op.apply(prod)
            mid = bi * op.apply(bj)
            right = sign * (op.apply(bi) * bj)
            if left != mid or left != right:
                return (i, j)
    return None


def nucleus(a: Algebra) -> list[Element]:
    """Basis of {n : (n,x,y) = (x,n,y) = (x,y,n) = 0 for all x, y}
    where (a,b,c) = (ab)c - a(bc)."""
    d = a.dim

    def rows():
        for i in range(d):
            bi = a.basis_element(i)
            for j in range(d):
                bj = a.basis_element(j)
                # slot 1: (n, b_i, b_j); slot 2: (b_i, n, b_j); slot 3: (b_i, b_j, n)
                cols1 = []
                cols2 = []
                cols3 = []
                for r in range(d):
                    br = a.basis_element(r)
                    cols1.append(((br * bi) * bj - br * (bi * bj)).coeffs)
                    cols2.append(((bi * br) * bj - bi * (br * bj)).coeffs)
                    cols3.append(((bi * bj) * br - bi * (bj * br)).coeffs)
                for cols in (cols1, cols2, cols3):
                    for m in range(d):
                        row = {r: cols[r][m] for r in range(d) if cols[r][m]}
                        if row:
                            yield row

    vectors = kernel_basis(rows(), d)
    return [a.element(v) for v in vectors]


def ideal_closure(a: Algebra, generators) -> list[Element]:
    """Smallest two-sided multiplication-closed subspace containing the
    generators; closure is taken on homogeneous components when graded."""
    span = Span(a.dim)
    queue = []
    seeds = []
    for g in generators:
        if a.is_graded:
            for par in (0, 1):
                part = g.homogeneous_part(par)
                if not part.is_zero():
                    seeds.append(part)
        else:
            seeds.append(g)
    for g in seeds:
        if span.add(g.coeffs):
            queue.append(g)
    while queue:
        v = queue.pop(0)
        for i in range(a.dim):
            bi = a.basis_element(i)
            for prod in (v * bi, bi * v):
                if not prod.is_zero() and span.add(prod.coeffs):
                    queue.append(prod)
    return [a.element(row) for row in span.basis_rows()]


def is_simple(a: Algebra) -> bool:
    """True when A.A != 0 and every single basis element generates A."""
    if not a.has_products():
        return False
    for i in range(a.dim):
        if len(ideal_closure(a, [a.basis_element(i)])) != a.dim:
            return False
    return True


def _exterior_monomials(n: int) -> list[tuple]:
    subsets = [()]
    for g in range(1, n + 1):
        subsets = subsets + [s + (g,) for s in subsets]
    return sorted(subsets, key=lambda s: (len(s), s))


def _exterior_product(s1: tuple, s2: tuple):
    """(sign, merged) for two exterior monomials, or None when they meet."""
    if set(s1) & set(s2):
        return None
    inversions = sum(1 for x in s1 for y in s2 if x > y)
    merged = tuple(sorted(s1 + s2))
    return (-1 if inversions % 2 else 1), merged


def _monomial_label(s: tuple) -> str:
    return "".join(f"θ{g}" for g in s) if s else "1"


def grassmann_envelope(a: Algebra, n: int) -> Algebra:
    """Ungraded envelope on {g (x) m : deg(g) = parity(m) mod 2} with n
    exterior generators; the exterior sign is absorbed into the scalar."""
    if n < 0:
        raise ValueError("generator count must be >= 0")
    monomials = _exterior_monomials(n)
    basis = []
    index = {}
    for mono in monomials:
        mp = len(mono) % 2
        for i in range(a.dim):
            if a.parity[i] == mp:
                index[(mono, i)] = len(basis)
                basis.append((mono, i))
    labels = [f"{_monomial_label(mono)}⊗{a.labels[i]}" for mono, i in basis]
    table = {}
    for s, (mono1, i) in enumerate(basis):
        for t, (mono2, j) in enumerate(basis):
            ext = _exterior_product(mono1, mono2)
            if ext is None:
                continue
            sign, merged = ext
            entry = {}
            for k, c in a.product_basis(i, j):
                entry[index[(merged, k)]] = sign * c
            if entry:
                table[(s, t)] = entry
    return Algebra(labels, table, name=f"envelope({n})")
