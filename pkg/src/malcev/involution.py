"""(Super)involutions, bilinear forms, adjoints and the symmetric-operator
certificates attached to the factorization.

The reference form on either 7-dimensional model reads off the identity
coefficient of a lifted product: f(x, y) = coeff_1((-x) . y) computed in
the covering 8-dimensional algebra.  Forms on tensor hosts are induced as
f7 (x) tau(uw) for a unital linear functional tau on the coordinates.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra, Element, Operator
from .cayley import _cayley8_table, build_division_octonions, identity_element
from .errors import VerificationError
from .factorization import FactorizationResult, kronecker_factorize
from .linalg import ONE, ZERO, Span, frac, invert, mat_mul, mat_transpose, rref
from .reports import FAIL, PASS, Report
from .structure import nucleus

__all__ = [
    "BilinearForm",
    "Involution",
    "verify_involution",
    "canonical_form_m7",
    "induced_form",
    "induced_involution",
    "adjoint_operator",
    "j_admissibility",
    "sym_skew_split",
    "factorize_with_involution",
]


@dataclass
class BilinearForm:
    algebra: Algebra
    gram: tuple

    def __post_init__(self):
        self.gram = tuple(tuple(frac(c) for c in row) for row in self.gram)
        d = self.algebra.dim
        if len(self.gram) != d or any(len(r) != d for r in self.gram):
            raise ValueError("gram matrix must be dim x dim")
        self._inverse = None

    def evaluate(self, x: Element, y: Element) -> Fraction:
        total = ZERO
        for i, xi in enumerate(x.coeffs):
            if not xi:
                continue
            row = self.gram[i]
            for j, yj in enumerate(y.coeffs):
                if yj and row[j]:
                    total += xi * row[j] * yj
        return total

    def is_symmetric(self) -> bool:
        d = self.algebra.dim
        return all(self.gram[i][j] == self.gram[j][i]
                   for i in range(d) for j in range(d))

    def is_nonsingular(self) -> bool:
        try:
            self.inverse()
            return True
        except ValueError:
            return False

    def inverse(self) -> tuple:
        if self._inverse is None:
            self._inverse = invert(self.gram)
        return self._inverse


@dataclass
class Involution:
    algebra: Algebra
    matrix: tuple

    def __post_init__(self):
        self.matrix = tuple(tuple(frac(c) for c in row) for row in self.matrix)
        d = self.algebra.dim
        if len(self.matrix) != d or any(len(r) != d for r in self.matrix):
            raise ValueError("involution matrix must be dim x dim")

    def apply(self, x: Element) -> Element:
        out = [ZERO] * self.algebra.dim
        for i, xi in enumerate(x.coeffs):
            if not xi:
                continue
            row = self.matrix[i]
            for k in range(self.algebra.dim):
                if row[k]:
                    out[k] += xi * row[k]
        return Element(self.algebra, out)

    @classmethod
    def negation(cls, algebra: Algebra) -> "Involution":
        return cls(algebra, [[-ONE if i == k else ZERO for k in range(algebra.dim)]
                             for i in range(algebra.dim)])

    @classmethod
    def identity(cls, algebra: Algebra) -> "Involution":
        return cls(algebra, [[ONE if i == k else ZERO for k in range(algebra.dim)]
                             for i in range(algebra.dim)])


def verify_involution(a: Algebra, sigma: Involution) -> Report:
    """sigma^2 = id and (xy)* = (-1)^{|x||y|} y* x* on all basis pairs."""
    start = time.perf_counter()
    witness = None
    if a.is_graded:
        for i in range(a.dim):
            for k in range(a.dim):
                if sigma.matrix[i][k] and a.parity[k] != a.parity[i]:
                    witness = {"kind": "not-even", "indices": [i, k]}
                    break
            if witness:
                break
    if witness is None:
        square = mat_mul(sigma.matrix, sigma.matrix)
        for i in range(a.dim):
            for k in range(a.dim):
                want = ONE if i == k else ZERO
                if square[i][k] != want:
                    witness = {"kind": "not-involutive", "indices": [i, k]}
                    break
            if witness:
                break
    if witness is None:
        for i in range(a.dim):
            bi = a.basis_element(i)
            for j in range(a.dim):
                bj = a.basis_element(j)
                sign = -1 if (a.parity[i] * a.parity[j]) % 2 else 1
                left = sigma.apply(bi * bj)
                right = sign * (sigma.apply(bj) * sigma.apply(bi))
                if left != right:
                    witness = {
                        "kind": "not-antihomomorphism",
                        "indices": [i, j],
                        "labels": [a.labels[i], a.labels[j]],
                        "defect": [str(c) for c in (left - right).coeffs],
                    }
                    break
            if witness:
                break
    status = PASS if witness is None else FAIL
    return Report("involution", status, witness=witness,
                  details={"basis_pairs": a.dim * a.dim},
                  elapsed_ms=(time.perf_counter() - start) * 1e3)


def canonical_form_m7(variant: str = "split", gamma=-1, algebra: Algebra | None = None,
                      ) -> BilinearForm:
    """f(x, y) = identity coefficient of (lift of -x).(lift of y) in the
    covering 8-dimensional algebra; symmetric and non-singular."""
    from .cayley import m7_division, m7_split

    if variant == "split":
        table8 = _cayley8_table()
        target = algebra if algebra is not None else m7_split()
        coeff = lambda s, t: -_entry(table8, s + 1, t + 1, 0)
    elif variant == "division":
        oct8 = build_division_octonions(gamma)
        target = algebra if algebra is not None else m7_division(gamma)
        coeff = lambda s, t: -oct8.structure_constant(s + 1, t + 1, 0)
    else:
        raise ValueError(f"unknown variant {variant!r}")
    gram = [[coeff(s, t) for t in range(7)] for s in range(7)]
    form = BilinearForm(target, gram)
    if not form.is_symmetric() or not form.is_nonsingular():
        raise VerificationError("reference form is not symmetric non-singular")
    return form


def _entry(table, i, j, k):
    return table.get((i, j), {}).get(k, ZERO)


def induced_form(form7: BilinearForm, tensor: Algebra, u: Algebra,
                 tau=None) -> BilinearForm:
    """f(a (x) u, b (x) w) = f7(a, b) tau(u w) on a coordinate-major host.

    tau defaults to the coefficient functional at the identity basis slot
    and falls back to the all-ones functional when that is singular; both
    are unital for the corpus coordinate algebras.
    """
    if tensor.dim != 7 * u.dim:
        raise ValueError("host does not have the tensor layout")
    candidates = []
    if tau is not None:
        candidates.append([frac(c) for c in tau])
    else:
        one = identity_element(u)
        lead = next(i for i, c in enumerate(one.coeffs) if c)
        candidates.append([ONE if r == lead else ZERO for r in range(u.dim)])
        candidates.append([ONE] * u.dim)
    last_error = None
    for t in candidates:
        pairing = [[ZERO] * u.dim for _ in range(u.dim)]
        for r in range(u.dim):
            for r2 in range(u.dim):
                total = ZERO
                for q, c in u.product_basis(r, r2):
                    total += c * t[q]
                pairing[r][r2] = total
        gram = [[ZERO] * tensor.dim for _ in range(tensor.dim)]
        for r in range(u.dim):
            for r2 in range(u.dim):
                if not pairing[r][r2]:
                    continue
                for s in range(7):
                    for s2 in range(7):
                        c = form7.gram[s][s2]
                        if c:
                            gram[r * 7 + s][r2 * 7 + s2] = c * pairing[r][r2]
        form = BilinearForm(tensor, gram)
        if form.is_symmetric() and form.is_nonsingular():
            return form
        last_error = VerificationError(
            "induced form is singular or asymmetric for this tau")
    raise last_error


def induced_involution(tensor: Algebra) -> Involution:
    """(a (x) u)* = (-a) (x) u, i.e. negation on the whole tensor host."""
    return Involution.negation(tensor)


def adjoint_operator(op: Operator, form: BilinearForm) -> Operator:
    """Unique alpha* with f(x alpha, y) = (-1)^{|alpha||y|} f(x, y alpha*)."""
    if not form.is_symmetric():
        raise VerificationError("adjoint needs a symmetric form")
    g = form.gram
    ginv = form.inverse()
    a = op.algebra
    par = op.parity or 0
    at = mat_transpose(op.matrix)
    core = mat_mul(mat_mul(g, at), ginv)
    if par:
        sig = [[(-ONE if ((par * a.parity[j]) % 2 and i == j) else
                 (ONE if i == j else ZERO)) for j in range(a.dim)]
               for i in range(a.dim)]
        core = mat_mul(sig, core)
    from .errors import GradingError

    try:
        result = Operator(a, core, parity=op.parity)
    except GradingError:
        # a non-even form can return an adjoint without a clean parity block
        result = Operator(a, core, parity=None)
    # defining equation re-checked on all basis pairs
    for i in range(a.dim):
        bi = a.basis_element(i)
        for j in range(a.dim):
            bj = a.basis_element(j)
            sign = -1 if (par * a.parity[j]) % 2 else 1
            if form.evaluate(op.apply(bi), bj) != sign * form.evaluate(bi, result.apply(bj)):
                raise VerificationError("adjoint verification failed",
                                        witness=(i, j))
    return result


def j_admissibility(e: Algebra, sigma: Involution) -> Report:
    """Symmetric elements {a : a* = a} must lie in the associator nucleus."""
    start = time.perf_counter()
    inv_check = verify_involution(e, sigma)
    if not inv_check.ok:
        return Report("j-admissibility", FAIL, witness=inv_check.witness,
                      details={"reason": "not an involution"},
                      elapsed_ms=(time.perf_counter() - start) * 1e3)
    d = e.dim
    rows = [[sigma.matrix[i][k] - (ONE if i == k else ZERO) for k in range(d)]
            for i in range(d)]
    from .linalg import kernel_basis

    sym = kernel_basis(({k: row[k] for k in range(d) if row[k]}
                        for row in mat_transpose(rows)), d)
    witness = None
    for vec in sym:
        s = e.element(vec)
        done = False
        for i in range(d):
            bi = e.basis_element(i)
            for j in range(d):
                bj = e.basis_element(j)
                assocs = (
                    (s * bi) * bj - s * (bi * bj),
                    (bi * s) * bj - bi * (s * bj),
                    (bi * bj) * s - bi * (bj * s),
                )
                for slot, val in enumerate(assocs):
                    if not val.is_zero():
                        witness = {
                            "kind": "symmetric-outside-nucleus",
                            "symmetric": [str(c) for c in vec],
                            "indices": [slot, i, j],
                            "defect": [str(c) for c in val.coeffs],
                        }
                        done = True
                        break
                if done:
                    break
            if done:
                break
        if done:
            break
    status = PASS if witness is None else FAIL
    return Report("j-admissibility", status, witness=witness,
                  details={"symmetric_dim": len(sym)},
                  elapsed_ms=(time.perf_counter() - start) * 1e3)


def sym_skew_split(operators, form: BilinearForm):
    """Eigen-split a *-invariant operator space into symmetric and skew
    parts; raises when the space is not *-invariant."""
    ops = list(operators)
    if not ops:
        return [], []
    a = ops[0].algebra
    d = a.dim
    span = Span(d * d)
    for op in ops:
        span.add(op.flat())
    adjoints = [adjoint_operator(op, form) for op in ops]
    for idx, adj in enumerate(adjoints):
        if not span.contains(adj.flat()):
            raise VerificationError("operator space is not *-invariant",
                                    witness={"operator": idx})
    sym_rows = []
    skew_rows = []
    for op, adj in zip(ops, adjoints):
        sym_rows.append((op + adj).flat())
        skew_rows.append((op - adj).flat())
    sym_basis, _ = rref([r for r in sym_rows if any(r)])
    skew_basis, _ = rref([r for r in skew_rows if any(r)])
    if len(sym_basis) + len(skew_basis) != span.dim:
        raise VerificationError("sym/skew split does not sum to the space")

    def unflatten(row):
        return Operator(a, [row[i * d:(i + 1) * d] for i in range(d)], parity=None)

    return [unflatten(r) for r in sym_basis], [unflatten(r) for r in skew_basis]


def factorize_with_involution(m: Algebra, emb, sigma: Involution,
                              form: BilinearForm):
    """Run the factorization and certify every coordinate operator is
    symmetric for the adjoint attached to the form."""
    start = time.perf_counter()
    inv_check = verify_involution(m, sigma)
    if not inv_check.ok:
        raise VerificationError("not an involution", witness=inv_check.witness)
    if not form.is_symmetric() or not form.is_nonsingular():
        raise VerificationError("form must be symmetric and non-singular")
    adm = j_admissibility(m, sigma)
    if not adm.ok:
        raise VerificationError("involution is not J-admissible",
                                witness=adm.witness)
    result = kronecker_factorize(m, emb)
    witness = None
    for s, op in enumerate(result.operators):
        adj = adjoint_operator(op, form)
        if adj.matrix != op.matrix:
            witness = {"kind": "non-symmetric-operator", "indices": [s]}
            break
    status = PASS if witness is None else FAIL
    certificate = Report("symmetric-operators", status, witness=witness,
                         details={"dim_u": result.dim_u},
                         elapsed_ms=(time.perf_counter() - start) * 1e3)
    return result, certificate
