"""(Super)representations of Malcev algebras and their decomposition.

A representation stores one carrier-space matrix per basis vector of the
acting algebra (right action, row-vector convention).  The split null
extension realizes the carrier as an ideal V with V.V = 0 and mixed
products (x+v)(y+w) = xy + (rho_y(v) - (-1)^{|x||w|} rho_x(w)); every
module-level check routes through identity verification on the extension.

`decompose_into_irreducibles` follows the constructive route: it scans
operator witnesses alpha(v, a, b) built from the four-argument function p
evaluated on the extension, keeps those whose image of the embedded model
is a fresh 7-dimensional block, and stops when the carrier is exhausted.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Algebra, Element, Operator, alpha_operator, p_function
from .errors import (
    HypothesisViolated,
    LieComponent,
    VerificationError,
)
from .linalg import ONE, ZERO, Span, frac, kernel_basis, mat_eq, rref, vec_is_zero
from .reports import FAIL, PASS, Report
from .verify import verify_h_variety, verify_malcev

__all__ = [
    "Representation",
    "SplitExtension",
    "CarrierMap",
    "ModuleComponent",
    "split_null_extension",
    "verify_module",
    "adjoint_restriction",
    "submodule_generated",
    "is_irreducible",
    "almost_faithful",
    "representation_kernel",
    "decompose_into_irreducibles",
    "centralizer_basis",
    "centralizer_diagnostic",
]


class Representation:
    """Family of action matrices rho_x, one per basis vector of `acting`."""

    def __init__(self, acting: Algebra, matrices, carrier_parity=None,
                 carrier_labels=None):
        self.acting = acting
        mats = []
        dim = None
        for m in matrices:
            rows = tuple(tuple(frac(c) for c in row) for row in m)
            if dim is None:
                dim = len(rows)
            if len(rows) != dim or any(len(r) != dim for r in rows):
                raise ValueError("action matrices must be square and equal-sized")
            mats.append(rows)
        if len(mats) != acting.dim:
            raise ValueError("one action matrix per acting basis vector required")
        self.matrices = tuple(mats)
        self.carrier_dim = dim if dim is not None else 0
        if carrier_parity is None:
            self.carrier_parity = (0,) * self.carrier_dim
        else:
            self.carrier_parity = tuple(int(p) % 2 for p in carrier_parity)
            if len(self.carrier_parity) != self.carrier_dim:
                raise ValueError("carrier parity length mismatch")
        if carrier_labels is None:
            self.carrier_labels = tuple(f"v{j}" for j in range(self.carrier_dim))
        else:
            self.carrier_labels = tuple(carrier_labels)
        self._check_grading()

    def _check_grading(self):
        if not (self.acting.is_graded or any(self.carrier_parity)):
            return
        for i, mat in enumerate(self.matrices):
            shift = self.acting.parity[i]
            for j in range(self.carrier_dim):
                want = (self.carrier_parity[j] + shift) % 2
                for k in range(self.carrier_dim):
                    if mat[j][k] and self.carrier_parity[k] != want:
                        raise VerificationError(
                            f"action of basis {i} breaks the carrier grading at ({j},{k})"
                        )

    @classmethod
    def regular(cls, algebra: Algebra, odd: bool = False) -> "Representation":
        """The algebra acting on its own space by right multiplication."""
        mats = []
        for i in range(algebra.dim):
            rows = []
            for j in range(algebra.dim):
                vec = [ZERO] * algebra.dim
                for k, c in algebra.product_basis(j, i):
                    vec[k] = c
                rows.append(vec)
            mats.append(rows)
        parity = tuple((p + 1) % 2 for p in algebra.parity) if odd else algebra.parity
        return cls(algebra, mats, carrier_parity=parity,
                   carrier_labels=algebra.labels)

    @classmethod
    def zero(cls, algebra: Algebra, carrier_dim: int,
             carrier_parity=None) -> "Representation":
        z = [[[ZERO] * carrier_dim for _ in range(carrier_dim)]
             for _ in range(algebra.dim)]
        return cls(algebra, z, carrier_parity=carrier_parity)

    @classmethod
    def direct_sum(cls, reps) -> "Representation":
        reps = list(reps)
        acting = reps[0].acting
        total = sum(r.carrier_dim for r in reps)
        mats = []
        for i in range(acting.dim):
            rows = [[ZERO] * total for _ in range(total)]
            off = 0
            for r in reps:
                for j in range(r.carrier_dim):
                    for k in range(r.carrier_dim):
                        rows[off + j][off + k] = r.matrices[i][j][k]
                off += r.carrier_dim
            mats.append(rows)
        parity = tuple(p for r in reps for p in r.carrier_parity)
        return cls(acting, mats, carrier_parity=parity)

    def is_zero(self) -> bool:
        return all(not c for m in self.matrices for row in m for c in row)

    def act_basis(self, v, i: int) -> list:
        """v @ rho_{b_i} for a carrier coefficient vector v."""
        mat = self.matrices[i]
        out = [ZERO] * self.carrier_dim
        for j, vj in enumerate(v):
            if not vj:
                continue
            row = mat[j]
            for k in range(self.carrier_dim):
                if row[k]:
                    out[k] += vj * row[k]
        return out


@dataclass
class SplitExtension:
    base: Algebra
    rep: Representation
    total: Algebra

    @property
    def base_dim(self) -> int:
        return self.base.dim

    def carrier_index(self, j: int) -> int:
        return self.base.dim + j

    def carrier_part(self, coeffs) -> list:
        return list(coeffs[self.base.dim:])

    def base_part(self, coeffs) -> list:
        return list(coeffs[:self.base.dim])


def split_null_extension(m: Algebra, rho: Representation) -> SplitExtension:
    """Total algebra M + V with V.V = 0 and the signed mixed products."""
    if rho.acting is not m:
        raise VerificationError("representation does not act for this algebra")
    dm, dv = m.dim, rho.carrier_dim
    labels = list(m.labels)
    for lbl in rho.carrier_labels:
        tag = f"{lbl}^" if lbl in m.labels else lbl
        while tag in labels:
            tag += "^"
        labels.append(tag)
    parity = list(m.parity) + list(rho.carrier_parity)
    table = {}
    for (i, j), entry in m.table_items():
        table[(i, j)] = dict(entry)
    for i in range(dm):
        mat = rho.matrices[i]
        pi = m.parity[i]
        for j in range(dv):
            row = mat[j]
            # v_j . b_i = rho_{b_i}(v_j)
            entry = {dm + k: c for k, c in enumerate(row) if c}
            if entry:
                table[(dm + j, i)] = entry
            # b_i . v_j = -(-1)^{|b_i||v_j|} rho_{b_i}(v_j)
            sign = -1 if (pi * rho.carrier_parity[j]) % 2 else 1
            entry = {dm + k: -sign * c for k, c in enumerate(row) if c}
            if entry:
                table[(i, dm + j)] = entry
    total = Algebra(labels, table, parity=parity,
                    name=f"{m.name or 'M'}+V")
    return SplitExtension(m, rho, total)


def verify_module(m: Algebra, rho: Representation, require_h: bool = False) -> Report:
    """Run the Malcev sweep (and optionally the h sweep) on the extension."""
    start = time.perf_counter()
    ext = split_null_extension(m, rho)
    r1 = verify_malcev(ext.total)
    details = {"extension_dim": ext.total.dim, "malcev": r1.status}
    witness = r1.witness
    status = r1.status
    if status == PASS and require_h:
        r2 = verify_h_variety(ext.total)
        details["h"] = r2.status
        if not r2.ok:
            status, witness = r2.status, r2.witness
    return Report("module", status, witness=witness, details=details,
                  elapsed_ms=(time.perf_counter() - start) * 1e3)


def adjoint_restriction(m: Algebra, emb) -> Representation:
    """Action of the embedded model on the whole host space:
    rho_a(x) = x . iota(e_a)."""
    from .embeddings import verify_embedding

    rep_check = verify_embedding(m, emb)
    if not rep_check.ok:
        raise VerificationError("invalid embedding", witness=rep_check.witness)
    mats = []
    for t in range(7):
        img = emb.images[t]
        rows = [(m.basis_element(j) * img).coeffs for j in range(m.dim)]
        mats.append(rows)
    return Representation(emb.model(), mats, carrier_parity=m.parity,
                          carrier_labels=m.labels)


def submodule_generated(rho: Representation, v) -> list[tuple]:
    """Smallest rho-invariant subspace containing v (graded closure)."""
    coeffs = list(v.coeffs) if isinstance(v, Element) else [frac(c) for c in v]
    span = Span(rho.carrier_dim)
    queue = []
    seeds = []
    if any(rho.carrier_parity):
        for par in (0, 1):
            part = [c if rho.carrier_parity[i] == par else ZERO
                    for i, c in enumerate(coeffs)]
            if not vec_is_zero(part):
                seeds.append(part)
    else:
        seeds.append(coeffs)
    for s in seeds:
        if span.add(s):
            queue.append(s)
    while queue:
        w = queue.pop(0)
        for i in range(rho.acting.dim):
            img = rho.act_basis(w, i)
            if not vec_is_zero(img) and span.add(img):
                queue.append(img)
    return span.basis_rows()


def representation_kernel(rho: Representation) -> list[tuple]:
    """Basis of {x in acting : rho_x = 0}."""
    d = rho.acting.dim
    nv = rho.carrier_dim

    def rows():
        for j in range(nv):
            for k in range(nv):
                row = {}
                for i in range(d):
                    c = rho.matrices[i][j][k]
                    if c:
                        row[i] = c
                if row:
                    yield row

    return kernel_basis(rows(), d)


def is_irreducible(rho: Representation) -> bool:
    """Nonzero action and every carrier basis vector generates the carrier."""
    if rho.is_zero() or rho.carrier_dim == 0:
        return False
    unit = lambda j: [ONE if k == j else ZERO for k in range(rho.carrier_dim)]
    for j in range(rho.carrier_dim):
        if len(submodule_generated(rho, unit(j))) != rho.carrier_dim:
            return False
    return True


def almost_faithful(rho: Representation) -> bool:
    """ker(rho) contains no nonzero ideal of the acting algebra.

    Computes the largest ideal inside the kernel: shrink W to the fixpoint
    of {w in W : w.A and A.w stay inside W}.  A member is sum lambda_i w_i
    over the current basis, so each product coordinate outside W yields one
    linear row over lambda.
    """
    m = rho.acting
    current = [list(v) for v in representation_kernel(rho)]
    while current:
        span = Span(m.dim)
        for v in current:
            span.add(v)

        def rows_iter():
            for idx, v in enumerate(current):
                ev = m.element(v)
                for i in range(m.dim):
                    bi = m.basis_element(i)
                    for side, prod in enumerate((ev * bi, bi * ev)):
                        residual, _ = span._reduce(prod.coeffs)
                        for k, c in enumerate(residual):
                            if c:
                                yield {"key": (i, side, k), "idx": idx, "c": c}

        per_product: dict[tuple, dict] = {}
        for item in rows_iter():
            per_product.setdefault(item["key"], {})[item["idx"]] = item["c"]
        sol = kernel_basis(per_product.values(), len(current))
        new = []
        for lam in sol:
            vec = [ZERO] * m.dim
            for idx, c in enumerate(lam):
                if c:
                    for k in range(m.dim):
                        vec[k] += c * current[idx][k]
            new.append(vec)
        reduced, _ = rref(new)
        new = [list(r) for r in reduced]
        if len(new) == len(current):
            break
        current = new
    return not current


@dataclass
class ModuleComponent:
    witness: tuple              # (carrier index, model index a, model index b)
    alpha: Operator             # centroid operator on the split extension
    iso: tuple                  # 7 x carrier_dim matrix, rows = images of e_t
    parity: int


def _restricted_alpha_rows(ext: SplitExtension, v_idx: int, a: int, b: int):
    """Rows p(e_t, v, a, b) of the candidate isomorphism, carrier part only."""
    total = ext.total
    v = total.basis_element(ext.carrier_index(v_idx))
    ea = total.basis_element(a)
    eb = total.basis_element(b)
    rows = []
    for t in range(7):
        value = p_function(total.basis_element(t), v, ea, eb)
        base = ext.base_part(value.coeffs)
        if not vec_is_zero(base):
            raise VerificationError(
                "alpha image of the model left the carrier", witness=(v_idx, a, b)
            )
        rows.append(tuple(ext.carrier_part(value.coeffs)))
    return rows


def decompose_into_irreducibles(rho: Representation) -> list[ModuleComponent]:
    """Split the carrier into 7-dimensional blocks, each the image of the
    embedded model under an operator alpha(v, a, b), greedily in witness
    order (carrier index, then model basis pair)."""
    m = rho.acting
    if m.dim != 7:
        raise VerificationError("decomposition acts over the 7-dimensional model")
    check = verify_module(m, rho)
    if not check.ok:
        raise VerificationError("carrier is not a module", witness=check.witness)
    dv = rho.carrier_dim
    # hypothesis: no nonzero carrier vector kills the model
    def ann_rows():
        for i in range(m.dim):
            mat = rho.matrices[i]
            for k in range(dv):
                row = {}
                for j in range(dv):
                    if mat[j][k]:
                        row[j] = mat[j][k]
                if row:
                    yield row

    kern = kernel_basis(ann_rows(), dv)
    if kern:
        vec = list(kern[0])
        if any(rho.carrier_parity):
            for par in (0, 1):
                part = [c if rho.carrier_parity[i] == par else ZERO
                        for i, c in enumerate(vec)]
                if not vec_is_zero(part):
                    vec = part
                    break
        raise HypothesisViolated(
            "a nonzero carrier vector annihilates the model",
            witness=tuple(str(c) for c in vec),
        )

    ext = split_null_extension(m, rho)
    covered = Span(dv)
    components: list[ModuleComponent] = []
    for v_idx in range(dv):
        if covered.dim == dv:
            break
        for a in range(7):
            for b in range(a + 1, 7):
                if covered.dim == dv:
                    break
                rows = _restricted_alpha_rows(ext, v_idx, a, b)
                if all(vec_is_zero(r) for r in rows):
                    continue
                trial = covered.copy()
                grew = sum(1 for r in rows if trial.add(r))
                if grew != 7:
                    continue
                covered = trial
                alpha = alpha_operator(
                    ext.total.basis_element(ext.carrier_index(v_idx)),
                    ext.total.basis_element(a),
                    ext.total.basis_element(b),
                )
                _check_component(ext, rho, rows)
                components.append(ModuleComponent(
                    witness=(v_idx, a, b),
                    alpha=alpha,
                    iso=tuple(rows),
                    parity=rho.carrier_parity[v_idx],
                ))
    if covered.dim != dv:
        raise LieComponent(
            "alpha operators do not exhaust the carrier",
            witness={"covered": covered.dim, "carrier": dv},
        )
    return components


def _check_component(ext: SplitExtension, rho: Representation, rows):
    """The map z -> z.alpha must intertwine regular and carrier actions:
    (z e_t) alpha = (z alpha) rho_{e_t} on all 7 x 7 basis pairs."""
    m = ext.base
    for z in range(7):
        for t in range(7):
            left = [ZERO] * rho.carrier_dim
            for k, c in m.product_basis(z, t):
                for idx in range(rho.carrier_dim):
                    left[idx] += c * rows[k][idx]
            right = rho.act_basis(rows[z], t)
            if left != right:
                raise VerificationError(
                    "component isomorphism fails to intertwine", witness=(z, t)
                )


@dataclass
class CarrierMap:
    matrix: tuple
    parity: int | None = None

    def flat(self):
        return tuple(c for row in self.matrix for c in row)


def centralizer_basis(rho: Representation) -> list[CarrierMap]:
    """Basis of {phi : phi rho_x = (-1)^{|phi||x|} rho_x phi}, by parity."""
    dv = rho.carrier_dim
    graded = any(rho.carrier_parity) or rho.acting.is_graded
    out = []
    parities = (0, 1) if graded else (0,)
    for par in parities:
        unknowns = {}
        for j in range(dv):
            for k in range(dv):
                if not graded or rho.carrier_parity[k] == (rho.carrier_parity[j] + par) % 2:
                    unknowns[(j, k)] = len(unknowns)
        slots = {v: k for k, v in unknowns.items()}

        def rows():
            for i in range(rho.acting.dim):
                mat = rho.matrices[i]
                sign = -1 if (par * rho.acting.parity[i]) % 2 else 1
                for j in range(dv):
                    for mm in range(dv):
                        row = {}
                        for k in range(dv):
                            c = mat[k][mm]
                            if c:
                                slot = unknowns.get((j, k))
                                if slot is not None:
                                    row[slot] = row.get(slot, ZERO) + c
                        for k in range(dv):
                            c = mat[j][k]
                            if c:
                                slot = unknowns.get((k, mm))
                                if slot is not None:
                                    row[slot] = row.get(slot, ZERO) - sign * c
                        if row:
                            yield row

        for vec in kernel_basis(rows(), len(unknowns)):
            matrix = [[ZERO] * dv for _ in range(dv)]
            for slot, val in enumerate(vec):
                if val:
                    j, k = slots[slot]
                    matrix[j][k] = val
            out.append(CarrierMap(tuple(tuple(r) for r in matrix), parity=par))
    return out


def centralizer_diagnostic(rho: Representation) -> Report:
    """For irreducible almost-faithful carriers every nonzero homogeneous
    centralizer member must act bijectively (checked as invertibility)."""
    start = time.perf_counter()
    basis = centralizer_basis(rho)
    applicable = is_irreducible(rho) and almost_faithful(rho)
    witness = None
    if applicable:
        from .linalg import mat_rank

        for idx, phi in enumerate(basis):
            if all(not c for row in phi.matrix for c in row):
                continue
            if mat_rank(phi.matrix) != rho.carrier_dim:
                witness = {"kind": "non-bijective-centralizer", "indices": [idx]}
                break
    status = PASS if witness is None else FAIL
    return Report("centralizer", status, witness=witness,
                  details={"dimension": len(basis), "applicable": applicable},
                  elapsed_ms=(time.perf_counter() - start) * 1e3)
