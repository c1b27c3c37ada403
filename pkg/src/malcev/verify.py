"""Exhaustive identity verification.

`verify_malcev` checks (a) super-anticommutativity of the table and
(b) the four-variable multilinear Malcev identity on every basis
quadruple; `verify_h_variety` checks the five-argument function h on
every basis quintuple.

The sweeps contract a scaled integer copy of the structure tensor.  When
an a-priori magnitude bound keeps every intermediate below 2**53 the
contraction runs in float64 (exact for such integers, and BLAS-fast);
otherwise it runs in int64 or, as a last resort, exact object arithmetic.
A reported witness is always recomputed with Fractions through the
element-level operations and cross-checked against the fast value.
"""

from __future__ import annotations

import time
from fractions import Fraction
from math import lcm

import numpy as np

from .algebra import Algebra, Element, h_function
from .reports import FAIL, PASS, Report

__all__ = [
    "verify_malcev",
    "verify_h_variety",
    "malcev_defect",
    "anticommutativity_witness",
]

_FLOAT_LIMIT = 2**52
_INT64_LIMIT = 2**62


def _int_tensor(a: Algebra):
    """(C, scale, maxabs): C[i,j,k] = scale * c_ijk as exact integers."""
    cached = a._cache.get("int_tensor")
    if cached is not None:
        return cached
    den = 1
    for _, entry in a.table_items():
        for _, c in entry:
            den = lcm(den, c.denominator)
    d = a.dim
    tensor = [[[0] * d for _ in range(d)] for _ in range(d)]
    maxabs = 0
    for (i, j), entry in a.table_items():
        for k, c in entry:
            v = int(c * den)
            tensor[i][j][k] = v
            maxabs = max(maxabs, abs(v))
    out = (tensor, den, maxabs)
    a._cache["int_tensor"] = out
    return out


def _as_array(tensor, bound: int):
    if bound < _FLOAT_LIMIT:
        return np.array(tensor, dtype=np.float64)
    if bound < _INT64_LIMIT:
        return np.array(tensor, dtype=np.int64)
    return np.array(tensor, dtype=object)


def _sign_vector(a: Algebra, dtype):
    return np.array([-1 if p else 1 for p in a.parity], dtype=dtype)


def anticommutativity_witness(a: Algebra):
    """First (i, j, k) with c_ijk != -(-1)^{p_i p_j} c_jik, or None."""
    for i in range(a.dim):
        for j in range(a.dim):
            s = -1 if (a.parity[i] * a.parity[j]) % 2 else 1
            left = dict(a.product_basis(i, j))
            right = dict(a.product_basis(j, i))
            for k in sorted(set(left) | set(right)):
                if left.get(k, 0) + s * right.get(k, 0) != 0:
                    return {
                        "kind": "anticommutativity",
                        "indices": [i, j, k],
                        "labels": [a.labels[i], a.labels[j], a.labels[k]],
                        "defect": str(left.get(k, Fraction(0)) + s * right.get(k, Fraction(0))),
                    }
    return None


def malcev_defect(x: Element, y: Element, z: Element, t: Element) -> Element:
    """Defect of the four-variable (super) Malcev identity; zero iff it holds.

    (-1)^{|y||z|}(xz)(yt) - ((xy)z)t - (-1)^{|x|(|y|+|z|+|t|)}((yz)t)x
      - (-1)^{(|x|+|y|)(|z|+|t|)}((zt)x)y - (-1)^{(|x|+|y|+|z|)|t|}((tx)y)z
    """
    a = x.algebra
    if a.is_graded:
        px, py, pz, pt = x.parity(), y.parity(), z.parity(), t.parity()
    else:
        px = py = pz = pt = 0

    def sg(e):
        return -1 if e % 2 else 1

    return (
        sg(py * pz) * ((x * z) * (y * t))
        - ((x * y) * z) * t
        - sg(px * (py + pz + pt)) * (((y * z) * t) * x)
        - sg((px + py) * (pz + pt)) * (((z * t) * x) * y)
        - sg((px + py + pz) * pt) * (((t * x) * y) * z)
    )


def _witness_element(a: Algebra, element: Element, kind: str, indices) -> dict:
    return {
        "kind": kind,
        "indices": [int(i) for i in indices],
        "labels": [a.labels[int(i)] for i in indices],
        "defect": [str(c) for c in element.coeffs],
    }


def verify_malcev(a: Algebra) -> Report:
    """Anticommutativity on all pairs + the linearized Malcev identity on
    all dim**4 basis quadruples."""
    start = time.perf_counter()
    details = {"basis_pairs": a.dim * a.dim, "quadruples": a.dim**4}
    w = anticommutativity_witness(a)
    if w is not None:
        return Report("malcev", FAIL, witness=w, details=details,
                      elapsed_ms=(time.perf_counter() - start) * 1e3)

    tensor, scale, maxc = _int_tensor(a)
    d = a.dim
    bound = 5 * d * d * max(maxc, 1) ** 3
    C = _as_array(tensor, bound)
    graded = a.is_graded
    p = np.array(a.parity, dtype=np.int64)
    if graded:
        syz = np.where(np.outer(p, p) % 2 == 1, -1, 1).astype(C.dtype)
        psum3 = (p[:, None, None] + p[None, :, None] + p[None, None, :]) % 2

    witness = None
    for xi in range(d):
        cx = C[xi]
        cx2 = C[:, xi, :]
        t0 = np.einsum("zk,ytl,klm->yztm", cx, C, C, optimize=True)
        t1 = np.einsum("yk,kzl,ltm->yztm", cx, C, C, optimize=True)
        t2 = np.einsum("yzk,ktl,lm->yztm", C, C, cx2, optimize=True)
        t3 = np.einsum("ztk,kl,lym->yztm", C, cx2, C, optimize=True)
        t4 = np.einsum("tk,kyl,lzm->yztm", cx2, C, C, optimize=True)
        if graded:
            px = int(p[xi])
            s2 = np.where((px * psum3) % 2 == 1, -1, 1).astype(C.dtype)
            pzt = (p[None, :, None] + p[None, None, :]) % 2
            s3 = np.where(((px + p[:, None, None]) * pzt) % 2 == 1, -1, 1).astype(C.dtype)
            pxyz = (px + p[:, None, None] + p[None, :, None]) % 2
            s4 = np.where((pxyz * p[None, None, :]) % 2 == 1, -1, 1).astype(C.dtype)
            defect = syz[:, :, None, None] * t0 - t1
            defect = defect - s2[:, :, :, None] * t2
            defect = defect - s3[:, :, :, None] * t3
            defect = defect - s4[:, :, :, None] * t4
        else:
            defect = t0 - t1 - t2 - t3 - t4
        nz = np.argwhere(defect)
        if nz.size:
            yi, zi, ti, _ = (int(v) for v in nz[0])
            exact = malcev_defect(
                a.basis_element(xi), a.basis_element(yi),
                a.basis_element(zi), a.basis_element(ti),
            )
            scaled = [c * scale**3 for c in exact.coeffs]
            fast = [Fraction(int(defect[yi, zi, ti, m])) for m in range(d)]
            if scaled != fast:
                raise AssertionError("fast Malcev sweep disagrees with exact recomputation")
            witness = _witness_element(a, exact, "linearized-malcev", (xi, yi, zi, ti))
            break

    status = PASS if witness is None else FAIL
    return Report("malcev", status, witness=witness, details=details,
                  elapsed_ms=(time.perf_counter() - start) * 1e3)


def verify_h_variety(a: Algebra) -> Report:
    """h(y,z,t,x,u) = 0 on all dim**5 basis quintuples."""
    start = time.perf_counter()
    details = {"quintuples": a.dim**5}
    warnings = []
    if anticommutativity_witness(a) is not None:
        warnings.append("table is not (super)anticommutative; h sweep run anyway")

    tensor, scale, maxc = _int_tensor(a)
    d = a.dim
    m = max(maxc, 1)
    bound = 16 * d**3 * m**4
    C = _as_array(tensor, bound)
    p = np.array(a.parity, dtype=np.int64)
    graded = a.is_graded

    # brace tensor on basis triples: {b_a, b_b, b_c} = (ab)c - s(b,c)(ac)b + 2a(bc)
    t2 = np.einsum("abk,kcm->abcm", C, C, optimize=True)
    ab2 = np.einsum("bck,akm->abcm", C, C, optimize=True)
    if graded:
        sbc = np.where(np.outer(p, p) % 2 == 1, -1, 1).astype(C.dtype)
        brace = t2 - sbc[None, :, :, None] * t2.transpose(0, 2, 1, 3) + 2 * ab2
    else:
        brace = t2 - t2.transpose(0, 2, 1, 3) + 2 * ab2

    if graded:
        # sign tensors over (z, t, x, u)
        pz = p[:, None, None, None]
        pt = p[None, :, None, None]
        px = p[None, None, :, None]
        pu = p[None, None, None, :]
        s2 = np.where((px * pu) % 2 == 1, -1, 1).astype(C.dtype)
        s3 = np.where((px * (pz + pt + pu) + pu * pt) % 2 == 1, -1, 1).astype(C.dtype)
        s4 = np.where((pu * (pz + pt) + px * pt) % 2 == 1, -1, 1).astype(C.dtype)

    witness = None
    for yi in range(d):
        cy = C[yi]
        inner1 = np.einsum("zk,ktwr->ztwr", cy, brace, optimize=True)   # {yz,t,w}
        term1 = np.einsum("ztur,rxm->ztxum", inner1, C, optimize=True)   # {yz,t,u}x
        term2 = np.einsum("ztxr,rum->ztxum", inner1, C, optimize=True)   # {yz,t,x}u
        inner3 = np.einsum("xk,kzur->xzur", cy, brace, optimize=True)    # {yx,z,u}
        term3 = np.einsum("xzur,rtm->ztxum", inner3, C, optimize=True)   # {yx,z,u}t
        inner4 = np.einsum("uk,kzxr->uzxr", cy, brace, optimize=True)    # {yu,z,x}
        term4 = np.einsum("uzxr,rtm->ztxum", inner4, C, optimize=True)   # {yu,z,x}t
        if graded:
            defect = (
                term1
                + s2[:, :, :, :, None] * term2
                + s3[:, :, :, :, None] * term3
                + s4[:, :, :, :, None] * term4
            )
        else:
            defect = term1 + term2 + term3 + term4
        nz = np.argwhere(defect)
        if nz.size:
            zi, ti, xi, ui, _ = (int(v) for v in nz[0])
            exact = h_function(
                a.basis_element(yi), a.basis_element(zi), a.basis_element(ti),
                a.basis_element(xi), a.basis_element(ui),
            )
            scaled = [c * scale**4 for c in exact.coeffs]
            fast = [Fraction(int(defect[zi, ti, xi, ui, mm])) for mm in range(d)]
            if scaled != fast:
                raise AssertionError("fast h sweep disagrees with exact recomputation")
            witness = _witness_element(a, exact, "h-variety", (yi, zi, ti, xi, ui))
            break

    status = PASS if witness is None else FAIL
    return Report("h-variety", status, witness=witness, details=details,
                  warnings=warnings, elapsed_ms=(time.perf_counter() - start) * 1e3)
