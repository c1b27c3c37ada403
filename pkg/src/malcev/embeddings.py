"""Embeddings of the 7-dimensional simple non-Lie Malcev algebra into a
host algebra, with the two hypothesis checks of the factorization theorems."""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .algebra import Algebra, Element
from .cayley import m7_division, m7_split, identity_element
from .errors import VerificationError
from .linalg import ZERO, frac, kernel_basis, mat_rank
from .reports import FAIL, PASS, Report

__all__ = [
    "Embedding",
    "identity_embedding",
    "canonical_embedding",
    "verify_embedding",
    "check_annihilator_hypothesis",
]


@dataclass
class Embedding:
    """Images of the seven model basis vectors inside a host algebra."""

    host: Algebra
    images: list
    variant: str = "split"          # "split" | "division"
    gamma: Fraction = Fraction(-1)
    _model: Algebra | None = field(default=None, repr=False)

    def __post_init__(self):
        self.gamma = frac(self.gamma)
        if self.variant not in ("split", "division"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if len(self.images) != 7:
            raise ValueError("an embedding needs exactly 7 image vectors")
        for img in self.images:
            if img.algebra is not self.host:
                raise ValueError("image vectors must live in the host algebra")

    def model(self) -> Algebra:
        if self._model is None:
            self._model = (
                m7_split() if self.variant == "split" else m7_division(self.gamma)
            )
        return self._model


def identity_embedding(model: Algebra, variant: str = "split", gamma=-1) -> Embedding:
    """Embed a freshly built model algebra into itself."""
    return Embedding(model, model.basis(), variant=variant, gamma=gamma)


def canonical_embedding(tensor: Algebra, u: Algebra, variant: str = "split",
                        gamma=-1) -> Embedding:
    """a -> a (x) 1 into a host built by `tensor_with_coordinates` (or any
    algebra using the same coordinate-major basis layout)."""
    if tensor.dim != 7 * u.dim:
        raise ValueError("host does not have the 7 * dim(u) tensor layout")
    one = identity_element(u)
    images = []
    for t in range(7):
        coeffs = [ZERO] * tensor.dim
        for r, c in enumerate(one.coeffs):
            if c:
                coeffs[r * 7 + t] = c
        images.append(tensor.element(coeffs))
    return Embedding(tensor, images, variant=variant, gamma=gamma)


def verify_embedding(m: Algebra, emb: Embedding) -> Report:
    """Linear independence, evenness, and all 49 model products."""
    start = time.perf_counter()
    if emb.host is not m:
        raise VerificationError("embedding does not target this algebra")
    details = {"products": 49}
    witness = None
    if m.is_graded:
        for t, img in enumerate(emb.images):
            if not (img.is_homogeneous() and img.parity() == 0):
                witness = {"kind": "odd-image", "indices": [t]}
                break
    if witness is None and mat_rank([img.coeffs for img in emb.images]) != 7:
        witness = {"kind": "dependent-images", "indices": []}
    if witness is None:
        model = emb.model()
        for a in range(7):
            if witness:
                break
            for b in range(7):
                got = emb.images[a] * emb.images[b]
                want = m.zero()
                for k, c in model.product_basis(a, b):
                    want = want + c * emb.images[k]
                if got != want:
                    witness = {
                        "kind": "table-mismatch",
                        "indices": [a, b],
                        "labels": [model.labels[a], model.labels[b]],
                        "defect": [str(c) for c in (got - want).coeffs],
                    }
                    break
    status = PASS if witness is None else FAIL
    return Report("embedding", status, witness=witness, details=details,
                  elapsed_ms=(time.perf_counter() - start) * 1e3)


def check_annihilator_hypothesis(m: Algebra, emb: Embedding) -> Report:
    """No nonzero (homogeneous) element may annihilate the embedded copy:
    the kernel of x -> (x.images[0], ..., x.images[6]) must vanish."""
    start = time.perf_counter()
    d = m.dim

    def rows():
        for t in range(7):
            img = emb.images[t]
            for mm in range(d):
                row = {}
                for r in range(d):
                    c = (m.basis_element(r) * img).coeffs[mm]
                    if c:
                        row[r] = c
                if row:
                    yield row

    kernel = kernel_basis(rows(), d)
    witness = None
    if kernel:
        vec = m.element(kernel[0])
        if m.is_graded:
            for par in (0, 1):
                part = vec.homogeneous_part(par)
                if not part.is_zero():
                    vec = part
                    break
        witness = {
            "kind": "annihilator",
            "indices": list(vec.support()),
            "coeffs": [str(c) for c in vec.coeffs],
        }
    status = PASS if witness is None else FAIL
    return Report("annihilator-hypothesis", status, witness=witness,
                  details={"kernel_dim": len(kernel)},
                  elapsed_ms=(time.perf_counter() - start) * 1e3)
