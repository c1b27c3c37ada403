"""Self-describing JSON documents for algebras, forms, involutions,
embeddings and modules.

Coefficients are exact-rational strings ("3", "-1/2"); decimals and
floats are rejected.  The writer canonicalises (sorted entries, reduced
fractions, sorted keys, fixed separators), so write . read . write is
byte-stable.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra import Algebra
from .embeddings import Embedding
from .errors import BundleFormatError
from .involution import BilinearForm, Involution
from .linalg import ZERO, frac
from .modules import Representation

__all__ = [
    "AlgebraBundle",
    "ModuleBundle",
    "parse_scalar",
    "format_scalar",
    "read_bundle",
    "write_bundle",
    "loads_bundle",
    "dumps_bundle",
    "algebra_to_bundle",
    "bundle_to_algebra",
    "bundle_to_form",
    "bundle_to_involution",
    "bundle_to_embedding",
    "module_to_bundle",
    "bundle_to_module",
]

FORMAT_TAG = "malcev-bundle/1"

_SCALAR_RE = re.compile(r"^-?(0|[1-9][0-9]*)(/([1-9][0-9]*))?$")


def parse_scalar(text, field_name: str = "coefficient") -> Fraction:
    if not isinstance(text, str) or not _SCALAR_RE.match(text):
        raise BundleFormatError(
            f"not an exact rational literal: {text!r}", field=field_name
        )
    return Fraction(text)


def format_scalar(value: Fraction) -> str:
    return str(frac(value))


@dataclass
class AlgebraBundle:
    dim: int
    basis: list[str]
    table: list                      # [i, j, k, coeff-string]
    parity: list | None = None
    gamma: str | None = None
    variant: str | None = None
    form: list | None = None         # [i, j, coeff-string]
    involution: list | None = None   # [i, j, coeff-string]
    embedding: list | None = None    # 7 rows of dim coeff-strings
    kind: str = "algebra"


@dataclass
class ModuleBundle:
    acting_dim: int
    dim: int
    basis: list[str]
    action: list                     # [t, i, j, coeff-string]
    parity: list | None = None
    kind: str = "module"


def _expect(cond: bool, message: str, field_name: str):
    if not cond:
        raise BundleFormatError(message, field=field_name)


def _check_indices(entries, arity: int, bounds, field_name: str):
    seen = set()
    for pos, entry in enumerate(entries):
        _expect(isinstance(entry, list) and len(entry) == arity + 1,
                f"entry #{pos} must be [indices..., coeff]", field_name)
        idx = entry[:arity]
        for v, bound in zip(idx, bounds):
            _expect(isinstance(v, int) and 0 <= v < bound,
                    f"index {v} out of range in entry #{pos}", field_name)
        key = tuple(idx)
        _expect(key not in seen, f"duplicate entry {key}", field_name)
        seen.add(key)
        parse_scalar(entry[arity], field_name=f"{field_name}[{pos}]")


def loads_bundle(text: str):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise BundleFormatError(f"invalid JSON at line {exc.lineno}, column {exc.colno}") from None
    _expect(isinstance(doc, dict), "document must be an object", "$")
    if doc.get("format") != FORMAT_TAG:
        raise BundleFormatError(f"unknown format tag {doc.get('format')!r}", field="format")
    kind = doc.get("kind", "algebra")
    if kind == "algebra":
        return _load_algebra_bundle(doc)
    if kind == "module":
        return _load_module_bundle(doc)
    raise BundleFormatError(f"unknown kind {kind!r}", field="kind")


def _load_algebra_bundle(doc: dict) -> AlgebraBundle:
    dim = doc.get("dim")
    _expect(isinstance(dim, int) and dim > 0, "dim must be a positive integer", "dim")
    basis = doc.get("basis")
    _expect(isinstance(basis, list) and len(basis) == dim
            and all(isinstance(b, str) for b in basis)
            and len(set(basis)) == dim,
            "basis must list dim distinct strings", "basis")
    parity = doc.get("parity")
    if parity is not None:
        _expect(isinstance(parity, list) and len(parity) == dim
                and all(p in (0, 1) for p in parity),
                "parity must list dim bits", "parity")
    table = doc.get("table", [])
    _check_indices(table, 3, (dim, dim, dim), "table")
    gamma = doc.get("gamma")
    if gamma is not None:
        _expect(parse_scalar(gamma, "gamma") != 0, "gamma must be nonzero", "gamma")
    variant = doc.get("variant")
    if variant is not None:
        _expect(variant in ("split", "division"), "variant must be split|division", "variant")
    form = doc.get("form")
    if form is not None:
        _check_indices(form, 2, (dim, dim), "form")
    involution = doc.get("involution")
    if involution is not None:
        _check_indices(involution, 2, (dim, dim), "involution")
    embedding = doc.get("embedding")
    if embedding is not None:
        _expect(isinstance(embedding, list) and len(embedding) == 7,
                "embedding must have 7 rows", "embedding")
        for r, row in enumerate(embedding):
            _expect(isinstance(row, list) and len(row) == dim,
                    f"embedding row {r} must have dim coefficients", "embedding")
            for c in row:
                parse_scalar(c, field_name=f"embedding[{r}]")
    return AlgebraBundle(dim=dim, basis=list(basis), table=table, parity=parity,
                         gamma=gamma, variant=variant, form=form,
                         involution=involution, embedding=embedding)


def _load_module_bundle(doc: dict) -> ModuleBundle:
    acting_dim = doc.get("acting_dim")
    _expect(isinstance(acting_dim, int) and acting_dim > 0,
            "acting_dim must be a positive integer", "acting_dim")
    dim = doc.get("dim")
    _expect(isinstance(dim, int) and dim > 0, "dim must be a positive integer", "dim")
    basis = doc.get("basis")
    _expect(isinstance(basis, list) and len(basis) == dim
            and all(isinstance(b, str) for b in basis)
            and len(set(basis)) == dim,
            "basis must list dim distinct strings", "basis")
    parity = doc.get("parity")
    if parity is not None:
        _expect(isinstance(parity, list) and len(parity) == dim
                and all(p in (0, 1) for p in parity),
                "parity must list dim bits", "parity")
    action = doc.get("action", [])
    _check_indices(action, 3, (acting_dim, dim, dim), "action")
    return ModuleBundle(acting_dim=acting_dim, dim=dim, basis=list(basis),
                        action=action, parity=parity)


def dumps_bundle(bundle) -> str:
    if isinstance(bundle, AlgebraBundle):
        doc = {
            "format": FORMAT_TAG,
            "kind": "algebra",
            "dim": bundle.dim,
            "basis": list(bundle.basis),
            "table": _canonical_entries(bundle.table, 3),
        }
        if bundle.parity is not None and any(bundle.parity):
            doc["parity"] = list(bundle.parity)
        if bundle.gamma is not None:
            doc["gamma"] = format_scalar(parse_scalar(bundle.gamma, "gamma"))
        if bundle.variant is not None:
            doc["variant"] = bundle.variant
        if bundle.form is not None:
            doc["form"] = _canonical_entries(bundle.form, 2)
        if bundle.involution is not None:
            doc["involution"] = _canonical_entries(bundle.involution, 2)
        if bundle.embedding is not None:
            doc["embedding"] = [
                [format_scalar(parse_scalar(c, "embedding")) for c in row]
                for row in bundle.embedding
            ]
    elif isinstance(bundle, ModuleBundle):
        doc = {
            "format": FORMAT_TAG,
            "kind": "module",
            "acting_dim": bundle.acting_dim,
            "dim": bundle.dim,
            "basis": list(bundle.basis),
            "action": _canonical_entries(bundle.action, 3),
        }
        if bundle.parity is not None and any(bundle.parity):
            doc["parity"] = list(bundle.parity)
    else:
        raise TypeError(f"not a bundle: {bundle!r}")
    return json.dumps(doc, sort_keys=True, ensure_ascii=True,
                      separators=(",", ": "), indent=2) + "\n"


def _canonical_entries(entries, arity: int) -> list:
    out = []
    for entry in entries:
        coeff = parse_scalar(entry[arity], "entry")
        if coeff:
            out.append(list(entry[:arity]) + [format_scalar(coeff)])
    out.sort(key=lambda e: tuple(e[:arity]))
    return out


def read_bundle(path):
    return loads_bundle(Path(path).read_text(encoding="utf-8"))


def write_bundle(bundle, path):
    Path(path).write_text(dumps_bundle(bundle), encoding="utf-8")


# ---------------------------------------------------------------------------
# conversions


def algebra_to_bundle(a: Algebra, gamma=None, variant: str | None = None,
                      form: BilinearForm | None = None,
                      involution: Involution | None = None,
                      embedding: Embedding | None = None) -> AlgebraBundle:
    table = []
    for (i, j), entry in a.table_items():
        for k, c in entry:
            table.append([i, j, k, format_scalar(c)])
    bundle = AlgebraBundle(
        dim=a.dim,
        basis=list(a.labels),
        table=table,
        parity=list(a.parity) if a.is_graded else None,
        gamma=None if gamma is None else format_scalar(frac(gamma)),
        variant=variant,
    )
    if form is not None:
        bundle.form = [[i, j, format_scalar(c)]
                       for i, row in enumerate(form.gram)
                       for j, c in enumerate(row) if c]
    if involution is not None:
        bundle.involution = [[i, j, format_scalar(c)]
                             for i, row in enumerate(involution.matrix)
                             for j, c in enumerate(row) if c]
    if embedding is not None:
        bundle.embedding = [[format_scalar(c) for c in img.coeffs]
                            for img in embedding.images]
        bundle.variant = embedding.variant
        bundle.gamma = format_scalar(embedding.gamma)
    return bundle


def bundle_to_algebra(bundle: AlgebraBundle, name: str | None = None) -> Algebra:
    table: dict = {}
    for i, j, k, coeff in bundle.table:
        table.setdefault((i, j), {})[k] = parse_scalar(coeff, "table")
    try:
        return Algebra(bundle.basis, table, parity=bundle.parity, name=name)
    except Exception as exc:
        raise BundleFormatError(str(exc), field="table") from None


def bundle_to_form(bundle: AlgebraBundle, algebra: Algebra) -> BilinearForm:
    if bundle.form is None:
        raise BundleFormatError("bundle carries no form", field="form")
    gram = [[ZERO] * algebra.dim for _ in range(algebra.dim)]
    for i, j, coeff in bundle.form:
        gram[i][j] = parse_scalar(coeff, "form")
    return BilinearForm(algebra, gram)


def bundle_to_involution(bundle: AlgebraBundle, algebra: Algebra) -> Involution:
    if bundle.involution is None:
        raise BundleFormatError("bundle carries no involution", field="involution")
    matrix = [[ZERO] * algebra.dim for _ in range(algebra.dim)]
    for i, j, coeff in bundle.involution:
        matrix[i][j] = parse_scalar(coeff, "involution")
    return Involution(algebra, matrix)


def bundle_to_embedding(bundle: AlgebraBundle, algebra: Algebra) -> Embedding:
    if bundle.embedding is None:
        raise BundleFormatError("bundle carries no embedding", field="embedding")
    images = [algebra.element([parse_scalar(c, "embedding") for c in row])
              for row in bundle.embedding]
    variant = bundle.variant or "split"
    gamma = parse_scalar(bundle.gamma, "gamma") if bundle.gamma else Fraction(-1)
    return Embedding(algebra, images, variant=variant, gamma=gamma)


def module_to_bundle(rep: Representation) -> ModuleBundle:
    action = []
    for t, mat in enumerate(rep.matrices):
        for i, row in enumerate(mat):
            for j, c in enumerate(row):
                if c:
                    action.append([t, i, j, format_scalar(c)])
    return ModuleBundle(
        acting_dim=rep.acting.dim,
        dim=rep.carrier_dim,
        basis=list(rep.carrier_labels),
        action=action,
        parity=list(rep.carrier_parity) if any(rep.carrier_parity) else None,
    )


def bundle_to_module(bundle: ModuleBundle, acting: Algebra) -> Representation:
    if bundle.acting_dim != acting.dim:
        raise BundleFormatError(
            f"module expects acting dimension {bundle.acting_dim}, got {acting.dim}",
            field="acting_dim",
        )
    mats = [[[ZERO] * bundle.dim for _ in range(bundle.dim)]
            for _ in range(acting.dim)]
    for t, i, j, coeff in bundle.action:
        mats[t][i][j] = parse_scalar(coeff, "action")
    return Representation(acting, mats, carrier_parity=bundle.parity,
                          carrier_labels=bundle.basis)
