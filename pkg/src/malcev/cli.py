"""Command-line interface.

Reports stream to stdout as one JSON object per line (sorted keys, no
timing, so identical inputs give byte-identical output); a human summary
with timings goes to stderr.  Exit codes: 0 all checks passed, 1 a
mathematical check failed (witness emitted), 2 input or usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bundle as bundle_io
from .cayley import m7_division, m7_split
from .embeddings import check_annihilator_hypothesis, verify_embedding
from .errors import BundleFormatError, MalcevError
from .factorization import coordinatize_module, kronecker_factorize
from .involution import factorize_with_involution
from .modules import adjoint_restriction, decompose_into_irreducibles
from .reports import FAIL, PASS, Report
from .structure import grassmann_envelope, is_simple
from .verify import verify_h_variety, verify_malcev

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def _emit(report: Report, stream=None):
    stream = stream or sys.stdout
    stream.write(json.dumps(report.to_dict(), sort_keys=True,
                            ensure_ascii=True, separators=(",", ":")) + "\n")
    sys.stderr.write(f"{report.check}: {report.status}"
                     f" ({report.elapsed_ms:.1f} ms)\n")


def _load_algebra(path: str) -> tuple:
    doc = bundle_io.read_bundle(path)
    if not isinstance(doc, bundle_io.AlgebraBundle):
        raise BundleFormatError("expected an algebra bundle", field="kind")
    return doc, bundle_io.bundle_to_algebra(doc, name=path)


def _cmd_build(args) -> int:
    gamma = bundle_io.parse_scalar(args.gamma, "gamma")
    if args.variant == "split":
        algebra = m7_split()
        doc = bundle_io.algebra_to_bundle(algebra, variant="split")
    else:
        algebra = m7_division(gamma)
        doc = bundle_io.algebra_to_bundle(algebra, gamma=gamma, variant="division")
    text = bundle_io.dumps_bundle(doc)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _cmd_check(args) -> int:
    _, algebra = _load_algebra(args.file)
    run_malcev = args.malcev or not (args.malcev or args.h_variety or args.simple)
    failed = False
    if run_malcev:
        report = verify_malcev(algebra)
        _emit(report)
        failed |= not report.ok
    if args.h_variety:
        report = verify_h_variety(algebra)
        _emit(report)
        failed |= not report.ok
    if args.simple:
        simple = is_simple(algebra)
        report = Report("simple", PASS if simple else FAIL,
                        witness=None if simple else {"kind": "not-simple"},
                        details={"dim": algebra.dim})
        _emit(report)
        failed |= not simple
    return EXIT_CHECK_FAILED if failed else EXIT_OK


def _cmd_decompose(args) -> int:
    _, algebra = _load_algebra(args.file)
    edoc, ealg = _load_algebra(args.embedding)
    if args.embedding == args.file:
        ealg = algebra
    emb = bundle_io.bundle_to_embedding(edoc, ealg if ealg is algebra else algebra)
    rho = adjoint_restriction(algebra, emb)
    components = decompose_into_irreducibles(rho)
    report = Report("decompose", PASS, details={
        "components": len(components),
        "witnesses": [list(c.witness) for c in components],
        "parities": [c.parity for c in components],
    })
    _emit(report)
    return EXIT_OK


def _cmd_factorize(args) -> int:
    doc, algebra = _load_algebra(args.file)
    edoc, _ = _load_algebra(args.embedding)
    emb = bundle_io.bundle_to_embedding(edoc, algebra)
    for report in (verify_embedding(algebra, emb),
                   check_annihilator_hypothesis(algebra, emb)):
        _emit(report)
        if not report.ok:
            return EXIT_CHECK_FAILED
    if args.involution or args.form:
        if not (args.involution and args.form):
            raise BundleFormatError("--involution and --form go together")
        idoc, _ = _load_algebra(args.involution)
        sigma = bundle_io.bundle_to_involution(idoc, algebra)
        fdoc, _ = _load_algebra(args.form)
        form = bundle_io.bundle_to_form(fdoc, algebra)
        result, certificate = factorize_with_involution(algebra, emb, sigma, form)
        for rep in result.checks:
            _emit(rep)
        _emit(certificate)
        if not certificate.ok:
            return EXIT_CHECK_FAILED
    else:
        result = kronecker_factorize(algebra, emb)
        for rep in result.checks:
            _emit(rep)
    out = bundle_io.dumps_bundle(
        bundle_io.algebra_to_bundle(result.coordinate_algebra))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def _cmd_coordinatize(args) -> int:
    _, u = _load_algebra(args.u_file)
    wdoc = bundle_io.read_bundle(args.w_file)
    if not isinstance(wdoc, bundle_io.ModuleBundle):
        raise BundleFormatError("expected a module bundle", field="kind")
    w = bundle_io.bundle_to_module(wdoc, u)
    result = coordinatize_module(u, w)
    report = Report("coordinatize", PASS if result.split_extension_matches else FAIL,
                    details={
                        "carrier_dim": result.representation.carrier_dim,
                        "m7u_dim": result.m7_u.dim,
                        "split_extension_matches": result.split_extension_matches,
                    })
    _emit(report)
    if args.output:
        out = bundle_io.dumps_bundle(bundle_io.module_to_bundle(result.representation))
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    return EXIT_OK if report.ok else EXIT_CHECK_FAILED


def _cmd_envelope(args) -> int:
    _, algebra = _load_algebra(args.file)
    env = grassmann_envelope(algebra, args.generators)
    report = Report("envelope", PASS, details={
        "generators": args.generators,
        "dim": env.dim,
    })
    _emit(report)
    out = bundle_io.dumps_bundle(bundle_io.algebra_to_bundle(env))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="malcev",
        description="Exact toolkit for Malcev (super)algebras given by "
                    "structure constants.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="emit a reference algebra bundle")
    p.add_argument("what", choices=["m7"])
    p.add_argument("--variant", choices=["split", "division"], default="split")
    p.add_argument("--gamma", default="-1")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_build)

    p = sub.add_parser("check", help="run identity checks on a bundle")
    p.add_argument("file")
    p.add_argument("--malcev", action="store_true")
    p.add_argument("--h-variety", action="store_true")
    p.add_argument("--simple", action="store_true")
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("decompose", help="decompose the adjoint module")
    p.add_argument("file")
    p.add_argument("--embedding", required=True)
    p.set_defaults(fn=_cmd_decompose)

    p = sub.add_parser("factorize", help="recover the coordinate algebra")
    p.add_argument("file")
    p.add_argument("--embedding", required=True)
    p.add_argument("--involution")
    p.add_argument("--form")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_factorize)

    p = sub.add_parser("coordinatize", help="module for m7(U) from a U-module")
    p.add_argument("u_file")
    p.add_argument("w_file")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_coordinatize)

    p = sub.add_parser("envelope", help="Grassmann envelope of a graded bundle")
    p.add_argument("file")
    p.add_argument("--generators", type=int, default=2)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_envelope)
    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT_ERROR if exc.code else EXIT_OK
    try:
        return args.fn(args)
    except BundleFormatError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT_ERROR
    except FileNotFoundError as exc:
        sys.stderr.write(f"input error: {exc}\n")
        return EXIT_INPUT_ERROR
    except MalcevError as exc:
        witness = getattr(exc, "witness", None)
        report = Report(args.command, FAIL,
                        witness={"error": type(exc).__name__,
                                 "message": str(exc),
                                 "detail": witness if isinstance(witness, (dict, list)) else
                                 (list(witness) if isinstance(witness, tuple) else witness)})
        _emit(report)
        return EXIT_CHECK_FAILED


if __name__ == "__main__":
    sys.exit(main())
