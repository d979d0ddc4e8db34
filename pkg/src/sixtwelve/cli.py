"""Command line interface.

Exit codes: 0 success, 2 search found no points, 3 validation error,
4 internal error.
"""
from __future__ import annotations

import argparse
import logging
import os
import sys
from fractions import Fraction
from typing import List, Optional

from .combine import InvariantMismatchError, combine
from .ellcurve import NotOnCurveError, WeierstrassCurve, canonical_height
from .flex import FlexResult, NotAFlexError, check_flexmat, flexmat
from .minimise import minimise
from .modelfile import (ParseError, format_matrix, format_model, format_rational, parse_document,
                        parse_flex, parse_matrix, parse_numbers, parse_point, model_from_document)
from .models import GenusOneModel, ModelError, minors_map, normalize_point
from .quartic import DegenerateModelError
from .search import SearchConfig, SingularResidueError, point_search

EXIT_OK, EXIT_NO_POINTS, EXIT_INVALID, EXIT_INTERNAL = 0, 2, 3, 4

log = logging.getLogger("sixtwelve")


class ValidationError(Exception):
    pass


def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise ValidationError(f"{path}: {exc.strerror}") from None


def load_model(path):
    """(model, jacobian invariants or None) from a model file."""
    doc = parse_document(_read(path))
    model = model_from_document(doc)
    jac = doc.get("jacobian")
    jac = tuple(parse_numbers(jac, doc.line_of("jacobian"))) if jac else None
    if jac is not None and len(jac) != 2:
        raise ParseError("jacobian takes c4 and c6", doc.line_of("jacobian"))
    return model, jac


def _emit(text, out):
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _with_jacobian(model, jac):
    text = format_model(model)
    if jac is not None:
        text += "jacobian: " + " ".join(format_rational(c) for c in jac) + "\n"
    return text


def _jacobian_of(model, jac):
    if model.degree <= 4:
        return model.invariants()
    return jac


# ---------------------------------------------------------------------------

def cmd_invariants(args):
    model, jac = load_model(args.model)
    inv = _jacobian_of(model, jac)
    if inv is None:
        raise ValidationError("degree 6 and 12 files need a 'jacobian:' line")
    c4, c6 = (Fraction(c) for c in inv)
    disc = (c4 ** 3 - c6 ** 2) / 1728
    print(f"degree: {model.degree}")
    print(f"c4: {format_rational(c4)}")
    print(f"c6: {format_rational(c6)}")
    print(f"discriminant: {format_rational(disc)}")
    if disc == 0:
        print("degenerate: yes")
        return EXIT_INVALID
    print("degenerate: no")
    return EXIT_OK


def _load_flex(path, down: GenusOneModel) -> FlexResult:
    K, coords = parse_flex(_read(path))
    return flexmat(down, coords)


def cmd_combine(args):
    up, _ = load_model(args.up)
    down, _ = load_model(args.down)
    want = {6: (2, 3), 12: (3, 4)}[args.degree]
    if (up.degree, down.degree) != want:
        raise ValidationError(f"degree {args.degree} needs up/down models of degrees {want}")
    flex = _load_flex(args.flex, down)
    bundle = combine(up, down, flex=flex, sign=args.sign)
    _emit(_with_jacobian(bundle.model, down.invariants()), args.out)
    return EXIT_OK


def cmd_minimise(args):
    model, jac = load_model(args.model)
    primes = [int(p) for p in args.primes.split(",")] if args.primes else None
    if primes is None and model.degree > 4 and jac is None:
        raise ValidationError("give --primes or a 'jacobian:' line in the model file")
    new, logbook = minimise(model, primes, jacobian=jac)
    _emit(_with_jacobian(new, jac), args.out)
    if args.log:
        with open(args.log, "w") as fh:
            fh.write(logbook.to_text())
    return EXIT_OK


def cmd_search(args):
    model, jac = load_model(args.model)
    if model.degree < 4:
        raise ValidationError("search works on quadric models (degree 4, 6 or 12)")
    primes = tuple(int(p) for p in args.primes.split(",")) if args.primes else ()
    cfg = SearchConfig(args.bound, primes, args.lift_exponent, args.threads, args.checkpoint)

    def progress(done, total):
        if args.progress:
            print(f"progress {done}/{total}", file=sys.stderr)

    found = point_search(model, cfg, progress=progress)
    for fp in found:
        print("point: " + " ".join(str(v) for v in fp.coords))
    return EXIT_OK if found else EXIT_NO_POINTS


def _point_arg(s: str, model: GenusOneModel):
    """Coordinates from the command line, or a file with coords: or row: lines.

    A matrix whose 2x2 (3x3) minors give a point of a degree 3 (4) model is
    accepted and mapped through its minors.
    """
    if os.path.exists(s):
        doc = parse_document(_read(s))
        if doc.get("coords") is not None:
            return parse_point(doc.require("coords"), doc.line_of("coords"))
        rows = parse_matrix(doc)
        if model.degree in (3, 4) and len(rows) == model.degree - 1 \
                and len(rows[0]) == model.degree:
            return minors_map(rows, model.degree - 1)
        return [x for r in rows for x in r]
    return parse_point(s.replace(",", " "))


def cmd_verify(args):
    model, jac = load_model(args.model)
    if model.degree <= 4:
        c4, c6 = model.invariants()
        if Fraction(c4) ** 3 == Fraction(c6) ** 2:
            print("degenerate: yes")
            return EXIT_INVALID
    if args.point is None:
        print("model: ok")
        return EXIT_OK
    pt = _point_arg(args.point, model)
    if len(pt) != model.nvars:
        raise ValidationError(f"point has {len(pt)} coordinates, model has {model.nvars} variables")
    if not model.contains(pt):
        print("on model: no")
        return EXIT_INVALID
    print("on model: yes")
    return EXIT_OK


def cmd_height(args):
    ainvs = parse_numbers(args.curve)
    if len(ainvs) != 5:
        raise ValidationError("--curve takes a1 a2 a3 a4 a6")
    xy = parse_numbers(args.point)
    if len(xy) != 2:
        raise ValidationError("--point takes x,y")
    E = WeierstrassCurve(*ainvs)
    P = E.point(*xy)
    print(f"{canonical_height(P):.{args.digits}f}")
    return EXIT_OK


# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    """Usage errors exit with the validation code; argparse's own 2 means no points here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def build_parser():
    ap = _Parser(prog="sixtwelve", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="c4, c6 and discriminant of a model")
    p.add_argument("model")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("combine", help="build a 6- or 12-covering")
    p.add_argument("--degree", type=int, choices=(6, 12), required=True)
    p.add_argument("--up", required=True, help="2-covering (degree 6) or 3-covering (degree 12)")
    p.add_argument("--down", required=True, help="3-covering (degree 6) or 4-covering (degree 12)")
    p.add_argument("--flex", required=True, help="flex point file for the down model")
    p.add_argument("--sign", type=int, choices=(1, -1), default=1)
    p.add_argument("--out")
    p.set_defaults(func=cmd_combine)

    p = sub.add_parser("minimise", help="minimise and reduce a quadric model")
    p.add_argument("model")
    p.add_argument("--primes", help="comma separated; default: 2, 3 and primes of bad reduction")
    p.add_argument("--out")
    p.add_argument("--log", help="write the transformation log here")
    p.set_defaults(func=cmd_minimise)

    p = sub.add_parser("search", help="p-adic lattice point search")
    p.add_argument("model")
    p.add_argument("--bound", type=int, required=True, help="largest absolute coordinate")
    p.add_argument("--primes", help="one prime or two comma separated primes")
    p.add_argument("--lift-exponent", type=int, help="even k: lattices work modulo p^k")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--checkpoint", help="JSON file of finished residues, resumed if present")
    p.add_argument("--progress", action="store_true")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("verify", help="check a model, or that a point lies on it")
    p.add_argument("model")
    p.add_argument("--point", help="coordinates, or a file with coords: or row: lines")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("height", help="canonical height of a point")
    p.add_argument("--curve", required=True, help="a1 a2 a3 a4 a6")
    p.add_argument("--point", required=True, help="x,y (write --point=-1,2 for a negative x)")
    p.add_argument("--digits", type=int, default=4)
    p.set_defaults(func=cmd_height)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (ValidationError, ParseError, ModelError, DegenerateModelError, NotAFlexError,
            InvariantMismatchError, NotOnCurveError, SingularResidueError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        log.exception("internal error")
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
