"""Loaders for the worked-example data shipped in sixtwelve/data."""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Dict, List

from .ellcurve import WeierstrassCurve
from .modelfile import (ParseError, digits_checksum, parse_document, parse_flex, parse_matrix, parse_model,
                        parse_numbers, parse_point)

FILES = {
    "six_quartic": "six_quartic.txt",
    "six_cubic": "six_cubic.txt",
    "six_quadrics": "six_quadrics.txt",
    "six_substitution": "six_substitution.txt",
    "six_solution": "six_solution.txt",
    "six_matrix": "six_matrix.txt",
    "six_flex": "six_flex.txt",
    "twelve_curves": "twelve_curves.txt",
    "twelve_curve": "twelve_curve.txt",
    "twelve_cubic": "twelve_cubic.txt",
    "twelve_pair": "twelve_pair.txt",
    "twelve_solution": "twelve_solution.txt",
    "twelve_matrix": "twelve_matrix.txt",
    "twelve_integers": "twelve_integers.txt",
}


def path(name: str):
    return resources.files("sixtwelve") / "data" / FILES.get(name, name)


def text(name: str) -> str:
    return path(name).read_text()


def model(name: str):
    return parse_model(text(name))


def matrix(name: str) -> List[List[Fraction]]:
    return parse_matrix(parse_document(text(name)))


def point(name: str) -> List[Fraction]:
    doc = parse_document(text(name))
    return parse_point(doc.require("coords"), doc.line_of("coords"))


def curve(name: str = "twelve_curve"):
    doc = parse_document(text(name))
    E = WeierstrassCurve(*parse_numbers(doc.require("ainvs")))
    pts = [E.point(*parse_numbers(v, n)) for v, n in doc.all("point")]
    return E, pts


def curve_table(name: str = "twelve_curves"):
    rows = []
    for v, n in parse_document(text(name)).all("curve"):
        parts = [p.strip() for p in v.split("|")]
        if len(parts) != 4:
            raise ParseError("curve rows have four '|'-separated fields", n)
        rows.append({"conductor": int(parts[0]),
                     "ainvs": [int(a) for a in parts[1].split()],
                     "h1": float(parts[2]), "h2": float(parts[3])})
    return rows


@lru_cache(maxsize=None)
def integers(name: str = "twelve_integers") -> Dict[str, int]:
    doc = parse_document(text(name))
    out = {}
    for k, v, n in doc.entries:
        if k in ("kind",) or k.startswith("checksum_"):
            continue
        out[k] = int(v)
        want = doc.get("checksum_" + k)
        if want is not None and digits_checksum(out[k]) != want:
            raise ParseError(f"checksum mismatch for {k}", n)
    return out


def flex(name: str = "six_flex"):
    """(number field, flex point coordinates) of a flex fixture."""
    return parse_flex(text(name))
