"""Line-oriented text format for models, matrices, points and curves.

A document is a sequence of ``key: value`` lines; ``#`` starts a comment.
Keys may repeat (``quadric:``, ``row:``).  Example::

    kind: quadric_list
    degree: 6
    shape: 2x3
    quadric: x1*x4 + 2*x2*x3 - x6^2
    ...

Matrix-shaped models use the variables x1..xN in row-major order.
Cubics may also be written in x, y, z.
"""
from __future__ import annotations

import hashlib
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .cubic import CUBIC_MONOMIALS, TernaryCubic
from .exact import MultiPoly
from .exact.fields import NumberField
from .models import GenusOneModel, QUADRIC_COUNT, SHAPES, quadric_monomials
from .quartic import BinaryQuartic

KINDS = {"quartic": 2, "cubic": 3, "quadric_pair": 4, "quadric_list": None}


class ParseError(ValueError):
    def __init__(self, msg, line: Optional[int] = None):
        self.line = line
        super().__init__(f"line {line}: {msg}" if line else msg)


@dataclass
class Document:
    entries: List[Tuple[str, str, int]] = field(default_factory=list)

    def get(self, key, default=None):
        for k, v, _ in self.entries:
            if k == key:
                return v
        return default

    def all(self, key) -> List[Tuple[str, int]]:
        return [(v, n) for k, v, n in self.entries if k == key]

    def line_of(self, key) -> Optional[int]:
        return next((n for k, _, n in self.entries if k == key), None)

    def require(self, key) -> str:
        v = self.get(key)
        if v is None:
            last = self.entries[-1][2] if self.entries else 0
            raise ParseError(f"missing field '{key}'", last + 1)
        return v


def parse_document(text: str) -> Document:
    doc = Document()
    for n, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise ParseError(f"expected 'key: value', got {line!r}", n)
        k, v = line.split(":", 1)
        k = k.strip()
        if not re.fullmatch(r"[a-z_0-9]+", k):
            raise ParseError(f"bad key {k!r}", n)
        doc.entries.append((k, v.strip(), n))
    return doc


# ---------------------------------------------------------------------------
# scalars and polynomials

def parse_rational(tok: str, line=None) -> Fraction:
    try:
        return Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {tok!r}", line) from None


def parse_numbers(s: str, line=None) -> List[Fraction]:
    return [parse_rational(t, line) for t in s.replace(",", " ").split()]


def format_rational(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")
_LETTERS = {"x": 0, "y": 1, "z": 2}


def parse_poly(s: str, nvars: int, line=None) -> MultiPoly:
    """Sums of terms like 3*x1*x2^2, -x4, 7/2, 2x1x3; x, y, z mean x1, x2, x3."""
    s = s.replace(" ", "")
    if not s:
        raise ParseError("empty polynomial", line)
    terms: Dict[tuple, Fraction] = {}
    pos = 0
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse polynomial near {s[pos:]!r}", line)
        sign = -1 if m.group(1) == "-" else 1
        body = m.group(2)
        pos = m.end()
        coeff = Fraction(sign)
        e = [0] * nvars
        for tok in re.findall(r"\d+/\d+|\d+|x\d+(?:\^\d+)?|[xyz](?:\^\d+)?|\*|.", body):
            if tok == "*":
                continue
            if re.fullmatch(r"\d+/\d+|\d+", tok):
                coeff *= Fraction(tok)
                continue
            mm = re.fullmatch(r"x(\d+)(?:\^(\d+))?", tok)
            if mm:
                i = int(mm.group(1)) - 1
                k = int(mm.group(2) or 1)
            else:
                mm = re.fullmatch(r"([xyz])(?:\^(\d+))?", tok)
                if not mm:
                    raise ParseError(f"unexpected token {tok!r}", line)
                i = _LETTERS[mm.group(1)]
                k = int(mm.group(2) or 1)
            if not 0 <= i < nvars:
                raise ParseError(f"variable index out of range in {tok!r}", line)
            e[i] += k
        key = tuple(e)
        terms[key] = terms.get(key, 0) + coeff
    return MultiPoly(nvars, terms)


def format_poly(p: MultiPoly, monomials=None) -> str:
    mons = monomials if monomials is not None else p.monomials("grlex")
    parts = []
    for e in mons:
        c = p.coeff(e)
        if c == 0:
            continue
        c = Fraction(c)
        mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
        mag = abs(c)
        if mono:
            body = mono if mag == 1 else f"{format_rational(mag)}*{mono}"
        else:
            body = format_rational(mag)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts) if parts else "0"


# ---------------------------------------------------------------------------
# models

def parse_model(text: str) -> GenusOneModel:
    doc = parse_document(text)
    return model_from_document(doc)


def model_from_document(doc: Document) -> GenusOneModel:
    kind = doc.require("kind")
    kline = doc.line_of("kind")
    if kind not in KINDS:
        raise ParseError(f"unknown model kind {kind!r}", kline)
    deg_s = doc.get("degree")
    degree = int(deg_s) if deg_s is not None else KINDS[kind]
    if KINDS[kind] is not None and degree != KINDS[kind]:
        raise ParseError(f"kind {kind} has degree {KINDS[kind]}", doc.line_of("degree"))
    integral = doc.get("integral", "no") == "yes"
    if kind == "quartic":
        cs = _coeff_line(doc, 5)
        model = GenusOneModel(2, BinaryQuartic(*cs))
    elif kind == "cubic":
        if doc.get("coeffs") is not None:
            cs = _coeff_line(doc, 10)
            model = GenusOneModel(3, TernaryCubic(tuple(cs)))
        else:
            v, n = _single(doc, "equation")
            p = parse_poly(v, 3, n)
            if not p.is_homogeneous(3):
                raise ParseError("cubic equation is not homogeneous of degree 3", n)
            model = GenusOneModel(3, TernaryCubic.from_poly(p))
    else:
        if kind == "quadric_pair":
            degree, nv, count = 4, 4, 2
        else:
            if degree not in SHAPES:
                raise ParseError("quadric_list models have degree 6 or 12", doc.line_of("degree"))
            r, c = SHAPES[degree]
            shape = doc.get("shape")
            if shape is not None and shape != f"{r}x{c}":
                raise ParseError(f"degree {degree} needs shape {r}x{c}", doc.line_of("shape"))
            nv, count = r * c, QUADRIC_COUNT[degree]
        qs = []
        for v, n in doc.all("quadric"):
            q = parse_poly(v, nv, n)
            if q and not q.is_homogeneous(2):
                raise ParseError("quadric is not homogeneous of degree 2", n)
            qs.append(q)
        if len(qs) != count:
            last = doc.entries[-1][2] if doc.entries else 0
            raise ParseError(f"expected {count} quadrics, found {len(qs)}", last)
        model = GenusOneModel(degree, qs)
    if integral and not model.is_integral():
        raise ParseError("model is marked integral but has non-integral coefficients", doc.line_of("integral"))
    return model


def _single(doc, key):
    vals = doc.all(key)
    if len(vals) != 1:
        last = doc.entries[-1][2] if doc.entries else 0
        raise ParseError(f"expected exactly one '{key}' line", vals[1][1] if vals else last + 1)
    return vals[0]


def _coeff_line(doc, count):
    v, n = _single(doc, "coeffs")
    cs = parse_numbers(v, n)
    if len(cs) != count:
        raise ParseError(f"expected {count} coefficients, found {len(cs)}", n)
    return cs


def format_model(model: GenusOneModel) -> str:
    out = []
    if model.degree == 2:
        out += ["kind: quartic", "degree: 2",
                "coeffs: " + " ".join(format_rational(c) for c in model.payload.coeffs)]
    elif model.degree == 3:
        out += ["kind: cubic", "degree: 3",
                "coeffs: " + " ".join(format_rational(c) for c in model.payload.coeffs)]
    else:
        kind = "quadric_pair" if model.degree == 4 else "quadric_list"
        out += [f"kind: {kind}", f"degree: {model.degree}"]
        if model.degree in SHAPES:
            r, c = SHAPES[model.degree]
            out.append(f"shape: {r}x{c}")
        mons = quadric_monomials(model.nvars)
        out += ["quadric: " + format_poly(q, mons) for q in model.payload]
    if model.is_integral():
        out.append("integral: yes")
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# matrices, points, curves, number fields and flex points

def parse_matrix(doc: Document) -> List[List[Fraction]]:
    rows = [parse_numbers(v, n) for v, n in doc.all("row")]
    if not rows:
        raise ParseError("matrix has no rows")
    if any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("rows have different lengths", doc.all("row")[-1][1])
    return rows


def format_matrix(rows, kind="matrix") -> str:
    return f"kind: {kind}\n" + "".join("row: " + " ".join(format_rational(x) for x in r) + "\n"
                                       for r in rows)


def parse_point(s: str, line=None) -> List[Fraction]:
    return parse_numbers(s.replace(":", " "), line)


def parse_field(doc: Document) -> Optional[NumberField]:
    v = doc.get("field")
    if v is None:
        return None
    return NumberField(parse_numbers(v, doc.line_of("field")))


def parse_flex(text: str):
    """Flex point document: optional field block and one flex_coord line per coordinate."""
    doc = parse_document(text)
    K = parse_field(doc)
    coords = []
    for v, n in doc.all("flex_coord"):
        nums = parse_numbers(v, n)
        if K is None:
            if len(nums) != 1:
                raise ParseError("rational flex coordinates take one number", n)
            coords.append(nums[0])
        else:
            if len(nums) != K.degree:
                raise ParseError(f"expected {K.degree} power-basis coordinates", n)
            coords.append(K(nums))
    if not coords:
        raise ParseError("no flex_coord lines")
    return K, coords


def format_flex(K: Optional[NumberField], coords) -> str:
    out = ["kind: flex"]
    if K is not None:
        out.append("field: " + " ".join(format_rational(c) for c in K.minpoly))
        for x in coords:
            out.append("flex_coord: " + " ".join(format_rational(c) for c in K(x).coords))
    else:
        out += ["flex_coord: " + format_rational(x) for x in coords]
    return "\n".join(out) + "\n"


def digits_checksum(value: int) -> str:
    return hashlib.sha256(str(value).encode()).hexdigest()[:16]
