"""Textual element syntax and weight configuration parsing.

Elements read and print as rational combinations of
`e[a1](m,n)`, `f[a1](m,n)`, `h[1](m,n)`, `c1`, `c2`, `d1`, `d2`,
e.g. `3/2*e[a1](1,-2) + h[2](0,3)`.  Root expressions inside brackets
are signed sums of simple roots such as `a1+2a2-a3`.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .algebra import C1, C2, D1, D2, DoubleAffine, Element, Sym, h_, x_
from .modules import Weight

_SPECIAL = {"c1": C1, "c2": C2, "d1": D1, "d2": D2}

_ROOT_TERM = re.compile(r"([+-]?)(\d*)a(\d+)")
_SYMBOL = re.compile(
    r"(?:(?P<kind>[efh])\[(?P<arg>[^\]]+)\]\((?P<m>-?\d+),(?P<n>-?\d+)\))"
    r"|(?P<special>c1|c2|d1|d2)"
)


def parse_rational(text) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    if isinstance(text, float):
        frac = Fraction(text).limit_denominator(10 ** 9)
        if float(frac) != text:
            raise ValueError("float %r is not an exact rational" % text)
        return frac
    return Fraction(str(text).strip())


def parse_root(text: str, rank: int):
    coords = [0] * rank
    pos = 0
    text = text.replace(" ", "")
    while pos < len(text):
        match = _ROOT_TERM.match(text, pos)
        if not match:
            raise ValueError("bad root expression %r" % text)
        sign = -1 if match.group(1) == "-" else 1
        mult = int(match.group(2)) if match.group(2) else 1
        idx = int(match.group(3))
        if not 1 <= idx <= rank:
            raise ValueError("simple root index %d out of range" % idx)
        coords[idx - 1] += sign * mult
        pos = match.end()
    return tuple(coords)


def format_root(coords) -> str:
    parts = []
    for i, c in enumerate(coords):
        if not c:
            continue
        mag = abs(c)
        term = ("" if mag == 1 else str(mag)) + "a%d" % (i + 1)
        parts.append(("-" if c < 0 else ("+" if parts else "")) + term)
    return "".join(parts) or "0"


def parse_symbol(text: str, rank: int) -> Sym:
    match = _SYMBOL.fullmatch(text.strip())
    if not match:
        raise ValueError("bad symbol %r" % text)
    if match.group("special"):
        return _SPECIAL[match.group("special")]
    kind = match.group("kind")
    m, n = int(match.group("m")), int(match.group("n"))
    if kind == "h":
        idx = int(match.group("arg"))
        if not 1 <= idx <= rank:
            raise ValueError("Cartan index %d out of range" % idx)
        return h_(idx, m, n)
    coords = parse_root(match.group("arg"), rank)
    if kind == "f":
        coords = tuple(-c for c in coords)
    return x_(coords, m, n)


def format_symbol(s: Sym) -> str:
    if s.kind in _SPECIAL:
        return s.kind
    if s.kind == "h":
        return "h[%d](%d,%d)" % (s.tag[0], s.m, s.n)
    if sum(s.tag) < 0:
        return "f[%s](%d,%d)" % (format_root(tuple(-c for c in s.tag)), s.m, s.n)
    return "e[%s](%d,%d)" % (format_root(s.tag), s.m, s.n)


def _format_coeff(c: Fraction) -> str:
    return str(c)


def format_element(elem: Element) -> str:
    if not elem.terms:
        return "0"
    parts = []
    for s, c in elem.sorted_terms():
        body = format_symbol(s)
        mag = abs(c)
        piece = body if mag == 1 else "%s*%s" % (_format_coeff(mag), body)
        if not parts:
            parts.append(piece if c > 0 else "-" + piece)
        else:
            parts.append(("+ " if c > 0 else "- ") + piece)
    return " ".join(parts)


def parse_element(text: str, alg: DoubleAffine) -> Element:
    text = text.strip()
    if text == "0":
        return alg.element({})
    terms: dict = {}
    for chunk in _split_terms(text):
        sign, body = chunk
        coeff = Fraction(sign)
        if "*" in body:
            coeff_text, body = body.split("*", 1)
            coeff *= parse_rational(coeff_text)
        sym = parse_symbol(body, alg.rank)
        terms[sym] = terms.get(sym, Fraction(0)) + coeff
    return alg.element(terms)


def _split_terms(text: str):
    # split on top-level + and - (never inside brackets or parentheses)
    chunks = []
    sign, depth, cur = 1, 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if depth == 0 and ch in "+-" and cur and cur[-1] not in "([,*":
            chunks.append((sign, "".join(cur).strip()))
            sign, cur = (1 if ch == "+" else -1), []
            continue
        if not cur and ch in "+-":
            sign = 1 if ch == "+" else -1
            continue
        cur.append(ch)
    if "".join(cur).strip():
        chunks.append((sign, "".join(cur).strip()))
    return chunks


def format_vector(vec) -> str:
    if not vec.terms:
        return "0"
    parts = []
    for mono, c in vec.sorted_terms():
        body = (
            "v" if not mono else "*".join(format_symbol(s) for s in mono) + "*v"
        )
        mag = abs(c)
        piece = body if mag == 1 else "%s*%s" % (_format_coeff(mag), body)
        if not parts:
            parts.append(piece if c > 0 else "-" + piece)
        else:
            parts.append(("+ " if c > 0 else "- ") + piece)
    return " ".join(parts)


def vector_to_json(vec):
    return [
        {"coeff": str(c), "factors": [format_symbol(s) for s in mono]}
        for mono, c in vec.sorted_terms()
    ]


def parse_weight(doc, rank: int) -> Weight:
    """Weight from a config document: either a JSON string or a dict with
    keys h, c1, c2, d1, d2 and an optional eval table per node."""
    if isinstance(doc, str):
        doc = json.loads(doc)
    if not isinstance(doc, dict):
        raise ValueError("weight document must be a JSON object")
    h = [parse_rational(v) for v in doc.get("h", [0] * rank)]
    if len(h) != rank:
        raise ValueError("weight needs %d h-values" % rank)
    eval_points = {}
    for key, pairs in (doc.get("eval") or {}).items():
        eval_points[int(key)] = tuple(
            (parse_rational(a), int(w)) for a, w in pairs
        )
    loop_values = {}
    for key, val in (doc.get("loop") or {}).items():
        node_text, deg_text = str(key).split(",")
        loop_values[(int(node_text), int(deg_text))] = parse_rational(val)
    return Weight(
        h=tuple(h),
        c1=parse_rational(doc.get("c1", 0)),
        c2=parse_rational(doc.get("c2", 0)),
        d1=parse_rational(doc.get("d1", 0)),
        d2=parse_rational(doc.get("d2", 0)),
        eval_points=eval_points,
        loop_values=loop_values,
    )
