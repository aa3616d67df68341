"""Text format for polynomials and presentations.

Presentation files::

    # comment
    points 2
    gen x : 1 -> 2
    gen y : 2 -> 1
    rel x*y*x - 2/3*x
    maxdeg 4

A polynomial is a sum of terms joined by ``+``/``-``; a term is a
``*``-separated product of rational coefficients, generator names and
idempotents ``e_i``.  A bare coefficient stands for that multiple of the
unit ``e_1 + ... + e_r``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .algebra import AlgebraSignature, NCPoly, make_signature, _IDEMPOTENT_RE
from .errors import ParseError

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*]))"
)


def _normalize(text: str) -> str:
    return text.replace("−", "-").replace("·", "*")


def _tokenize(text: str, line, col0):
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", line, col0 + bad + 1)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), col0 + start + 1))
        pos = m.end()
    return tokens


def parse_poly(text: str, sig: AlgebraSignature, line=None, col0: int = 0) -> NCPoly:
    """Parse a polynomial; ``line``/``col0`` locate ``text`` inside a file for diagnostics."""
    text = _normalize(text)
    tokens = _tokenize(text, line, col0)
    if not tokens:
        raise ParseError("empty polynomial", line, col0 + 1)
    F = sig.field
    total = sig.zero()
    i = 0
    n = len(tokens)
    first = True
    while i < n:
        sign = 1
        kind, val, col = tokens[i]
        if kind == "op" and val in "+-":
            sign = -1 if val == "-" else 1
            i += 1
        elif not first:
            raise ParseError(f"expected '+' or '-' before {val!r}", line, col)
        first = False
        if i >= n:
            raise ParseError("dangling sign at end of polynomial", line, tokens[-1][2])
        coeff = F(sign)
        word = None
        expect_factor = True
        while i < n:
            kind, val, col = tokens[i]
            if expect_factor:
                if kind == "num":
                    c = Fraction(val)
                    if c.denominator == 0:
                        raise ParseError("zero denominator", line, col)
                    coeff = coeff * F(c)
                    prev_num = True
                elif kind == "name":
                    prev_num = False
                    m = _IDEMPOTENT_RE.match(val)
                    try:
                        if m:
                            factor = sig.idempotent(int(m.group(1)))
                        else:
                            factor = sig.gen(val)
                    except (KeyError, ValueError) as exc:
                        raise ParseError(str(exc.args[0]), line, col) from None
                    word = factor if word is None else word * factor
                else:
                    raise ParseError(f"unexpected {val!r}", line, col)
                i += 1
                expect_factor = False
                continue
            if kind == "op" and val == "*":
                expect_factor = True
                i += 1
                continue
            if kind == "name" and prev_num:
                # "2 a*b": implicit product after a coefficient
                expect_factor = True
                continue
            break
        if expect_factor:
            col = tokens[i][2] if i < n else tokens[-1][2]
            raise ParseError("expected a factor", line, col)
        term = sig.one() if word is None else word
        total = total + term.scale(coeff)
    return total


def format_coeff(c, field) -> str:
    return field.format(c)


def format_poly(f: NCPoly) -> str:
    """Leading term first; output re-parses to the same polynomial."""
    if f.is_zero():
        return "0"
    sig = f.sig
    F = sig.field
    parts = []
    for k, (p, c) in enumerate(f.terms()):
        neg = c != 0 and _is_negative(c)
        a = -c if neg else c
        word = sig.path_str(p)
        if a == 1:
            body = word
        else:
            body = f"{format_coeff(a, F)}*{word}"
        if k == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def _is_negative(c) -> bool:
    try:
        return c < 0
    except TypeError:
        return False


# presentations

def _strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


_GEN_RE = re.compile(r"gen\s+(\S+)\s*:\s*(\S+)\s*->\s*(\S+)\s*$")


def parse_presentation(text: str, field=None):
    from .rewriting import Presentation

    r = None
    gens = []
    rels = []
    maxdeg = None
    for lineno, raw in enumerate(_normalize(text).splitlines(), start=1):
        line = _strip_comment(raw)
        stripped = line.strip()
        if not stripped:
            continue
        col = len(line) - len(line.lstrip()) + 1
        head = stripped.split(None, 1)[0]
        rest_col = line.index(head) + len(head)
        if head == "points":
            parts = stripped.split()
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                raise ParseError("expected 'points R' with R >= 1", lineno, col)
            if r is not None:
                raise ParseError("duplicate 'points' line", lineno, col)
            r = int(parts[1])
        elif head == "gen":
            m = _GEN_RE.match(stripped)
            if not m:
                raise ParseError("expected 'gen NAME : i -> j'", lineno, col)
            name, src, tgt = m.groups()
            if not (src.isdigit() and tgt.isdigit()):
                raise ParseError("point indices must be positive integers", lineno, col)
            gens.append((name, int(src), int(tgt), lineno, col))
        elif head == "rel":
            rels.append((line[rest_col:], lineno, rest_col))
        elif head == "maxdeg":
            parts = stripped.split()
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                raise ParseError("expected 'maxdeg N' with N >= 1", lineno, col)
            maxdeg = int(parts[1])
        else:
            raise ParseError(f"unknown directive {head!r}", lineno, col)
    if r is None:
        raise ParseError("missing 'points' line", 1, 1)
    specs = []
    for name, src, tgt, lineno, col in gens:
        try:
            make_signature(r, specs + [(name, src, tgt)])
        except ValueError as exc:
            raise ParseError(str(exc), lineno, col) from None
        specs.append((name, src, tgt))
    kwargs = {} if field is None else {"field": field}
    sig = make_signature(r, specs, **kwargs)
    relations = [parse_poly(body, sig, lineno, col0) for body, lineno, col0 in rels]
    if maxdeg is None:
        maxdeg = max([1] + [f.degree() for f in relations])
    return Presentation(sig, relations, maxdeg)


def format_presentation(pres) -> str:
    sig = pres.signature
    lines = [f"points {sig.r}"]
    for a in sig.arrows:
        lines.append(f"gen {a.name} : {a.source} -> {a.target}")
    for f in pres.relations:
        lines.append(f"rel {format_poly(f)}")
    lines.append(f"maxdeg {pres.truncation}")
    return "\n".join(lines) + "\n"
