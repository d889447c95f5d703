"""Tiny polynomial mini-language for the CLI.

Grammar (whitespace-insensitive): terms joined by + or -, each term
  [coeff *] x [^ exponent]   or a bare integer constant.
Exponents are plain integers or p-power macros such as  p^2,  p^0+p^4,
(p^0+p^2)*p^3.  Coefficients are integer element codes; a leading minus
negates in the field.
"""

from __future__ import annotations

import re

from .errors import PlanarLabError
from .fpoly import DOPoly, reduce_poly
from .gf import FieldCtx


class ParseError(PlanarLabError):
    pass


_EXP_MACRO = re.compile(r"^[0-9p^+*() ]+$")
_TERM = re.compile(
    r"^(?:(?P<coeff>\d+)\s*\*\s*)?x(?:\s*\^\s*(?P<exp>\(?[0-9p^+*()]+\)?))?$"
    r"|^(?P<const>\d+)$"
)


def eval_exponent(expr: str, p: int) -> int:
    expr = expr.strip()
    if not _EXP_MACRO.match(expr):
        raise ParseError(f"bad exponent {expr!r}")
    pythonic = expr.replace("^", "**")
    try:
        val = eval(pythonic, {"__builtins__": {}}, {"p": p})
    except Exception as exc:
        raise ParseError(f"bad exponent {expr!r}: {exc}") from None
    if not isinstance(val, int) or val < 0:
        raise ParseError(f"exponent {expr!r} is not a non-negative integer")
    return val


def _split_terms(src: str) -> list[tuple[int, str]]:
    """Sign/term pairs; a leading sign is optional."""
    src = src.strip()
    if not src:
        raise ParseError("empty polynomial")
    out = []
    sign = 1
    buf = ""
    depth = 0
    if src[0] in "+-":
        sign = -1 if src[0] == "-" else 1
        src = src[1:]
    for ch in src:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch in "+-" and depth == 0:
            out.append((sign, buf))
            sign = -1 if ch == "-" else 1
            buf = ""
        else:
            buf += ch
    out.append((sign, buf))
    return out


def parse_poly(field: FieldCtx, src: str) -> DOPoly:
    raw = []
    for sign, term in _split_terms(src):
        m = _TERM.match(term.strip())
        if not m:
            raise ParseError(f"bad term {term.strip()!r}")
        if m.group("const") is not None:
            c = int(m.group("const"))
            e = 0
        else:
            c = int(m.group("coeff")) if m.group("coeff") else 1
            e = eval_exponent(m.group("exp"), field.p) if m.group("exp") else 1
        if not 0 <= c < field.q:
            raise ParseError(f"coefficient {c} is not a code in [0, {field.q})")
        raw.append((e, c if sign > 0 else field.neg(c)))
    return reduce_poly(field, raw)


def canonical_form(poly: DOPoly) -> str:
    if not poly.spectrum:
        return "0"
    parts = []
    for e, c in sorted(poly.spectrum.items()):
        if e == 0:
            parts.append(str(c))
        elif c == 1:
            parts.append(f"x^{e}" if e != 1 else "x")
        else:
            parts.append(f"{c}*x^{e}" if e != 1 else f"{c}*x")
    return " + ".join(parts)
