"""System files and polynomial expressions.

Text format, one directive per line (``#`` starts a comment)::

    n 3
    m 4
    P 3 0 -1          # i j coefficient: -x^3
    P = -(x - y)*(x^2 - x*y + y^2)
    R 4 0 2
    lines -1, -2
    parity even
    max_cofactor_degree 2
    tol 1e-10

``P``, ``Q`` and ``R`` may be given as monomial triples, as an expression
after ``=``, or both (the parts are added).  Coefficients are rationals
written ``p/q``.  A JSON object with the same keys is accepted as well;
there ``P, Q, R`` are lists of ``[i, j, "p/q"]`` triples or expression
strings.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .algebra import BiPoly, X, Y
from .errors import ParseError
from .trig import SystemSpec

__all__ = ["SpecFile", "parse_polynomial", "parse_spec", "load_spec", "parse_rational"]


def parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not a rational number: {text!r}") from None


# ---------------------------------------------------------------------------
# expressions

_SUPERSCRIPTS = str.maketrans({"²": "^2", "³": "^3", "⁴": "^4", "⁵": "^5",
                               "−": "-", "·": "*"})
_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*/^()])|([xy]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    text = text.translate(_SUPERSCRIPTS)
    pos, out = 0, []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        mt = _TOKEN.match(text, pos)
        if not mt:
            raise ParseError(f"unexpected character {text[pos:].strip()[0]!r} in {text!r}")
        num, op, var = mt.groups()
        if num is not None:
            out.append(("num", num))
        elif var is not None:
            out.append(("var", var))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = mt.end()
    return out


class _Parser:
    """Recursive descent for ``+ - * / ^``, parentheses, integers, x and y.

    Juxtaposition such as ``2x`` or ``x(y+1)`` means multiplication.
    Division is only allowed by a constant.
    """

    def __init__(self, text: str):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, value=None):
        tok = self.peek()
        if tok[0] is None or (value is not None and tok[1] != value):
            raise ParseError(f"expected {value or 'a term'} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self) -> BiPoly:
        if not self.toks:
            raise ParseError("empty expression")
        out = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"unexpected {self.peek()[1]!r} in {self.text!r}")
        return out

    def expr(self) -> BiPoly:
        out = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            out = out + rhs if op == "+" else out - rhs
        return out

    def term(self) -> BiPoly:
        out = self.unary()
        while True:
            kind, val = self.peek()
            if (kind, val) == ("op", "*"):
                self.take()
                out = out * self.unary()
            elif (kind, val) == ("op", "/"):
                self.take()
                den = self.unary()
                if den.degree > 0 or not den:
                    raise ParseError(f"division by a non-constant or zero in {self.text!r}")
                out = out * (1 / den.coeff(0, 0))
            elif kind in ("num", "var") or (kind, val) == ("op", "("):
                out = out * self.power()
            else:
                return out

    def unary(self) -> BiPoly:
        kind, val = self.peek()
        if (kind, val) == ("op", "-"):
            self.take()
            return -self.unary()
        if (kind, val) == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> BiPoly:
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a non-negative integer in {self.text!r}")
            return base ** int(val)
        return base

    def atom(self) -> BiPoly:
        kind, val = self.take()
        if kind == "num":
            return BiPoly.const(Fraction(int(val)))
        if kind == "var":
            return X if val == "x" else Y
        if val == "(":
            out = self.expr()
            self.take(")")
            return out
        raise ParseError(f"unexpected {val!r} in {self.text!r}")


def parse_polynomial(text: str) -> BiPoly:
    """Parse an expression in x and y with rational coefficients."""
    return _Parser(text).parse()


# ---------------------------------------------------------------------------
# system files


@dataclass
class SpecFile:
    n: int
    m: int
    P: BiPoly
    Q: BiPoly
    R: BiPoly
    lines: list[Fraction] = field(default_factory=list)
    parity: str | None = None
    max_cofactor_degree: int | None = None
    tol: float | None = None

    def system(self) -> SystemSpec:
        try:
            return SystemSpec(self.n, self.m, self.P, self.Q, self.R)
        except ValueError as exc:
            raise ParseError(str(exc)) from None


def _int(value, key) -> int:
    try:
        return int(str(value).strip())
    except ValueError:
        raise ParseError(f"{key} must be an integer, got {value!r}") from None


def _finish(fields: dict) -> SpecFile:
    for key in ("n", "m"):
        if key not in fields:
            raise ParseError(f"missing {key}")
    parity = fields.get("parity")
    if parity not in (None, "even", "odd"):
        raise ParseError(f"parity must be 'even' or 'odd', got {parity!r}")
    spec = SpecFile(
        n=fields["n"],
        m=fields["m"],
        P=fields.get("P", BiPoly()),
        Q=fields.get("Q", BiPoly()),
        R=fields.get("R", BiPoly()),
        lines=fields.get("lines", []),
        parity=parity,
        max_cofactor_degree=fields.get("max_cofactor_degree"),
        tol=fields.get("tol"),
    )
    spec.system()
    return spec


def _parse_lines(value) -> list[Fraction]:
    items = value if isinstance(value, list) else str(value).replace(",", " ").split()
    return [parse_rational(v) for v in items]


def _parse_text(text: str) -> SpecFile:
    fields: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(" ")
        rest = rest.strip()
        where = f"line {lineno}"
        if key in ("P", "Q", "R") or key[:1] in ("P", "Q", "R") and key[1:2] == "=":
            if key[1:2] == "=":
                key, rest = key[0], key[1:] + " " + rest
            poly = fields.get(key, BiPoly())
            if rest.startswith("="):
                fields[key] = poly + parse_polynomial(rest[1:])
                continue
            parts = rest.split()
            if len(parts) != 3:
                raise ParseError(f"{where}: expected '{key} i j coeff', got {raw.strip()!r}")
            i, j = _int(parts[0], key), _int(parts[1], key)
            if i < 0 or j < 0:
                raise ParseError(f"{where}: exponents must be non-negative")
            fields[key] = poly + BiPoly.monomial(i, j, parse_rational(parts[2]))
        elif key in ("n", "m", "max_cofactor_degree"):
            fields[key] = _int(rest, key)
        elif key == "lines":
            fields["lines"] = _parse_lines(rest)
        elif key == "parity":
            fields["parity"] = rest or None
        elif key == "tol":
            try:
                fields["tol"] = float(rest)
            except ValueError:
                raise ParseError(f"{where}: tol must be a number") from None
        else:
            raise ParseError(f"{where}: unknown directive {key!r}")
    return _finish(fields)


def _json_poly(value, key) -> BiPoly:
    if isinstance(value, str):
        return parse_polynomial(value)
    if not isinstance(value, list):
        raise ParseError(f"{key} must be a list of triples or an expression")
    out = BiPoly()
    for item in value:
        if not (isinstance(item, list) and len(item) == 3):
            raise ParseError(f"{key}: bad triple {item!r}")
        i, j = _int(item[0], key), _int(item[1], key)
        out = out + BiPoly.monomial(i, j, parse_rational(item[2]))
    return out


def _parse_json(text: str) -> SpecFile:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    if not isinstance(data, dict):
        raise ParseError("JSON spec must be an object")
    fields: dict = {}
    for key, value in data.items():
        if key in ("P", "Q", "R"):
            fields[key] = _json_poly(value, key)
        elif key in ("n", "m", "max_cofactor_degree"):
            fields[key] = _int(value, key)
        elif key == "lines":
            fields[key] = _parse_lines(value)
        elif key == "parity":
            fields[key] = value
        elif key == "tol":
            fields[key] = float(value)
        else:
            raise ParseError(f"unknown key {key!r}")
    return _finish(fields)


def parse_spec(text: str) -> SpecFile:
    return _parse_json(text) if text.lstrip().startswith("{") else _parse_text(text)


def load_spec(path) -> SpecFile:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    return parse_spec(text)
