"""Plain-text polynomial system files.

Format, one item per line::

    # comment
    vars: x1, x2          (optional; otherwise names are collected and
                           sorted naturally, x2 before x10)
    expect_components: 2  (optional metadata, any "key: value" line)
    x1^2 + x2^2 - 1       (one polynomial per line)

Expressions use integer literals, variable names, ``+ - * ^`` (``**`` also
accepted) and parentheses. Exponents are non-negative integer literals.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .polycore import MPoly
from .sysbuild import InputSystem


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.message = message
        self.line = line
        self.column = column


_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>\*\*|[-+*^()/]))"
)
_META = re.compile(r"^\s*([A-Za-z_][A-Za-z0-9_]*)\s*:(.*)$")


def _tokenize(text: str, lineno: int) -> List[Tuple[str, str, int]]:
    toks = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            col = len(text) - len(text[pos:].lstrip()) + 1
            raise ParseError(f"unexpected character {text[col - 1]!r}", lineno, col)
        kind = m.lastgroup
        val = m.group(kind)
        col = m.start(kind) + 1
        if kind == "num" and "." in val:
            raise ParseError(f"non-integer coefficient {val!r}", lineno, col)
        if kind == "op" and val == "/":
            raise ParseError("non-integer coefficient: division is not allowed", lineno, col)
        toks.append((kind, val, col))
        pos = m.end()
    toks.append(("end", "", len(text) + 1))
    return toks


class _Parser:
    def __init__(self, toks, lineno, ring, index):
        self.toks = toks
        self.k = 0
        self.lineno = lineno
        self.ring = ring
        self.index = index

    def peek(self):
        return self.toks[self.k]

    def take(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.lineno, tok[2])

    def parse(self) -> MPoly:
        f = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected {self.peek()[1]!r}")
        return f

    def expr(self) -> MPoly:
        f = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> MPoly:
        f = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            f = f * self.unary()
        return f

    def unary(self) -> MPoly:
        t = self.peek()
        if t[0] == "op" and t[1] in ("+", "-"):
            self.take()
            g = self.unary()
            return -g if t[1] == "-" else g
        return self.power()

    def power(self) -> MPoly:
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] in ("^", "**"):
            self.take()
            e = self.take()
            if e[0] != "num":
                self.error("exponent must be a non-negative integer literal", e)
            return base ** int(e[1])
        return base

    def atom(self) -> MPoly:
        t = self.take()
        if t[0] == "num":
            return MPoly.constant(self.ring, int(t[1]))
        if t[0] == "name":
            return MPoly.var(self.ring, self.index[t[1]])
        if t[0] == "op" and t[1] == "(":
            f = self.expr()
            c = self.take()
            if c[1] != ")":
                self.error("expected ')'", c)
            return f
        self.error("unexpected end of expression" if t[0] == "end" else f"unexpected {t[1]!r}", t)


def _natural_key(name: str):
    return [int(s) if s.isdigit() else s for s in re.split(r"(\d+)", name)]


@dataclass
class SystemFile:
    variables: Tuple[str, ...]
    polynomials: List[str]
    metadata: Dict[str, str] = field(default_factory=dict)
    polys: List[MPoly] = field(default_factory=list, repr=False)

    def to_input_system(self) -> InputSystem:
        return InputSystem.from_polys(self.polys)


def parse_system_file(text: str) -> SystemFile:
    declared: Optional[Tuple[str, ...]] = None
    metadata: Dict[str, str] = {}
    rows: List[Tuple[int, str, List]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        m = _META.match(line)
        if m:
            key, value = m.group(1), m.group(2).strip()
            if key == "vars":
                names = tuple(v.strip() for v in value.split(",") if v.strip())
                if len(set(names)) != len(names):
                    raise ParseError("duplicate variable names", lineno, line.index(":") + 2)
                declared = names
            else:
                metadata[key] = value
            continue
        rows.append((lineno, line.rstrip(), _tokenize(line.rstrip(), lineno)))
    if not rows:
        raise ParseError("no polynomials in input", 1, 1)
    seen = []
    for lineno, _, toks in rows:
        for kind, val, col in toks:
            if kind == "name" and val not in seen:
                if declared is not None and val not in declared:
                    raise ParseError(f"undeclared variable {val!r}", lineno, col)
                seen.append(val)
    variables = declared if declared is not None else tuple(sorted(seen, key=_natural_key))
    if not variables:
        raise ParseError("system has no variables", rows[0][0], 1)
    index = {v: k for k, v in enumerate(variables)}
    polys = []
    for lineno, line, toks in rows:
        f = _Parser(toks, lineno, variables, index).parse()
        if f.is_zero():
            raise ParseError("polynomial is identically zero", lineno, 1)
        polys.append(f)
    if len(polys) > len(variables):
        raise ParseError(
            f"{len(polys)} equations in {len(variables)} variables (need p <= n)", rows[-1][0], 1
        )
    return SystemFile(variables, [r[1].strip() for r in rows], metadata, polys)


def parse_system(text: str) -> InputSystem:
    return parse_system_file(text).to_input_system()


def format_system(F: InputSystem) -> str:
    lines = ["vars: " + ", ".join(F.ring)]
    lines += [str(f) for f in F.polys]
    return "\n".join(lines) + "\n"
