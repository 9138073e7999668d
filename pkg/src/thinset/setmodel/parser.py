"""Recursive-descent parser for set expressions.

    expr := name [ '(' int (',' int)* ')' ]
          | 'union(' expr (',' expr)+ ')'
          | 'inter(' expr ',' expr ')'
          | 'diff(' expr ',' expr ')'
          | 'blocks(' name [ '(' args ')' ] ')'
          | '{' int (',' int)* '}'
"""
from __future__ import annotations

import re

from ..errors import ParameterError, ParseError, UnknownNameError
from . import catalog
from .exprs import BlockFamily, Difference, Explicit, Intersection, SetExpr, Union

_TOKEN = re.compile(r"\s*(?:(?P<int>-?\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<punct>[(),{}]))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None, value=None, expected=()):
        tok = self.peek()
        if (kind and tok[0] != kind) or (value and tok[1] != value):
            shown = repr(tok[1]) if tok[0] != "end" else "end of input"
            raise ParseError(f"unexpected {shown}", tok[2], expected or (value or kind,))
        self.i += 1
        return tok

    def expr(self) -> SetExpr:
        tok = self.peek()
        if tok[0] == "punct" and tok[1] == "{":
            return self.explicit()
        if tok[0] != "name":
            self.take("name", expected=("name", "'{'"))
        name = tok[1]
        self.i += 1
        if name in ("union", "inter", "diff"):
            return self.combinator(name)
        if name == "blocks":
            self.take("punct", "(")
            inner = self.take("name", expected=("block family name",))
            params = self.args() if self.peek()[1] == "(" else ()
            self.take("punct", ")", expected=("')'",))
            entry = catalog.CATALOG.get(inner[1])
            if entry is None:
                raise UnknownNameError(f"unknown catalog name {inner[1]!r} at position {inner[2]}")
            if entry.kind != "blocks":
                raise ParameterError(f"{inner[1]!r} is not a block family")
            expr = catalog.build(inner[1], params)
            assert isinstance(expr, BlockFamily)
            return expr
        params = self.args() if self.peek()[1] == "(" else ()
        if name not in catalog.CATALOG:
            raise UnknownNameError(f"unknown catalog name {name!r} at position {tok[2]}")
        return catalog.build(name, params)

    def args(self):
        self.take("punct", "(")
        if self.peek()[1] == ")":
            self.i += 1
            return ()
        values = [int(self.take("int", expected=("integer",))[1])]
        while self.peek()[1] == ",":
            self.i += 1
            values.append(int(self.take("int", expected=("integer",))[1]))
        self.take("punct", ")", expected=("','", "')'"))
        return tuple(values)

    def combinator(self, name):
        self.take("punct", "(", expected=("'('",))
        members = [self.expr()]
        while self.peek()[1] == ",":
            self.i += 1
            members.append(self.expr())
        close = self.take("punct", ")", expected=("','", "')'"))
        if name == "union":
            if len(members) < 2:
                raise ParseError("union needs at least two members", close[2])
            return Union(tuple(members))
        if len(members) != 2:
            raise ParseError(f"{name} takes exactly two members", close[2])
        cls = Intersection if name == "inter" else Difference
        return cls(members[0], members[1])

    def explicit(self):
        self.take("punct", "{")
        values = []
        while True:
            tok = self.take("int", expected=("integer",))
            v = int(tok[1])
            if v < 1:
                raise ParameterError(f"explicit elements must be positive, got {v} at position {tok[2]}")
            values.append(v)
            if self.peek()[1] == ",":
                self.i += 1
                continue
            self.take("punct", "}", expected=("','", "'}'"))
            break
        return Explicit(tuple(sorted(set(values))))


def parse_set_expr(text: str) -> SetExpr:
    p = _Parser(text)
    expr = p.expr()
    p.take("end", expected=("end of input",))
    return expr
