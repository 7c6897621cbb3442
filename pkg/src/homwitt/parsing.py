"""Recursive-descent parser for the small arithmetic grammar shared by scalars and Laurent polynomials.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := unary (('*'|'/') unary)*
    unary  := '-' unary | power
    power  := atom (('^'|'**') exponent)?
    atom   := INT | NAME | '(' expr ')'
    exponent := ['+'|'-'] INT | '(' ['+'|'-'] INT ')'

The parser is value-agnostic: atoms are resolved through callbacks and the
resulting objects only need ``+ - *`` and integer ``**``.
"""

import re

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            bad = pos + (len(text[pos:]) - len(text[pos:].lstrip()))
            raise ParseError(f"unexpected character {text[bad]!r}", bad)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            op = "^" if m.group(3) == "**" else m.group(3)
            tokens.append(("op", op, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, literal, resolve, divide):
        self.tokens = tokenize(text)
        self.i = 0
        self.literal = literal
        self.resolve = resolve
        self.divide = divide

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}", pos)

    def is_op(self, *ops):
        kind, val, _ = self.peek()
        return kind == "op" and val in ops

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0)
        value = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {val!r}", pos)
        return value

    def expr(self):
        negate = False
        if self.is_op("+", "-"):
            negate = self.take()[1] == "-"
        value = self.term()
        if negate:
            value = -value
        while self.is_op("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.is_op("*", "/"):
            op = self.take()[1]
            pos = self.peek()[2]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                try:
                    value = self.divide(value, rhs)
                except ParseError:
                    raise
                except ArithmeticError as exc:
                    raise ParseError(f"invalid division: {exc}", pos) from exc
        return value

    def unary(self):
        if self.is_op("-"):
            self.take()
            return -self.unary()
        if self.is_op("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.is_op("^"):
            self.take()
            pos = self.peek()[2]
            exponent = self.exponent()
            try:
                return base ** exponent
            except ArithmeticError as exc:
                raise ParseError(f"invalid power: {exc}", pos) from exc
        return base

    def exponent(self):
        paren = self.is_op("(")
        if paren:
            self.take()
        sign = 1
        if self.is_op("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        kind, val, pos = self.take()
        if kind != "int":
            raise ParseError("exponent must be an integer", pos)
        if paren:
            self.expect(")")
        return sign * val

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return self.literal(val)
        if kind == "name":
            value = self.resolve(val)
            if value is None:
                raise ParseError(f"unknown symbol {val!r}", pos)
            return value
        if kind == "op" and val == "(":
            value = self.expr()
            self.expect(")")
            return value
        if kind == "end":
            raise ParseError("unexpected end of input", pos)
        raise ParseError(f"unexpected token {val!r}", pos)


def parse_expression(text, literal, resolve, divide=lambda a, b: a / b):
    """Parse ``text``; ``resolve(name)`` returns a value or None for unknown symbols."""
    return _Parser(text, literal, resolve, divide).parse()
