"""Shared polynomial text format: tokenizer, recursive-descent parser, canonical printer.

The same syntax is used for input files and for printed output, so everything
the package prints can be parsed back:

    poly   := ['-'] term (('+'|'-') term)*
    term   := atom ('*' atom)*
    atom   := base ['^' uint]
    base   := uint ['/' uint] | var | '(' poly ')'
"""

from __future__ import annotations

from fractions import Fraction



class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        where = ""
        if line is not None:
            where = f" at line {line}"
            if col is not None:
                where += f", column {col}"
        super().__init__(message + where)


def _tokenize(src: str, line_no: int, col_base: int):
    tokens = []
    i, n = 0, len(src)
    while i < n:
        ch = src[i]
        if ch.isspace():
            i += 1
            continue
        col = col_base + i + 1
        if ch.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            tokens.append(("num", src[i:j], col))
            i = j
        elif ch.isalpha():
            j = i
            while j < n and src[j].isalnum():
                j += 1
            tokens.append(("name", src[i:j], col))
            i = j
        elif ch in "+-*^()/":
            tokens.append((ch, ch, col))
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line_no, col)
    tokens.append(("end", "end of expression", col_base + n + 1))
    return tokens


class _Parser:
    def __init__(self, tokens, variables, line_no):
        self.toks = tokens
        self.pos = 0
        self.vars = {name: k for k, name in enumerate(variables)}
        self.nvars = len(variables)
        self.line = line_no

    def peek(self):
        return self.toks[self.pos]

    def take(self, kind=None):
        tok = self.toks[self.pos]
        if kind is not None and tok[0] != kind:
            self.fail(f"expected {kind!r}, found {tok[1]!r}", tok)
        self.pos += 1
        return tok

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(msg, self.line, tok[2])

    def parse(self):
        d = self.expr()
        if self.peek()[0] != "end":
            self.fail(f"unexpected {self.peek()[1]!r}")
        return d

    def expr(self):
        negate = False
        if self.peek()[0] in ("+", "-"):
            negate = self.take()[0] == "-"
        acc = self.term()
        if negate:
            acc = _scale(acc, Fraction(-1))
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = _add(acc, t if op == "+" else _scale(t, Fraction(-1)))
        return acc

    def term(self):
        acc = self.atom()
        while self.peek()[0] == "*":
            self.take()
            acc = _mul(acc, self.atom(), self.nvars)
        return acc

    def atom(self):
        tok = self.peek()
        if tok[0] == "num":
            self.take()
            num = int(tok[1])
            if self.peek()[0] == "/":
                self.take()
                den_tok = self.take("num")
                den = int(den_tok[1])
                if den == 0:
                    self.fail("zero denominator", den_tok)
                base = {(0,) * self.nvars: Fraction(num, den)}
            else:
                base = {(0,) * self.nvars: Fraction(num)}
        elif tok[0] == "name":
            self.take()
            k = self.vars.get(tok[1])
            if k is None:
                self.fail(f"unknown variable {tok[1]!r}", tok)
            e = [0] * self.nvars
            e[k] = 1
            base = {tuple(e): Fraction(1)}
        elif tok[0] == "(":
            self.take()
            base = self.expr()
            if self.peek()[0] != ")":
                self.fail("expected ')'")
            self.take()
        else:
            self.fail(f"unexpected {tok[1]!r}", tok)
        if self.peek()[0] == "^":
            self.take()
            etok = self.take("num")
            base = _pow(base, int(etok[1]), self.nvars)
        return base


def _add(a, b):
    out = dict(a)
    for e, c in b.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        elif e in out:
            del out[e]
    return out


def _scale(a, c):
    if not c:
        return {}
    return {e: x * c for e, x in a.items()}


def _mul(a, b, nvars):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = tuple(ea[k] + eb[k] for k in range(nvars))
            s = out.get(e, 0) + ca * cb
            if s:
                out[e] = s
            elif e in out:
                del out[e]
    return out


def _pow(a, n, nvars):
    out = {(0,) * nvars: Fraction(1)}
    for _ in range(n):
        out = _mul(out, a, nvars)
    return out


def parse_expression(src: str, variables, line_no: int = 1, col_base: int = 0):
    """Parse one polynomial expression into {exponent tuple: Fraction}."""
    return _Parser(_tokenize(src, line_no, col_base), variables, line_no).parse()


def monomial_text(exps, names) -> str:
    """Canonical text of a monomial; empty string for the constant monomial."""
    parts = []
    for e, name in zip(exps, names):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _is_negative(c) -> bool:
    return isinstance(c, (Fraction, int)) and c < 0


def format_polynomial(pairs) -> str:
    """Render (coefficient, monomial text) pairs, already in canonical order."""
    if not pairs:
        return "0"
    chunks = []
    for i, (c, mono) in enumerate(pairs):
        neg = _is_negative(c)
        mag = -c if neg else c
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        if i == 0:
            chunks.append(f"-{body}" if neg else body)
        else:
            chunks.append(f" - {body}" if neg else f" + {body}")
    return "".join(chunks)
