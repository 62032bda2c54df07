"""Text form of polynomial expressions.

Grammar (whitespace is insignificant)::

    expr   := term ('+' term)*
    term   := coeff ['*'] 'x' ['^' exp] | coeff | 'x' ['^' exp]
    exp    := int | '-' int | '(' sint (',' sint)* ')'
    sint   := ['-'] int

Coefficients depend on the domain:

    nat      int
    natpoly  mono | '(' mono ('+' mono)* ')'    mono := [int ['*']] 't' ['^' int] | int
    spq      mono | '(' mono ('+' mono)* ')'    mono := [int] ('*'? gen)*,  gen := ('A'|'B') ['^' int]

Like terms are merged, so the result is always canonical.
"""

from __future__ import annotations

import re

from .coefficients import CoeffDomain, NatPoly, Natural, Spq
from .errors import ParseError
from .groups import Group, IntGroup, IntVecGroup
from .polyexpr import PolyExpr, format_poly

_TOKEN = re.compile(r"\s*(?:(\d+)|(\S))")
_SYMBOLS = set("+*^(),-xtAB")


def tokenize(text: str) -> list[tuple[str, str, int]]:
    """Split into (kind, value, position); kind is 'int', a symbol, or 'end'."""
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only whitespace left
            break
        if m.group(1) is not None:
            out.append(("int", m.group(1), m.start(1)))
        else:
            ch = m.group(2)
            if ch not in _SYMBOLS:
                raise ParseError(f"unexpected character {ch!r}", text, m.start(2))
            out.append((ch, ch, m.start(2)))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, domain: CoeffDomain, group: Group):
        self.text = text
        self.domain = domain
        self.group = group
        self.toks = tokenize(text)
        self.i = 0

    # token helpers
    def peek(self, ahead: int = 0) -> str:
        return self.toks[min(self.i + ahead, len(self.toks) - 1)][0]

    def take(self, kind: str | None = None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "a number" if kind == "int" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            self.fail(f"expected {want}, found {got}")
        self.i += 1
        return tok

    def fail(self, message: str, pos: int | None = None):
        raise ParseError(message, self.text, self.toks[self.i][2] if pos is None else pos)

    def integer(self) -> int:
        return int(self.take("int")[1])

    def signed(self) -> int:
        if self.peek() == "-":
            self.take()
            return -self.integer()
        return self.integer()

    # grammar
    def expr(self) -> PolyExpr:
        terms = [self.term()]
        while self.peek() == "+":
            self.take()
            terms.append(self.term())
        if self.peek() != "end":
            self.fail(f"unexpected {self.toks[self.i][1]!r}")
        return PolyExpr.from_terms(terms, self.domain, self.group)

    def term(self):
        if self.peek() == "x":
            return self.exponent_part(), self.domain.one
        c = self.coeff()
        if self.peek() == "*" and self.peek(1) == "x":
            self.take()
        if self.peek() == "x":
            return self.exponent_part(), c
        return self.group.zero, c

    def exponent_part(self):
        pos = self.take("x")[2]
        if self.peek() != "^":
            if isinstance(self.group, IntVecGroup):
                if self.group.n != 1:
                    self.fail(f"bare x has no exponent; zvec:{self.group.n} needs x^(a,...)", pos)
                return (1,)
            return 1
        self.take("^")
        pos = self.toks[self.i][2]
        if self.peek() == "(":
            self.take()
            parts = [self.signed()]
            while self.peek() == ",":
                self.take()
                parts.append(self.signed())
            self.take(")")
        else:
            parts = [self.signed()]
        if isinstance(self.group, IntGroup):
            if len(parts) != 1:
                self.fail(f"exponent has {len(parts)} components, group z takes 1", pos)
            return parts[0]
        if len(parts) != self.group.n:
            self.fail(f"exponent has {len(parts)} components, group zvec:{self.group.n} takes {self.group.n}", pos)
        return tuple(parts)

    def coeff(self):
        dom = self.domain
        if isinstance(dom, Natural):
            return self.integer()
        if self.peek() == "(":
            self.take()
            total = self.mono()
            while self.peek() == "+":
                self.take()
                total = dom.add(total, self.mono())
            self.take(")")
            return total
        return self.mono()

    def mono(self):
        dom = self.domain
        if isinstance(dom, NatPoly):
            c = self.integer() if self.peek() == "int" else None
            if self.peek() == "*" and self.peek(1) == "t" and c is not None:
                self.take()
            if self.peek() == "t":
                self.take()
                k = self.power()
                return NatPoly.monomial(k, 1 if c is None else c)
            if c is None:
                self.fail("expected a coefficient")
            return dom.check((c,) if c else ())
        if isinstance(dom, Spq):
            c = self.integer() if self.peek() == "int" else None
            n = m = 0
            seen = c is not None
            while True:
                ahead = 1 if self.peek() == "*" and seen else 0
                sym = self.peek(ahead)
                if sym not in ("A", "B"):
                    break
                if ahead:
                    self.take()
                self.take()
                if sym == "A":
                    n += self.power()
                else:
                    m += self.power()
                seen = True
            if not seen:
                self.fail("expected a coefficient")
            if c == 0:
                return ()
            return Spq.gen(n, m, 1 if c is None else c)
        raise ParseError(f"no coefficient syntax for domain {dom.kind}", self.text, self.toks[self.i][2])

    def power(self) -> int:
        if self.peek() == "^":
            self.take()
            return self.integer()
        return 1


def parse_expr(text: str, domain: CoeffDomain, group: Group) -> PolyExpr:
    """Parse ``text`` into a canonical PolyExpr; raises ParseError with a position."""
    return _Parser(text, domain, group).expr()


def print_expr(f: PolyExpr) -> str:
    return format_poly(f)
