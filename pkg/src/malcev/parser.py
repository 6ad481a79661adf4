"""Expression parser for the workbench notation.

Grammar (juxtaposition is the left-normed product, so ``x y z`` is ((xy)z))::

    expr    := term (('+' | '-') term)*
    term    := ('+' | '-')? (rational '*')? factor+ | rational
    factor  := atom postop* ('^' natural)?
    atom    := var | '(' expr ')' | 'J(' expr ',' expr ',' expr ')'
             | 'G(' expr ',' expr ',' expr ',' expr ')'
    postop  := '.L(' expr ',' expr ')' pow? | '.R(' expr ')' pow? | '.G' pow?
    pow     := '^' natural
    var     := [a-z] ([0-9]+ | '#' [0-9]+)?

``a^n`` inside a juxtaposition repeats the factor: ``b a^3`` is ((ba)a)a, and
``a^0`` drops it.  A bare rational is only meaningful as ``0``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .operators import GOp, LOp, RightMul, apply_operator
from .terms import (XYZ, Alphabet, AlphabetError, Element, format_element, get_alphabet,
                    gfunc, jacobian, mul)

__all__ = ["ParseError", "parse", "variables_in", "alphabet_for", "format_element"]

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<var>[a-z](?:\d+|\#\d+)?)
  | (?P<jcall>J\()
  | (?P<gcall>G\()
  | (?P<postL>\.L\()
  | (?P<postR>\.R\()
  | (?P<postG>\.G)
  | (?P<sym>[-+*^(),])
""", re.VERBOSE)


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text[:pos]}<here>{text[pos:]}")
        self.message, self.text, self.pos = message, text, pos

    def __reduce__(self):
        return ParseError, (self.message, self.text, self.pos)


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def variables_in(text: str) -> list[str]:
    """Variable names in order of first appearance."""
    seen: list[str] = []
    for kind, value, _ in _tokenize(text):
        if kind == "var" and value not in seen:
            seen.append(value)
    return seen


def _var_key(name: str):
    head, _, tail = name.partition("#")
    letter, digits = head[0], head[1:]
    return (letter, int(digits) if digits else -1, int(tail) if tail else -1)


def alphabet_for(*texts: str) -> Alphabet:
    """x, y, z when that suffices, else all variables sorted by name."""
    names: set[str] = set()
    for t in texts:
        names.update(variables_in(t))
    if names <= set(XYZ.names):
        return XYZ
    return get_alphabet(sorted(names, key=_var_key))


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.alphabet = alphabet

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value: str):
        kind, v, pos = self.take()
        if v != value:
            raise ParseError(f"expected {value!r}, found {v or 'end of input'!r}", self.text, pos)

    def error(self, message: str):
        raise ParseError(message, self.text, self.peek()[2])

    def expr(self) -> Element:
        total = self.term()
        while self.peek()[1] in ("+", "-"):
            sign = self.take()[1]
            t = self.term()
            total = total + t if sign == "+" else total - t
        return total

    def _starts_factor(self) -> bool:
        kind, v, _ = self.peek()
        return kind in ("var", "jcall", "gcall") or v == "("

    def term(self) -> Element:
        sign = 1
        while self.peek()[1] in ("+", "-"):
            if self.take()[1] == "-":
                sign = -sign
        coeff = Fraction(sign)
        kind, v, pos = self.peek()
        if kind == "num":
            self.take()
            coeff *= Fraction(v)
            if self.peek()[1] == "*":
                self.take()
            elif not self._starts_factor():
                if coeff != 0:
                    raise ParseError("a bare nonzero number is not an element", self.text, pos)
                return self.alphabet.zero()
            else:
                raise ParseError("write a coefficient as number '*' product", self.text, pos)
        if not self._starts_factor():
            self.error("expected a variable, '(' or J(")
        product = None
        while self._starts_factor():
            f, reps = self.factor()
            for _ in range(reps):
                product = f if product is None else mul(product, f)
        if product is None:
            self.error("a product cannot start with a zeroth power")
        return product * coeff

    def natural(self) -> int:
        kind, v, pos = self.take()
        if kind != "num" or "/" in v:
            raise ParseError("expected a natural number", self.text, pos)
        return int(v)

    def maybe_pow(self) -> int:
        if self.peek()[1] == "^":
            self.take()
            return self.natural()
        return 1

    def factor(self) -> tuple[Element, int]:
        e = self.atom()
        while self.peek()[0] in ("postL", "postR", "postG"):
            kind, _, pos = self.take()
            if kind == "postL":
                a = self.expr()
                self.expect(",")
                b = self.expr()
                self.expect(")")
                op = self._build(LOp, pos, a, b)
            elif kind == "postR":
                a = self.expr()
                self.expect(")")
                op = self._build(RightMul, pos, a)
            else:
                op = GOp(1)
            n = self.maybe_pow()
            if n == 0:
                continue
            op.power = n
            e = apply_operator(e, op)
        return e, self.maybe_pow()

    def _build(self, cls, pos, *args):
        try:
            return cls(*args)
        except ValueError as exc:
            raise ParseError(str(exc), self.text, pos) from None

    def atom(self) -> Element:
        kind, v, pos = self.take()
        if kind == "var":
            if v not in self.alphabet:
                raise AlphabetError(f"unknown variable {v!r} at position {pos}")
            return self.alphabet.var(v)
        if v == "(":
            e = self.expr()
            self.expect(")")
            return e
        if kind == "jcall":
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect(",")
            c = self.expr()
            self.expect(")")
            return jacobian(a, b, c)
        if kind == "gcall":
            args = [self.expr()]
            for _ in range(3):
                self.expect(",")
                args.append(self.expr())
            self.expect(")")
            return gfunc(*args)
        raise ParseError(f"unexpected {v or 'end of input'!r}", self.text, pos)


def parse(text: str, alphabet: Alphabet | None = None) -> Element:
    """Parse an expression into an Element over ``alphabet``."""
    alphabet = alphabet or alphabet_for(text)
    p = _Parser(text, alphabet)
    e = p.expr()
    kind, v, pos = p.peek()
    if kind != "end":
        raise ParseError(f"unexpected {v!r}", text, pos)
    return e
