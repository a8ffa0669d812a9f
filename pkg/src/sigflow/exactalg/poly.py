"""Univariate polynomials over Q and the rational function field Q(s).

Polynomials are tuples of ``Fraction`` coefficients, lowest degree first,
with no trailing zeros; the zero polynomial is ``()``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Sequence, Union

from ..errors import DivisionByZero

Poly = tuple
ONE = Fraction(1)
ZERO = Fraction(0)


def _trim(c: list) -> Poly:
    while c and not c[-1]:
        c.pop()
    return tuple(c)


def poly(coeffs: Sequence) -> Poly:
    return _trim([Fraction(x) for x in coeffs])


def padd(a: Poly, b: Poly) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] += x
    return _trim(out)


def pneg(a: Poly) -> Poly:
    return tuple(-x for x in a)


def psub(a: Poly, b: Poly) -> Poly:
    return padd(a, pneg(b))


def pscale(a: Poly, c: Fraction) -> Poly:
    if not c:
        return ()
    return tuple(x * c for x in a)


def pmul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return ()
    if len(a) == 1:
        return pscale(b, a[0])
    if len(b) == 1:
        return pscale(a, b[0])
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim(out)


def pdivmod(a: Poly, b: Poly) -> tuple[Poly, Poly]:
    if not b:
        raise DivisionByZero("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    r = list(a)
    lead = b[-1]
    q = [ZERO] * (len(a) - len(b) + 1)
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, y in enumerate(b):
                r[k + j] -= c * y
    return _trim(q), _trim(r[: len(b) - 1])


def pmonic(a: Poly) -> Poly:
    if not a or a[-1] == 1:
        return a
    inv = 1 / a[-1]
    return tuple(x * inv for x in a)


def pgcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    while b:
        a, b = b, pdivmod(a, b)[1]
    return pmonic(a)


def peval(a: Poly, x: Fraction) -> Fraction:
    acc = ZERO
    for c in reversed(a):
        acc = acc * x + c
    return acc


def pformat(a: Poly) -> str:
    if not a:
        return "0"
    parts = []
    for d in range(len(a) - 1, -1, -1):
        c = a[d]
        if not c:
            continue
        neg = c < 0
        c = -c if neg else c
        if d == 0:
            body = str(c)
        else:
            mono = "s" if d == 1 else f"s^{d}"
            body = mono if c == 1 else f"{c}*{mono}"
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append(("-" if neg else "+") + body)
    return "".join(parts)


class RatFunc:
    """Reduced quotient of polynomials with a monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly = (), den: Poly = (ONE,), _reduced: bool = False):
        if not _reduced:
            num, den = _reduce(tuple(num), tuple(den))
        self.num = num
        self.den = den

    @classmethod
    def const(cls, c) -> "RatFunc":
        c = Fraction(c)
        return cls((c,) if c else (), (ONE,), True)

    @classmethod
    def s(cls) -> "RatFunc":
        return cls((ZERO, ONE), (ONE,), True)

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_poly(self) -> bool:
        return len(self.den) == 1

    def is_constant(self) -> bool:
        return len(self.den) == 1 and len(self.num) <= 1

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num[0] if self.num else ZERO

    def __add__(self, o: "RatFunc") -> "RatFunc":
        if not isinstance(o, RatFunc):
            return NotImplemented
        if self.den == o.den:
            if len(self.den) == 1:
                return RatFunc(padd(self.num, o.num), self.den, True)
            return RatFunc(padd(self.num, o.num), self.den)
        return RatFunc(padd(pmul(self.num, o.den), pmul(o.num, self.den)), pmul(self.den, o.den))

    def __neg__(self) -> "RatFunc":
        return RatFunc(pneg(self.num), self.den, True)

    def __sub__(self, o: "RatFunc") -> "RatFunc":
        if not isinstance(o, RatFunc):
            return NotImplemented
        return self + (-o)

    def __mul__(self, o: "RatFunc") -> "RatFunc":
        if not isinstance(o, RatFunc):
            return NotImplemented
        if not self.num or not o.num:
            return RatFunc((), (ONE,), True)
        if len(self.den) == 1 and len(o.den) == 1:
            return RatFunc(pmul(self.num, o.num), self.den, True)
        if len(self.num) == 1 and len(self.den) == 1:
            return RatFunc(pscale(o.num, self.num[0]), o.den, True)
        if len(o.num) == 1 and len(o.den) == 1:
            return RatFunc(pscale(self.num, o.num[0]), self.den, True)
        return RatFunc(pmul(self.num, o.num), pmul(self.den, o.den))

    def inv(self) -> "RatFunc":
        if not self.num:
            raise DivisionByZero("inverse of zero rational function")
        lead = self.num[-1]
        return RatFunc(pscale(self.den, 1 / lead), pscale(self.num, 1 / lead), True)

    def __truediv__(self, o: "RatFunc") -> "RatFunc":
        if not isinstance(o, RatFunc):
            return NotImplemented
        return self * o.inv()

    def __eq__(self, o) -> bool:
        if isinstance(o, RatFunc):
            return self.num == o.num and self.den == o.den
        if isinstance(o, (int, Fraction)):
            return self == RatFunc.const(o)
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def __call__(self, x) -> Fraction:
        d = peval(self.den, Fraction(x))
        if not d:
            raise DivisionByZero(f"pole at {x}")
        return peval(self.num, Fraction(x)) / d

    def __str__(self) -> str:
        n = pformat(self.num)
        if len(self.den) == 1:
            return n
        d = pformat(self.den)
        return f"{_wrap(n)}/{_wrap(d)}"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def _wrap(text: str) -> str:
    if any(ch in text[1:] for ch in "+-") or "/" in text or "*" in text:
        return f"({text})"
    return text


def _reduce(num: Poly, den: Poly) -> tuple[Poly, Poly]:
    if not den:
        raise DivisionByZero("zero denominator")
    if not num:
        return (), (ONE,)
    if len(den) > 1:
        g = pgcd(num, den)
        if len(g) > 1:
            num = pdivmod(num, g)[0]
            den = pdivmod(den, g)[0]
    lead = den[-1]
    if lead != 1:
        inv = 1 / lead
        num = pscale(num, inv)
        den = pscale(den, inv)
    return num, den


class _ExprParser:
    """Recursive-descent parser for rational expressions in ``s``."""

    def __init__(self, text: str):
        self.text = text
        self.i = 0

    def error(self, msg: str):
        raise ValueError(f"{msg} at position {self.i} in {self.text!r}")

    def peek(self) -> str:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1
        return self.text[self.i] if self.i < len(self.text) else ""

    def parse(self) -> RatFunc:
        v = self.expr()
        if self.peek():
            self.error("unexpected character")
        return v

    def expr(self) -> RatFunc:
        v = self.product()
        while self.peek() in ("+", "-"):
            op = self.text[self.i]
            self.i += 1
            w = self.product()
            v = v + w if op == "+" else v - w
        return v

    def product(self) -> RatFunc:
        v = self.unary()
        while True:
            ch = self.peek()
            if ch == "*" and self.text[self.i : self.i + 2] != "**":
                self.i += 1
                v = v * self.unary()
            elif ch == "/":
                self.i += 1
                v = v / self.unary()
            elif ch and (ch == "s" or ch == "(" or ch.isdigit()):
                v = v * self.unary()
            else:
                return v

    def unary(self) -> RatFunc:
        ch = self.peek()
        if ch == "-":
            self.i += 1
            return -self.unary()
        if ch == "+":
            self.i += 1
            return self.unary()
        return self.power()

    def power(self) -> RatFunc:
        base = self.primary()
        ch = self.peek()
        if ch == "^" or self.text[self.i : self.i + 2] == "**":
            self.i += 1 if ch == "^" else 2
            sign = 1
            if self.peek() == "-":
                self.i += 1
                sign = -1
            e = self.integer()
            out = RatFunc.const(1)
            for _ in range(e):
                out = out * base
            return out if sign > 0 else out.inv()
        return base

    def integer(self) -> int:
        self.peek()
        start = self.i
        while self.i < len(self.text) and self.text[self.i].isdigit():
            self.i += 1
        if start == self.i:
            self.error("expected integer")
        return int(self.text[start : self.i])

    def primary(self) -> RatFunc:
        ch = self.peek()
        if ch == "(":
            self.i += 1
            v = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.i += 1
            return v
        if ch == "s":
            self.i += 1
            return RatFunc.s()
        if ch.isdigit():
            return RatFunc.const(self.integer())
        self.error("expected operand")


def parse_ratfunc(text: Union[str, int, Fraction]) -> RatFunc:
    if isinstance(text, (int, Fraction)):
        return RatFunc.const(text)
    return _ExprParser(str(text)).parse()
