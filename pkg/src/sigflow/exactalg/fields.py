"""Coefficient fields: Q, GF(p) and Q(s).

A field object knows how to combine *raw* values (``Fraction``, ``int``
residues, ``RatFunc``).  ``FieldValue`` wraps a raw value together with its
field for the public scalar API.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import Any

from ..errors import DivisionByZero, FieldMismatch
from .poly import RatFunc, parse_ratfunc

MAX_PRIME = 2**31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    # deterministic for n < 3.3e24
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _to_fraction(x: Any) -> Fraction:
    if isinstance(x, bool):
        raise FieldMismatch("booleans are not scalars")
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, RatFunc):
        if not x.is_constant():
            raise FieldMismatch(f"{x} is not a constant")
        return x.constant()
    if isinstance(x, str):
        return _to_fraction(parse_ratfunc(x))
    raise FieldMismatch(f"cannot interpret {x!r} as a scalar")


class Field:
    descriptor: str = ""
    zero: Any
    one: Any
    has_s = False

    def __call__(self, x: Any) -> "FieldValue":
        return FieldValue(self, self.coerce(x))

    def __repr__(self) -> str:
        return f"Field({self.descriptor})"

    def coerce(self, x: Any) -> Any:
        raise NotImplementedError

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def is_zero(self, a) -> bool:
        return not a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def fmt(self, a) -> str:
        return str(a)

    def parse(self, text: str):
        return self.coerce(text)

    def to_json(self, a) -> Any:
        raise NotImplementedError

    def from_json(self, j: Any):
        if isinstance(j, (list, tuple)):
            if len(j) != 2:
                raise ValueError(f"bad scalar encoding {j!r}")
            return self.div(self.coerce(int(j[0])), self.coerce(int(j[1])))
        if isinstance(j, (int, str)) and not isinstance(j, bool):
            return self.coerce(j)
        raise ValueError(f"bad scalar encoding {j!r}")


class RationalField(Field):
    descriptor = "q"
    zero = Fraction(0)
    one = Fraction(1)

    def coerce(self, x):
        if isinstance(x, FieldValue):
            if x.field is not self:
                raise FieldMismatch(f"{x.field.descriptor} value used in q")
            return x.raw
        return _to_fraction(x)

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of 0")
        return 1 / a

    def to_json(self, a):
        return [str(a.numerator), str(a.denominator)]


class PrimeField(Field):
    zero = 0
    one = 1

    def __init__(self, p: int):
        if not (isinstance(p, int) and 2 <= p <= MAX_PRIME and _is_prime(p)):
            raise ValueError(f"GF({p}): modulus must be a prime <= 2^31")
        self.p = p
        self.descriptor = f"gf:{p}"

    def coerce(self, x):
        if isinstance(x, FieldValue):
            if x.field is not self:
                raise FieldMismatch(f"{x.field.descriptor} value used in {self.descriptor}")
            return x.raw
        if isinstance(x, int) and not isinstance(x, bool):
            return x % self.p
        f = _to_fraction(x)
        d = f.denominator % self.p
        if not d:
            raise DivisionByZero(f"denominator of {f} vanishes mod {self.p}")
        return f.numerator * pow(d, -1, self.p) % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if not a:
            raise DivisionByZero("inverse of 0")
        return pow(a, -1, self.p)

    def to_json(self, a):
        return [str(a), "1"]


class RationalFunctionField(Field):
    descriptor = "qs"
    zero = RatFunc.const(0)
    one = RatFunc.const(1)
    has_s = True

    def coerce(self, x):
        if isinstance(x, FieldValue):
            if x.field is self:
                return x.raw
            if isinstance(x.field, RationalField):
                return RatFunc.const(x.raw)
            raise FieldMismatch(f"{x.field.descriptor} value used in qs")
        if isinstance(x, RatFunc):
            return x
        if isinstance(x, str):
            return parse_ratfunc(x)
        return RatFunc.const(_to_fraction(x))

    def is_zero(self, a) -> bool:
        return not a.num

    def inv(self, a):
        return a.inv()

    def to_json(self, a):
        return str(a)


Q = RationalField()
QS = RationalFunctionField()


@lru_cache(maxsize=None)
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_descriptor(desc: str) -> Field:
    d = desc.strip().lower()
    if d == "q":
        return Q
    if d == "qs":
        return QS
    if d.startswith("gf:"):
        try:
            p = int(d[3:])
        except ValueError:
            raise ValueError(f"bad field descriptor {desc!r}") from None
        return GF(p)
    raise ValueError(f"bad field descriptor {desc!r}")


class FieldValue:
    """An exact scalar tagged with its field."""

    __slots__ = ("field", "raw")

    def __init__(self, field: Field, raw: Any):
        self.field = field
        self.raw = raw

    def _other(self, o) -> Any:
        if isinstance(o, FieldValue):
            if o.field is not self.field:
                raise FieldMismatch(f"{self.field.descriptor} vs {o.field.descriptor}")
            return o.raw
        return self.field.coerce(o)

    def __add__(self, o):
        return FieldValue(self.field, self.field.add(self.raw, self._other(o)))

    __radd__ = __add__

    def __sub__(self, o):
        return FieldValue(self.field, self.field.sub(self.raw, self._other(o)))

    def __rsub__(self, o):
        return FieldValue(self.field, self.field.sub(self._other(o), self.raw))

    def __mul__(self, o):
        return FieldValue(self.field, self.field.mul(self.raw, self._other(o)))

    __rmul__ = __mul__

    def __truediv__(self, o):
        return FieldValue(self.field, self.field.div(self.raw, self._other(o)))

    def __rtruediv__(self, o):
        return FieldValue(self.field, self.field.div(self._other(o), self.raw))

    def __neg__(self):
        return FieldValue(self.field, self.field.neg(self.raw))

    def inv(self) -> "FieldValue":
        return FieldValue(self.field, self.field.inv(self.raw))

    def is_zero(self) -> bool:
        return self.field.is_zero(self.raw)

    def eq(self, o) -> bool:
        """Strict equality: raises ``FieldMismatch`` across fields."""
        return self.raw == self._other(o)

    def __eq__(self, o) -> bool:
        try:
            return self.raw == self._other(o)
        except FieldMismatch:
            return False
        except (ValueError, DivisionByZero):
            return False

    def __hash__(self):
        return hash((self.field.descriptor, self.raw))

    def __str__(self):
        return self.field.fmt(self.raw)

    def __repr__(self):
        return f"{self.field.descriptor}({self.field.fmt(self.raw)})"
