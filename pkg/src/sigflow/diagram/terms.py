"""Term syntax for signal-flow diagrams.

Terms are immutable.  Build them with ``compose`` and ``tensor``, which
flatten, drop identities and store the result right-nested, so structurally
equal diagrams compare equal.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Iterator, Union

from ..errors import ArityError, UnknownGenerator
from ..exactalg.poly import RatFunc, parse_ratfunc

KINDS = ("add", "zero", "dup", "del", "scale", "cup", "cap", "int")

_ARITY = {
    "add": (2, 1),
    "zero": (0, 1),
    "dup": (1, 2),
    "del": (1, 0),
    "scale": (1, 1),
    "cup": (2, 0),
    "cap": (0, 2),
    "int": (1, 1),
}

Const = Union[Fraction, RatFunc]


def as_const(c: Any) -> Const:
    """Normalize a scale constant to a Fraction, or a RatFunc if it depends on s."""
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int) and not isinstance(c, bool):
        return Fraction(c)
    if isinstance(c, RatFunc):
        return c.constant() if c.is_constant() else c
    if isinstance(c, str):
        return as_const(parse_ratfunc(c))
    if hasattr(c, "raw"):
        return as_const(c.raw if not isinstance(c.raw, int) else Fraction(c.raw))
    raise TypeError(f"bad scale constant {c!r}")


def const_str(c: Const) -> str:
    return str(c)


class GenLabel:
    __slots__ = ("kind", "daggered", "const")

    def __init__(self, kind: str, daggered: bool = False, const: Any = None):
        if kind not in _ARITY:
            raise UnknownGenerator(kind)
        if kind == "cup" and daggered:
            kind, daggered = "cap", False
        elif kind == "cap" and daggered:
            kind, daggered = "cup", False
        if kind == "scale":
            if const is None:
                raise UnknownGenerator("scale needs a constant")
            const = as_const(const)
        else:
            const = None
        self.kind = kind
        self.daggered = daggered
        self.const = const

    @property
    def arity(self) -> tuple[int, int]:
        a, b = _ARITY[self.kind]
        return (b, a) if self.daggered else (a, b)

    def dagger(self) -> "GenLabel":
        return GenLabel(self.kind, not self.daggered, self.const)

    def _key(self):
        return (self.kind, self.daggered, self.const)

    def __eq__(self, o) -> bool:
        return isinstance(o, GenLabel) and self._key() == o._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __str__(self) -> str:
        base = f"scale({const_str(self.const)})" if self.kind == "scale" else self.kind
        return base + ("~" if self.daggered else "")

    __repr__ = __str__


class Term:
    __slots__ = ("dom", "cod", "_hash")

    def __eq__(self, o) -> bool:
        return isinstance(o, Term) and self._key() == o._key()

    def __hash__(self) -> int:
        h = getattr(self, "_hash", None)
        if h is None:
            h = hash(self._key())
            self._hash = h
        return h

    def _key(self):
        raise NotImplementedError

    def __str__(self) -> str:
        from .dsl import print_term

        return print_term(self)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.dom}->{self.cod}: {self}>"

    def children(self) -> tuple["Term", ...]:
        return ()


class Gen(Term):
    __slots__ = ("label",)

    def __init__(self, label: GenLabel):
        self.label = label
        self.dom, self.cod = label.arity
        self._hash = None

    def _key(self):
        return ("gen", self.label)


class Id(Term):
    __slots__ = ("n",)

    def __init__(self, n: int):
        if n < 0:
            raise ArityError("negative identity width")
        self.n = n
        self.dom = self.cod = n
        self._hash = None

    def _key(self):
        return ("id", self.n)


class Swap(Term):
    __slots__ = ()

    def __init__(self):
        self.dom = self.cod = 2
        self._hash = None

    def _key(self):
        return ("swap",)


class Compose(Term):
    """``first`` then ``then``; build through ``compose``."""

    __slots__ = ("first", "then")

    def __init__(self, first: Term, then: Term):
        if first.cod != then.dom:
            raise ArityError(f"cannot compose {first} ({first.dom}->{first.cod}) with {then} ({then.dom}->{then.cod})")
        self.first = first
        self.then = then
        self.dom, self.cod = first.dom, then.cod
        self._hash = None

    def _key(self):
        return ("compose", self.first, self.then)

    def children(self):
        return (self.first, self.then)


class Tensor(Term):
    __slots__ = ("left", "right")

    def __init__(self, left: Term, right: Term):
        self.left = left
        self.right = right
        self.dom = left.dom + right.dom
        self.cod = left.cod + right.cod
        self._hash = None

    def _key(self):
        return ("tensor", self.left, self.right)

    def children(self):
        return (self.left, self.right)


def gen(kind: str, const: Any = None, daggered: bool = False) -> Gen:
    return Gen(GenLabel(kind, daggered, const))


def scale(c: Any) -> Gen:
    return gen("scale", c)


def compose_stages(t: Term) -> list[Term]:
    out = []
    while isinstance(t, Compose):
        out.append(t.first)
        t = t.then
    out.append(t)
    return out


def tensor_factors(t: Term) -> list[Term]:
    out = []
    while isinstance(t, Tensor):
        out.append(t.left)
        t = t.right
    out.append(t)
    return out


def compose(*ts: Term) -> Term:
    if not ts:
        raise ArityError("empty composite")
    stages: list[Term] = []
    for t in ts:
        stages.extend(compose_stages(t))
    for a, b in zip(stages, stages[1:]):
        if a.cod != b.dom:
            raise ArityError(f"cannot compose {a} ({a.dom}->{a.cod}) with {b} ({b.dom}->{b.cod})")
    dom = stages[0].dom
    stages = [s for s in stages if not isinstance(s, Id)]
    if not stages:
        return Id(dom)
    out = stages[-1]
    for s in reversed(stages[:-1]):
        out = Compose(s, out)
    return out


def tensor(*ts: Term) -> Term:
    factors: list[Term] = []
    for t in ts:
        for f in tensor_factors(t):
            if isinstance(f, Id):
                if f.n == 0:
                    continue
                if factors and isinstance(factors[-1], Id):
                    factors[-1] = Id(factors[-1].n + f.n)
                    continue
            factors.append(f)
    if not factors:
        return Id(0)
    out = factors[-1]
    for f in reversed(factors[:-1]):
        out = Tensor(f, out)
    return out


def tensor_power(t: Term, n: int) -> Term:
    return tensor(*([t] * n)) if n else Id(0)


def normalize(t: Term) -> Term:
    """Rebuild bottom-up through the smart constructors."""
    if isinstance(t, Compose):
        return compose(normalize(t.first), normalize(t.then))
    if isinstance(t, Tensor):
        return tensor(normalize(t.left), normalize(t.right))
    return t


def walk(t: Term) -> Iterator[tuple[tuple[int, ...], Term]]:
    """Pre-order traversal yielding (path, subterm)."""
    stack = [((), t)]
    while stack:
        path, s = stack.pop()
        yield path, s
        kids = s.children()
        for i in range(len(kids) - 1, -1, -1):
            stack.append((path + (i,), kids[i]))


def generators(t: Term) -> Iterator[GenLabel]:
    """Generator labels in traversal order (first before then, left before right)."""
    for _, s in walk(t):
        if isinstance(s, Gen):
            yield s.label


def count_integrators(t: Term) -> int:
    return sum(1 for g in generators(t) if g.kind == "int")


def has_kind(t: Term, *kinds: str) -> bool:
    return any(g.kind in kinds for g in generators(t))


def depth(t: Term) -> int:
    kids = t.children()
    return 1 + max((depth(k) for k in kids), default=0)
