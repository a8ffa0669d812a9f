"""The dagger and star dualities on terms."""
from __future__ import annotations

from .terms import Compose, Gen, Id, Swap, Tensor, Term, compose, gen, scale, tensor


def dagger_term(t: Term) -> Term:
    """Turn a diagram upside down: reverse composites, flip each label."""
    if isinstance(t, Gen):
        return Gen(t.label.dagger())
    if isinstance(t, (Id, Swap)):
        return t
    if isinstance(t, Compose):
        return compose(dagger_term(t.then), dagger_term(t.first))
    if isinstance(t, Tensor):
        return tensor(dagger_term(t.left), dagger_term(t.right))
    raise TypeError(t)


def _star_gen(kind: str, const) -> Term:
    if kind == "add":
        return gen("dup")
    if kind == "dup":
        return gen("add")
    if kind == "zero":
        return gen("del")
    if kind == "del":
        return gen("zero")
    if kind == "scale":
        return scale(const)
    if kind == "int":
        return gen("int")
    neg = tensor(scale(-1), Id(1))
    if kind == "cap":
        return compose(neg, gen("cup"))
    if kind == "cup":
        return compose(gen("cap"), neg)
    raise TypeError(kind)


def star_term(t: Term) -> Term:
    """Turn a diagram upside down while swapping the two colors."""
    if isinstance(t, Gen):
        lab = t.label
        base = _star_gen(lab.kind, lab.const)
        return dagger_term(base) if lab.daggered else base
    if isinstance(t, (Id, Swap)):
        return t
    if isinstance(t, Compose):
        return compose(star_term(t.then), star_term(t.first))
    if isinstance(t, Tensor):
        return tensor(star_term(t.left), star_term(t.right))
    raise TypeError(t)
