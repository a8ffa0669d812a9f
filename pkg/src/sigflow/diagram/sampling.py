"""Random well-typed terms, matrices, relations and systems for property checks."""
from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from ..exactalg import Field, Matrix
from .terms import Id, Swap, Term, compose, gen, tensor

MAP_KINDS = ("add", "zero", "dup", "del", "scale")
ALL_KINDS = ("add", "zero", "dup", "del", "scale", "cup", "cap", "int")
DEFAULT_CONSTS = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(3), Fraction(1, 2), Fraction(-2, 3))


class TermSampler:
    """Arity-directed generator: every sampled term type-checks by construction."""

    def __init__(self, rng: random.Random, kinds: Sequence[str] = ALL_KINDS, daggers: bool = True,
                 consts: Sequence = DEFAULT_CONSTS, max_width: int = 4, swaps: bool = True):
        self.rng = rng
        self.consts = list(consts)
        self.max_width = max_width
        atoms = []
        for k in kinds:
            atoms.append((k, False))
            if daggers and k not in ("cup", "cap"):
                atoms.append((k, True))
        self.atoms = atoms
        self.swaps = swaps

    def _atom(self, kind: str, dag: bool) -> Term:
        if kind == "id":
            return Id(1)
        if kind == "swap":
            return Swap()
        c = self.rng.choice(self.consts) if kind == "scale" else None
        return gen(kind, c, dag)

    def _arity(self, kind: str, dag: bool) -> tuple[int, int]:
        if kind == "id":
            return 1, 1
        if kind == "swap":
            return 2, 2
        return gen(kind, 1 if kind == "scale" else None, dag).label.arity

    def layer(self, dom: int) -> Term:
        rng = self.rng
        choices = self.atoms + [("id", False)] + ([("swap", False)] if self.swaps else [])
        parts = []
        remaining, width = dom, 0
        while remaining > 0 or (not parts and dom == 0):
            cands = []
            for k, d in choices:
                a, b = self._arity(k, d)
                if a > remaining or (a == 0 and remaining > 0 and rng.random() < 0.7):
                    continue
                if width + b + (remaining - a) > self.max_width and b > a:
                    continue
                cands.append((k, d))
            if not cands:
                cands = [("id", False)] if remaining else [("zero", False)]
            k, d = rng.choice(cands)
            a, b = self._arity(k, d)
            parts.append(self._atom(k, d))
            remaining -= a
            width += b
        return tensor(*parts)

    def term(self, dom: int, depth: int) -> Term:
        rng = self.rng
        if depth <= 1 or rng.random() < 0.25:
            return self.layer(dom)
        if dom >= 2 and rng.random() < 0.35:
            d1 = rng.randint(1, dom - 1)
            return tensor(self.term(d1, depth - 1), self.term(dom - d1, depth - 1))
        f = self.term(dom, depth - 1)
        g = self.term(f.cod, depth - 1)
        return compose(f, g)


def random_term(rng: random.Random, depth: int = 5, dom: Optional[int] = None, **kw) -> Term:
    if dom is None:
        dom = rng.randint(0, 3)
    return TermSampler(rng, **kw).term(dom, depth)


def random_matrix(rng: random.Random, F: Field, rows: int, cols: int, lo: int = -3, hi: int = 3) -> Matrix:
    return Matrix(F, rows, cols, [F.coerce(rng.randint(lo, hi)) for _ in range(rows * cols)], True)


def random_relation(rng: random.Random, F: Field, m: int, n: int, lo: int = -3, hi: int = 3):
    """Span of a random number of random vectors, biased toward sparse entries."""
    from ..relation import rel_from_span

    k = rng.randint(0, m + n)
    vals = [0, 0, 1, -1] + list(range(lo, hi + 1))
    data = [F.coerce(rng.choice(vals)) for _ in range(k * (m + n))]
    return rel_from_span(m, n, Matrix(F, k, m + n, data, True))


def random_system(rng: random.Random, F: Field, n: int, m: int, p: int, lo: int = -3, hi: int = 3):
    from ..statebox import StatefulMorphism

    return StatefulMorphism(
        random_matrix(rng, F, n, n, lo, hi),
        random_matrix(rng, F, n, m, lo, hi),
        random_matrix(rng, F, p, n, lo, hi),
        random_matrix(rng, F, p, m, lo, hi),
    )
