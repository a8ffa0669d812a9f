"""The equational presentation as data, plus one-step rewriting."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from ..errors import BadPath, NoMatch
from ..exactalg import Field
from .dsl import parse
from .terms import Compose, Tensor, Term, compose, compose_stages, generators, tensor, tensor_factors

DEFAULT_SAMPLE = (Fraction(0), Fraction(1), Fraction(-1), Fraction(2), Fraction(3))


@dataclass(frozen=True)
class Rule:
    id: str
    lhs: Term
    rhs: Term
    constraint: Optional[str] = None
    params: tuple = field(default_factory=tuple)

    def applies_in(self, F: Field) -> bool:
        """Side condition and representability of every constant in ``F``."""
        try:
            for t in (self.lhs, self.rhs):
                for lab in generators(t):
                    if lab.kind == "scale":
                        F.coerce(lab.const)
            vals = {k: F.coerce(v) for k, v in self.params}
        except (ZeroDivisionError, TypeError, ValueError):
            return False
        if self.constraint == "c != 0":
            return not F.is_zero(vals["c"])
        if self.constraint == "c != 1":
            return not F.is_zero(F.sub(vals["c"], F.one))
        return True


_FIXED = [
    ("1", "(zero * id[1]) ; add", "id[1]"),
    ("2", "(id[1] * add) ; add", "(add * id[1]) ; add"),
    ("3", "swap ; add", "add"),
    ("4", "dup ; (del * id[1])", "id[1]"),
    ("5", "dup ; (dup * id[1])", "dup ; (id[1] * dup)"),
    ("6", "dup ; swap", "dup"),
    ("7", "add ; dup", "(dup * dup) ; (id[1] * swap * id[1]) ; (add * add)"),
    ("8", "zero ; dup", "zero * zero"),
    ("9", "add ; del", "del * del"),
    ("10", "zero ; del", "id[0]"),
    ("13", "scale(1)", "id[1]"),
    ("14", "scale(0)", "del ; zero"),
    ("19", "(id[1] * cap) ; (cup * id[1])", "id[1]"),
    ("20", "(cap * id[1]) ; (id[1] * cup)", "id[1]"),
    ("21", "(id[1] * add~) ; (add * id[1])", "add ; add~"),
    ("22", "add ; add~", "(add~ * id[1]) ; (id[1] * add)"),
    ("23", "(id[1] * dup) ; (dup~ * id[1])", "dup~ ; dup"),
    ("24", "dup~ ; dup", "(dup * id[1]) ; (id[1] * dup~)"),
    ("25", "add~ ; add", "id[1]"),
    ("26", "zero ; zero~", "id[0]"),
    ("27", "dup ; dup~", "id[1]"),
    ("28", "del~ ; del", "id[0]"),
    ("29", "(scale(-1) * id[1]) ; cup", "add ; zero~"),
    ("30", "cap", "del~ ; dup"),
    ("D1", "del", "dup ; cup"),
    ("D2", "zero", "cap ; dup~ ; scale(0)"),
    ("D3", "(scale(-1) * add~) ; (cup * id[1])", "add"),
    ("D4", "(cap * id[1]) ; (id[1] * dup~)", "dup"),
    ("D5", "(id[1] * dup~) ; add", "(dup * id[2]) ; (id[1] * swap * id[1]) ; (add * add) ; dup~"),
    ("D6", "dup ; (zero~ * id[1])", "zero~ ; zero"),
    ("D7", "(del~ * id[1]) ; add", "del ; del~"),
    ("D10", "cup", "(scale(-1) * id[1]) ; add ; zero~"),
    ("braid", "swap", "(dup * dup) ; (scale(-1) * add * scale(-1)) ; (id[1] * dup * id[1]) ; (add * add)"),
    ("antipode-l", "dup ; (scale(-1) * id[1]) ; add", "del ; zero"),
    ("antipode-r", "dup ; (id[1] * scale(-1)) ; add", "del ; zero"),
    ("antipode-bent", "(id[1] * del~) ; (id[1] * dup) ; (add * id[1]) ; (zero~ * id[1])", "scale(-1)"),
]


def _fmt(c: Fraction) -> str:
    return str(c)


def equation_library(sample: Sequence = DEFAULT_SAMPLE) -> list[Rule]:
    """All rules, with scale-parameterized schemas instantiated over ``sample``."""
    cs = [Fraction(c) for c in sample]
    rules = [Rule(i, parse(l), parse(r)) for i, l, r in _FIXED]
    for b in cs:
        for c in cs:
            rules.append(Rule(f"11[b={b},c={c}]", parse(f"scale({c}) ; scale({b})"), parse(f"scale({b * c})"),
                              params=(("b", b), ("c", c))))
    for b in cs:
        for c in cs:
            rules.append(Rule(f"12[b={b},c={c}]", parse(f"scale({b + c})"),
                              parse(f"dup ; (scale({b}) * scale({c})) ; add"), params=(("b", b), ("c", c))))
    schemas = [
        ("15", "(scale(c) * scale(c)) ; add", "add ; scale(c)", None),
        ("16", "zero ; scale(c)", "zero", None),
        ("17", "dup ; (scale(c) * scale(c))", "scale(c) ; dup", None),
        ("18", "scale(c) ; del", "del", None),
        ("31", "scale(c)~", "scale(1/c)", "c != 0"),
        ("D8", "add~ ; (id[1] * scale(c)) ; add", "del ; del~", "c != 1"),
        ("D9", "dup ; (id[1] * scale(c)) ; dup~", "zero~ ; zero", "c != 1"),
    ]
    for rid, l, r, cond in schemas:
        for c in cs:
            if cond == "c != 0" and c == 0:
                continue
            if cond == "c != 1" and c == 1:
                continue
            sub = lambda s: s.replace("1/c", f"{1 / c if c else 0}").replace("c)", f"{c})")
            rules.append(Rule(f"{rid}[c={c}]", parse(sub(l)), parse(sub(r)), cond, (("c", c),)))
    order = {k: i for i, k in enumerate(
        ["1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12", "13", "14", "15", "16", "17", "18",
         "19", "20", "21", "22", "23", "24", "25", "26", "27", "28", "29", "30", "31",
         "D1", "D2", "D3", "D4", "D5", "D6", "D7", "D8", "D9", "D10",
         "braid", "antipode-l", "antipode-r", "antipode-bent"])}
    rules.sort(key=lambda r: order[r.id.split("[")[0]])
    return rules


def rule_by_id(rule_id: str, library: Optional[Iterable[Rule]] = None) -> Rule:
    for r in library if library is not None else equation_library():
        if r.id == rule_id:
            return r
    raise KeyError(f"no rule {rule_id!r}")


def subterm(t: Term, path: Sequence[int]) -> Term:
    for i in path:
        kids = t.children()
        if not (0 <= i < len(kids)):
            raise BadPath(f"path {tuple(path)} leaves the term")
        t = kids[i]
    return t


def replace_at(t: Term, path: Sequence[int], new: Term) -> Term:
    if not path:
        return new
    kids = list(t.children())
    i = path[0]
    if not (0 <= i < len(kids)):
        raise BadPath(f"path {tuple(path)} leaves the term")
    kids[i] = replace_at(kids[i], path[1:], new)
    return compose(*kids) if isinstance(t, Compose) else tensor(*kids)


def match_side(sub: Term, side: Term, other: Term) -> Optional[Term]:
    """Replacement for ``sub`` if ``side`` matches it (whole or as a prefix)."""
    if sub == side:
        return other
    if isinstance(sub, Compose) and isinstance(side, Compose):
        ss, ps = compose_stages(sub), compose_stages(side)
        if len(ps) < len(ss) and ss[: len(ps)] == ps:
            return compose(other, *ss[len(ps):])
    if isinstance(sub, Tensor) and isinstance(side, Tensor):
        sf, pf = tensor_factors(sub), tensor_factors(side)
        if len(pf) < len(sf) and sf[: len(pf)] == pf:
            return tensor(other, *sf[len(pf):])
    return None


def _sides(rule: Rule, direction: str) -> tuple[Term, Term]:
    if direction in ("lr", "forward", "->"):
        return rule.lhs, rule.rhs
    if direction in ("rl", "backward", "<-"):
        return rule.rhs, rule.lhs
    raise ValueError(f"bad direction {direction!r}")


def apply_equation(t: Term, path: Sequence[int], rule_id: str, direction: str = "lr",
                   library: Optional[Iterable[Rule]] = None) -> Term:
    """Rewrite the subterm at ``path`` with one rule in one direction."""
    rule = rule_id if isinstance(rule_id, Rule) else rule_by_id(rule_id, library)
    side, other = _sides(rule, direction)
    sub = subterm(t, path)
    new = match_side(sub, side, other)
    if new is None:
        raise NoMatch(f"rule {rule.id} ({direction}) does not match {sub}")
    return replace_at(t, path, new)


def rewrite_sites(t: Term, library: Iterable[Rule], field: Optional[Field] = None,
                  skip_trivial_ids: bool = True) -> list[tuple[tuple[int, ...], Rule, str]]:
    """Every (path, rule, direction) at which a rewrite applies."""
    from .terms import Id, walk

    index_whole: dict = {}
    index_c: dict = {}
    index_t: dict = {}
    for rule in library:
        if field is not None and not rule.applies_in(field):
            continue
        for d in ("lr", "rl"):
            side, _ = _sides(rule, d)
            if skip_trivial_ids and isinstance(side, Id):
                continue
            index_whole.setdefault(side, []).append((rule, d))
            if isinstance(side, Compose):
                index_c.setdefault(side.first, []).append((rule, d))
            if isinstance(side, Tensor):
                index_t.setdefault(side.left, []).append((rule, d))
    out = []
    for path, sub in walk(t):
        cands = list(index_whole.get(sub, ()))
        if isinstance(sub, Compose):
            cands += index_c.get(sub.first, ())
        if isinstance(sub, Tensor):
            cands += index_t.get(sub.left, ())
        seen = set()
        for rule, d in cands:
            if (rule.id, d) in seen:
                continue
            seen.add((rule.id, d))
            side, other = _sides(rule, d)
            if match_side(sub, side, other) is not None:
                out.append((path, rule, d))
    return out


def random_rewrite(t: Term, rng: random.Random, library: Sequence[Rule], field: Optional[Field] = None,
                   exclude: Iterable[str] = ()) -> tuple[Term, tuple]:
    """Apply one uniformly chosen applicable rewrite; returns (term, (path, rule id, direction))."""
    ex = set(exclude)
    sites = [s for s in rewrite_sites(t, library, field) if s[1].id.split("[")[0] not in ex]
    if not sites:
        raise NoMatch("no applicable rewrite")
    path, rule, d = rng.choice(sites)
    return apply_equation(t, path, rule, d), (path, rule.id, d)
