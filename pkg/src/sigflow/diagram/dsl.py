"""Text syntax for diagram terms.

Grammar::

    term   := tensor (';' tensor)*          # ';' = first, then
    tensor := atom ('*' atom)*
    atom   := 'id[' nat ']' | 'swap' | 'add' | 'zero' | 'dup' | 'del'
            | 'cup' | 'cap' | 'int' | 'scale(' scalar ')' | atom '~'
            | '(' term ')'

``#`` starts a comment that runs to the end of the line.
"""
from __future__ import annotations

from ..errors import ArityError, DiagramSyntaxError
from ..exactalg.poly import parse_ratfunc
from .dualities import dagger_term
from .terms import Compose, Gen, Id, Swap, Tensor, Term, compose, gen, tensor

_NAMES = ("swap", "add", "zero", "dup", "del", "cup", "cap", "int")


def _strip_comments(text: str) -> str:
    # keep offsets stable by blanking comments instead of removing them
    out = []
    for line in text.split("\n"):
        i = line.find("#")
        out.append(line if i < 0 else line[:i] + " " * (len(line) - i))
    return "\n".join(out)


class _Parser:
    def __init__(self, text: str, allow_s: bool):
        self.src = text
        self.text = _strip_comments(text)
        self.i = 0
        self.allow_s = allow_s

    def ws(self) -> None:
        while self.i < len(self.text) and self.text[self.i].isspace():
            self.i += 1

    def fail(self, msg: str, pos: int | None = None):
        raise DiagramSyntaxError(msg, self.i if pos is None else pos)

    def parse(self) -> Term:
        self.ws()
        if self.i >= len(self.text):
            self.fail("empty diagram")
        t = self.term()
        self.ws()
        if self.i < len(self.text):
            self.fail(f"unexpected {self.text[self.i]!r}")
        return t

    def term(self) -> Term:
        start = self.i
        parts = [self.tensor()]
        while True:
            self.ws()
            if self.text.startswith(";", self.i):
                self.i += 1
                parts.append(self.tensor())
            else:
                break
        try:
            return compose(*parts)
        except ArityError as e:
            raise ArityError(f"{e} (in subterm starting at position {start})") from None

    def tensor(self) -> Term:
        parts = [self.atom()]
        while True:
            self.ws()
            if self.text.startswith("*", self.i):
                self.i += 1
                parts.append(self.atom())
            else:
                break
        return tensor(*parts)

    def atom(self) -> Term:
        self.ws()
        t = self.primary()
        while True:
            self.ws()
            if self.text.startswith("~", self.i):
                self.i += 1
                t = dagger_term(t)
            else:
                return t

    def primary(self) -> Term:
        txt, i = self.text, self.i
        if i >= len(txt):
            self.fail("unexpected end of input")
        if txt[i] == "(":
            self.i += 1
            t = self.term()
            self.ws()
            if not self.text.startswith(")", self.i):
                self.fail("expected ')'")
            self.i += 1
            return t
        if txt.startswith("id", i) and not txt[i + 2 : i + 3].isalnum():
            self.i += 2
            self.ws()
            if not self.text.startswith("[", self.i):
                self.fail("expected '[' after id")
            self.i += 1
            self.ws()
            j = self.i
            while self.i < len(txt) and txt[self.i].isdigit():
                self.i += 1
            if j == self.i:
                self.fail("expected a natural number")
            n = int(txt[j : self.i])
            self.ws()
            if not self.text.startswith("]", self.i):
                self.fail("expected ']'")
            self.i += 1
            return Id(n)
        if txt.startswith("scale", i) and not txt[i + 5 : i + 6].isalnum():
            self.i += 5
            self.ws()
            if not self.text.startswith("(", self.i):
                self.fail("expected '(' after scale")
            open_pos = self.i
            depth = 0
            j = self.i
            while j < len(txt):
                if txt[j] == "(":
                    depth += 1
                elif txt[j] == ")":
                    depth -= 1
                    if depth == 0:
                        break
                j += 1
            if j >= len(txt):
                self.fail("unbalanced parentheses in scale", open_pos)
            body = txt[open_pos + 1 : j]
            try:
                c = parse_ratfunc(body)
            except (ValueError, ZeroDivisionError) as e:
                self.fail(f"bad scalar {body.strip()!r}: {e}", open_pos + 1)
            if not c.is_constant() and not self.allow_s:
                self.fail("rational-function scalars need the qs field", open_pos + 1)
            self.i = j + 1
            return gen("scale", c)
        for name in _NAMES:
            if txt.startswith(name, i) and not txt[i + len(name) : i + len(name) + 1].isalnum():
                self.i += len(name)
                return Swap() if name == "swap" else gen(name)
        self.fail("expected a generator, id[n], scale(...) or '('")


def parse(text: str, allow_s: bool = True) -> Term:
    """Parse DSL text into a normalized term."""
    return _Parser(text, allow_s).parse()


def print_term(t: Term, level: int = 0) -> str:
    """Inverse of ``parse`` up to normalization.  Levels: 0 term, 1 tensor, 2 atom."""
    if isinstance(t, Gen):
        lab = t.label
        base = f"scale({lab.const})" if lab.kind == "scale" else lab.kind
        return base + ("~" if lab.daggered else "")
    if isinstance(t, Id):
        return f"id[{t.n}]"
    if isinstance(t, Swap):
        return "swap"
    if isinstance(t, Compose):
        parts = []
        while isinstance(t, Compose):
            parts.append(t.first)
            t = t.then
        parts.append(t)
        s = " ; ".join(print_term(p, 1) for p in parts)
        return s if level == 0 else f"({s})"
    if isinstance(t, Tensor):
        parts = []
        while isinstance(t, Tensor):
            parts.append(t.left)
            t = t.right
        parts.append(t)
        s = " * ".join(print_term(p, 2) for p in parts)
        return s if level <= 1 else f"({s})"
    raise TypeError(t)
