"""Group words in up to two variables with parameters.

A word is a tuple of tokens, each ``Var(name, exp)`` with name ``"x"`` or
``"y"`` and a nonzero exponent, or ``Param(elem)`` naming a group element.
Length counts letters: ``|exp|`` for a variable token and 1 for a parameter.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence, Union

from .errors import MissingYValue, ParamOutsideA
from .groups import Group

VARIABLES = ("x", "y")


class Var(NamedTuple):
    name: str
    exp: int


class Param(NamedTuple):
    elem: int


Token = Union[Var, Param]


def _token_key(t: Token) -> tuple:
    if isinstance(t, Var):
        return (0, t.name, abs(t.exp), t.exp < 0)
    return (1, t.elem)


def _reduce_tokens(tokens: Iterable[Token], group: Group | None) -> tuple[Token, ...]:
    stack: list[Token] = []
    for tok in tokens:
        if isinstance(tok, Var):
            if tok.exp == 0:
                continue
            top = stack[-1] if stack else None
            if isinstance(top, Var) and top.name == tok.name:
                e = top.exp + tok.exp
                stack.pop()
                if e:
                    stack.append(Var(tok.name, e))
            else:
                stack.append(tok)
        else:
            if group is None:
                stack.append(tok)
                continue
            if tok.elem == 0:
                continue
            top = stack[-1] if stack else None
            if isinstance(top, Param):
                c = group.mul(top.elem, tok.elem)
                stack.pop()
                if c:
                    stack.append(Param(c))
            else:
                stack.append(tok)
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    tokens: tuple[Token, ...] = ()

    @classmethod
    def var(cls, name: str = "x", exp: int = 1) -> "Word":
        if name not in VARIABLES:
            raise ValueError(f"unknown variable {name!r}")
        return cls((Var(name, exp),) if exp else ())

    @classmethod
    def param(cls, elem: int) -> "Word":
        return cls((Param(int(elem)),))

    @classmethod
    def of(cls, *parts: Union[str, int, tuple]) -> "Word":
        """Shorthand: ``Word.of("x", 3, ("x", -1))`` is x * p3 * x^-1."""
        toks: list[Token] = []
        for p in parts:
            if isinstance(p, str):
                toks.append(Var(p, 1))
            elif isinstance(p, tuple):
                toks.append(Var(p[0], p[1]))
            else:
                toks.append(Param(int(p)))
        return cls(tuple(toks))

    def __len__(self) -> int:
        return sum(abs(t.exp) if isinstance(t, Var) else 1 for t in self.tokens)

    @property
    def length(self) -> int:
        return len(self)

    def __mul__(self, other: "Word") -> "Word":
        return Word(_reduce_tokens(self.tokens + other.tokens, None))

    def inverse(self) -> "Word":
        out: list[Token] = []
        for t in reversed(self.tokens):
            if isinstance(t, Var):
                out.append(Var(t.name, -t.exp))
            else:
                out.append(Param(t.elem))
        return Word(tuple(out))

    def inverse_in(self, group: Group) -> "Word":
        """Inverse with parameters inverted in ``group``."""
        out: list[Token] = []
        for t in reversed(self.tokens):
            out.append(Var(t.name, -t.exp) if isinstance(t, Var) else Param(group.inv(t.elem)))
        return Word(tuple(out))

    def variables(self) -> set[str]:
        return {t.name for t in self.tokens if isinstance(t, Var)}

    def params(self) -> list[int]:
        return [t.elem for t in self.tokens if isinstance(t, Param)]

    def reduce(self, group: Group | None = None) -> "Word":
        return Word(_reduce_tokens(self.tokens, group))

    def is_reduced(self, group: Group | None = None) -> bool:
        return self.reduce(group).tokens == self.tokens

    def substitute(self, name: str, replacement: "Word", group: Group | None = None) -> "Word":
        """Replace each occurrence of a variable by a word (powers expanded).

        Negative powers need the replacement's inverse, and inverting a
        parameter needs ``group`` unless the replacement has none.
        """
        if group is None and replacement.params():
            inverse = None
        else:
            inverse = replacement.inverse_in(group) if group is not None else replacement.inverse()
        out: list[Token] = []
        for t in self.tokens:
            if isinstance(t, Var) and t.name == name:
                if t.exp < 0 and inverse is None:
                    raise ValueError("inverting a parameter needs the group")
                piece = replacement if t.exp > 0 else inverse
                for _ in range(abs(t.exp)):
                    out.extend(piece.tokens)
            else:
                out.append(t)
        return Word(_reduce_tokens(out, None))

    def sort_key(self) -> tuple:
        return (len(self), tuple(_token_key(t) for t in self.tokens))

    def __str__(self) -> str:
        if not self.tokens:
            return "e"
        parts = []
        for t in self.tokens:
            if isinstance(t, Var):
                parts.append(t.name if t.exp == 1 else f"{t.name}^{t.exp}")
            else:
                parts.append(f"a{t.elem}")
        return "*".join(parts)


def evaluate_word(
    G: Group,
    w: Word,
    x_val: int,
    y_val: int | None = None,
    A: Iterable[int] | None = None,
) -> int:
    """Value of ``w`` in G with x -> x_val, y -> y_val."""
    allowed = None if A is None else set(A)
    rows, inv = G.rows, G.inverse
    out = 0
    for t in w.tokens:
        if isinstance(t, Param):
            if allowed is not None and t.elem not in allowed:
                raise ParamOutsideA(f"parameter {t.elem} is not in A")
            out = rows[out][t.elem]
            continue
        if t.name == "x":
            v = x_val
        elif y_val is None:
            raise MissingYValue("word uses y but no value was given")
        else:
            v = y_val
        if t.exp < 0:
            v = inv[v]
        for _ in range(abs(t.exp)):
            out = rows[out][v]
    return out


def enumerate_reduced_words(
    params: Sequence[int],
    max_len: int,
    variables: Sequence[str] = ("x",),
    adjacent_params: bool = False,
) -> Iterator[Word]:
    """All reduced nonempty words of length <= max_len, in length order.

    With ``adjacent_params=False`` (the in-group normal form) two parameters
    never sit next to each other, since they would multiply into one.
    """
    params = [p for p in params]
    letters: list[Token] = []
    for v in variables:
        letters += [Var(v, 1), Var(v, -1)]
    letters += [Param(p) for p in params]

    frontier: list[tuple[Token, ...]] = [()]
    for _ in range(max_len):
        nxt: list[tuple[Token, ...]] = []
        for toks in frontier:
            last = toks[-1] if toks else None
            for letter in letters:
                if isinstance(letter, Var):
                    if isinstance(last, Var) and last.name == letter.name:
                        if (last.exp > 0) != (letter.exp > 0):
                            continue  # would cancel
                        cand = toks[:-1] + (Var(last.name, last.exp + letter.exp),)
                    else:
                        cand = toks + (letter,)
                else:
                    if isinstance(last, Param) and not adjacent_params:
                        continue
                    cand = toks + (letter,)
                nxt.append(cand)
        for toks in nxt:
            yield Word(toks)
        frontier = nxt
