"""Coding gadgets: pairs and finite sequences of naturals as naturals, words
as sequences over a parameter set, and (set, set-of-sequences) pairs as a
single set of sequences.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt
from typing import Hashable, Iterable, Sequence

from .errors import AmbiguousCode, EmptyA, TooFewParams
from .words import Param, Var, Word


def pair_code(x: int, y: int) -> int:
    """Cantor pairing (x + y)(x + y + 1)/2 + y."""
    if x < 0 or y < 0:
        raise ValueError("pair_code takes naturals")
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(z: int) -> tuple[int, int]:
    if z < 0:
        raise ValueError("unpair takes a natural")
    s = (isqrt(8 * z + 1) - 1) // 2
    y = z - s * (s + 1) // 2
    return s - y, y


def seq_code(s: Sequence[int]) -> int:
    """Bijection from finite sequences of naturals onto the naturals.

    [] -> 0; otherwise 1 + pair(len - 1, nest(s)) where nest folds the
    entries right to left with the pairing function.
    """
    s = list(s)
    if not s:
        return 0
    acc = s[-1]
    for v in reversed(s[:-1]):
        acc = pair_code(v, acc)
    return 1 + pair_code(len(s) - 1, acc)


def seq_decode(code: int) -> list[int]:
    if code < 0:
        raise ValueError("seq_decode takes a natural")
    if code == 0:
        return []
    n_minus_1, acc = unpair(code - 1)
    out = []
    for _ in range(n_minus_1):
        v, acc = unpair(acc)
        out.append(v)
    out.append(acc)
    return out


def zigzag(n: int) -> int:
    """0, -1, 1, -2, 2, ... -> 0, 1, 2, 3, 4, ..."""
    return 2 * n if n >= 0 else -2 * n - 1


def unzigzag(k: int) -> int:
    return k // 2 if k % 2 == 0 else -(k + 1) // 2


@dataclass(frozen=True)
class CodedSeq:
    """A finite sequence stored run-length encoded.

    Word codes contain blocks a^k with k an iterated pairing value, far too
    long to materialise, so the sequence is kept as ``(symbol, count)`` runs
    with adjacent equal symbols merged and empty runs dropped.
    """

    runs: tuple[tuple[Hashable, int], ...]

    @classmethod
    def from_runs(cls, runs: Iterable[tuple[Hashable, int]]) -> "CodedSeq":
        merged: list[tuple[Hashable, int]] = []
        for sym, n in runs:
            if n < 0:
                raise ValueError("negative run length")
            if n == 0:
                continue
            if merged and merged[-1][0] == sym:
                merged[-1] = (sym, merged[-1][1] + n)
            else:
                merged.append((sym, n))
        return cls(tuple(merged))

    @classmethod
    def from_list(cls, items: Iterable[Hashable]) -> "CodedSeq":
        return cls.from_runs((s, 1) for s in items)

    def __len__(self) -> int:
        return sum(n for _, n in self.runs)

    def symbols(self) -> set:
        return {s for s, _ in self.runs}

    def to_list(self, limit: int = 10**6) -> list:
        if len(self) > limit:
            raise OverflowError(f"sequence of length {len(self)} is too long to list")
        return [s for s, n in self.runs for _ in range(n)]


class _Cursor:
    def __init__(self, seq: CodedSeq):
        self.runs = list(seq.runs)
        self.i = 0
        self.used = 0  # consumed from runs[i]

    def done(self) -> bool:
        return self.i >= len(self.runs)

    def take_run(self, sym: Hashable) -> int:
        """Consume the maximal block of ``sym`` at the cursor, return its size."""
        if self.done() or self.runs[self.i][0] != sym:
            return 0
        n = self.runs[self.i][1] - self.used
        self.i += 1
        self.used = 0
        return n

    def take_one(self) -> Hashable:
        if self.done():
            raise ValueError("unexpected end of code")
        sym, n = self.runs[self.i]
        self.used += 1
        if self.used == n:
            self.i += 1
            self.used = 0
        return sym

    def rest(self) -> list:
        out = []
        while not self.done():
            out.append(self.take_one())
        return out


def encode_word(w: Word, a: int, b: int, A: Iterable[int] | None = None) -> CodedSeq:
    """Code a one-variable word as a^k b a^m b p_1 ... p_r over A.

    m codes the exponent sequence (variables carry their exponent, zigzagged
    to a natural; each parameter contributes exponent 1), k codes the
    positions of the variable tokens, and p_1..p_r lists the parameters in
    order of appearance.
    """
    if a == b:
        raise TooFewParams("the code needs two distinct parameters a != b")
    if A is not None:
        pool = set(A)
        if len(pool) < 2:
            raise TooFewParams("A has fewer than two elements")
        if a not in pool or b not in pool:
            raise TooFewParams("a and b must belong to A")
    if w.variables() - {"x"}:
        raise ValueError("encode_word takes one-variable words")
    exps, positions, params = [], [], []
    for i, t in enumerate(w.tokens):
        if isinstance(t, Var):
            exps.append(zigzag(t.exp))
            positions.append(i)
        else:
            exps.append(zigzag(1))
            params.append(t.elem)
    k, m = seq_code(positions), seq_code(exps)
    return CodedSeq.from_runs([(a, k), (b, 1), (a, m), (b, 1)] + [(p, 1) for p in params])


def decode_word(code: CodedSeq, a: int, b: int) -> Word:
    cur = _Cursor(code)
    k = cur.take_run(a)
    if cur.take_one() != b:
        raise ValueError("malformed word code: expected b after a^k")
    m = cur.take_run(a)
    if cur.take_one() != b:
        raise ValueError("malformed word code: expected b after a^m")
    params = cur.rest()
    positions = seq_decode(k)
    exps = seq_decode(m)
    var_at = set(positions)
    toks = []
    pi = iter(params)
    for i, e in enumerate(exps):
        if i in var_at:
            toks.append(Var("x", unzigzag(e)))
        else:
            try:
                toks.append(Param(next(pi)))
            except StopIteration:
                raise ValueError("malformed word code: too few parameters") from None
    if next(pi, None) is not None:
        raise ValueError("malformed word code: too many parameters")
    return Word(tuple(toks))


def encode_set_pair(a: Iterable[Hashable], b: Iterable[Sequence]) -> frozenset[tuple]:
    """c = {x^y : x in a, y in b} with x^y the sequence x followed by y."""
    a = set(a)
    if not a:
        raise EmptyA("the first component must be nonempty")
    return frozenset((x,) + tuple(y) for x in a for y in b)


def decode_set_pair(c: Iterable[Sequence]) -> tuple[frozenset, frozenset[tuple]]:
    c = [tuple(s) for s in c]
    if not c:
        # (a, {}) codes to {} for every a, so nothing can be recovered
        raise AmbiguousCode("the empty code does not determine the first component")
    return frozenset(s[0] for s in c), frozenset(s[1:] for s in c)


def encode_fragment(words: Iterable[Word], a: int, b: int) -> frozenset[CodedSeq]:
    """A type fragment as a set of coded sequences over the parameters."""
    return frozenset(encode_word(w, a, b) for w in words)
