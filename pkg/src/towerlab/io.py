"""Plain-text formats.

Cayley table (``.cay``)::

    cayley S3 6
    0 1 2 3 4 5
    ...

Permutation list (written by ``towerlab aut --out``)::

    perms Aut(S3) 6 6
    0 1 2 3 4 5
    ...

Relational structure (``.fostruct``)::

    structure C4 4
    relation E 2 8
    0 1
    ...

Blank lines and ``#`` comments are ignored everywhere.
"""

from __future__ import annotations

from pathlib import Path
from typing import Iterable, Sequence

from .errors import FormatError, GroupError
from .groups import Group, validate_group
from .structures import Relation, Structure


def _lines(text: str) -> list[list[str]]:
    out = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            out.append(line.split())
    return out


def _ints(fields: list[str], where: str) -> list[int]:
    try:
        return [int(f) for f in fields]
    except ValueError:
        raise FormatError(f"{where}: expected integers, got {' '.join(fields)!r}") from None


def parse_cayley(text: str) -> Group:
    lines = _lines(text)
    if not lines or lines[0][0] != "cayley" or len(lines[0]) != 3:
        raise FormatError("first line must be 'cayley <name> <order>'")
    name = lines[0][1]
    (n,) = _ints(lines[0][2:], "header")
    rows = [_ints(f, f"row {i}") for i, f in enumerate(lines[1:])]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise FormatError(f"expected {n} rows of {n} entries")
    return validate_group(rows, name)


def format_cayley(G: Group) -> str:
    out = [f"cayley {G.name} {G.order}"]
    out += [" ".join(map(str, row)) for row in G.rows]
    return "\n".join(out) + "\n"


def read_cayley(path: str | Path) -> Group:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_cayley(text)
    except GroupError:
        raise
    except (ValueError, IndexError) as exc:
        raise FormatError(str(exc)) from None


def write_cayley(G: Group, path: str | Path) -> None:
    Path(path).write_text(format_cayley(G), encoding="utf-8")


def format_perms(name: str, perms: Sequence[Sequence[int]], degree: int) -> str:
    out = [f"perms {name} {len(perms)} {degree}"]
    out += [" ".join(map(str, p)) for p in perms]
    return "\n".join(out) + "\n"


def parse_perms(text: str) -> tuple[str, list[tuple[int, ...]]]:
    lines = _lines(text)
    if not lines or lines[0][0] != "perms" or len(lines[0]) != 4:
        raise FormatError("first line must be 'perms <name> <count> <degree>'")
    count, degree = _ints(lines[0][2:], "header")
    perms = [tuple(_ints(f, "permutation")) for f in lines[1:]]
    if len(perms) != count or any(sorted(p) != list(range(degree)) for p in perms):
        raise FormatError(f"expected {count} permutations of 0..{degree - 1}")
    return lines[0][1], perms


def parse_structure(text: str) -> Structure:
    lines = _lines(text)
    if not lines or lines[0][0] != "structure" or len(lines[0]) != 3:
        raise FormatError("first line must be 'structure <name> <size>'")
    name = lines[0][1]
    (m,) = _ints(lines[0][2:], "header")
    rels = []
    i = 1
    while i < len(lines):
        head = lines[i]
        if head[0] != "relation" or len(head) != 4:
            raise FormatError(f"expected 'relation <name> <arity> <count>', got {' '.join(head)!r}")
        arity, count = _ints(head[2:], "relation header")
        body = lines[i + 1 : i + 1 + count]
        if len(body) != count:
            raise FormatError(f"relation {head[1]} promises {count} tuples")
        tuples = []
        for f in body:
            t = tuple(_ints(f, f"relation {head[1]}"))
            if len(t) != arity:
                raise FormatError(f"relation {head[1]}: tuple {t} is not of arity {arity}")
            tuples.append(t)
        rels.append(Relation(head[1], arity, frozenset(tuples)))
        i += 1 + count
    try:
        return Structure(m, tuple(rels), name)
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def format_structure(S: Structure) -> str:
    out = [f"structure {S.name} {S.size}"]
    for rel in S.relations:
        out.append(f"relation {rel.name} {rel.arity} {len(rel.tuples)}")
        out += [" ".join(map(str, t)) for t in sorted(rel.tuples)]
    return "\n".join(out) + "\n"


def read_structure(path: str | Path) -> Structure:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None
    return parse_structure(text)


def parse_index_list(text: str) -> list[int]:
    """'1,2,5' -> [1, 2, 5]; the empty string gives []."""
    text = text.strip()
    if not text:
        return []
    try:
        return [int(t) for t in text.split(",")]
    except ValueError:
        raise FormatError(f"expected comma-separated indices, got {text!r}") from None


def join_indices(items: Iterable[int]) -> str:
    return ",".join(map(str, items))
