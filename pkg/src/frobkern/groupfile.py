"""Group description files.

One directive per line, ``#`` starts a comment::

    name  agl1_5          # optional
    degree 5
    zero 0                # optional base point overrides
    one 1
    gen (0 1 2 3 4)
    gen (1 2 4 3)

Generators are products of disjoint cycles of whitespace-separated points;
``()`` is the identity.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import FrobkernError
from .perm import DEFAULT_ELEMENT_CAP, Permutation, PermutationGroup, generate_group


class GroupFileError(FrobkernError, ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        where = [f"line {line}"] if line is not None else []
        if column is not None:
            where.append(f"column {column}")
        super().__init__(", ".join(where) + ": " + message if where else message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class GroupFile:
    degree: int
    generators: tuple[str, ...]
    zero: int | None = None
    one: int | None = None
    name: str | None = None

    def permutations(self) -> list[Permutation]:
        return [parse_cycles(g, self.degree) for g in self.generators]

    def group(self, element_cap: int = DEFAULT_ELEMENT_CAP) -> PermutationGroup:
        return generate_group(self.permutations(), self.degree, element_cap)


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(\d+)|(\S))")


def parse_cycles(text: str, degree: int, line: int | None = None, offset: int = 0) -> Permutation:
    """Parse ``(0 1 2)(3 4)``; ``offset`` is the number of characters preceding ``text`` on its line."""
    cycles: list[list[int]] = []
    current: list[int] | None = None
    seen: dict[int, int] = {}
    pos = 0

    def fail(msg: str, col: int) -> GroupFileError:
        return GroupFileError(msg, line, offset + col + 1)

    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace remains
            break
        col = m.start(m.lastindex)
        pos = m.end()
        if m.group(1):
            if current is not None:
                raise fail("nested '('", col)
            current = []
        elif m.group(2):
            if current is None:
                raise fail("')' without matching '('", col)
            cycles.append(current)
            current = None
        elif m.group(3):
            if current is None:
                raise fail("point outside of a cycle", col)
            p = int(m.group(3))
            if p >= degree:
                raise fail(f"point {p} out of range for degree {degree}", col)
            if p in seen:
                raise fail(f"point {p} repeated within generator", col)
            seen[p] = col
            current.append(p)
        else:
            raise fail(f"unexpected character {m.group(4)!r}", col)
    if current is not None:
        raise fail("unclosed '('", len(text.rstrip()))
    return Permutation.from_cycles(cycles, degree)


def _int_arg(arg: str, lineno: int, col: int, what: str) -> int:
    if not arg.isdigit():
        raise GroupFileError(f"{what} expects a non-negative integer, got {arg!r}", lineno, col)
    return int(arg)


def parse_group_file(text: str) -> GroupFile:
    degree = None
    zero = one = name = None
    gens: list[tuple[str, int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        stripped = body.strip()
        if not stripped:
            continue
        key = stripped.split()[0]
        key_end = body.index(key) + len(key)
        rest = body[key_end:].strip()
        arg_col = key_end + len(body[key_end:]) - len(body[key_end:].lstrip()) + 1
        if key == "degree":
            if degree is not None:
                raise GroupFileError("duplicate degree", lineno, 1)
            degree = _int_arg(rest, lineno, arg_col, "degree")
        elif key == "gen":
            gens.append((rest, lineno, arg_col))
        elif key == "zero":
            zero = _int_arg(rest, lineno, arg_col, "zero")
        elif key == "one":
            one = _int_arg(rest, lineno, arg_col, "one")
        elif key == "name":
            name = rest
        else:
            raise GroupFileError(f"unknown directive {key!r}", lineno, body.index(key) + 1)
    if degree is None:
        raise GroupFileError("missing 'degree' line")
    for rest, lineno, col in gens:
        if not rest:
            raise GroupFileError("empty generator (write '()' for the identity)", lineno, col)
        parse_cycles(rest, degree, lineno, col - 1)
    for label, p in (("zero", zero), ("one", one)):
        if p is not None and p >= degree:
            raise GroupFileError(f"{label} = {p} out of range for degree {degree}")
    if zero is not None and one is not None and zero == one:
        raise GroupFileError("zero and one must differ")
    return GroupFile(degree, tuple(" ".join(g.split()) for g, _, _ in gens), zero, one, name)


def serialize_group_file(gf: GroupFile) -> str:
    lines = []
    if gf.name is not None:
        lines.append(f"name {gf.name}")
    lines.append(f"degree {gf.degree}")
    if gf.zero is not None:
        lines.append(f"zero {gf.zero}")
    if gf.one is not None:
        lines.append(f"one {gf.one}")
    lines += [f"gen {g}" for g in gf.generators]
    return "\n".join(lines) + "\n"


def group_file_from_group(G: PermutationGroup, name: str | None = None) -> GroupFile:
    return GroupFile(G.degree, tuple(str(g) for g in G.generators), name=name)
