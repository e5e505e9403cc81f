"""The ternary operation ``(x, a, y)`` and its binary slices ``A_a(x, y) = (x, a, y)``.

``(x, zero, y) = x``, ``(x, one, y) = y``, and otherwise ``(x, a, y)`` is
``alpha(x, a)`` applied to ``y``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .context import FrobeniusContext, alpha
from .errors import ConstructionError, Verdict


def _require_index(ctx: FrobeniusContext, a: int) -> None:
    if a not in ctx.e_star_set:
        raise ValueError(f"{a} is not in e_star {list(ctx.e_star)}")


def ternary_eval(ctx: FrobeniusContext, x: int, a: int, y: int) -> int:
    _require_index(ctx, a)
    if a == ctx.zero:
        return x
    if a == ctx.one:
        return y
    return alpha(ctx, x, a)(y)


@dataclass(frozen=True)
class OperationTable:
    """``table[x][y] == (x, label, y)``.

    ``projection`` is ``"left"`` for the zero label, ``"right"`` for the one
    label and ``None`` for the quasigroup labels.
    """

    label: int
    table: tuple[tuple[int, ...], ...]
    projection: str | None = None

    @property
    def degree(self) -> int:
        return len(self.table)

    def __call__(self, x: int, y: int) -> int:
        return self.table[x][y]

    def dump(self) -> str:
        """Plain-text dump: header line then one space-separated row per line."""
        lines = [f"# a={self.label} n={self.degree}"]
        lines += [" ".join(map(str, row)) for row in self.table]
        return "\n".join(lines) + "\n"


def binary_table(ctx: FrobeniusContext, a: int) -> OperationTable:
    _require_index(ctx, a)
    n = ctx.degree
    if a == ctx.zero:
        return OperationTable(a, tuple((x,) * n for x in range(n)), "left")
    if a == ctx.one:
        return OperationTable(a, tuple(tuple(range(n)) for _ in range(n)), "right")
    # row x is the image sequence of alpha(x, a)
    return OperationTable(a, tuple(alpha(ctx, x, a).images for x in range(n)))


def all_tables(ctx: FrobeniusContext) -> dict[int, OperationTable]:
    return {a: binary_table(ctx, a) for a in ctx.e_star}


def check_idempotent_quasigroup(t: OperationTable) -> Verdict:
    """Latin square with ``t[x][x] == x``; the witness names the first bad row, column or cell."""
    if t.projection is not None:
        raise ValueError(f"label {t.label} is a {t.projection} projection, not a quasigroup")
    n = t.degree
    full = set(range(n))
    for x, row in enumerate(t.table):
        if len(row) != n or set(row) != full:
            return Verdict.failed(f"row {x} of A_{t.label} is not a permutation: {list(row)}",
                                  data=("row", x))
    for y in range(n):
        col = [t.table[x][y] for x in range(n)]
        if set(col) != full:
            return Verdict.failed(f"column {y} of A_{t.label} is not a permutation: {col}",
                                  data=("column", y))
    for x in range(n):
        if t.table[x][x] != x:
            return Verdict.failed(f"A_{t.label}({x},{x}) = {t.table[x][x]} != {x}",
                                  data=("diagonal", x))
    return Verdict.passed()


def composition_constant(ctx: FrobeniusContext, x: int, a: int, b: int) -> int:
    """The ``c`` in ``e_star`` with ``(x, a, (x, b, y)) == (x, c, y)`` for every ``y``.

    Raises ConstructionError if the closed form fails the per-``y`` check.
    """
    _require_index(ctx, a)
    _require_index(ctx, b)
    if a == ctx.zero or b == ctx.zero:
        c = ctx.zero
    elif a == ctx.one:
        c = b
    elif b == ctx.one:
        c = a
    else:
        c = ctx.h_table[a](b)
    for y in range(ctx.degree):
        lhs = ternary_eval(ctx, x, a, ternary_eval(ctx, x, b, y))
        rhs = ternary_eval(ctx, x, c, y)
        if lhs != rhs:
            raise ConstructionError(
                f"({x},{a},({x},{b},{y})) = {lhs} but ({x},{c},{y}) = {rhs}", (x, a, b, y)
            )
    return c
