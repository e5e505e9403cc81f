"""Structure of the operation family ``{A_a : a in e_star}``.

The nonzero labels carry a group under ``a * b = c`` iff
``(x, a, (x, b, y)) == (x, c, y)``, which coincides with ``a o b = (zero, a, b)``
and is isomorphic to ``H0`` through ``a -> h_a``. The family is a right
S-system: both projections are present, the family is closed under
``(A_i o A_j)(x, y) = A_i(x, A_j(x, y))`` and the nonzero members form a
group under that composition.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import gcd
from typing import Mapping

from .context import FrobeniusContext
from .errors import ConstructionError, Verdict
from .perm import compose
from .ternary import (
    OperationTable,
    all_tables,
    binary_table,
    check_idempotent_quasigroup,
    composition_constant,
    ternary_eval,
)


def _require_pair(ctx: FrobeniusContext, a: int, b: int) -> None:
    for p in (a, b):
        if p not in ctx.e_star_set:
            raise ValueError(f"{p} is not in e_star {list(ctx.e_star)}")


def star(ctx: FrobeniusContext, a: int, b: int) -> int:
    _require_pair(ctx, a, b)
    if a == ctx.zero or b == ctx.zero:
        return ctx.zero
    return composition_constant(ctx, ctx.zero, a, b)


def circ(ctx: FrobeniusContext, a: int, b: int) -> int:
    _require_pair(ctx, a, b)
    return ternary_eval(ctx, ctx.zero, a, b)


@dataclass(frozen=True)
class StarGroup:
    carrier: tuple[int, ...]
    cayley: Mapping[tuple[int, int], int]
    identity: int
    inverse_map: Mapping[int, int]

    @property
    def order(self) -> int:
        return len(self.carrier)

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.cayley[x, a]
            k += 1
        return k

    def describe(self) -> str:
        """Short isomorphism-type label from the Cayley table (``C4``, ``C2^2``, ...)."""
        n = self.order
        orders = Counter(self.element_order(a) for a in self.carrier)
        abelian = all(self.cayley[a, b] == self.cayley[b, a]
                      for a, b in product(self.carrier, repeat=2))
        if n in orders:
            return f"C{n}"
        exponent = 1
        for k in orders:
            exponent = exponent * k // gcd(exponent, k)
        if abelian:
            if _is_prime(exponent):
                return f"C{exponent}^{_multiplicity(n, exponent)}"
            return f"abelian of order {n}, exponent {exponent}"
        return f"non-abelian of order {n}, exponent {exponent}"


def _is_prime(p: int) -> bool:
    return p >= 2 and all(p % d for d in range(2, int(p ** 0.5) + 1))


def _multiplicity(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def build_star_group(ctx: FrobeniusContext) -> StarGroup:
    """Tabulate ``*`` on ``e_star \\ {zero}`` and verify the group axioms and ``a -> h_a``.

    Any failure raises ConstructionError with the offending triple or pair.
    """
    carrier = ctx.nonzero
    cset = set(carrier)
    cayley = {}
    for a, b in product(carrier, repeat=2):
        c = star(ctx, a, b)
        if c not in cset:
            raise ConstructionError(f"{a} * {b} = {c} leaves the carrier", (a, b))
        cayley[a, b] = c
    one = ctx.one
    for a in carrier:
        if cayley[one, a] != a or cayley[a, one] != a:
            raise ConstructionError(f"{one} is not an identity for {a}", (one, a))
    for a, b, c in product(carrier, repeat=3):
        if cayley[cayley[a, b], c] != cayley[a, cayley[b, c]]:
            raise ConstructionError(f"associativity fails at ({a}, {b}, {c})", (a, b, c))
    inverse_map = {}
    for a in carrier:
        inv = [b for b in carrier if cayley[a, b] == one]
        if len(inv) != 1 or cayley[inv[0], a] != one:
            raise ConstructionError(f"{a} has no two-sided inverse", (a,))
        inverse_map[a] = inv[0]
    h = ctx.h_table
    for a, b in product(carrier, repeat=2):
        if h[cayley[a, b]] != compose(h[a], h[b]):
            raise ConstructionError(f"h_({a}*{b}) != h_{a} h_{b}", (a, b))
    return StarGroup(carrier, cayley, one, inverse_map)


@lru_cache(maxsize=32)
def _inverse_map(ctx: FrobeniusContext) -> Mapping[int, int]:
    return build_star_group(ctx).inverse_map


def star_inverse(ctx: FrobeniusContext, a: int) -> int:
    """``a^(-1)`` in the star group."""
    if a not in ctx.h_table:
        raise ValueError(f"{a} is not in e_star \\ {{zero}}")
    return _inverse_map(ctx)[a]


def _compose_tables(ti: OperationTable, tj: OperationTable) -> tuple[tuple[int, ...], ...]:
    return tuple(
        tuple(ti.table[x][v] for v in tj.table[x]) for x in range(ti.degree)
    )


@dataclass
class SSystemReport:
    """Per-item verdicts of the right-S-system verification, in check order."""

    items: dict[str, Verdict] = field(default_factory=dict)
    group_type: str | None = None
    group_order: int | None = None
    composition: dict[tuple[int, int], int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.items.values())

    def __bool__(self) -> bool:
        return self.ok

    def first_failure(self) -> str | None:
        for name, v in self.items.items():
            if not v:
                return name
        return None


def verify_right_s_system(
    ctx: FrobeniusContext, tables: Mapping[int, OperationTable] | None = None
) -> SSystemReport:
    """Check the projections, closure under composition, the group structure and
    the idempotent-quasigroup status of every non-projection member.

    ``tables`` defaults to the tables built from ``ctx``; passing a modified
    family checks that family instead.
    """
    tables = dict(tables) if tables is not None else all_tables(ctx)
    n = ctx.degree
    report = SSystemReport()
    z, o = ctx.zero, ctx.one

    bad = next(((x, y) for x, y in product(range(n), repeat=2)
                if tables[z].table[x][y] != x or tables[o].table[x][y] != y), None)
    report.items["projections"] = (
        Verdict.passed() if bad is None else
        Verdict.failed(f"A_{z} or A_{o} is not a projection at {bad}", data=bad)
    )

    # lookup of a composed table by its contents
    by_content = {t.table: a for a, t in tables.items()}
    closure = Verdict.passed()
    for i, j in product(ctx.e_star, repeat=2):
        k = by_content.get(_compose_tables(tables[i], tables[j]))
        if k is None:
            closure = Verdict.failed(f"A_{i} o A_{j} is not a member of the family", data=(i, j))
            break
        if i != z and j != z and k == z:
            closure = Verdict.failed(f"A_{i} o A_{j} = A_{z}", data=(i, j))
            break
        report.composition[i, j] = k
    report.items["composition_closure"] = closure

    if closure:
        report.items["composition_law"] = _check_composition_law(ctx, report.composition)
    try:
        group = build_star_group(ctx)
    except ConstructionError as exc:
        report.items["star_group"] = Verdict.failed(str(exc), data=exc.witness)
    else:
        agree = next(((a, b) for a, b in product(ctx.nonzero, repeat=2)
                      if report.composition.get((a, b), group.cayley[a, b]) != group.cayley[a, b]), None)
        report.items["star_group"] = (
            Verdict.passed(group) if agree is None
            else Verdict.failed(f"table composition disagrees with * at {agree}", data=agree)
        )
        report.group_type = group.describe()
        report.group_order = group.order
        report.items["k_representation"] = _check_k_representation(ctx, tables, group)

    for a in ctx.e_star:
        if a in (z, o):
            continue
        t = tables[a]
        report.items[f"quasigroup[{a}]"] = check_idempotent_quasigroup(
            OperationTable(t.label, t.table)
        )
    return report


def _check_composition_law(ctx: FrobeniusContext, composition: Mapping[tuple[int, int], int]) -> Verdict:
    """The composed label equals the closed form ``h_a(b)`` (with the projection cases)."""
    for (a, b), k in composition.items():
        if a == ctx.zero or b == ctx.zero:
            want = ctx.zero
        elif a == ctx.one:
            want = b
        elif b == ctx.one:
            want = a
        else:
            want = ctx.h_table[a](b)
        if k != want:
            return Verdict.failed(f"A_{a} o A_{b} = A_{k}, expected A_{want}", data=(a, b))
    return Verdict.passed()


def _check_k_representation(ctx: FrobeniusContext, tables: Mapping[int, OperationTable],
                            group: StarGroup) -> Verdict:
    """``(x, b, y) == (x, k, (x, a, y))`` with ``k = b * a^(-1)``, for nonzero ``a != b``."""
    n = ctx.degree
    for a, b in product(ctx.nonzero, repeat=2):
        if a == b:
            continue
        k = group.cayley[b, group.inverse_map[a]]
        ta, tb, tk = tables[a].table, tables[b].table, tables[k].table
        for x, y in product(range(n), repeat=2):
            if tb[x][y] != tk[x][ta[x][y]]:
                return Verdict.failed(f"(x,{b},y) != (x,{k},(x,{a},y)) at x={x}, y={y}",
                                      data=(a, b, x, y))
    return Verdict.passed()


def check_orthogonal(
    ctx: FrobeniusContext, a: int, b: int, tables: Mapping[int, OperationTable] | None = None
) -> Verdict:
    """Every system ``(x,a,y) = c, (x,b,y) = d`` has exactly one solution.

    ``data`` holds the solution counts keyed by ``(c, d)`` (missing keys are 0).
    """
    _require_pair(ctx, a, b)
    if a == b:
        raise ValueError("orthogonality needs distinct labels")
    if tables is None:
        ta, tb = binary_table(ctx, a).table, binary_table(ctx, b).table
    else:
        ta, tb = tables[a].table, tables[b].table
    n = ctx.degree
    counts = Counter((ta[x][y], tb[x][y]) for x, y in product(range(n), repeat=2))
    for c, d in product(range(n), repeat=2):
        k = counts.get((c, d), 0)
        if k != 1:
            return Verdict.failed(f"system A_{a} = {c}, A_{b} = {d} has {k} solutions",
                                  data=counts)
    return Verdict.passed(counts)


def check_all_orthogonal(ctx: FrobeniusContext,
                         tables: Mapping[int, OperationTable] | None = None) -> Verdict:
    tables = tables if tables is not None else all_tables(ctx)
    for i, a in enumerate(ctx.e_star):
        for b in ctx.e_star[i + 1:]:
            v = check_orthogonal(ctx, a, b, tables)
            if not v:
                return Verdict.failed(f"A_{a}, A_{b}: {v.witness}", data=(a, b))
    return Verdict.passed()
