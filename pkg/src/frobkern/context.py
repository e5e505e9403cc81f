"""Frobenius detection and the base data of the ternary construction.

A context fixes two distinct points ``zero`` and ``one``, the stabilizer
``H0`` of ``zero``, a family ``sigma`` with ``sigma[x](zero) == x``, the index
set ``e_star = {zero} | H0(one)`` and the table ``a -> h_a`` of the unique
``h_a`` in ``H0`` with ``h_a(one) == a``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping

from .errors import ConstructionError, NotFrobeniusError, Verdict
from .perm import (
    Permutation,
    PermutationGroup,
    compose,
    fixed_points,
    inverse,
    is_transitive,
    point_stabilizer,
)


def is_frobenius(G: PermutationGroup) -> Verdict:
    """Transitive, irregular, and no non-identity element fixes two points.

    On failure ``witness`` is a human-readable reason; for a two-point
    stabilizer violation ``data`` is ``(a, b, element)`` with the least such
    pair and the least element fixing it.
    """
    n = G.degree
    if n == 0 or not is_transitive(G):
        orbit = G.orbit(0) if n else frozenset()
        outside = min(set(range(n)) - orbit) if n else None
        return Verdict.failed(
            f"not transitive: point {outside} is outside the orbit of 0" if n else "empty point set",
            data=("intransitive", outside),
        )
    if G.order == n:
        return Verdict.failed(f"regular: |G| = n = {n}, hence not irregular", data=("regular",))
    best = None
    for g in G:
        if g.is_identity():
            continue
        fixed = sorted(fixed_points(g))
        if len(fixed) >= 2:
            cand = ((fixed[0], fixed[1]), g)
            if best is None or cand < best:
                best = cand
    if best is not None:
        (a, b), g = best
        return Verdict.failed(f"St_{{{a},{b}}} contains {g}", data=(a, b, g))
    return Verdict.passed()


@dataclass(frozen=True)
class SigmaPolicy:
    """How the sigma family is chosen: lexicographically least, or seeded random."""

    kind: str = "lex"
    seed: int = 0

    @classmethod
    def parse(cls, text: str) -> SigmaPolicy:
        if text == "lex":
            return cls()
        if text.startswith("seed:"):
            try:
                return cls("seeded", int(text[5:]))
            except ValueError:
                pass
        raise ValueError(f"unknown sigma policy {text!r} (expected 'lex' or 'seed:<k>')")

    def __str__(self) -> str:
        return "lex" if self.kind == "lex" else f"seed:{self.seed}"


@dataclass(frozen=True, eq=False)
class FrobeniusContext:
    group: PermutationGroup
    zero: int
    one: int
    H0: PermutationGroup
    sigma: tuple[Permutation, ...]
    e_star: tuple[int, ...]
    h_table: Mapping[int, Permutation]
    sigma_policy: SigmaPolicy = field(default_factory=SigmaPolicy)

    @property
    def degree(self) -> int:
        return self.group.degree

    @cached_property
    def sigma_inv(self) -> tuple[Permutation, ...]:
        return tuple(inverse(s) for s in self.sigma)

    @cached_property
    def nonzero(self) -> tuple[int, ...]:
        """``e_star`` without ``zero``, ascending."""
        return tuple(a for a in self.e_star if a != self.zero)

    @cached_property
    def proper(self) -> tuple[int, ...]:
        """``e_star`` without ``zero`` and ``one``: the labels of the quasigroups."""
        return tuple(a for a in self.e_star if a not in (self.zero, self.one))

    @cached_property
    def e_star_set(self) -> frozenset[int]:
        return frozenset(self.e_star)

    def stabilizer(self, x: int) -> PermutationGroup:
        return self._stabilizers[x]

    @cached_property
    def _stabilizers(self) -> tuple[PermutationGroup, ...]:
        return tuple(point_stabilizer(self.group, x) for x in range(self.degree))


def _choose_sigma(G: PermutationGroup, zero: int, policy: SigmaPolicy) -> tuple[Permutation, ...]:
    by_image: dict[int, list[Permutation]] = {}
    for g in G:  # G is lexicographically ordered
        by_image.setdefault(g(zero), []).append(g)
    rng = random.Random(policy.seed)
    sigma = []
    for x in range(G.degree):
        if x == zero:
            sigma.append(G.identity)
        elif policy.kind == "lex":
            sigma.append(by_image[x][0])
        else:
            sigma.append(rng.choice(by_image[x]))
    return tuple(sigma)


def build_context(
    G: PermutationGroup,
    zero: int = 0,
    one: int = 1,
    sigma_policy: SigmaPolicy | str = "lex",
) -> FrobeniusContext:
    if isinstance(sigma_policy, str):
        sigma_policy = SigmaPolicy.parse(sigma_policy)
    n = G.degree
    for name, p in (("zero", zero), ("one", one)):
        if not 0 <= p < n:
            raise ValueError(f"{name} = {p} out of range for degree {n}")
    if zero == one:
        raise ValueError("zero and one must be distinct points")
    verdict = is_frobenius(G)
    if not verdict:
        raise NotFrobeniusError(f"not Frobenius: {verdict.witness}", verdict)

    H0 = point_stabilizer(G, zero)
    sigma = _choose_sigma(G, zero, sigma_policy)
    h_table = {}
    for h in H0:
        a = h(one)
        if a in h_table:
            # semiregularity of H0 off zero makes this impossible
            raise ConstructionError(f"h_{a} is not unique: {h_table[a]} and {h}", (a, h))
        h_table[a] = h
    e_star = tuple(sorted({zero, *h_table}))
    return FrobeniusContext(G, zero, one, H0, sigma, e_star, h_table, sigma_policy)


def alpha(ctx: FrobeniusContext, x: int, a: int, verify: bool = False) -> Permutation:
    """The element of ``H_x`` whose ``sigma_x``-conjugate sends ``one`` to ``a``.

    Computed as ``sigma_x * h_a * sigma_x^-1``. With ``verify`` the stabilizer
    ``H_x`` is scanned to confirm that it is the only such element.
    """
    if a == ctx.zero or a not in ctx.h_table:
        raise ValueError(f"alpha needs a in e_star \\ {{zero}}, got {a}")
    s, s_inv = ctx.sigma[x], ctx.sigma_inv[x]
    result = compose(compose(s, ctx.h_table[a]), s_inv)
    if verify:
        matches = [g for g in ctx.stabilizer(x) if compose(compose(s_inv, g), s)(ctx.one) == a]
        if matches != [result]:
            raise ConstructionError(
                f"alpha({x}, {a}) is not unique in H_{x}: {[str(m) for m in matches]}", matches
            )
    return result
