"""Permutations on ``{0, ..., n-1}`` and exhaustively enumerated permutation groups.

Composition convention, used everywhere in the package: ``p * q`` (and
``compose(p, q)``) applies ``q`` first, so ``(p * q)(i) == p(q(i))``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import ClosureCapExceeded, DegreeMismatch

DEFAULT_ELEMENT_CAP = 200_000


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of ``range(degree)``; ``images[i]`` is the image of point ``i``.

    Ordering is lexicographic on the image sequence.
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if sorted(self.images) != list(range(n)):
            raise ValueError(f"not a bijection of range({n}): {list(self.images)}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            for i, p in enumerate(cycle):
                if not 0 <= p < degree:
                    raise ValueError(f"point {p} out of range for degree {degree}")
                if p in seen:
                    raise ValueError(f"point {p} repeated")
                seen.add(p)
                images[p] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __invert__(self) -> Permutation:
        return inverse(self)

    def is_identity(self) -> bool:
        return all(i == p for i, p in enumerate(self.images))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint cycles of length >= 2, each starting at its least point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                cycle.append(j)
                seen[j] = True
                j = self.images[j]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def __str__(self) -> str:
        cs = self.cycles()
        if not cs:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cs)

    def __repr__(self) -> str:
        return f"Permutation({self}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p * q``, the permutation ``i -> p(q(i))``."""
    if p.degree != q.degree:
        raise DegreeMismatch(f"cannot compose degree {p.degree} with degree {q.degree}")
    pi = p.images
    return Permutation(tuple(pi[j] for j in q.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, j in enumerate(p.images):
        inv[j] = i
    return Permutation(tuple(inv))


def conjugate(g: Permutation, t: Permutation) -> Permutation:
    """``g * t * g^-1``."""
    return compose(compose(g, t), inverse(g))


def fixed_points(p: Permutation) -> frozenset[int]:
    return frozenset(i for i, j in enumerate(p.images) if i == j)


def is_fixed_point_free(p: Permutation) -> bool:
    return all(i != j for i, j in enumerate(p.images))


def is_sharply_transitive(perms: Iterable[Permutation], degree: int) -> bool:
    """True iff for every ordered pair ``(c, d)`` exactly one member sends ``c`` to ``d``."""
    perms = list(perms)
    if len(perms) != degree:
        return False
    for c in range(degree):
        if len({p(c) for p in perms}) != degree:
            return False
    return True


@dataclass(frozen=True, eq=False)
class PermutationGroup:
    """A finite permutation group with its full element list in lexicographic order."""

    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]
    _members: frozenset[Permutation] = field(repr=False, compare=False, default=frozenset())

    def __post_init__(self) -> None:
        if not self._members:
            object.__setattr__(self, "_members", frozenset(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Permutation]:
        return iter(self.elements)

    def __contains__(self, p: object) -> bool:
        return p in self._members

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PermutationGroup):
            return NotImplemented
        return self.degree == other.degree and self._members == other._members

    def __hash__(self) -> int:
        return hash((self.degree, self._members))

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    def element_set(self) -> frozenset[Permutation]:
        return self._members

    def orbit(self, point: int) -> frozenset[int]:
        gens = self.generators or (self.identity,)
        seen = {point}
        todo = [point]
        while todo:
            p = todo.pop()
            for g in gens:
                q = g(p)
                if q not in seen:
                    seen.add(q)
                    todo.append(q)
        return frozenset(seen)

    def __repr__(self) -> str:
        gens = ", ".join(str(g) for g in self.generators)
        return f"PermutationGroup(degree={self.degree}, order={self.order}, generators=[{gens}])"


def generate_group(
    generators: Iterable[Permutation],
    degree: int,
    element_cap: int = DEFAULT_ELEMENT_CAP,
) -> PermutationGroup:
    """Breadth-first closure of ``generators``; raises ClosureCapExceeded past ``element_cap``."""
    if element_cap < 1:
        raise ValueError("element_cap must be positive")
    gens = tuple(generators)
    for g in gens:
        if g.degree != degree:
            raise DegreeMismatch(f"generator {g} has degree {g.degree}, expected {degree}")
    ident = Permutation.identity(degree)
    # a finite group is closed under inverses once it is closed under products
    seen = {ident.images}
    queue = deque([ident.images])
    gen_images = [g.images for g in gens]
    while queue:
        cur = queue.popleft()
        for gi in gen_images:
            nxt = tuple(gi[j] for j in cur)
            if nxt not in seen:
                seen.add(nxt)
                if len(seen) > element_cap:
                    raise ClosureCapExceeded(f"closure exceeds {element_cap} elements")
                queue.append(nxt)
    elements = tuple(Permutation(im) for im in sorted(seen))
    return PermutationGroup(degree, gens, elements)


def subgroup_from_elements(degree: int, elements: Iterable[Permutation]) -> PermutationGroup:
    """Wrap a set already known to be a subgroup; picks a small generating set greedily."""
    elems = tuple(sorted(set(elements)))
    gens: list[Permutation] = []
    span = {Permutation.identity(degree)}
    for e in elems:
        if e not in span:
            gens.append(e)
            span = set(generate_group(gens, degree).elements)
    return PermutationGroup(degree, tuple(gens), elems)


def point_stabilizer(G: PermutationGroup, a: int) -> PermutationGroup:
    if not 0 <= a < G.degree:
        raise ValueError(f"point {a} out of range for degree {G.degree}")
    return subgroup_from_elements(G.degree, (g for g in G if g(a) == a))


def two_point_stabilizer(G: PermutationGroup, a: int, b: int) -> PermutationGroup:
    if a == b:
        raise ValueError("two-point stabilizer needs distinct points")
    for p in (a, b):
        if not 0 <= p < G.degree:
            raise ValueError(f"point {p} out of range for degree {G.degree}")
    return subgroup_from_elements(G.degree, (g for g in G if g(a) == a and g(b) == b))


def is_transitive(G: PermutationGroup) -> bool:
    if G.degree == 0:
        return True
    return len(G.orbit(0)) == G.degree


def is_regular(G: PermutationGroup) -> bool:
    return is_transitive(G) and G.order == G.degree
