"""Constructors for small named permutation groups used as a regression corpus."""

from __future__ import annotations

from itertools import product

from .perm import Permutation, PermutationGroup, generate_group


def _perm(f, n: int) -> Permutation:
    return Permutation(tuple(f(x) for x in range(n)))


def cyclic_group(n: int) -> PermutationGroup:
    return generate_group([_perm(lambda x: (x + 1) % n, n)], n)


def symmetric_group(n: int) -> PermutationGroup:
    if n < 2:
        return generate_group([], n)
    return generate_group([_perm(lambda x: (x + 1) % n, n), Permutation.from_cycles([(0, 1)], n)], n)


def alternating_group(n: int) -> PermutationGroup:
    gens = [Permutation.from_cycles([(0, 1, i)], n) for i in range(2, n)]
    return generate_group(gens, n)


def dihedral_group(n: int) -> PermutationGroup:
    """Symmetries of the ``n``-gon acting on its vertices (order ``2n``)."""
    return generate_group([_perm(lambda x: (x + 1) % n, n), _perm(lambda x: (-x) % n, n)], n)


def _multiplicative_order(g: int, p: int) -> int:
    k, x = 1, g % p
    while x != 1:
        x = x * g % p
        k += 1
    return k


def affine_group(p: int, multiplier: int | None = None) -> PermutationGroup:
    """``x -> m x + b`` over ``Z/p`` with ``m`` in the subgroup generated by ``multiplier``.

    Without a multiplier the least primitive root is used, giving AGL(1, p).
    """
    if multiplier is None:
        multiplier = next(g for g in range(2, p) if _multiplicative_order(g, p) == p - 1) if p > 2 else 1
    return generate_group(
        [_perm(lambda x: (x + 1) % p, p), _perm(lambda x: multiplier * x % p, p)], p
    )


def _gf8_mul(a: int, b: int) -> int:
    # GF(8) = GF(2)[t] / (t^3 + t + 1), elements as 3-bit integers
    r = 0
    for i in range(3):
        if b >> i & 1:
            r ^= a << i
    for i in (4, 3):
        if r >> i & 1:
            r ^= 0b1011 << (i - 3)
    return r


def agl1_8() -> PermutationGroup:
    """AGL(1, 8): kernel ``C2^3``, complement ``C7``."""
    return generate_group([_perm(lambda x: x ^ 1, 8), _perm(lambda x: _gf8_mul(2, x), 8)], 8)


def quaternion_frobenius() -> PermutationGroup:
    """``3^2 : Q8`` on the nine points of ``F_3^2`` (order 72, non-abelian complement)."""
    pts = list(product(range(3), repeat=2))
    index = {v: i for i, v in enumerate(pts)}

    def affine(m, t):
        return Permutation(tuple(
            index[((m[0][0] * x + m[0][1] * y + t[0]) % 3, (m[1][0] * x + m[1][1] * y + t[1]) % 3)]
            for x, y in pts
        ))

    ident = ((1, 0), (0, 1))
    gens = [
        affine(ident, (1, 0)),
        affine(ident, (0, 1)),
        affine(((0, 2), (1, 0)), (0, 0)),
        affine(((1, 1), (1, 2)), (0, 0)),
    ]
    return generate_group(gens, 9)
