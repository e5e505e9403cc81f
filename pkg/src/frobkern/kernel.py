"""The translations ``phi_{b,a}(x) = (b, a, x)`` and
``psi_{b,a,d} = phi_{b,a} * phi_{d,a^(-1)}``, the set ``T = {psi_{b,a0,zero}}``,
and its certification as the Frobenius kernel against a brute-force scan.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .context import FrobeniusContext, SigmaPolicy, build_context, is_frobenius
from .errors import ConstructionError, NotFrobeniusError, Verdict
from .perm import (
    Permutation,
    PermutationGroup,
    compose,
    conjugate,
    inverse,
    is_fixed_point_free,
    is_sharply_transitive,
)
from .ssystem import check_all_orthogonal, star_inverse, verify_right_s_system
from .ternary import ternary_eval

FLAG_NAMES = (
    "s_system",
    "orthogonal",
    "sharply_transitive",
    "equals_oracle",
    "a0_independent",
    "left_transversal_H0",
    "loop_transversal",
    "closed_under_product",
    "closed_under_inverse",
    "normal",
    "union_decomposition",
)


def phi(ctx: FrobeniusContext, b: int, a: int) -> Permutation:
    if a == ctx.zero:
        raise ValueError("phi_{b,zero} is constant, not a permutation")
    if a not in ctx.e_star_set:
        raise ValueError(f"{a} is not in e_star")
    images = tuple(ternary_eval(ctx, b, a, x) for x in range(ctx.degree))
    try:
        p = Permutation(images)
    except ValueError as exc:
        raise ConstructionError(f"phi_{{{b},{a}}} is not a bijection", images) from exc
    if p not in ctx.group:
        raise ConstructionError(f"phi_{{{b},{a}}} = {p} is not in G", p)
    return p


def psi(ctx: FrobeniusContext, b: int, a: int, d: int) -> Permutation:
    p = compose(phi(ctx, b, a), phi(ctx, d, star_inverse(ctx, a)))
    if p not in ctx.group:
        raise ConstructionError(f"psi_{{{b},{a},{d}}} = {p} is not in G", p)
    return p


def phi_family(ctx: FrobeniusContext, b: int) -> frozenset[Permutation]:
    """``{phi_{b,a} : a in e_star \\ {zero}}``; checked to be ``H_b`` with no repeats."""
    family = [phi(ctx, b, a) for a in ctx.nonzero]
    out = frozenset(family)
    if len(out) != len(family):
        raise ConstructionError(f"phi_{{{b},a}} repeats for distinct a", b)
    if out != ctx.stabilizer(b).element_set():
        raise ConstructionError(f"phi family of {b} differs from H_{b}", b)
    return out


def build_T(ctx: FrobeniusContext, a0: int) -> tuple[Permutation, ...]:
    if a0 not in ctx.proper:
        raise ValueError(f"a0 = {a0} must be in e_star \\ {{zero, one}} = {list(ctx.proper)}")
    T = sorted({psi(ctx, b, a0, ctx.zero) for b in range(ctx.degree)})
    n = ctx.degree
    ident = Permutation.identity(n)
    if len(T) != n:
        raise ConstructionError(f"|T| = {len(T)} != {n}", T)
    if psi(ctx, ctx.zero, a0, ctx.zero) != ident:
        raise ConstructionError("psi_{zero,a0,zero} is not the identity")
    if not is_sharply_transitive(T, n):
        raise ConstructionError("T is not sharply transitive", T)
    return tuple(T)


def brute_force_kernel(G: PermutationGroup) -> tuple[Permutation, ...]:
    """Identity together with every fixed-point-free element, by direct scan."""
    K = tuple(g for g in G if g.is_identity() or is_fixed_point_free(g))
    if len(K) != G.degree:
        raise ConstructionError(f"{len(K) - 1} fixed-point-free elements, expected {G.degree - 1}", K)
    return K


def _coset_key(g: Permutation, H: Sequence[Permutation]) -> Permutation:
    return min(compose(g, h) for h in H)


def verify_left_transversal(
    T: Iterable[Permutation], G: PermutationGroup, H: PermutationGroup
) -> Verdict:
    """Every left coset ``gH`` meets ``T`` exactly once."""
    T = list(T)
    for t in T:
        if t not in G:
            return Verdict.failed(f"{t} is not in G")
    H_elems = H.elements
    index = G.order // H.order
    seen: dict[Permutation, Permutation] = {}
    for t in T:
        key = _coset_key(t, H_elems)
        if key in seen:
            return Verdict.failed(f"{seen[key]} and {t} lie in the same coset {key}H", data=key)
        seen[key] = t
    if len(seen) != index:
        missing = next(g for g in G if _coset_key(g, H_elems) not in seen)
        return Verdict.failed(f"coset {missing}H contains no element of T", data=missing)
    return Verdict.passed()


@dataclass(frozen=True)
class SubgroupCheck:
    closed_under_product: Verdict
    closed_under_inverse: Verdict
    normal: Verdict
    normal_full: Verdict
    path: str

    def __bool__(self) -> bool:
        return bool(self.closed_under_product and self.closed_under_inverse and self.normal)


def _normal_under(T: frozenset[Permutation], conjugators: Iterable[Permutation]) -> Verdict:
    for g in conjugators:
        for t in T:
            c = conjugate(g, t)
            if c not in T:
                return Verdict.failed(f"{g} {t} {g}^-1 = {c} is not in T", data=(g, t))
    return Verdict.passed()


def verify_subgroup_and_normal(
    T: Iterable[Permutation], G: PermutationGroup, mode: str = "both"
) -> SubgroupCheck:
    """Closure of ``T`` under products and inverses, then ``gTg^-1 == T``.

    ``mode`` selects the conjugators: ``"generators"`` (generators of ``G``),
    ``"full"`` (every element of ``G``) or ``"both"``, where the full scan acts
    as the oracle for the generator path and both must pass.
    """
    if mode not in ("generators", "full", "both"):
        raise ValueError(f"unknown mode {mode!r}")
    Ts = frozenset(T)
    prod = Verdict.passed()
    for s in sorted(Ts):
        bad = next((t for t in sorted(Ts) if compose(s, t) not in Ts), None)
        if bad is not None:
            prod = Verdict.failed(f"{s} * {bad} = {compose(s, bad)} is not in T", data=(s, bad))
            break
    inv_bad = next((t for t in sorted(Ts) if inverse(t) not in Ts), None)
    inv = (Verdict.passed() if inv_bad is None
           else Verdict.failed(f"inverse of {inv_bad} is not in T", data=inv_bad))
    gens = G.generators or (G.identity,)
    fast = _normal_under(Ts, gens) if mode != "full" else Verdict.passed()
    full = _normal_under(Ts, G) if mode != "generators" else Verdict.passed()
    if mode == "both" and bool(fast) != bool(full):
        raise ConstructionError("generator and full normality checks disagree", (fast, full))
    normal = fast if not fast else full
    path = {"generators": "generators", "full": "full", "both": "generators+full"}[mode]
    return SubgroupCheck(prod, inv, normal, full, path)


def verify_union_decomposition(G: PermutationGroup, K: Iterable[Permutation],
                               points: Iterable[int]) -> Verdict:
    """``G`` equals the union of the stabilizers ``H_a`` (``a`` in ``points``) and ``K``."""
    pts = list(points)
    Ks = frozenset(K)
    for g in G:
        if g not in Ks and not any(g(a) == a for a in pts):
            return Verdict.failed(f"{g} lies in no H_a and not in K", data=g)
    return Verdict.passed()


@dataclass
class KernelCertificate:
    """Outcome of the full pipeline; ``flags`` and ``witnesses`` keyed by FLAG_NAMES."""

    accepted: bool
    degree: int
    order: int
    generators: tuple[Permutation, ...] = ()
    zero: int | None = None
    one: int | None = None
    h0_order: int | None = None
    e_star: tuple[int, ...] = ()
    a0: int | None = None
    a0_policy: str = "first"
    sigma_policy: str = "lex"
    star_group: str | None = None
    T: tuple[Permutation, ...] = ()
    oracle_K: tuple[Permutation, ...] = ()
    flags: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, str] = field(default_factory=dict)
    normal_path: str | None = None
    e_star_union_decomposition: bool | None = None
    rejection: str | None = None
    first_failure: str | None = None

    @property
    def ok(self) -> bool:
        return self.accepted and all(self.flags.get(f, False) for f in FLAG_NAMES)

    def __bool__(self) -> bool:
        return self.ok


def kernel_pipeline(
    G: PermutationGroup,
    zero: int = 0,
    one: int = 1,
    a0_policy: str = "first",
    sigma_policy: SigmaPolicy | str = "lex",
) -> KernelCertificate:
    """Detect, build the context, verify the S-system and orthogonality, build ``T``
    and certify it against the brute-force kernel.

    Non-Frobenius input yields a certificate with ``accepted=False``.
    """
    if a0_policy not in ("first", "all"):
        raise ValueError(f"unknown a0 policy {a0_policy!r}")
    if isinstance(sigma_policy, str):
        sigma_policy = SigmaPolicy.parse(sigma_policy)
    cert = KernelCertificate(
        accepted=False, degree=G.degree, order=G.order, generators=G.generators,
        zero=zero, one=one, a0_policy=a0_policy, sigma_policy=str(sigma_policy),
    )
    verdict = is_frobenius(G)
    if not verdict:
        cert.rejection = f"not Frobenius: {verdict.witness}"
        cert.first_failure = "frobenius_definition"
        return cert
    try:
        ctx = build_context(G, zero, one, sigma_policy)
    except NotFrobeniusError as exc:  # pragma: no cover - detector already ran
        cert.rejection = str(exc)
        cert.first_failure = "frobenius_definition"
        return cert
    cert.accepted = True
    cert.h0_order = ctx.H0.order
    cert.e_star = ctx.e_star
    flags, wit = cert.flags, cert.witnesses

    def record(name: str, v: Verdict | bool, witness: str | None = None) -> None:
        flags[name] = bool(v)
        w = witness if witness is not None else getattr(v, "witness", None)
        if not v and w:
            wit[name] = w

    try:
        report = verify_right_s_system(ctx)
        fail = report.first_failure()
        record("s_system", report, f"{fail}: {report.items[fail].witness}" if fail else None)
        cert.star_group = report.group_type
        record("orthogonal", check_all_orthogonal(ctx))

        a0s = list(ctx.proper) if a0_policy == "all" else list(ctx.proper[:1])
        cert.a0 = a0s[0]
        Ts = [build_T(ctx, a) for a in a0s]
        T = cert.T = Ts[0]
        flags["sharply_transitive"] = is_sharply_transitive(T, G.degree)
        diff = next((a for a, Ta in zip(a0s, Ts) if Ta != T), None)
        record("a0_independent", diff is None,
               None if diff is None else f"T for a0={diff} differs from a0={a0s[0]}")

        K = cert.oracle_K = brute_force_kernel(G)
        record("equals_oracle", T == K, None if T == K else
               f"T and K differ: {sorted(set(T) ^ set(K))[0]}")

        record("left_transversal_H0", verify_left_transversal(T, G, ctx.H0))
        loop = Verdict.passed()
        for a in range(G.degree):
            v = verify_left_transversal(T, G, ctx.stabilizer(a))
            if not v:
                loop = Verdict.failed(f"H_{a}: {v.witness}")
                break
        record("loop_transversal", loop)

        sub = verify_subgroup_and_normal(T, G, "both")
        record("closed_under_product", sub.closed_under_product)
        record("closed_under_inverse", sub.closed_under_inverse)
        record("normal", sub.normal)
        cert.normal_path = sub.path

        record("union_decomposition", verify_union_decomposition(G, K, range(G.degree)))
        cert.e_star_union_decomposition = bool(verify_union_decomposition(G, K, ctx.e_star))
    except ConstructionError as exc:
        name = next((f for f in FLAG_NAMES if f not in flags), FLAG_NAMES[-1])
        flags[name] = False
        wit[name] = str(exc)

    cert.first_failure = next((f for f in FLAG_NAMES if not flags.get(f, False)), None)
    return cert

