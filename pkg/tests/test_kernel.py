from dataclasses import replace
from itertools import product

import pytest

from conftest import FROBENIUS_ORDERS, corpus_group, cyc
from oracles import fixed_point_free
from frobkern.context import build_context
from frobkern.errors import ConstructionError
from frobkern.groups import affine_group, alternating_group, quaternion_frobenius, symmetric_group
from frobkern.kernel import (
    FLAG_NAMES,
    brute_force_kernel,
    build_T,
    kernel_pipeline,
    phi,
    phi_family,
    psi,
    verify_left_transversal,
    verify_subgroup_and_normal,
    verify_union_decomposition,
)
from frobkern.perm import (
    Permutation,
    compose,
    fixed_points,
    inverse,
    is_fixed_point_free,
    is_sharply_transitive,
    point_stabilizer,
)


def powers(g):
    out, x = [], Permutation.identity(g.degree)
    while True:
        out.append(x)
        x = compose(g, x)
        if x.is_identity():
            return sorted(out)


class TestPhi:
    def test_one_is_identity(self, frob_ctx):
        assert all(phi(frob_ctx, b, frob_ctx.one).is_identity() for b in range(frob_ctx.degree))

    def test_s3(self, s3_ctx):
        assert phi(s3_ctx, 0, 2) == cyc("(1 2)", 3)

    def test_rejects_zero(self, s3_ctx):
        with pytest.raises(ValueError):
            phi(s3_ctx, 0, 0)

    def test_in_stabilizer(self, frob_ctx):
        G = frob_ctx.group
        for b in range(frob_ctx.degree):
            H = point_stabilizer(G, b)
            for a in frob_ctx.nonzero:
                assert phi(frob_ctx, b, a) in H

    def test_unique_fixed_point(self, frob_ctx):
        for b in range(frob_ctx.degree):
            for a in frob_ctx.proper:
                assert fixed_points(phi(frob_ctx, b, a)) == {b}


class TestPsi:
    def test_trivial_cases(self, frob_ctx):
        n = frob_ctx.degree
        for b, d in product(range(n), repeat=2):
            assert psi(frob_ctx, b, frob_ctx.one, d).is_identity()
        for b in range(n):
            for a in frob_ctx.nonzero:
                assert psi(frob_ctx, b, a, b).is_identity()

    def test_s3_values(self, s3_ctx):
        assert psi(s3_ctx, 1, 2, 0) == cyc("(0 2 1)", 3)
        assert psi(s3_ctx, 2, 2, 0) == cyc("(0 1 2)", 3)

    def test_dichotomy(self, frob_ctx):
        n = frob_ctx.degree
        for b, d in product(range(n), repeat=2):
            for a in frob_ctx.proper:
                p = psi(frob_ctx, b, a, d)
                assert p in frob_ctx.group
                assert is_fixed_point_free(p) == (b != d)

    def test_rejects_zero(self, s3_ctx):
        with pytest.raises(ValueError):
            psi(s3_ctx, 1, 0, 0)


class TestPhiFamily:
    def test_s3(self, s3_ctx):
        assert phi_family(s3_ctx, 0) == {Permutation.identity(3), cyc("(1 2)", 3)}

    def test_a4(self):
        ctx = build_context(alternating_group(4))
        for b in range(4):
            fam = phi_family(ctx, b)
            assert len(fam) == 3 and fam == point_stabilizer(ctx.group, b).element_set()

    def test_equals_stabilizer(self, frob_ctx):
        for b in range(frob_ctx.degree):
            fam = [phi(frob_ctx, b, a) for a in frob_ctx.nonzero]
            assert len(set(fam)) == len(fam)
            assert set(fam) == point_stabilizer(frob_ctx.group, b).element_set()
            assert phi_family(frob_ctx, b) == set(fam)


class TestBuildT:
    def test_s3(self, s3_ctx):
        assert build_T(s3_ctx, 2) == tuple(sorted(
            [Permutation.identity(3), cyc("(0 1 2)", 3), cyc("(0 2 1)", 3)]))

    def test_a4_klein(self):
        ctx = build_context(alternating_group(4))
        V4 = {Permutation.identity(4), cyc("(0 1)(2 3)", 4), cyc("(0 2)(1 3)", 4), cyc("(0 3)(1 2)", 4)}
        for a0 in ctx.proper:
            assert set(build_T(ctx, a0)) == V4

    def test_agl1_5_cyclic(self):
        ctx = build_context(affine_group(5))
        for a0 in ctx.proper:
            assert list(build_T(ctx, a0)) == powers(cyc("(0 1 2 3 4)", 5))

    def test_sharply_transitive(self, frob_ctx):
        for a0 in frob_ctx.proper:
            T = build_T(frob_ctx, a0)
            assert len(T) == frob_ctx.degree and Permutation.identity(frob_ctx.degree) in T
            assert is_sharply_transitive(T, frob_ctx.degree)

    def test_rejects_projection_label(self, s3_ctx):
        with pytest.raises(ValueError):
            build_T(s3_ctx, 1)


class TestBruteForceKernel:
    def test_s3(self):
        assert list(brute_force_kernel(symmetric_group(3))) == powers(cyc("(0 1 2)", 3))

    def test_a4(self):
        K = brute_force_kernel(alternating_group(4))
        assert len(K) == 4 and all(len(k.cycles()) == 2 for k in K if not k.is_identity())

    def test_agl1_7(self):
        assert list(brute_force_kernel(affine_group(7))) == powers(cyc("(0 1 2 3 4 5 6)", 7))

    def test_counts(self, frob_group):
        fpf = fixed_point_free([g.images for g in frob_group])
        assert len(fpf) == frob_group.degree - 1
        K = brute_force_kernel(frob_group)
        assert {k.images for k in K} == fpf | {tuple(range(frob_group.degree))}

    def test_non_frobenius_count_rejected(self):
        with pytest.raises(ConstructionError):
            brute_force_kernel(symmetric_group(4))


class TestTransversal:
    def test_h0(self, frob_ctx):
        T = build_T(frob_ctx, frob_ctx.proper[0])
        assert verify_left_transversal(T, frob_ctx.group, frob_ctx.H0)

    def test_every_stabilizer(self, frob_ctx):
        T = build_T(frob_ctx, frob_ctx.proper[0])
        for a in range(frob_ctx.degree):
            assert verify_left_transversal(T, frob_ctx.group, point_stabilizer(frob_ctx.group, a))

    def test_coset_avoidance(self, frob_ctx):
        T = build_T(frob_ctx, frob_ctx.proper[0])
        for ti, tj in product(T, repeat=2):
            if ti != tj:
                q = compose(inverse(ti), tj)
                assert all(q(a) != a for a in range(frob_ctx.degree))

    def test_corrupted(self):
        ctx = build_context(affine_group(5))
        T = list(build_T(ctx, 2))
        # replace a kernel element by a non-identity stabilizer element
        T[1] = next(h for h in ctx.H0 if not h.is_identity())
        v = verify_left_transversal(T, ctx.group, ctx.H0)
        assert not v and "same coset" in v.witness

    def test_too_small(self):
        G = symmetric_group(3)
        v = verify_left_transversal([Permutation.identity(3)], G, point_stabilizer(G, 0))
        assert not v and "contains no element of T" in v.witness


class TestSubgroupAndNormal:
    def test_s3(self, s3_ctx):
        chk = verify_subgroup_and_normal(build_T(s3_ctx, 2), s3_ctx.group)
        assert chk and chk.path == "generators+full"

    def test_a4(self):
        G = alternating_group(4)
        chk = verify_subgroup_and_normal(brute_force_kernel(G), G, "full")
        assert chk

    def test_non_normal_subgroup(self):
        G = symmetric_group(3)
        S = [Permutation.identity(3), cyc("(0 1)", 3)]
        for mode in ("generators", "full", "both"):
            chk = verify_subgroup_and_normal(S, G, mode)
            assert chk.closed_under_product and chk.closed_under_inverse
            assert not chk.normal
        # conjugating by (0 1 2) moves (0 1) to (1 2)
        assert compose(compose(cyc("(0 1 2)", 3), cyc("(0 1)", 3)), cyc("(0 2 1)", 3)) == cyc("(1 2)", 3)

    def test_not_closed(self):
        G = symmetric_group(3)
        chk = verify_subgroup_and_normal([Permutation.identity(3), cyc("(0 1 2)", 3)], G)
        assert not chk.closed_under_product and not chk.closed_under_inverse

    def test_generator_path_agrees_with_full(self, frob_group):
        for a in range(frob_group.degree):
            H = point_stabilizer(frob_group, a)
            fast = verify_subgroup_and_normal(H, frob_group, "generators")
            full = verify_subgroup_and_normal(H, frob_group, "full")
            assert bool(fast.normal) == bool(full.normal) is False


class TestUnionDecomposition:
    def test_all_points(self, frob_group):
        K = brute_force_kernel(frob_group)
        assert verify_union_decomposition(frob_group, K, range(frob_group.degree))

    def test_e_star_indexed_fails_when_e_star_is_proper(self):
        G = corpus_group("d5")
        ctx = build_context(G)
        assert ctx.e_star != tuple(range(5))
        assert not verify_union_decomposition(G, brute_force_kernel(G), ctx.e_star)

    def test_e_star_indexed_holds_when_e_star_is_everything(self):
        G = affine_group(7)
        assert verify_union_decomposition(G, brute_force_kernel(G), build_context(G).e_star)


class TestPipeline:
    @pytest.mark.parametrize("name", sorted(FROBENIUS_ORDERS))
    def test_corpus(self, name):
        cert = kernel_pipeline(corpus_group(name), a0_policy="all")
        assert cert.ok, cert.witnesses
        assert cert.T == cert.oracle_K
        assert all(cert.flags[f] for f in FLAG_NAMES)
        assert cert.first_failure is None

    @pytest.mark.parametrize("name", ["s4", "c5", "intransitive"])
    def test_rejections(self, name):
        cert = kernel_pipeline(corpus_group(name))
        assert not cert.accepted and not cert.ok
        assert cert.first_failure == "frobenius_definition"
        assert cert.rejection.startswith("not Frobenius")

    def test_s4_names_witness(self):
        assert kernel_pipeline(symmetric_group(4)).rejection == "not Frobenius: St_{0,1} contains (2 3)"

    def test_d5_e_star_note(self):
        cert = kernel_pipeline(corpus_group("d5"))
        assert cert.ok and cert.e_star_union_decomposition is False

    def test_bad_policy(self):
        with pytest.raises(ValueError):
            kernel_pipeline(symmetric_group(3), a0_policy="last")


class TestNonAbelianComplement:
    """``3^2 : Q8`` is Frobenius, but its point stabilizer is non-abelian, so
    ``sigma_x h_a sigma_x^-1`` depends on the representative chosen for ``x``
    and the slices ``A_a`` stop being Latin squares. The test records the
    observed behaviour under the lexicographic policy."""

    def test_observed(self):
        G = quaternion_frobenius()
        assert G.order == 72
        cert = kernel_pipeline(G)
        assert cert.accepted and cert.star_group == "non-abelian of order 8, exponent 4"
        assert not cert.flags["s_system"] and "quasigroup" in cert.witnesses["s_system"]
        assert not cert.flags["orthogonal"]
        assert not cert.ok
        # the brute-force kernel itself is still a normal regular subgroup
        K = brute_force_kernel(G)
        assert len(K) == 9 and verify_subgroup_and_normal(K, G)

    def test_kernel_coset_representatives_repair_it(self):
        # with every sigma_x taken inside the kernel, alpha no longer depends on the choice
        G = quaternion_frobenius()
        K = brute_force_kernel(G)
        ctx = build_context(G)
        sigma = tuple(next(k for k in K if k(0) == x) for x in range(9))
        fixed = replace(ctx, sigma=sigma)
        for a in fixed.proper:
            assert set(build_T(fixed, a)) == set(K)
