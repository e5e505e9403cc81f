"""Frobenius kernels of finite permutation groups via ternary quasigroup operations."""

from .context import FrobeniusContext, SigmaPolicy, alpha, build_context, is_frobenius
from .errors import ClosureCapExceeded, ConstructionError, NotFrobeniusError, Verdict
from .kernel import (
    KernelCertificate,
    brute_force_kernel,
    build_T,
    kernel_pipeline,
    phi,
    phi_family,
    psi,
    verify_left_transversal,
    verify_subgroup_and_normal,
)
from .perm import (
    Permutation,
    PermutationGroup,
    compose,
    fixed_points,
    generate_group,
    inverse,
    is_fixed_point_free,
    is_regular,
    is_sharply_transitive,
    is_transitive,
    point_stabilizer,
    two_point_stabilizer,
)
from .ssystem import build_star_group, check_orthogonal, circ, star, verify_right_s_system
from .ternary import OperationTable, binary_table, check_idempotent_quasigroup, composition_constant, ternary_eval

__version__ = "0.1.0"
