"""Clifford structures, Osserman curvature algebra and chart cross-validation."""

from ._oslab import (
    CliffordSystem,
    c_const,
    classify_r8,
    codazzi_residual,
    extend_to_seven,
    from_clifford,
    generate,
    jacobi,
    min_module_dim,
    model_tensor,
    model_weyl,
    oct_mul,
    octonion_table,
    osserman_check,
    radon_bound,
    ricci,
    riemann_at,
    validate,
    verify_all,
    weyl,
    weyl_norm_sq,
)

__all__ = [
    "CliffordSystem",
    "c_const",
    "classify_r8",
    "codazzi_residual",
    "extend_to_seven",
    "from_clifford",
    "generate",
    "jacobi",
    "min_module_dim",
    "model_tensor",
    "model_weyl",
    "oct_mul",
    "octonion_table",
    "osserman_check",
    "radon_bound",
    "ricci",
    "riemann_at",
    "validate",
    "verify_all",
    "weyl",
    "weyl_norm_sq",
]
