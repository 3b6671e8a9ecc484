"""Randomized halfspace/projection depth with uniform error bounds."""

from ._core import (
    DirectionSet,
    Model,
    __version__,
    affine_condition_constant,
    approx_halfspace_depth,
    approx_halfspace_depth_data,
    approx_outlyingness,
    approx_projection_depth,
    approx_projection_depth_data,
    atomic_nonuniformity_demo,
    cap_area,
    cap_area_inv,
    empirical_total_bound,
    empirical_trajectory,
    error_bound,
    estimate_sup_error,
    exact_halfspace_depth,
    exact_halfspace_depth_2d,
    great_circle_distance,
    halfspace_function,
    lipschitz_bounded_density,
    location_scale,
    marginal_cdf,
    marginal_mad,
    max_spacing,
    outlyingness_divergence_demo,
    plan_directions,
    projection_error_bound,
    sample_directions,
    spacing_lil_diagnostic,
    tight_modulus,
    whiten,
    zeta,
    zeta_inv,
)

__all__ = [name for name in dir() if not name.startswith("_")] + ["__version__"]
