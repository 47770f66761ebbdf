"""Exact Takagi-type error estimates for approximately midpoint convex functions.

Rationals cross this boundary as strings like "2/3"; values that stayed on
the exact path come back as strings, float-path values as floats.
"""

import json as _json

from ._ajc import (  # noqa: F401
    UnboundedRegularizationError,
    build_report_json,
    closed_form,
    composition_bound,
    denominator_order,
    dz,
    dz_float,
    dz_iterate,
    eval_closed,
    eval_phi,
    eval_phi_star,
    euler_sharpened_check,
    fixed_point_solve,
    gap_profile_csv,
    gcd,
    half_totient,
    intro_special_case,
    mu,
    mu_orbit,
    orbit,
    rational_nk_bound,
    reduce_lambda,
    regularize_info,
    residue_set,
    sharpness_check,
    takagi_bound,
    totient,
    truncated_series,
    verify_lambda_bound_csv,
    verify_midconvex_csv,
)


def build_report(lambda_, u, phi):
    """Full upper-estimate report as a dict (see build_report_json)."""
    return _json.loads(build_report_json(lambda_, u, phi))


__all__ = [name for name in dir() if not name.startswith("_")]
