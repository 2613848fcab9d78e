"""Scalar polynomial term-structure models.

Bond prices are polynomials H(x, z) = sum_k g_k(x) z^k of a bounded factor
diffusion; the coefficient vector solves a linear ODE system driven by the
companion matrix and is evaluated through its matrix exponential. The package
wraps the C++ core: feasibility checks, non-explosion classification, pricing,
spectral analysis (invariant density, weight polynomials, long rate), Monte
Carlo simulation, and least-squares yield-curve calibration.
"""

from polyterm._core import (  # noqa: F401
    BoundaryOrders,
    CalibrationResult,
    CanonicalParams,
    CompanionMatrix,
    DomainError,
    EndpointTest,
    ExampleModelParams,
    GeneralParams,
    Interval,
    InvariantDensity,
    MCEstimate,
    Polynomial,
    SimConfig,
    Side,
    SpectralData,
    Verdict,
    YieldDataset,
    __version__,
    analyze_spectrum,
    bond_coefficients,
    bond_price,
    bond_yield,
    boundary_orders,
    calibrate,
    check_feasibility,
    classify_from_orders,
    classify_simple,
    companion_matrix,
    drift_admissible,
    eigendecompose,
    endpoint_test_values,
    example_to_general,
    expm,
    implied_spot,
    is_feasible,
    load_fred_csv,
    load_params,
    long_rate,
    make_dataset,
    mc_price,
    moment_matrix,
    objective,
    pde_residual,
    sample_states,
    simulate_path,
    to_canonical,
    to_general,
    unbounded_example_mc,
    unbounded_example_path,
    unbounded_example_price,
    vol_factor_positive,
    weight_polynomials,
)
