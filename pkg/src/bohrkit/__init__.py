"""Radius equations, extremal functionals and lemma oracles for Bohr-type
inequalities of K-quasiconformal harmonic mappings with Schwarz functions."""

from .functionals import (
    DilatationMode,
    HarmonicMappingModel,
    SchwarzTriple,
    SweepResult,
    eval_functional,
    extremal_mapping,
    extremal_value,
    sharpness_sweep,
)
from .radii import (
    NoRootInUnitInterval,
    Params,
    RadiusProblem,
    RootResult,
    Variant,
    cap_radius,
    defining_function,
    limiting_radius,
    refined_constant,
    solve_radius,
)
from .series import (
    BoundedFunction,
    TruncatedSeries,
    abs_sum_at,
    blaschke,
    expand,
    mobius,
    monomial,
    series_antiderivative,
    series_derivative,
    series_mul,
)

__version__ = "0.1.0"
