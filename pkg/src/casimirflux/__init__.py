"""Casimir pressures and forces from virtual-photon momentum flux.

A particle model of the quantum vacuum: photons with definite trajectories
carry momentum hbar k / 2, and the pressures they exert on conductors are
finite once the population is weighted by an admissible cutoff profile.
The package computes the parallel-plate pressure two independent ways
(explicit mode sum minus continuum integral, and closed-form summation
boundary terms), the outward force on a solid ball, and a Monte Carlo
estimate of the one-sided flux, all behind a reproducible CLI.
"""

from .casimir import (
    NATURAL,
    SI,
    BallGeometry,
    PlateGeometry,
    PressureResult,
    SeriesConvergenceError,
    UnitSystem,
    ball_force,
    ideal_net_pressure,
    net_pressure_boundary,
    net_pressure_direct,
    pressure_in,
    pressure_out,
)
from .cutoff import CutoffSpec, ValidationReport, evaluate, parse, validate
from .mcsim import (
    CavityRunRecord,
    SimConfig,
    ZeroEffectiveSamplesError,
    estimate_pressure_in,
    simulate_cavity,
)
from .model import PhotonSign, ReflectorState, SourceParams, resonant_mode
from .quadrature import (
    ConvergenceError,
    QuadratureConfig,
    ReducedKernel,
    integrate_semi_infinite,
    kernel_value,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "NATURAL",
    "SI",
    "BallGeometry",
    "CavityRunRecord",
    "ConvergenceError",
    "CutoffSpec",
    "PhotonSign",
    "PlateGeometry",
    "PressureResult",
    "QuadratureConfig",
    "ReducedKernel",
    "ReflectorState",
    "SeriesConvergenceError",
    "SimConfig",
    "SourceParams",
    "UnitSystem",
    "ValidationReport",
    "ZeroEffectiveSamplesError",
    "ball_force",
    "estimate_pressure_in",
    "evaluate",
    "ideal_net_pressure",
    "integrate_semi_infinite",
    "kernel_value",
    "net_pressure_boundary",
    "net_pressure_direct",
    "parse",
    "pressure_in",
    "pressure_out",
    "resonant_mode",
    "simulate_cavity",
    "validate",
]
