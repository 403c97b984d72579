"""Monte Carlo realization of the photon-flux picture.

Two simulators live here.  ``estimate_pressure_in`` importance-samples
virtual-photon wave vectors in the positive octant and averages the momentum
flux they deliver to a wall; its expectation is the same half-space integral
the quadrature route computes, so the two must agree statistically.
``simulate_cavity`` follows one photon bouncing between two walls and shows
how the oscillating-wall reflection probability filters out every wavenumber
except the cavity modes.

Reproducibility contract: all randomness comes from counter-based Philox
streams keyed by the seed.  Flux samples are processed in fixed-size blocks
whose position in the stream depends only on the block index, and block
partial sums are combined in index order with exact summation, so the
estimate is bit-identical for any worker count.
"""

from __future__ import annotations

import csv
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import IO, Sequence

import numpy as np

from .casimir import NATURAL, PlateGeometry, PressureResult, UnitSystem
from .cutoff import CutoffSpec, characteristic_scale, evaluate
from .model import PhotonSign, ReflectorState

__all__ = [
    "SimConfig",
    "CavityRunRecord",
    "ZeroEffectiveSamplesError",
    "estimate_pressure_in",
    "simulate_cavity",
    "mean_survival",
    "records_to_csv",
    "CSV_COLUMNS",
]

# Each flux sample consumes exactly this many uniform draws: one for the
# incidence direction, four for the Gamma(4) radial proposal.  Fixed so that
# sample i always reads the same stream positions.
_DRAWS_PER_SAMPLE = 5
_BLOCK = 8192


class ZeroEffectiveSamplesError(RuntimeError):
    """Every sampled wave vector fell outside the cutoff support."""


@dataclass(frozen=True)
class SimConfig:
    """Sampling plan for the flux estimator.

    ``proposal_scale`` shapes the radial proposal k^3 exp(-k / scale); by
    default it is the cutoff's characteristic scale, which keeps the
    importance weights bounded for every shipped family.  ``workers`` only
    parallelizes; it never changes the estimate.
    """

    samples: int
    seed: int
    cutoff: CutoffSpec
    proposal_scale: float | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.samples < 1:
            raise ValueError("samples must be >= 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit non-negative integer")
        if self.proposal_scale is not None and self.proposal_scale <= 0.0:
            raise ValueError("proposal_scale must be positive")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")

    def resolved_proposal_scale(self) -> float:
        if self.proposal_scale is not None:
            return self.proposal_scale
        return characteristic_scale(self.cutoff)


def _block_stats(
    cfg: SimConfig, block: int, count: int, scale: float, coef: float
) -> tuple[float, float, int]:
    """Weight sum, squared-weight sum, and nonzero count for one sample block."""
    bitgen = np.random.Philox(key=cfg.seed)
    bitgen.advance(block * _BLOCK * _DRAWS_PER_SAMPLE)
    draws = np.random.Generator(bitgen).random((count, _DRAWS_PER_SAMPLE))

    # Direction: uniform on the octant of the unit sphere; the flux kernel
    # only sees the normal cosine, which is uniform on [0, 1).
    cos_gamma = draws[:, 0]
    # Radius: Gamma(shape 4, scale s) via the product of four uniforms,
    # matching the k^3 growth of the flux kernel.
    k = -scale * np.sum(np.log1p(-draws[:, 1:]), axis=1)

    g = evaluate(cfg.cutoff, k)
    boost = np.exp(np.minimum(k / scale, 700.0))
    weights = coef * np.where(g > 0.0, g * boost, 0.0) * cos_gamma**2
    return float(weights.sum()), float((weights * weights).sum()), int(
        np.count_nonzero(weights)
    )


def estimate_pressure_in(
    cfg: SimConfig,
    geom: PlateGeometry | None = None,
    units: UnitSystem = NATURAL,
) -> tuple[PressureResult, float]:
    """Monte Carlo estimate of the one-sided flux pressure, with standard error.

    Each sample draws a wave vector from the normalized octant proposal and
    weights it so the estimator's expectation equals the quadrature value of
    the same integral.  Returns the :class:`PressureResult` (whose
    ``numerical_error`` is the standard error) and the standard error again
    for convenience.
    """
    scale = cfg.resolved_proposal_scale()
    # weight = integrand / proposal density; for the octant-uniform direction
    # and Gamma(4, s) radius the prefactor is 3 hbar c s^4 / pi^2
    coef = 3.0 * units.hbar * units.c * scale**4 / math.pi**2

    n_blocks = (cfg.samples + _BLOCK - 1) // _BLOCK
    sizes = [
        min(_BLOCK, cfg.samples - b * _BLOCK) for b in range(n_blocks)
    ]
    if cfg.workers == 1 or n_blocks == 1:
        stats = [
            _block_stats(cfg, b, sizes[b], scale, coef) for b in range(n_blocks)
        ]
    else:
        with ThreadPoolExecutor(max_workers=cfg.workers) as pool:
            stats = list(
                pool.map(
                    lambda b: _block_stats(cfg, b, sizes[b], scale, coef),
                    range(n_blocks),
                )
            )

    effective = sum(s[2] for s in stats)
    if effective == 0:
        raise ZeroEffectiveSamplesError(
            "all importance weights vanished: cutoff support is disjoint "
            "from the proposal distribution"
        )
    total = math.fsum(s[0] for s in stats)
    total_sq = math.fsum(s[1] for s in stats)
    n = cfg.samples
    mean = total / n
    variance = max(total_sq / n - mean * mean, 0.0)
    if n > 1:
        variance *= n / (n - 1)
    stderr = math.sqrt(variance / n)
    result = PressureResult(
        value=mean,
        numerical_error=stderr,
        method="monte-carlo",
        cutoff=cfg.cutoff,
        geometry=geom,
        units=units,
        detail={
            "samples": n,
            "effective_samples": effective,
            "proposal_scale": scale,
            "seed": cfg.seed,
        },
    )
    return result, stderr


@dataclass(frozen=True)
class CavityRunRecord:
    """One successful reflection in a cavity run.

    ``delivered_momentum`` is the full 2 * (hbar k_z / 2) recoil in units of
    hbar; ``sign_after`` is the photon's interference state leaving the wall.
    """

    bounce_index: int
    arrival_phase: float
    reflect_prob: float
    delivered_momentum: float
    sign_after: PhotonSign

    def __post_init__(self) -> None:
        if not 0.0 <= self.reflect_prob <= 1.0:
            raise ValueError("reflect_prob must lie in [0, 1]")


CSV_COLUMNS = (
    "bounce_index",
    "arrival_phase",
    "reflect_prob",
    "delivered_momentum",
    "sign_after",
)


def simulate_cavity(
    k_z: float,
    geom: PlateGeometry,
    bounces: int,
    cfg: SimConfig,
    wall: ReflectorState | None = None,
    stream: int = 0,
) -> list[CavityRunRecord]:
    """Follow one photon bouncing between the plates until it escapes.

    The first strike finds a wall at rest and sets its oscillation phase so
    that reflection is certain.  Every later arrival carries an extra
    2 d k_z of round-trip phase and is reflected with probability
    C (1 + cos(phase)); the first failed trial ends the run (the photon
    passes out of the cavity, delivering nothing).  Records cover successful
    bounces only; their length is the survival count.

    ``stream`` selects an independent substream of the seed for ensemble
    runs.
    """
    if k_z <= 0.0:
        raise ValueError("k_z must be positive")
    if bounces < 1:
        raise ValueError("bounces must be >= 1")
    wall = wall or ReflectorState()
    rng = np.random.Generator(np.random.Philox(key=cfg.seed).jumped(stream))
    round_trip = 2.0 * geom.gap * k_z

    records: list[CavityRunRecord] = []
    sign = PhotonSign.PLUS
    for arrival in range(bounces):
        phase = math.fmod(round_trip * arrival, 2.0 * math.pi)
        prob = wall.amplitude * (1.0 + math.cos(phase))
        if not rng.random() < prob:
            break
        sign = sign.flipped()
        records.append(
            CavityRunRecord(
                bounce_index=arrival + 1,
                arrival_phase=phase,
                reflect_prob=prob,
                delivered_momentum=k_z,
                sign_after=sign,
            )
        )
    return records


def mean_survival(
    k_z: float,
    geom: PlateGeometry,
    bounces: int,
    runs: int,
    cfg: SimConfig,
    wall: ReflectorState | None = None,
) -> tuple[float, float]:
    """Ensemble averages over independent runs at one wavenumber.

    Returns (mean surviving bounce count, mean total delivered momentum).
    """
    if runs < 1:
        raise ValueError("runs must be >= 1")
    lengths = []
    momenta = []
    for run in range(runs):
        records = simulate_cavity(k_z, geom, bounces, cfg, wall, stream=run)
        lengths.append(len(records))
        momenta.append(math.fsum(r.delivered_momentum for r in records))
    return (math.fsum(lengths) / runs, math.fsum(momenta) / runs)


def records_to_csv(records: Sequence[CavityRunRecord], fh: IO[str]) -> None:
    """Write run records as CSV with the documented fixed header."""
    writer = csv.writer(fh)
    writer.writerow(CSV_COLUMNS)
    for r in records:
        writer.writerow(
            [
                r.bounce_index,
                f"{r.arrival_phase:.12e}",
                f"{r.reflect_prob:.12e}",
                f"{r.delivered_momentum:.12e}",
                int(r.sign_after),
            ]
        )
