"""Elementary quantities of the photon-particle vacuum model.

Sources emit photons in two interference states whose expected densities
oscillate harmonically; reflection by a perfect conductor flips the state.
Everything here is a pure function of its arguments: source densities, the
scalar field built from them, the oscillating-wall reflection probability,
and the cavity mode-resonance test.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

__all__ = [
    "PhotonSign",
    "SourceParams",
    "ReflectorState",
    "emission_density",
    "spacetime_density",
    "scalar_field",
    "reflection_probability",
    "resonant_mode",
]


class PhotonSign(enum.IntEnum):
    """Interference state of a photon; reflection maps one onto the other."""

    PLUS = 1
    MINUS = -1

    def flipped(self) -> "PhotonSign":
        return PhotonSign(-self.value)


@dataclass(frozen=True)
class SourceParams:
    """Harmonically oscillating photon source.

    ``amplitude`` is the emission-rate constant (photons per unit time),
    ``field_amplitude`` scales the space-time expectation density, and
    ``field_constant`` scales the derived scalar field.  None of them is
    pinned by the model; all default to 1 in natural units.
    """

    amplitude: float = 1.0
    angular_frequency: float = 1.0
    field_amplitude: float = 1.0
    field_constant: float = 1.0

    def __post_init__(self) -> None:
        if self.amplitude <= 0.0:
            raise ValueError("amplitude must be positive")
        if self.angular_frequency <= 0.0:
            raise ValueError("angular_frequency must be positive")
        if self.field_amplitude <= 0.0:
            raise ValueError("field_amplitude must be positive")


@dataclass(frozen=True)
class ReflectorState:
    """Oscillation state of a reflecting wall.

    ``amplitude`` is capped at 1/2 so the reflection probability stays in
    [0, 1].  ``oscillating`` is False until the wall's first strike sets its
    phase (by convention, so that the first reflection is certain).
    """

    phase: float = 0.0
    amplitude: float = 0.5
    oscillating: bool = False

    def __post_init__(self) -> None:
        if not 0.0 <= self.amplitude <= 0.5:
            raise ValueError("reflector amplitude must lie in [0, 1/2]")


def emission_density(t: float, sign: PhotonSign, src: SourceParams) -> float:
    """Expected emission density of photons of one sign at time t.

    (amplitude / 2) * (1 +/- cos(omega t)); always in [0, amplitude].
    """
    return 0.5 * src.amplitude * (1.0 + sign.value * math.cos(src.angular_frequency * t))


def spacetime_density(
    t: float,
    r: float,
    omega: float,
    sign: PhotonSign,
    src: SourceParams,
    c: float = 1.0,
) -> float:
    """Conditional expectation density at distance r from a spherical source.

    (A / 8 pi r^2) * (1 +/- cos(omega (t - r/c))), the retarded oscillation
    of an isotropically emitting source.  Singular at the source itself.
    """
    if r <= 0.0:
        raise ValueError("spacetime_density is singular at r = 0; need r > 0")
    phase = omega * (t - r / c)
    return (
        src.field_amplitude
        / (8.0 * math.pi * r * r)
        * (1.0 + sign.value * math.cos(phase))
    )


def scalar_field(hplus: float, hminus: float, field_constant: float) -> float:
    """Scalar field of a photon population: E0 (h+ - h-) / sqrt(h+ + h-)."""
    if hplus < 0.0 or hminus < 0.0:
        raise ValueError("densities must be non-negative")
    total = hplus + hminus
    if total == 0.0:
        raise ValueError("scalar field undefined for a vanishing photon density")
    return field_constant * (hplus - hminus) / math.sqrt(total)


def reflection_probability(t: float, omega: float, wall: ReflectorState) -> float:
    """Probability that an oscillating wall reflects an arriving photon.

    amplitude * (1 + cos(omega t + phase)); zero means no interaction and
    no momentum delivered.
    """
    return wall.amplitude * (1.0 + math.cos(omega * t + wall.phase))


def resonant_mode(k_z: float, length: float, tol: float) -> int | None:
    """Mode number n if k_z * length is within tol of n * pi, else None.

    Only wavenumbers with k_z = n pi / L accumulate a full 2 pi round-trip
    phase and survive repeated reflection between walls a distance L apart.
    """
    if k_z <= 0.0 or length <= 0.0:
        raise ValueError("k_z and length must be positive")
    if tol < 0.0:
        raise ValueError("tol must be non-negative")
    ratio = k_z * length / math.pi
    n = max(1, round(ratio))
    return n if abs(ratio - n) <= tol else None
