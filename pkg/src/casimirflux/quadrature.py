"""Semi-infinite adaptive quadrature and the reduced plate-pressure kernel.

The plate computation runs in the reduced wavenumber variables
x = (k_x^2 + k_y^2) d^2 / pi^2 and u = k_z d / pi.  Everything it needs from
the cutoff profile g enters through one dimensionless kernel

    K(u) = u^2 * integral_0^inf  g(sqrt(x + u^2)) / sqrt(x + u^2)  dx
         = 2 u^2 * integral_u^inf  g(y) dy            (y = sqrt(x + u^2)),

whose sum over integer u minus its integral over continuous u is the net
pressure up to a geometry prefactor.  Both evaluation routes are
implemented; they must agree within quadrature tolerance, which the test
suite enforces.

Integration is adaptive Gauss-Kronrod panel subdivision (QUADPACK via
scipy).  Semi-infinite ranges are handled either exactly, when the profile
has compact support, or through the rational substitution
t -> t/(1-t) mapping [0, 1) onto [0, inf).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy.integrate import quad

from .cutoff import CutoffSpec, breakpoints, evaluate, support_end

__all__ = [
    "QuadratureConfig",
    "DEFAULT_CONFIG",
    "ConvergenceError",
    "ReducedKernel",
    "integrate_semi_infinite",
    "kernel_value",
    "kernel_quad",
    "kernel_derivatives_at_zero",
]


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and limits for the adaptive integrator.

    Tolerances default tight: the net plate pressure is a sum-minus-integral
    cancellation that eats several digits, so each piece is computed to near
    machine accuracy.
    """

    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_subdivisions: int = 200
    transform: str = "rational"  # 'rational' or 'none'

    def __post_init__(self) -> None:
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.max_subdivisions < 8:
            raise ValueError("max_subdivisions must be >= 8")
        if self.transform not in ("rational", "none"):
            raise ValueError("transform must be 'rational' or 'none'")


DEFAULT_CONFIG = QuadratureConfig()


class ConvergenceError(RuntimeError):
    """Adaptive subdivision hit its limit before reaching tolerance.

    Carries the best available estimate and its error bound so callers can
    decide whether to salvage the result.
    """

    def __init__(self, label: str, estimate: float, error_estimate: float, reason: str):
        super().__init__(
            f"{label} did not converge: {reason} "
            f"(best estimate {estimate:.12e}, error bound {error_estimate:.3e})"
        )
        self.label = label
        self.estimate = estimate
        self.error_estimate = error_estimate


# QUADPACK ier codes that leave the estimate unusable.  ier 2 (roundoff) and
# 4 (extrapolation roundoff) still return a result whose abserr reflects the
# achieved accuracy, so they pass through.
_FATAL_IER = {1: "subdivision limit reached", 5: "integral is probably divergent",
              6: "invalid quadrature input"}


def _quad(f, a, b, cfg: QuadratureConfig, points, label: str) -> tuple[float, float]:
    pts = sorted(p for p in points if a < p < b) or None
    out = quad(
        f,
        a,
        b,
        epsabs=cfg.abs_tol,
        epsrel=cfg.rel_tol,
        limit=cfg.max_subdivisions,
        points=pts,
        full_output=1,
    )
    value, err = out[0], out[1]
    info = out[2]
    ier = info.get("ier", 0) if isinstance(info, dict) else 0
    if len(out) > 3 and ier in _FATAL_IER:
        raise ConvergenceError(label, value, err, _FATAL_IER[ier])
    return value, err


def integrate_semi_infinite(
    f,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    *,
    support_end: float | None = None,
    breakpoints: tuple[float, ...] = (),
    label: str = "semi-infinite integral",
) -> tuple[float, float]:
    """Integrate ``f`` over [0, inf); returns (value, error_estimate).

    With ``support_end`` given, the integrand is taken to vanish identically
    beyond it and the integral is computed on [0, support_end] with no tail
    term at all.  Otherwise the tail is folded in by the rational
    substitution (or handed to the backend's own infinite-range handling
    when ``cfg.transform == 'none'``).  ``breakpoints`` flag interior points
    where the integrand changes character, e.g. the ends of a plateau
    transition.
    """
    if support_end is not None:
        if support_end <= 0.0:
            return 0.0, 0.0
        return _quad(f, 0.0, support_end, cfg, breakpoints, label)

    if cfg.transform == "none":
        return _quad(f, 0.0, math.inf, cfg, (), label)

    def transformed(t: float) -> float:
        if t >= 1.0:
            return 0.0
        w = 1.0 - t
        return f(t / w) / (w * w)

    mapped = tuple(b / (1.0 + b) for b in breakpoints if b > 0.0)
    return _quad(transformed, 0.0, 1.0, cfg, mapped, label)


@dataclass(frozen=True)
class ReducedKernel:
    """The kernel K(u) for one cutoff profile, with its evaluation route.

    ``strategy`` selects between the two equivalent forms: ``'direct-x'``
    integrates over the transverse variable x, ``'reduced-y'`` over the
    radial variable y = sqrt(x + u^2).  The cutoff parameters are read in
    the reduced convention (wavenumber times d/pi).
    """

    cutoff: CutoffSpec
    strategy: str = "reduced-y"

    def __post_init__(self) -> None:
        if self.strategy not in ("direct-x", "reduced-y"):
            raise ValueError("strategy must be 'direct-x' or 'reduced-y'")


def kernel_quad(
    u: float, kernel: ReducedKernel, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> tuple[float, float]:
    """K(u) together with the quadrature error estimate."""
    if u < 0.0:
        raise ValueError("kernel argument u must be >= 0")
    if u == 0.0:
        return 0.0, 0.0
    spec = kernel.cutoff
    end = support_end(spec)
    label = f"kernel K({u:g})"

    if kernel.strategy == "reduced-y":
        if end is not None:
            if u >= end:
                return 0.0, 0.0
            val, err = _quad(
                lambda y: evaluate(spec, y), u, end, cfg, breakpoints(spec), label
            )
        else:
            val, err = integrate_semi_infinite(
                lambda s: evaluate(spec, u + s), cfg, label=label
            )
        scale = 2.0 * u * u
        return scale * val, scale * err

    # direct-x: integrand g(sqrt(x+u^2)) / sqrt(x+u^2)
    def integrand(x: float) -> float:
        y = math.sqrt(x + u * u)
        return evaluate(spec, y) / y

    if end is not None:
        if u >= end:
            return 0.0, 0.0
        x_pts = tuple(b * b - u * u for b in breakpoints(spec) if b > u)
        val, err = _quad(integrand, 0.0, end * end - u * u, cfg, x_pts, label)
    else:
        val, err = integrate_semi_infinite(integrand, cfg, label=label)
    return u * u * val, u * u * err


def kernel_value(
    u: float, kernel: ReducedKernel, cfg: QuadratureConfig = DEFAULT_CONFIG
) -> float:
    """K(u) by the kernel's configured strategy.  K(0) = 0 exactly."""
    return kernel_quad(u, kernel, cfg)[0]


def kernel_derivatives_at_zero(
    g_derivs: tuple[float, float, float],
) -> tuple[float, float, float]:
    """Right-derivatives (K(0), K'(0), K'''(0)) from analytic cutoff data.

    From K(u) = 2u^2 * integral_u^inf g and g(inf) = 0:

        K'(u)   = 4u * integral_u^inf g  -  2 u^2 g(u)
        K'''(u) = -12 g(u) - 12 u g'(u) - 2 u^2 g''(u)

    so at u = 0 only g(0) survives.  K is even in u, which is why the
    boundary terms of the summation formula want the one-sided derivatives
    computed here rather than symmetric ones.
    """
    g0, g1, g2 = g_derivs
    del g1, g2  # the u-weighted terms vanish at u = 0
    return 0.0, 0.0, -12.0 * g0
