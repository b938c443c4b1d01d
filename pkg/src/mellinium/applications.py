"""Named evaluations built on the transform engine.

Includes the free Green's function from the heat kernel, Riemann zeta
and eta values by real-line and contour routes, the reflection identity
through the star convolution, the subtracted exponential transform, and
the weighted extension of the Gamma-normalized exponential transform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gamma as _gamma

from .errors import (
    CoincidentPoints,
    DivergentRoute,
    PoleAtOne,
    StripViolation,
)
from .mellin_core import (
    DEFAULT_CONFIG,
    FundamentalStrip,
    HankelContourSpec,
    MellinFunction,
    Normalization,
    QuadratureConfig,
    _widened_config,
    forward_mellin,
    hankel_mellin,
)
from .strip_algebra import star_convolve

__all__ = [
    "HeatKernelProblem",
    "bose_function",
    "fermi_function",
    "greens_function",
    "zeta_value",
    "eta_value",
    "gamma_reflection",
    "subtracted_exponential_transform",
    "gamma_p_extension",
]


def bose_function() -> MellinFunction:
    """1 / (e^x - 1) on the strip <1, inf); complex-safe off the axis."""

    def ev(x):
        arr = np.atleast_1d(np.asarray(x))
        if np.iscomplexobj(arr):
            with np.errstate(over="ignore", under="ignore", invalid="ignore"):
                out = 1.0 / (np.exp(arr) - 1.0)
        else:
            with np.errstate(over="ignore", under="ignore", invalid="ignore"):
                out = 1.0 / np.expm1(arr)
            out = np.where(np.isfinite(out), out, 0.0)
        return out if np.ndim(x) else out[0]

    return MellinFunction(ev, 1.0, math.inf, label="bose")


def fermi_function() -> MellinFunction:
    """1 / (e^x + 1) on the strip <0, inf)."""

    def ev(x):
        arr = np.atleast_1d(np.asarray(x, dtype=float))
        with np.errstate(over="ignore", under="ignore"):
            out = 1.0 / (np.exp(arr) + 1.0)
        return out if np.ndim(x) else out[0]

    return MellinFunction(ev, 0.0, math.inf, label="fermi")


def _exp_function(beta: float = 1.0) -> MellinFunction:
    def ev(x):
        arr = np.atleast_1d(np.asarray(x))
        with np.errstate(over="ignore", under="ignore"):
            out = np.exp(-beta * arr)
        return out if np.ndim(x) else out[0]

    return MellinFunction(ev, 0.0, math.inf, label=f"exp-decay({beta:g})")


@dataclass(frozen=True)
class HeatKernelProblem:
    """Free heat-kernel Green's function problem in n dimensions."""

    n: int
    x_a: tuple[float, ...]
    x_a_prime: tuple[float, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("dimension n must be >= 1")
        if len(self.x_a) != len(self.x_a_prime):
            raise ValueError("endpoint coordinate lengths differ")
        if self.separation() == 0.0:
            raise CoincidentPoints("x_a and x_a' coincide")

    def separation(self) -> float:
        d = np.asarray(self.x_a, dtype=float) - np.asarray(self.x_a_prime, dtype=float)
        return float(np.sqrt(np.sum(d * d)))


def greens_function(
    problem: HeatKernelProblem,
    route: str = "closed",
    cfg: QuadratureConfig | None = None,
) -> float:
    """Static Green's function from the heat kernel.

    Closed form: -2 log|dx| in n = 2, else
    pi^(1 - n/2) Gamma(n/2 - 1) |dx|^(2 - n). The quadrature route
    integrates the heat kernel e^(-pi |dx|^2 / g) g^(-n/2) against Haar
    measure at alpha = 1, which lies inside the strip <-inf, n/2> only
    for n >= 3 (DivergentRoute below that).
    """
    cfg = cfg or DEFAULT_CONFIG
    r = problem.separation()
    n = problem.n
    key = route.replace("-", "_").lower()
    if key in ("closed", "closed_form"):
        if n == 2:
            return -2.0 * math.log(r)
        return float(math.pi ** (1.0 - 0.5 * n) * _gamma(0.5 * n - 1.0) * r ** (2.0 - n))
    if key != "quadrature":
        raise ValueError(f"unknown route {route!r}")
    if n <= 2:
        raise DivergentRoute(
            f"quadrature route diverges for n = {n}: alpha = 1 is outside <-inf, n/2>"
        )
    a = math.pi * r * r

    def ev(g):
        arr = np.atleast_1d(np.asarray(g, dtype=float))
        with np.errstate(over="ignore", under="ignore", divide="ignore"):
            out = np.exp(-a / arr) * arr ** (-0.5 * n)
        out = np.where(np.isfinite(out), out, 0.0)
        return out if np.ndim(g) else out[0]

    hk = MellinFunction(ev, -math.inf, 0.5 * n, label=f"heat-kernel(n={n})")
    wcfg = _widened_config(cfg, -math.inf, 0.5 * n, 1.0)
    return float(forward_mellin(hk, 1.0, cfg=wcfg).value.real)


def zeta_value(
    alpha: complex,
    route: str = "realline",
    cfg: QuadratureConfig | None = None,
    contour: HankelContourSpec | None = None,
) -> complex:
    """Riemann zeta through the Bose distribution.

    realline: Gamma-normalized transform on <1, inf), needs
    Re(alpha) > 1. hankel: contour-normalized loop transform, valid for
    Re(alpha) > 0 except the pole at 1. PoleAtOne wins over strip
    checks.
    """
    cfg = cfg or DEFAULT_CONFIG
    alpha = complex(alpha)
    key = route.replace("-", "_").lower()
    bose = bose_function()
    if key == "realline":
        if abs(alpha - 1.0) < 1e-10:
            raise PoleAtOne("zeta has its pole at alpha = 1")
        wcfg = _widened_config(cfg, 1.0, math.inf, alpha)
        return forward_mellin(bose, alpha, Normalization.gamma(), cfg=wcfg).value
    if key == "hankel":
        if abs(alpha - 1.0) < 0.02:
            raise PoleAtOne("zeta has its pole at alpha = 1")
        if alpha.real <= 0:
            raise StripViolation("hankel route requires Re(alpha) > 0")
        return hankel_mellin(bose, alpha, contour=contour, cfg=cfg).value
    raise ValueError(f"unknown route {route!r}")


def eta_value(alpha: complex, cfg: QuadratureConfig | None = None) -> complex:
    """Dirichlet eta as the Gamma-normalized Fermi transform on <0, inf)."""
    cfg = cfg or DEFAULT_CONFIG
    alpha = complex(alpha)
    fermi = fermi_function()
    wcfg = _widened_config(cfg, 0.0, math.inf, alpha)
    return forward_mellin(fermi, alpha, Normalization.gamma(), cfg=wcfg).value


def gamma_reflection(
    alpha: complex, cfg: QuadratureConfig | None = None
) -> tuple[complex, complex]:
    """Both sides of the reflection identity on the strip <0, 1>.

    lhs: Haar transform of the star convolution of two exponentials
    (pointwise 1/(1+x)); rhs: pi / sin(pi alpha).
    """
    cfg = cfg or DEFAULT_CONFIG
    alpha = complex(alpha)
    if not 0.0 < alpha.real < 1.0:
        raise StripViolation("reflection identity lives on 0 < Re(alpha) < 1")
    f = _exp_function()
    # The convolution grid must cover the same window as the outer
    # transform: near the strip edges the integrand decays slowly and
    # draws on x far outside the default grid span.
    wcfg = _widened_config(cfg, 0.0, 1.0, alpha)
    conv = star_convolve(f, f, wcfg)
    lhs = forward_mellin(conv, alpha, cfg=wcfg).value
    rhs = complex(math.pi) / np.sin(math.pi * alpha)
    return lhs, complex(rhs)


def subtracted_exponential_transform(
    beta: float, alpha: complex, cfg: QuadratureConfig | None = None
) -> complex:
    """Haar transform of e^(-beta g) - e^(-g) on the strip <-1, inf).

    The subtraction extends the exponential transform one unit past the
    Gamma pole; at alpha = 0 the value is -log(beta) (removable point,
    handled by plain quadrature since the integrand stays integrable).
    """
    cfg = cfg or DEFAULT_CONFIG
    if beta <= 0:
        raise ValueError("beta must be positive")
    alpha = complex(alpha)

    def ev(g):
        arr = np.atleast_1d(np.asarray(g, dtype=float))
        # e^(-beta g) - e^(-g) = e^(-g) expm1((1 - beta) g) avoids the
        # catastrophic cancellation near 0 that the plain difference
        # suffers once g drops below machine epsilon
        with np.errstate(over="ignore", under="ignore"):
            out = np.exp(-arr) * np.expm1((1.0 - beta) * arr)
            out = np.where(np.isfinite(out), out, 0.0)
        return out if np.ndim(g) else out[0]

    f = MellinFunction(ev, -1.0, math.inf, label=f"subtracted-exp({beta:g})")
    wcfg = _widened_config(cfg, -1.0, math.inf, alpha)
    return forward_mellin(f, alpha, cfg=wcfg).value


def gamma_p_extension(
    beta: float, alpha: complex, p: float, cfg: QuadratureConfig | None = None
) -> complex:
    """Weighted extension of the exponential transform to <-p, inf).

    Integrates (beta g)^p e^(-beta g) against Haar measure with the
    1/Gamma(alpha + p) multiplier; equals beta^(-alpha) on the extended
    strip, matching the plain Gamma-normalized value on <0, inf).
    """
    cfg = cfg or DEFAULT_CONFIG
    if beta <= 0:
        raise ValueError("beta must be positive")
    if p < 0:
        raise ValueError("weight exponent p must be >= 0")
    alpha = complex(alpha)

    def ev(g):
        arr = np.atleast_1d(np.asarray(g, dtype=float))
        with np.errstate(over="ignore", under="ignore", divide="ignore", invalid="ignore"):
            out = (beta * arr) ** p * np.exp(-beta * arr)
        out = np.where(np.isfinite(out), out, 0.0)
        return out if np.ndim(g) else out[0]

    f = MellinFunction(ev, -p, math.inf, label=f"gamma-p({p:g}) weight")
    wcfg = _widened_config(cfg, -p, math.inf, alpha)
    return forward_mellin(f, alpha, Normalization.gamma_p(p), cfg=wcfg).value
