"""Mellin transforms on fundamental strips.

The Mellin transform of a function f on (0, inf) is

    M[f; alpha] = int_0^inf f(x) x^(alpha - 1) dx,

convergent exactly when alpha lies in the fundamental strip <a, b>
determined by the decay orders of f: f = O(x^-a) as x -> 0+ and
f = O(x^-b) as x -> inf, with a < Re(alpha) < b. Strip endpoints may be
-inf or +inf.

Transforms can be taken against a family of normalized multiplicative
Haar measures. Each normalization is a scalar multiplier m(alpha)
applied to the plain Haar value, so the Haar transform is always the
common core:

    haar           m = 1
    gamma          m = 1 / Gamma(alpha)
    gamma_p        m = 1 / Gamma(alpha + p)
    gamma_contour  m = pi * csc(pi alpha) / (2 pi i Gamma(alpha))
    gamma_eta      m = (1 - 2^(1 - alpha)) / Gamma(alpha)

The quadrature engine substitutes x = e^t and applies tanh-sinh
quadrature to the two half-windows [t_min, 0] and [0, t_max]. Splitting
at t = 0 keeps any kink at x = 1 (piecewise corpus functions) on an
endpoint, where the double-exponential node clustering absorbs it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from scipy.special import gamma as _gamma

from .errors import (
    ContourDependence,
    InconsistentDeclaration,
    InsufficientDecay,
    NormalizationPole,
    QuadratureDivergence,
    SlowContourDecay,
    StripViolation,
)

__all__ = [
    "FundamentalStrip",
    "MellinFunction",
    "Normalization",
    "QuadratureConfig",
    "HankelContourSpec",
    "TransformValue",
    "forward_mellin",
    "infer_strip",
    "inverse_mellin",
    "hankel_mellin",
]


def _fmt_edge(v: float) -> str:
    if math.isinf(v):
        return "-inf" if v < 0 else "inf"
    return f"{v:g}"


@dataclass(frozen=True)
class FundamentalStrip:
    """Open vertical strip a < Re(alpha) < b, endpoints possibly infinite."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not self.a < self.b:
            raise ValueError(f"empty strip: a={self.a} must be < b={self.b}")

    def contains(self, alpha: complex) -> bool:
        return self.a < complex(alpha).real < self.b

    def intersect(self, other: "FundamentalStrip") -> "FundamentalStrip | None":
        a = max(self.a, other.a)
        b = min(self.b, other.b)
        if a < b:
            return FundamentalStrip(a, b)
        return None

    def midpoint(self) -> float:
        """A representative interior point, finite even for infinite edges."""
        a = self.a if math.isfinite(self.a) else min(self.b - 2.0, 0.0) if math.isfinite(self.b) else -1.0
        b = self.b if math.isfinite(self.b) else max(self.a + 2.0, 0.0) if math.isfinite(self.a) else 1.0
        return 0.5 * (a + b)

    def __str__(self) -> str:
        return f"<{_fmt_edge(self.a)}, {_fmt_edge(self.b)}>"


@dataclass
class MellinFunction:
    """A function on (0, inf) together with its declared decay orders.

    ``eval`` should accept numpy arrays (scalars and complex arguments
    are also fine for functions meant to be used on Hankel contours).
    ``order_at_zero`` is a with f = O(x^-a) at 0+, ``order_at_infinity``
    is b with f = O(x^-b) at infinity, so the fundamental strip is
    <a, b>. ``atom_weight`` carries a point mass at x = 1 (the identity
    of multiplicative convolution) kept symbolic; its transform
    contribution is the constant ``atom_weight``.
    """

    eval: Callable[[np.ndarray], np.ndarray]
    order_at_zero: float
    order_at_infinity: float
    label: str = ""
    atom_weight: complex = 0.0

    @property
    def strip(self) -> FundamentalStrip:
        return FundamentalStrip(self.order_at_zero, self.order_at_infinity)

    def __call__(self, x):
        return self.eval(x)


@dataclass(frozen=True)
class Normalization:
    """Multiplier m(alpha) applied to the plain Haar transform."""

    kind: str
    p: float = 0.0

    _KINDS = ("haar", "gamma", "gamma_p", "gamma_contour", "gamma_eta")

    def __post_init__(self) -> None:
        if self.kind not in self._KINDS:
            raise ValueError(f"unknown normalization kind {self.kind!r}")

    @classmethod
    def haar(cls) -> "Normalization":
        return cls("haar")

    @classmethod
    def gamma(cls) -> "Normalization":
        return cls("gamma")

    @classmethod
    def gamma_p(cls, p: float) -> "Normalization":
        return cls("gamma_p", p=float(p))

    @classmethod
    def gamma_contour(cls) -> "Normalization":
        return cls("gamma_contour")

    @classmethod
    def gamma_eta(cls) -> "Normalization":
        return cls("gamma_eta")

    def multiplier(self, alpha: complex) -> complex:
        alpha = complex(alpha)
        if self.kind == "haar":
            return 1.0 + 0.0j
        if self.kind == "gamma":
            return 1.0 / complex(_gamma(alpha))
        if self.kind == "gamma_p":
            return 1.0 / complex(_gamma(alpha + self.p))
        if self.kind == "gamma_contour":
            # pi csc(pi alpha) / (2 pi i Gamma(alpha)) = Gamma(1 - alpha) / (2 pi i)
            # by the reflection identity; the right-hand form avoids csc overflow
            # for large |Im alpha|.
            return complex(_gamma(1.0 - alpha)) / (2.0j * math.pi)
        if self.kind == "gamma_eta":
            return (1.0 - 2.0 ** (1.0 - alpha)) / complex(_gamma(alpha))
        raise AssertionError(self.kind)

    def nearest_pole(self, alpha: complex) -> tuple[float, complex | None]:
        """Distance to the nearest multiplier pole and the pole itself.

        Only the contour normalization has poles (positive integers,
        from Gamma(1 - alpha)); reciprocal-Gamma multipliers are entire.
        """
        if self.kind != "gamma_contour":
            return math.inf, None
        alpha = complex(alpha)
        n = round(alpha.real)
        if n < 1:
            n = 1
        d = abs(alpha - n)
        return d, complex(n)

    def name(self) -> str:
        if self.kind == "gamma_p":
            return f"gamma-p:{self.p:g}"
        return self.kind.replace("_", "-")


@dataclass(frozen=True)
class QuadratureConfig:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-12
    max_levels: int = 10
    truncation_bounds: tuple[float, float] = (-40.0, 40.0)

    def __post_init__(self) -> None:
        if self.rel_tol <= 0.0 or self.abs_tol <= 0.0:
            raise ValueError("tolerances must be positive")
        if self.max_levels < 1:
            raise ValueError("max_levels must be at least 1")
        lo, hi = self.truncation_bounds
        if not lo < 0.0 < hi:
            raise ValueError(
                f"truncation bounds must straddle 0, got ({lo:g}, {hi:g})"
            )


DEFAULT_CONFIG = QuadratureConfig()


@dataclass(frozen=True)
class HankelContourSpec:
    """Keyhole contour: rays at height +-offset, arc of given radius at 0."""

    radius: float = 0.5
    offset: float = 1e-3
    ray_length: float = 40.0

    def __post_init__(self) -> None:
        if not (0.0 < self.offset < self.radius < self.ray_length):
            raise ValueError(
                "contour requires 0 < offset < radius < ray_length, got "
                f"offset={self.offset}, radius={self.radius}, ray_length={self.ray_length}"
            )


@dataclass(frozen=True)
class TransformValue:
    """A single transform evaluation with its provenance-free metadata.

    ``continued`` marks values produced by local analytic continuation
    (circle averaging around a multiplier pole) rather than by direct
    quadrature at alpha itself.
    """

    value: complex
    alpha: complex
    strip: FundamentalStrip
    normalization: Normalization
    abs_error_estimate: float
    continued: bool = False


# ---------------------------------------------------------------------------
# tanh-sinh quadrature on a finite interval
# ---------------------------------------------------------------------------

_TS_UMAX = 4.0


@lru_cache(maxsize=64)
def _ts_nodes(level: int) -> tuple[np.ndarray, np.ndarray]:
    """Abscissas in (-1, 1) and weights for the nodes new at this level."""
    if level == 0:
        h = 1.0
        k = np.arange(-_TS_UMAX, _TS_UMAX + 0.5)
    else:
        h = 2.0 ** (-level)
        k = np.arange(-_TS_UMAX / h + 1, _TS_UMAX / h, 2.0)
    u = h * k
    s = 0.5 * math.pi * np.sinh(u)
    t = np.tanh(s)
    w = 0.5 * math.pi * np.cosh(u) / np.cosh(s) ** 2
    return t, w


def _tanh_sinh(
    g: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
    min_level: int = 2,
) -> tuple[complex, float]:
    """Integrate g over [a, b]; returns (value, error estimate).

    g must be vectorized over a float ndarray. Raises
    QuadratureDivergence when the integrand is not finite at a node or
    the level refinement fails to converge.
    """
    if b <= a:
        return 0.0 + 0.0j, 0.0
    mid = 0.5 * (a + b)
    hw = 0.5 * (b - a)
    total: complex = 0.0
    prev: complex | None = None
    err = math.inf
    for level in range(cfg.max_levels + 1):
        t, w = _ts_nodes(level)
        with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
            vals = np.asarray(g(mid + hw * t))
        terms = vals * w
        if not np.all(np.isfinite(terms.real)) or not np.all(np.isfinite(terms.imag)):
            raise QuadratureDivergence(
                f"integrand not finite inside [{a:g}, {b:g}]"
            )
        h = 2.0 ** (-level) if level else 1.0
        partial = complex(np.sum(terms)) * hw * h
        total = partial if level == 0 else prev / 2.0 + partial
        if prev is not None:
            err = abs(total - prev)
            tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
            if level >= min_level and err <= tol:
                return total, max(err, 2e-16 * abs(total))
        prev = total
    tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
    if err <= 50.0 * tol:
        # close but not fully settled: return with the honest estimate
        return total, err
    raise QuadratureDivergence(
        f"tanh-sinh failed to converge on [{a:g}, {b:g}] (last delta {err:.3e})"
    )


_PANEL_WIDTH = 60.0


def _integrate_line(
    g: Callable[[np.ndarray], np.ndarray],
    a: float,
    b: float,
    cfg: QuadratureConfig = DEFAULT_CONFIG,
) -> tuple[complex, float]:
    """tanh-sinh over [a, b], split into panels of bounded width.

    Wide windows (small strip-edge distances) would otherwise starve the
    level refinement of interior resolution.
    """
    if b <= a:
        return 0.0 + 0.0j, 0.0
    n_panels = max(1, math.ceil((b - a) / _PANEL_WIDTH))
    edges = np.linspace(a, b, n_panels + 1)
    total = 0.0 + 0.0j
    err = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        v, e = _tanh_sinh(g, float(lo), float(hi), cfg)
        total += v
        err += e
    return total, err


def _widened_config(
    cfg: QuadratureConfig, a: float, b: float, alpha: complex
) -> QuadratureConfig:
    """Extend truncation bounds so the edge-rate tails clear abs_tol.

    The integrand decays like e^(-rate |t|) with rate the distance of
    Re(alpha) to the strip edge; the default window is kept whenever it
    is already wide enough.
    """
    re = complex(alpha).real
    tb0, tb1 = cfg.truncation_bounds
    need = -math.log(cfg.abs_tol) + 9.0
    if math.isfinite(a):
        tb0 = min(tb0, -need / max(re - a, 0.02))
    if math.isfinite(b):
        tb1 = max(tb1, need / max(b - re, 0.02))
    tb0 = max(tb0, -2400.0)
    tb1 = min(tb1, 2400.0)
    if (tb0, tb1) == cfg.truncation_bounds:
        return cfg
    return replace(cfg, truncation_bounds=(tb0, tb1))


def _eval_vector(func: Callable, x: np.ndarray) -> np.ndarray:
    """Call func on an array, falling back to a scalar loop."""
    arr = np.asarray(x)
    try:
        out = np.asarray(func(arr))
        if out.shape != arr.shape:
            out = np.broadcast_to(out, arr.shape)
        return out
    except (TypeError, ValueError):
        flat = np.array([func(xi) for xi in arr.ravel()])
        return flat.reshape(arr.shape)


# ---------------------------------------------------------------------------
# forward transform
# ---------------------------------------------------------------------------


def _require_mellin_function(f) -> MellinFunction:
    if not isinstance(f, MellinFunction):
        raise TypeError(
            "expected a MellinFunction (a callable with declared decay orders)"
        )
    return f


def forward_mellin(
    f: MellinFunction,
    alpha: complex,
    normalization: Normalization | None = None,
    cfg: QuadratureConfig | None = None,
) -> TransformValue:
    """Transform f at alpha against the chosen normalized measure.

    alpha must lie inside the fundamental strip declared by f
    (StripViolation otherwise). The integration window is
    cfg.truncation_bounds in t = log x; with cfg omitted the default
    window is widened automatically so the declared edge rates clear
    abs_tol. A truncation tail estimated from the declared decay orders
    that dwarfs the tolerance raises QuadratureDivergence rather than
    silently returning a bad value.
    """
    f = _require_mellin_function(f)
    alpha = complex(alpha)
    if cfg is None:
        cfg = _widened_config(
            DEFAULT_CONFIG, f.order_at_zero, f.order_at_infinity, alpha
        )
    norm = normalization or Normalization.haar()
    strip = f.strip
    if not strip.contains(alpha):
        raise StripViolation(f"alpha={alpha} outside fundamental strip {strip}")
    dpole, pole = norm.nearest_pole(alpha)
    if dpole < 1e-8:
        raise NormalizationPole(f"normalization multiplier has a pole at alpha={pole}")

    def g(t: np.ndarray) -> np.ndarray:
        return _eval_vector(f.eval, np.exp(t)) * np.exp(alpha * t)

    tmin, tmax = cfg.truncation_bounds
    i_left, e_left = _integrate_line(g, tmin, 0.0, cfg)
    i_right, e_right = _integrate_line(g, 0.0, tmax, cfg)
    total = i_left + i_right + complex(f.atom_weight)

    # Tail bound: past the window the integrand decays at least like
    # e^(-rate * |t|) with rate given by the distance of Re(alpha) to the
    # strip edge (faster than any rate for infinite edges).
    rate_l = (alpha.real - strip.a) if math.isfinite(strip.a) else 1.0
    rate_r = (strip.b - alpha.real) if math.isfinite(strip.b) else 1.0
    with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
        g_l = abs(complex(g(np.array([tmin]))[0]))
        g_r = abs(complex(g(np.array([tmax]))[0]))
    tail = g_l / max(rate_l, 0.05) + g_r / max(rate_r, 0.05)
    tol = max(cfg.abs_tol, cfg.rel_tol * abs(total))
    if tail > 1e3 * tol:
        raise QuadratureDivergence(
            f"integrand tail {tail:.3e} fails to decay within truncation bounds "
            f"({tmin:g}, {tmax:g}) for alpha={alpha}"
        )
    m = norm.multiplier(alpha)
    return TransformValue(
        value=complex(m * total),
        alpha=alpha,
        strip=strip,
        normalization=norm,
        abs_error_estimate=abs(m) * (e_left + e_right + tail),
    )


# ---------------------------------------------------------------------------
# strip inference
# ---------------------------------------------------------------------------

_SLOPE_SUPER = 35.0
_SLOPE_STABLE = 0.3
_EDGE_MARGIN = 0.05
_DECLARED_TOL = 0.25


def _edge_exponent(xs: np.ndarray, vals: np.ndarray, side: str) -> float:
    """Fitted power-law exponent e with |f| ~ x^e at the given edge.

    Returns +inf when f vanishes faster than any power (or is exactly
    zero) at the edge on the zero side; the infinity side mirrors that.
    Raises InsufficientDecay when the local slopes never stabilize.
    """
    if side == "zero":
        order = np.argsort(xs)
    else:
        order = np.argsort(xs)[::-1]
    x_edge = xs[order][:6]
    v_edge = vals[order][:6]
    finite = np.isfinite(v_edge)
    if not finite[:2].all():
        raise InsufficientDecay(f"probe values not finite near the {side} edge")
    if (v_edge[:2] == 0).any():
        # underflow / exact zero at the edge: faster than any power
        return math.inf if side == "zero" else -math.inf
    keep = finite & (v_edge > 0)
    x_edge, v_edge = x_edge[keep][:4], v_edge[keep][:4]
    if len(x_edge) < 3:
        raise InsufficientDecay(f"too few usable probes near the {side} edge")
    lx, lv = np.log(x_edge), np.log(v_edge)
    slopes = np.diff(lv) / np.diff(lx)
    s0 = slopes[0]
    if side == "zero":
        if s0 > _SLOPE_SUPER:
            return math.inf
        if s0 < -_SLOPE_SUPER:
            return -math.inf
    else:
        if s0 < -_SLOPE_SUPER:
            return -math.inf
        if s0 > _SLOPE_SUPER:
            return math.inf
    if abs(slopes[0] - slopes[1]) > _SLOPE_STABLE:
        raise InsufficientDecay(
            f"slopes do not stabilize near the {side} edge "
            f"({slopes[0]:.3f} vs {slopes[1]:.3f})"
        )
    return float(s0)


def _check_declared(declared: float, fitted_order: float, side: str) -> None:
    if math.isinf(declared) and math.isinf(fitted_order):
        if declared != fitted_order:
            raise InconsistentDeclaration(
                f"declared order {declared} at {side} but fitted {fitted_order}"
            )
        return
    if math.isinf(declared) != math.isinf(fitted_order):
        raise InconsistentDeclaration(
            f"declared order {declared} at {side} but fitted {fitted_order:.3f}"
            if math.isfinite(fitted_order)
            else f"declared order {declared} at {side} but fitted {fitted_order}"
        )
    if abs(declared - fitted_order) > _DECLARED_TOL:
        raise InconsistentDeclaration(
            f"declared order {declared:g} at {side} but fitted {fitted_order:.3f}"
        )


def infer_strip(f, probe_grid: Sequence[float]) -> FundamentalStrip:
    """Fit the fundamental strip from probe evaluations.

    The grid must span at least four decades on each side of 1. When f
    is a MellinFunction its declared orders are checked against the fit
    (InconsistentDeclaration beyond 0.25). The returned strip is pulled
    inward by a small margin on finite edges.
    """
    fn = f.eval if isinstance(f, MellinFunction) else f
    xs = np.asarray(probe_grid, dtype=float)
    if xs.min() > 1e-4 or xs.max() < 1e4:
        raise ValueError(
            "probe grid must span at least four decades on each side of 1"
        )
    with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
        vals = np.abs(_eval_vector(fn, xs)).astype(float)
    e_zero = _edge_exponent(xs, vals, "zero")
    e_inf = _edge_exponent(xs, vals, "inf")
    a_fit = -e_zero  # f ~ x^e at 0 means a = -e
    b_fit = -e_inf
    if not a_fit < b_fit:
        raise InsufficientDecay(
            f"fitted orders give an empty strip (a={a_fit:g}, b={b_fit:g})"
        )
    if isinstance(f, MellinFunction):
        _check_declared(f.order_at_zero, a_fit, "zero")
        _check_declared(f.order_at_infinity, b_fit, "infinity")
    a = a_fit + _EDGE_MARGIN if math.isfinite(a_fit) else a_fit
    b = b_fit - _EDGE_MARGIN if math.isfinite(b_fit) else b_fit
    if not a < b:
        raise InsufficientDecay(f"strip collapsed after margins (a={a:g}, b={b:g})")
    return FundamentalStrip(a, b)


# ---------------------------------------------------------------------------
# inversion
# ---------------------------------------------------------------------------


def inverse_mellin(
    transform: Callable[[complex], complex],
    c: float,
    x: float,
    cfg: QuadratureConfig | None = None,
) -> tuple[complex, float]:
    """Invert along the vertical line Re(alpha) = c at the point x.

        f(x) = 1/(2 pi) int_-inf^inf transform(c + it) x^(-c - it) dt

    The line is truncated where a dyadic scan of |transform(c + it)|
    falls below abs_tol; SlowContourDecay if that never happens inside
    the scan window. Returns (value, error estimate).
    """
    cfg = cfg or DEFAULT_CONFIG
    if x <= 0:
        raise ValueError("inversion point x must be positive")
    tf = lambda t: _eval_vector(transform, c + 1j * np.asarray(t))
    t_cap = max(64.0, cfg.truncation_bounds[1])
    T = None
    t_probe = 1.0
    while t_probe <= t_cap:
        with np.errstate(over="ignore", under="ignore", invalid="ignore"):
            m = np.abs(tf(np.array([t_probe, -t_probe])))
        if np.all(m < cfg.abs_tol):
            T = t_probe
            break
        t_probe *= 2.0
    if T is None:
        raise SlowContourDecay(
            f"|transform(c+it)| never fell below {cfg.abs_tol:g} for t <= {t_cap:g}"
        )
    lx = math.log(x)

    def g(t: np.ndarray) -> np.ndarray:
        return tf(t) * np.exp(-1j * t * lx)

    i_left, e_left = _tanh_sinh(g, -T, 0.0, cfg)
    i_right, e_right = _tanh_sinh(g, 0.0, T, cfg)
    scale = x ** (-c) / (2.0 * math.pi)
    # the scan guarantees the discarded tails are below abs_tol pointwise
    err = scale * (e_left + e_right + 2.0 * cfg.abs_tol)
    return complex(scale * (i_left + i_right)), float(err)


# ---------------------------------------------------------------------------
# Hankel contour transform
# ---------------------------------------------------------------------------

_POLE_WINDOW = 0.02
_CONTINUATION_RADIUS = 0.05
_CONTINUATION_POINTS = 8


def _hankel_direct(
    f: MellinFunction,
    alpha: complex,
    contour: HankelContourSpec,
    norm: Normalization,
    cfg: QuadratureConfig,
) -> tuple[complex, float]:
    """One keyhole-contour evaluation, argument tracked 0+ to 2pi-.

    The loop runs in from +inf above the cut, circles the origin
    counterclockwise, and returns to +inf below the cut. z^(alpha-1) is
    taken with arg(z) increasing continuously from about 0 on the upper
    ray to about 2 pi on the lower ray. The reported value is aligned
    with the real-axis transform branch, which shifts the tracked
    argument by -pi, hence the e^(-i pi alpha) factor.
    """
    r, d, L = contour.radius, contour.offset, contour.ray_length
    x0 = math.sqrt(r * r - d * d)
    th0 = math.atan2(d, x0)
    am1 = alpha - 1.0

    def upper(xs: np.ndarray) -> np.ndarray:
        z = xs + 1j * d
        phase = np.exp(am1 * (0.5 * np.log(xs * xs + d * d) + 1j * np.arctan2(d, xs)))
        return _eval_vector(f.eval, z) * phase

    def lower(xs: np.ndarray) -> np.ndarray:
        z = xs - 1j * d
        arg = 2.0 * math.pi - np.arctan2(d, xs)
        phase = np.exp(am1 * (0.5 * np.log(xs * xs + d * d) + 1j * arg))
        return _eval_vector(f.eval, z) * phase

    def arc(th: np.ndarray) -> np.ndarray:
        z = r * np.exp(1j * th)
        phase = np.exp(am1 * (math.log(r) + 1j * th))
        return _eval_vector(f.eval, z) * phase * 1j * r * np.exp(1j * th)

    i_up, e_up = _tanh_sinh(upper, x0, L, cfg)
    i_arc, e_arc = _tanh_sinh(arc, th0, 2.0 * math.pi - th0, cfg)
    i_lo, e_lo = _tanh_sinh(lower, x0, L, cfg)
    loop = -i_up + i_arc + i_lo

    # ray tail must be negligible at the cutoff
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        tail = abs(complex(upper(np.array([L]))[0])) + abs(
            complex(lower(np.array([L]))[0])
        )
    tol = max(cfg.abs_tol, cfg.rel_tol * abs(loop))
    if tail > 1e3 * tol:
        raise QuadratureDivergence(
            f"ray integrand {tail:.3e} has not decayed by ray_length={L:g}"
        )
    m = norm.multiplier(alpha) * cmath.exp(-1j * math.pi * alpha)
    return m * loop, abs(m) * (e_up + e_arc + e_lo + tail)


def _hankel_value(
    f: MellinFunction,
    alpha: complex,
    contour: HankelContourSpec,
    norm: Normalization,
    cfg: QuadratureConfig,
) -> tuple[complex, float, bool]:
    """Direct evaluation, or a circle average around a multiplier pole."""
    dpole, pole = norm.nearest_pole(alpha)
    if dpole >= _POLE_WINDOW:
        v, e = _hankel_direct(f, alpha, contour, norm, cfg)
        return v, e, False
    if pole is not None and abs(pole - 1.0) < 0.5:
        raise NormalizationPole(
            "no continuation across alpha = 1: the multiplier pole meets a "
            "genuine transform pole there"
        )
    # 0 * inf cancellation at the pole: the product of multiplier and loop
    # integral is holomorphic, so average it on a small circle around alpha.
    rho = _CONTINUATION_RADIUS
    vals = []
    errs = []
    for k in range(_CONTINUATION_POINTS):
        ak = alpha + rho * cmath.exp(2j * math.pi * k / _CONTINUATION_POINTS)
        v, e = _hankel_direct(f, ak, contour, norm, cfg)
        vals.append(v)
        errs.append(e)
    mean = sum(vals) / len(vals)
    spread = max(abs(v - mean) for v in vals)
    err = sum(errs) / len(errs) + spread * rho ** 7
    return mean, err, True


def hankel_mellin(
    f: MellinFunction,
    alpha: complex,
    contour: HankelContourSpec | None = None,
    normalization: Normalization | None = None,
    cfg: QuadratureConfig | None = None,
    check_radius: bool = True,
) -> TransformValue:
    """Mellin transform along a keyhole contour around the positive axis.

    Extends the transform left of the real-axis strip for functions
    analytic in a neighbourhood of the contour. The default
    normalization is the contour one. Near positive-integer multiplier
    poles (n >= 2) the value is produced by analytic continuation and
    tagged ``continued``; near alpha = 1 there is no continuation
    (NormalizationPole). The result is checked for independence of the
    arc radius (ContourDependence on mismatch).
    """
    f = _require_mellin_function(f)
    alpha = complex(alpha)
    contour = contour or HankelContourSpec()
    norm = normalization or Normalization.gamma_contour()
    cfg = cfg or DEFAULT_CONFIG
    value, err, continued = _hankel_value(f, alpha, contour, norm, cfg)
    if check_radius:
        half = HankelContourSpec(
            radius=contour.radius / 2.0,
            offset=min(contour.offset, contour.radius / 4.0),
            ray_length=contour.ray_length,
        )
        v2, e2, _ = _hankel_value(f, alpha, half, norm, cfg)
        drift = abs(value - v2)
        if drift > max(1e-7, 50.0 * (err + e2)):
            raise ContourDependence(
                f"contour value moved by {drift:.3e} when the arc radius was halved"
            )
        err = max(err, drift)
    strip = FundamentalStrip(-math.inf, f.order_at_infinity)
    return TransformValue(
        value=complex(value),
        alpha=alpha,
        strip=strip,
        normalization=norm,
        abs_error_estimate=float(err),
        continued=continued,
    )
