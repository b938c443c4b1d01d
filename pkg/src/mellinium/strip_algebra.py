"""Transform rules and multiplicative convolution algebra.

Rules map a (function, transform) pair to the transformed pair together
with the induced fundamental strip:

    Scale(c)           f(cx)        <->  c^-alpha F(alpha)        strip unchanged
    PowerShift(d)      x^d f(x)     <->  F(alpha + d)             strip shifted by -d
    PowerSubstitute(r) f(x^r)       <->  F(alpha/r) / |r|         strip scaled by r
    LogMultiply(n)     (log x)^n f  <->  d^n/dalpha^n F           strip unchanged
    EulerDerivative(n) (x d/dx)^n f <->  (-alpha)^n F(alpha)      strip unchanged
    Derivative(n)      f^(n)        <->  (-1)^n (alpha-1)...(alpha-n) F(alpha-n)
    Primitive(n)       I_n f        <->  (-1)^n F(alpha+n) / (alpha...(alpha+n-1))

where I_n is the n-fold repeated integral from 0 (Cauchy formula). The
multiplicative convolutions are

    (f * h)(x)  = int f(x') h(x/x') dx'/x'     <->  F(alpha) H(alpha)
    (f ** h)(x) = int f(x x') h(x') dx'        <->  F(alpha) H(1 - alpha)

with induced strips the intersection, respectively the intersection of
<a_f, b_f> with the reflection <1-b_h, 1-a_h>. Function sides of
derivative-like rules are realized by 4th-order central stencils in
t = log x; transform sides of LogMultiply by Cauchy-circle quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Union

import numpy as np

from .errors import (
    AnalyticityFailure,
    DivergentStage,
    EmptyResultStrip,
    EmptyStripIntersection,
    SideConditionViolation,
    SlowContourDecay,
    StripViolation,
)
from .mellin_core import (
    DEFAULT_CONFIG,
    FundamentalStrip,
    MellinFunction,
    QuadratureConfig,
    _eval_vector,
    _integrate_line,
    _tanh_sinh,
    _widened_config,
    forward_mellin,
)

__all__ = [
    "Scale",
    "PowerShift",
    "PowerSubstitute",
    "LogMultiply",
    "EulerDerivative",
    "Derivative",
    "Primitive",
    "TransformRule",
    "TransformedPair",
    "apply_rule",
    "mult_convolve",
    "star_convolve",
    "involution",
    "parseval_pair",
    "convolution_exp",
]


# ---------------------------------------------------------------------------
# rule parameter records
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Scale:
    c: float


@dataclass(frozen=True)
class PowerShift:
    d: float


@dataclass(frozen=True)
class PowerSubstitute:
    r: float


@dataclass(frozen=True)
class LogMultiply:
    n: int


@dataclass(frozen=True)
class EulerDerivative:
    n: int


@dataclass(frozen=True)
class Derivative:
    n: int


@dataclass(frozen=True)
class Primitive:
    n: int


TransformRule = Union[
    Scale, PowerShift, PowerSubstitute, LogMultiply, EulerDerivative, Derivative, Primitive
]


# ---------------------------------------------------------------------------
# transformed pairs
# ---------------------------------------------------------------------------


def _spot_alphas(strip: FundamentalStrip) -> list[complex]:
    """Three well-interior real points of the strip."""
    a, b = strip.a, strip.b
    if math.isinf(a) and math.isinf(b):
        lo, hi = -1.5, 1.5
    elif math.isinf(a):
        lo, hi = b - 3.0, b - 0.3
    elif math.isinf(b):
        lo, hi = a + 0.3, a + 3.0
    else:
        w = b - a
        lo, hi = a + 0.25 * w, b - 0.25 * w
    mid = 0.5 * (lo + hi)
    return [complex(lo), complex(mid), complex(hi)]


@dataclass
class TransformedPair:
    """A function side and its claimed transform on a common strip.

    Construction spot-checks the claim by quadrature at three interior
    points (loose tolerance, it is a smoke check); a mismatch raises
    AnalyticityFailure because the claimed map is then not the analytic
    continuation of the integral. Pass verify=False to skip.
    """

    function_side: MellinFunction
    transform_side: Callable[[complex], complex]
    strip: FundamentalStrip
    label: str = ""
    verify: bool = True

    def __post_init__(self) -> None:
        if self.verify:
            self._spot_check()

    def _spot_check(self) -> None:
        cfg = replace(DEFAULT_CONFIG, rel_tol=1e-9, abs_tol=1e-11, max_levels=8)
        for alpha in _spot_alphas(self.strip):
            wcfg = _widened_config(cfg, self.strip.a, self.strip.b, alpha)
            got = forward_mellin(self.function_side, alpha, cfg=wcfg).value
            claimed = complex(self.transform_side(alpha))
            if abs(got - claimed) > 1e-3 * max(1.0, abs(claimed)):
                raise AnalyticityFailure(
                    f"transform side of {self.label or 'pair'} disagrees with "
                    f"quadrature at alpha={alpha}: {claimed} vs {got}"
                )


# ---------------------------------------------------------------------------
# finite-difference stencils in t = log x
# ---------------------------------------------------------------------------


@lru_cache(maxsize=16)
def _stencil(n: int) -> tuple[np.ndarray, np.ndarray, float]:
    """Central stencil (offsets, coefficients, default step) for d^n/dt^n.

    Coefficients solve the moment system sum_k c_k k^m = n! delta_{mn},
    giving 4th-order accuracy on the symmetric grid. Orders above 4 are
    not supported (stencil depth).
    """
    if not 1 <= n <= 4:
        raise SideConditionViolation(f"derivative order {n} outside supported 1..4")
    p = 2 if n <= 2 else 3
    offs = np.arange(-p, p + 1, dtype=float)
    m = np.arange(len(offs))
    vand = offs[None, :] ** m[:, None]
    rhs = np.zeros(len(offs))
    rhs[n] = math.factorial(n)
    coeffs = np.linalg.solve(vand, rhs)
    h = 1e-2 if n <= 2 else 5e-2
    return offs, coeffs, h


def _dt_derivative(f: MellinFunction, n: int) -> Callable[[np.ndarray], np.ndarray]:
    """Vectorized t-derivative of F(t) = f(e^t) of order n."""
    offs, coeffs, h = _stencil(n)

    def dF(t: np.ndarray) -> np.ndarray:
        pts = t[..., None] + offs * h
        vals = _eval_vector(f.eval, np.exp(pts))
        return vals @ coeffs / h**n

    return dF


def _as_scalar_or_array(x, out: np.ndarray):
    return out if np.ndim(x) else out[()] if out.ndim == 0 else out[0]


def _wrap_eval(core: Callable[[np.ndarray], np.ndarray]) -> Callable:
    def ev(x):
        arr = np.atleast_1d(np.asarray(x))
        return _as_scalar_or_array(x, core(arr))

    return ev


# ---------------------------------------------------------------------------
# rule application
# ---------------------------------------------------------------------------


def _require_positive_int(n, rule: str) -> int:
    if not isinstance(n, (int, np.integer)) or n < 1:
        raise SideConditionViolation(f"{rule} order must be a positive integer, got {n!r}")
    return int(n)


def _check_no_atom(f: MellinFunction, what: str) -> None:
    if f.atom_weight != 0:
        raise ValueError(f"{what} does not support functions carrying a point mass")


def apply_rule(rule: TransformRule, pair: TransformedPair) -> TransformedPair:
    """Apply a transform rule to a pair, producing the mapped pair.

    Raises SideConditionViolation for out-of-domain rule parameters and
    EmptyResultStrip when the mapped strip is empty.
    """
    f = pair.function_side
    _check_no_atom(f, "apply_rule")
    T = pair.transform_side
    a, b = pair.strip.a, pair.strip.b

    if isinstance(rule, Scale):
        c = float(rule.c)
        if c <= 0:
            raise SideConditionViolation(f"Scale needs c > 0, got {c}")
        fn = _wrap_eval(lambda xs: _eval_vector(f.eval, c * xs))
        new_f = MellinFunction(fn, a, b, label=f"scale({c:g})[{f.label}]")
        new_T = lambda al: c ** (-complex(al)) * complex(T(al))
        return TransformedPair(new_f, new_T, FundamentalStrip(a, b), label=new_f.label)

    if isinstance(rule, PowerShift):
        d = float(rule.d)
        fn = _wrap_eval(lambda xs: xs**d * _eval_vector(f.eval, xs))
        new_f = MellinFunction(fn, a - d, b - d, label=f"shift({d:g})[{f.label}]")
        new_T = lambda al: complex(T(complex(al) + d))
        return TransformedPair(new_f, new_T, FundamentalStrip(a - d, b - d), label=new_f.label)

    if isinstance(rule, PowerSubstitute):
        r = float(rule.r)
        if r == 0:
            raise SideConditionViolation("PowerSubstitute needs r != 0")
        fn = _wrap_eval(lambda xs: _eval_vector(f.eval, xs**r))
        lo, hi = sorted((r * a, r * b))
        new_f = MellinFunction(fn, lo, hi, label=f"subst({r:g})[{f.label}]")
        new_T = lambda al: complex(T(complex(al) / r)) / abs(r)
        return TransformedPair(new_f, new_T, FundamentalStrip(lo, hi), label=new_f.label)

    if isinstance(rule, LogMultiply):
        n = _require_positive_int(rule.n, "LogMultiply")

        def fn_core(xs: np.ndarray) -> np.ndarray:
            return np.log(xs) ** n * _eval_vector(f.eval, xs)

        new_f = MellinFunction(_wrap_eval(fn_core), a, b, label=f"log^{n}[{f.label}]")

        def new_T(al: complex) -> complex:
            al = complex(al)
            dist = min(
                al.real - a if math.isfinite(a) else 1.0,
                b - al.real if math.isfinite(b) else 1.0,
                1.0,
            )
            rho = 0.5 * dist
            k = np.arange(32)
            th = 2.0 * math.pi * k / 32
            z = al + rho * np.exp(1j * th)
            tv = _eval_vector(T, z)
            # Cauchy derivative on the circle: n-th Fourier mode
            return complex(
                math.factorial(n) / (32 * rho**n) * np.sum(tv * np.exp(-1j * n * th))
            )

        return TransformedPair(new_f, new_T, FundamentalStrip(a, b), label=new_f.label)

    if isinstance(rule, EulerDerivative):
        n = _require_positive_int(rule.n, "EulerDerivative")
        dF = _dt_derivative(f, n)

        def fn_core(xs: np.ndarray) -> np.ndarray:
            return dF(np.log(xs))

        new_f = MellinFunction(_wrap_eval(fn_core), a, b, label=f"euler^{n}[{f.label}]")
        new_T = lambda al: (-complex(al)) ** n * complex(T(al))
        return TransformedPair(new_f, new_T, FundamentalStrip(a, b), label=new_f.label)

    if isinstance(rule, Derivative):
        n = _require_positive_int(rule.n, "Derivative")
        # d^n/dx^n = x^-n (E)(E-1)...(E-n+1) with E = x d/dx = d/dt
        poly = np.poly(np.arange(n, dtype=float))  # monic, roots 0..n-1
        ks = np.arange(n, 0, -1)  # degree of each non-constant coefficient
        dFs = {int(k): _dt_derivative(f, int(k)) for k in ks}

        def fn_core(xs: np.ndarray) -> np.ndarray:
            t = np.log(xs)
            acc = np.zeros(t.shape, dtype=complex)
            for coef, k in zip(poly[:-1], ks):
                acc = acc + coef * dFs[int(k)](t)
            # poly[-1] is the z^0 coefficient, zero since 0 is a root
            return acc * xs ** (-float(n))

        new_f = MellinFunction(_wrap_eval(fn_core), a + n, b + n, label=f"d^{n}[{f.label}]")

        def new_T(al: complex) -> complex:
            al = complex(al)
            fac = 1.0 + 0.0j
            for j in range(1, n + 1):
                fac *= al - j
            return (-1.0) ** n * fac * complex(T(al - n))

        return TransformedPair(new_f, new_T, FundamentalStrip(a + n, b + n), label=new_f.label)

    if isinstance(rule, Primitive):
        n = _require_positive_int(rule.n, "Primitive")
        new_a, new_b = a - n, min(b, 1.0) - n
        if not new_a < new_b:
            raise EmptyResultStrip(
                f"Primitive({n}) on strip {pair.strip} yields an empty strip"
            )
        # Cauchy repeated integral in log space,
        #   I_n(x) = 1/(n-1)! int_0^x (x-u)^{n-1} f(u) du,  u = e^s.
        # Integrated adaptively per point: a fixed node set cannot track
        # the integrand once x moves the mass across many decades. The
        # absolute floor is kept effectively off so the acceptance is
        # relative; I_n spans hundreds of orders of magnitude over the
        # outer window and must stay relatively accurate throughout.
        icfg = QuadratureConfig(rel_tol=1e-11, abs_tol=1e-280, max_levels=10)
        fact = float(math.factorial(n - 1))
        rate = max(1.0 - a, 0.02) if math.isfinite(a) else math.inf
        window = max(15.0, 38.0 / rate)

        def one_point(x: float) -> float:
            if x <= 0.0:
                return 0.0
            top = math.log(min(x, 1e290))

            def gs(s: np.ndarray) -> np.ndarray:
                u = np.exp(s)
                with np.errstate(over="ignore", under="ignore"):
                    core = _eval_vector(f.eval, u) * u
                    if n > 1:
                        core = core * (x - u) ** (n - 1)
                return core

            val, _ = _integrate_line(gs, min(top, 0.0) - window, top, icfg)
            return val / fact

        def fn_core(xs: np.ndarray) -> np.ndarray:
            flat = xs.ravel()
            out = np.array([one_point(float(v)) for v in flat])
            return out.reshape(xs.shape)

        new_f = MellinFunction(_wrap_eval(fn_core), new_a, new_b, label=f"prim^{n}[{f.label}]")

        def new_T(al: complex) -> complex:
            al = complex(al)
            fac = 1.0 + 0.0j
            for j in range(n):
                fac *= al + j
            return (-1.0) ** n * complex(T(al + n)) / fac

        return TransformedPair(new_f, new_T, FundamentalStrip(new_a, new_b), label=new_f.label)

    raise TypeError(f"unknown rule {rule!r}")


# ---------------------------------------------------------------------------
# convolutions
# ---------------------------------------------------------------------------

_GRID_STEP = 0.05


def _log_grid(cfg: QuadratureConfig) -> np.ndarray:
    # Symmetrized span: the star convolution reflects its argument, so
    # a window widened on one side must be covered on the other as well.
    tb0, tb1 = cfg.truncation_bounds
    t0 = min(tb0, -tb1)
    t1 = max(tb1, -tb0)
    n = int(math.floor((t1 - t0) / _GRID_STEP)) + 1
    return t0 + _GRID_STEP * np.arange(n)


def _chunked_kernel_sum(
    weights: np.ndarray, grid_factors: np.ndarray, kernel: Callable, xs: np.ndarray
) -> np.ndarray:
    """sum_j weights[j] * kernel(xs[i] * grid_factors[j]), chunked over i."""
    out = np.empty(xs.shape, dtype=complex)
    step = max(1, 2_000_000 // max(1, len(grid_factors)))
    flat = xs.ravel()
    res = out.ravel()
    for k in range(0, len(flat), step):
        block = flat[k : k + step]
        with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
            vals = _eval_vector(kernel, block[:, None] * grid_factors[None, :])
            vals = np.nan_to_num(vals, nan=0.0, posinf=0.0, neginf=0.0)
        res[k : k + step] = vals @ weights
    return out


def mult_convolve(
    f: MellinFunction, h: MellinFunction, cfg: QuadratureConfig | None = None
) -> MellinFunction:
    """Multiplicative convolution (f * h)(x) = int f(x') h(x/x') dx'/x'.

    The first factor is sampled on a uniform grid in log x spanning the
    truncation bounds; the second is evaluated at the shifted arguments,
    so convolving an already-gridded result with a plain kernel never
    nests quadratures. The induced strip is the intersection.
    """
    cfg = cfg or DEFAULT_CONFIG
    _check_no_atom(f, "mult_convolve")
    _check_no_atom(h, "mult_convolve")
    strip = f.strip.intersect(h.strip)
    if strip is None:
        raise EmptyStripIntersection(
            f"strips {f.strip} and {h.strip} do not intersect"
        )
    t = _log_grid(cfg)
    with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
        fw = _eval_vector(f.eval, np.exp(t)) * _GRID_STEP
    fw = np.nan_to_num(fw, nan=0.0, posinf=0.0, neginf=0.0)
    inv = np.exp(-t)

    def core(xs: np.ndarray) -> np.ndarray:
        return _chunked_kernel_sum(fw, inv, h.eval, xs)

    return MellinFunction(
        _wrap_eval(core),
        strip.a,
        strip.b,
        label=f"({f.label or 'f'} * {h.label or 'h'})",
    )


def star_convolve(
    f: MellinFunction, h: MellinFunction, cfg: QuadratureConfig | None = None
) -> MellinFunction:
    """Star convolution (f ** h)(x) = int_0^inf f(x x') h(x') dx'.

    Transform side F(alpha) H(1 - alpha); the induced strip intersects
    <a_f, b_f> with the reflected <1 - b_h, 1 - a_h>. The pointwise
    integral additionally needs a_f + a_h < 1 < b_f + b_h
    (SideConditionViolation otherwise).
    """
    cfg = cfg or DEFAULT_CONFIG
    _check_no_atom(f, "star_convolve")
    _check_no_atom(h, "star_convolve")
    if not (f.order_at_zero + h.order_at_zero < 1.0 < f.order_at_infinity + h.order_at_infinity):
        raise SideConditionViolation(
            "star integral diverges pointwise: needs a_f + a_h < 1 < b_f + b_h"
        )
    reflected = FundamentalStrip(1.0 - h.order_at_infinity, 1.0 - h.order_at_zero)
    strip = f.strip.intersect(reflected)
    if strip is None:
        raise EmptyStripIntersection(
            f"strip {f.strip} does not meet the reflected strip {reflected}"
        )
    t = _log_grid(cfg)
    with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
        hw = _eval_vector(h.eval, np.exp(t)) * np.exp(t) * _GRID_STEP
        hw = np.nan_to_num(hw, nan=0.0, posinf=0.0, neginf=0.0)
        fac = np.exp(t)
    hw = np.where(np.isfinite(fac), hw, 0.0)
    fac = np.where(np.isfinite(fac), fac, 0.0)

    def core(xs: np.ndarray) -> np.ndarray:
        return _chunked_kernel_sum(hw, fac, f.eval, xs)

    return MellinFunction(
        _wrap_eval(core),
        strip.a,
        strip.b,
        label=f"({f.label or 'f'} ** {h.label or 'h'})",
    )


def involution(f: MellinFunction) -> MellinFunction:
    """f*(x) = conj(f(1/x)) / x, the unitary involution of the algebra.

    Transform side: M[f*; alpha] = conj(M[f; 1 - conj(alpha)]).
    """
    _check_no_atom(f, "involution")

    def core(xs: np.ndarray) -> np.ndarray:
        return np.conj(_eval_vector(f.eval, 1.0 / xs)) / xs

    return MellinFunction(
        _wrap_eval(core),
        1.0 - f.order_at_infinity,
        1.0 - f.order_at_zero,
        label=f"invol[{f.label}]",
    )


def parseval_pair(
    g: MellinFunction,
    h: MellinFunction,
    alpha: complex,
    c: float,
    cfg: QuadratureConfig | None = None,
) -> tuple[complex, complex]:
    """Both sides of the Parseval pairing.

    lhs = int_0^inf g(x) h(x) x^(alpha-1) dx, computed directly;
    rhs = 1/(2 pi) int G(c + it) H(alpha - c - it) dt, with both
    transforms evaluated by quadrature on the line. Requires c inside
    g's strip and Re(alpha) - c inside h's strip.
    """
    cfg = cfg or DEFAULT_CONFIG
    alpha = complex(alpha)
    _check_no_atom(g, "parseval_pair")
    _check_no_atom(h, "parseval_pair")
    if not g.strip.contains(complex(c)):
        raise StripViolation(f"line abscissa c={c:g} outside g strip {g.strip}")
    if not h.strip.contains(alpha - c):
        raise StripViolation(
            f"alpha - c = {alpha - c} outside h strip {h.strip}"
        )

    def product(xs: np.ndarray) -> np.ndarray:
        return _eval_vector(g.eval, xs) * _eval_vector(h.eval, xs)

    prod = MellinFunction(
        _wrap_eval(product),
        g.order_at_zero + h.order_at_zero,
        g.order_at_infinity + h.order_at_infinity,
        label="g*h pointwise",
    )
    lcfg = _widened_config(cfg, prod.order_at_zero, prod.order_at_infinity, alpha)
    lhs = forward_mellin(prod, alpha, cfg=lcfg).value

    gcfg = _widened_config(cfg, g.order_at_zero, g.order_at_infinity, complex(c))
    hcfg = _widened_config(
        cfg, h.order_at_zero, h.order_at_infinity, alpha - c
    )

    def line_term(ts: np.ndarray) -> np.ndarray:
        out = np.empty(ts.shape, dtype=complex)
        for i, ti in enumerate(ts.ravel()):
            gv = forward_mellin(g, c + 1j * ti, cfg=gcfg).value
            hv = forward_mellin(h, alpha - c - 1j * ti, cfg=hcfg).value
            out.ravel()[i] = gv * hv
        return out

    T = None
    probe = 2.0
    while probe <= 64.0:
        m = np.abs(line_term(np.array([probe, -probe])))
        if np.all(m < max(cfg.abs_tol, 1e-14)):
            T = probe
            break
        probe *= 2.0
    if T is None:
        raise SlowContourDecay(
            "Parseval line integrand does not decay inside the scan window"
        )
    # inner transforms leave noise around 1e-12, so the outer refinement
    # cannot be asked for more than that
    ocfg = replace(
        cfg,
        rel_tol=max(cfg.rel_tol, 1e-9),
        abs_tol=max(cfg.abs_tol, 1e-11),
        max_levels=8,
    )
    i_l, _ = _tanh_sinh(line_term, -T, 0.0, ocfg)
    i_r, _ = _tanh_sinh(line_term, 0.0, T, ocfg)
    rhs = (i_l + i_r) / (2.0 * math.pi)
    return complex(lhs), complex(rhs)


def convolution_exp(
    h: MellinFunction, terms: int, cfg: QuadratureConfig | None = None
) -> MellinFunction:
    """Truncated convolution exponential sum_{n=0}^{terms} (-1)^n h^{*n} / n!.

    The n = 0 term is the point mass at x = 1 (the *-identity), kept
    symbolic via atom_weight = 1; its transform contribution is the
    constant 1. Stages h^{*n} are built on the uniform log grid by
    discrete convolution (the grid is geometric in x); a stage whose
    probe transform exceeds the magnitude guard raises DivergentStage.
    """
    cfg = cfg or DEFAULT_CONFIG
    _check_no_atom(h, "convolution_exp")
    if terms < 0:
        raise SideConditionViolation("terms must be >= 0")
    a, b = h.order_at_zero, h.order_at_infinity
    if terms == 0:
        zero = _wrap_eval(lambda xs: np.zeros(xs.shape, dtype=complex))
        return MellinFunction(zero, a, b, label="conv-exp(0 terms)", atom_weight=1.0)

    t = _log_grid(cfg)
    n_grid = len(t)
    with np.errstate(over="ignore", under="ignore", invalid="ignore", divide="ignore"):
        h_grid = np.asarray(_eval_vector(h.eval, np.exp(t)), dtype=complex)
        h_grid = np.nan_to_num(h_grid, nan=0.0, posinf=0.0, neginf=0.0)
        m = np.arange(-(n_grid - 1), n_grid, dtype=float)
        kernel = np.asarray(_eval_vector(h.eval, np.exp(m * _GRID_STEP)), dtype=complex)
        kernel = np.nan_to_num(kernel, nan=0.0, posinf=0.0, neginf=0.0)

    alpha_probe = complex(FundamentalStrip(a, b).midpoint())
    probe_w = np.exp(alpha_probe * t) * _GRID_STEP

    stage = h_grid
    # combined weights: eval(x) = c_1 h(x) + dt * sum_j P[j] h(x e^{-t_j})
    combined = np.zeros(n_grid, dtype=complex)
    for n in range(2, terms + 1):
        c_n = (-1.0) ** n / math.factorial(n)
        combined = combined + c_n * stage
        if n < terms:
            # Direct convolution keeps superexponential tails exactly zero in
            # floating point; an FFT product would spray absolute roundoff
            # across the grid, which the probe weights amplify by e^{alpha t}.
            stage = _GRID_STEP * np.convolve(stage, kernel)[n_grid - 1 : 2 * n_grid - 1]
            probe = complex(stage @ probe_w)
            if abs(probe) > 1e6:
                raise DivergentStage(
                    f"stage {n + 1} probe transform magnitude {abs(probe):.3e}"
                )
    inv = np.exp(-t)
    weights = combined * _GRID_STEP

    def core(xs: np.ndarray) -> np.ndarray:
        base = -np.asarray(_eval_vector(h.eval, xs), dtype=complex)
        if terms == 1:
            return base
        return base + _chunked_kernel_sum(weights, inv, h.eval, xs)

    return MellinFunction(
        _wrap_eval(core),
        a,
        b,
        label=f"conv-exp({terms} terms)[{h.label}]",
        atom_weight=1.0,
    )
