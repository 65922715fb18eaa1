"""
Hilbert transforms on the line and on the circle.

Covers the principal-value transform, its modified form normalised at the
upper-half-plane point i, the 2-periodic conjugate function, Szego
projections, the involutions J_beta and J*_beta, the periodization Pi_2 and the
pointwise value of f + Hg. Nested transforms go through tabulate_transform,
which samples a transform once on an arctangent-compactified grid.
"""

import logging
import math
import warnings
from typing import Callable, Optional, Sequence, Tuple

import numpy as np
from scipy.interpolate import CubicSpline

from .core_numerics import (
    InvalidInput,
    JumpPoint,
    PvConfig,
    evaluate_on,
    gauss_legendre,
    integrate,
    integrate_osc_halfline,
    integrate_pv,
    lattice_sum,
)
from .models import DecayClass, LineFunction, PeriodicFunction

logger = logging.getLogger(__name__)

ZERO_MEAN_TOL = 1e-8


def _cfg(cfg: Optional[PvConfig]) -> PvConfig:
    return cfg if cfg is not None else PvConfig()


def _at_jump(f: LineFunction, x: float, context: str) -> None:
    for b in f.breakpoints():
        if abs(x - b) <= 1e-12 * max(1.0, abs(b)):
            if f.is_compact and b in f.support and b not in f.jumps:
                continue
            message = f"{context} of '{f.name}' requested at its jump {b:g}"
            logger.warning(message)
            warnings.warn(message, JumpPoint, stacklevel=3)
            return


def _pv_line(kernel: Callable, x: float, f: LineFunction, cfg: PvConfig) -> float:
    """pv integral of kernel over the support of f, singular at x."""
    lo, hi = f.support
    lo = -np.inf if not np.isfinite(lo) else lo
    hi = np.inf if not np.isfinite(hi) else hi
    cuts = [b for b in f.breakpoints() if lo < b < hi]
    if not lo < x < hi:
        return integrate(kernel, (lo, hi), cfg.quad_tol, cuts)
    return integrate_pv(kernel, x, (lo, hi), cfg, cuts)


def hilbert(f: LineFunction, x: float, cfg: Optional[PvConfig] = None) -> float:
    """
    (1/pi) pv int f(t)/(x - t) dt.

    Raises:
        InvalidInput: For inputs declared merely bounded (use hilbert_modified)
        NonConvergence: If the principal value does not stabilise
    """
    cfg = _cfg(cfg)
    if f.decay is DecayClass.BOUNDED:
        raise InvalidInput(
            f"'{f.name}' is only bounded; its Hilbert transform needs hilbert_modified"
        )
    x = float(x)
    _at_jump(f, x, "Hilbert transform")

    def kernel(t):
        t = np.asarray(t, dtype=float)
        return f(t) / (x - t)

    return float(np.real_if_close(_pv_line(kernel, x, f, cfg))) / np.pi


def hilbert_modified(f: LineFunction, x: float, cfg: Optional[PvConfig] = None) -> float:
    """(1/pi) pv int f(t) [1/(x - t) + t/(1 + t^2)] dt for bounded f."""
    cfg = _cfg(cfg)
    x = float(x)
    _at_jump(f, x, "modified Hilbert transform")

    def kernel(t):
        t = np.asarray(t, dtype=float)
        return f(t) * (1.0 + t * x) / ((x - t) * (1.0 + t * t))

    return float(np.real_if_close(_pv_line(kernel, x, f, cfg))) / np.pi


def harmonic_extension(f: LineFunction, z: complex, cfg: Optional[PvConfig] = None) -> float:
    """
    Modified conjugate harmonic extension at z in the upper half-plane.

    (1/pi) int f(t) [(Re z - t)/|z - t|^2 + t/(1 + t^2)] dt, which vanishes at
    z = i and tends to hilbert_modified as Im z -> 0.
    """
    cfg = _cfg(cfg)
    z = complex(z)
    if z.imag <= 0:
        raise InvalidInput(f"harmonic_extension needs Im z > 0, got {z}")

    def kernel(t):
        t = np.asarray(t, dtype=float)
        u = z.real - t
        return f(t) * (u / (u * u + z.imag ** 2) + t / (1.0 + t * t))

    lo, hi = f.support
    return float(integrate(kernel, (lo, hi), cfg.quad_tol, f.breakpoints())) / np.pi


def c_of(f: LineFunction, cfg: Optional[PvConfig] = None) -> float:
    """c(f) = (1/pi) int f/(1 + t^2), the constant in H~(H~f) = -f + c(f)."""
    cfg = _cfg(cfg)
    value = integrate(lambda t: f(t) / (1.0 + np.asarray(t) ** 2), f.support,
                      cfg.quad_tol, f.breakpoints())
    return float(value) / np.pi


def tabulate_transform(f: LineFunction, transform: str = "hilbert",
                       cfg: Optional[PvConfig] = None, panels: int = 32,
                       order: int = 8) -> LineFunction:
    """
    Sample Hf or H~f at t = tan(theta) on a Gauss-Legendre grid in theta.

    The sampled values plus the limits at theta = +-pi/2 feed a cubic spline in
    theta, so the result is cheap to evaluate anywhere on the line.

    Args:
        f: Input without interior jumps
        transform: ``hilbert`` or ``modified``
    """
    cfg = _cfg(cfg)
    if f.jumps:
        raise InvalidInput(f"cannot tabulate the transform of '{f.name}': it has jumps")
    if transform == "hilbert":
        single, limit, decay = hilbert, 0.0, DecayClass.INVERSE_LINEAR
    elif transform == "modified":
        single, decay = hilbert_modified, DecayClass.BOUNDED
        limit = float(integrate(lambda t: f(t) * np.asarray(t) / (1.0 + np.asarray(t) ** 2),
                                f.support, cfg.quad_tol, f.breakpoints())) / np.pi
    else:
        raise InvalidInput(f"unknown transform '{transform}'; use hilbert or modified")

    x, _ = gauss_legendre(order)
    edges = np.linspace(-0.5 * np.pi, 0.5 * np.pi, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    thetas = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    values = np.array([single(f, math.tan(theta), cfg) for theta in thetas])

    knots = np.concatenate(([-0.5 * np.pi], thetas, [0.5 * np.pi]))
    spline = CubicSpline(knots, np.concatenate(([limit], values, [limit])))
    logger.debug("tabulated %s of '%s' at %d nodes", transform, f.name, len(thetas))

    def func(t):
        return spline(np.arctan(np.asarray(t, dtype=float)))

    prefix = "H" if transform == "hilbert" else "Hmod"
    return LineFunction(func, decay, name=f"{prefix}[{f.name}]", check_decay=False)


def double_modified_residual(f: LineFunction, xs: Sequence[float],
                             cfg: Optional[PvConfig] = None) -> float:
    """max |H~(H~f)(x) + f(x) - c(f)| over the sample points."""
    cfg = _cfg(cfg)
    inner = tabulate_transform(f, "modified", cfg)
    c = c_of(f, cfg)
    return max(abs(hilbert_modified(inner, x, cfg) + float(f(x)) - c) for x in xs)


def anti_involution_residual(f: LineFunction, xs: Sequence[float],
                             cfg: Optional[PvConfig] = None) -> float:
    """max |H(Hf)(x) + f(x)| over the sample points."""
    cfg = _cfg(cfg)
    inner = tabulate_transform(f, "hilbert", cfg)
    return max(abs(hilbert(inner, x, cfg) + float(f(x))) for x in xs)


def c_beta(beta: float, f: LineFunction, cfg: Optional[PvConfig] = None) -> float:
    """c_beta(f) = H~f(i beta) = ((beta^2 - 1)/pi) int t f / ((1 + t^2)(beta^2 + t^2))."""
    cfg = _cfg(cfg)
    if beta <= 0:
        raise InvalidInput("beta must be positive")
    if beta == 1:
        return 0.0

    def kernel(t):
        t = np.asarray(t, dtype=float)
        return t * f(t) / ((1.0 + t * t) * (beta * beta + t * t))

    value = integrate(kernel, f.support, cfg.quad_tol, f.breakpoints())
    return float((beta * beta - 1.0) * value / np.pi)


def involution_J(beta: float, f: Callable, x):
    """J_beta f(x) = (beta/x^2) f(-beta/x)."""
    xs = np.asarray(x, dtype=float)
    if np.any(xs == 0):
        raise InvalidInput("J_beta is undefined at x = 0")
    values = beta / xs ** 2 * evaluate_on(f, -beta / xs)
    return float(values) if values.ndim == 0 else values


def involution_Jstar(beta: float, g: Callable, x):
    """J*_beta g(x) = g(-beta/x)."""
    xs = np.asarray(x, dtype=float)
    if np.any(xs == 0):
        raise InvalidInput("J*_beta is undefined at x = 0")
    values = evaluate_on(g, -beta / xs)
    return float(values) if values.ndim == 0 else values


def _image_support(beta: float, f: LineFunction, zero_radius: Optional[float]):
    """Support of t -> f(-beta/t), or None when it is unbounded."""
    lo, hi = f.support
    if f.is_compact and (lo >= 0 or hi <= 0):
        ends = sorted((-beta / e if e != 0 else (-np.inf if lo >= 0 else np.inf)) for e in (lo, hi))
        return ends[0], ends[1]
    if zero_radius:
        return -beta / zero_radius, beta / zero_radius
    return None


def _mapped_jumps(beta: float, f: LineFunction):
    return [-beta / b for b in f.breakpoints() if b != 0 and np.isfinite(b)]


def involution_J_line(beta: float, f: LineFunction,
                      zero_radius: Optional[float] = None) -> LineFunction:
    """
    J_beta lifted to LineFunctions.

    Compact inputs keep a compact image when they vanish on (-r, r), r given by
    ``zero_radius``, or when their support avoids 0.
    """
    support = _image_support(beta, f, zero_radius)

    def func(t):
        t = np.asarray(t, dtype=float)
        safe = np.where(t == 0, 1.0, t)
        return np.where(t == 0, 0.0, beta / safe ** 2 * f(-beta / safe))

    if support is not None and all(np.isfinite(support)):
        return LineFunction(func, DecayClass.COMPACT, support, _mapped_jumps(beta, f),
                            name=f"J[{f.name}]")
    return LineFunction(func, DecayClass.INVERSE_SQUARE, jumps=_mapped_jumps(beta, f),
                        name=f"J[{f.name}]", check_decay=False)


def involution_Jstar_line(beta: float, g: LineFunction,
                          zero_radius: Optional[float] = None) -> LineFunction:
    """J*_beta lifted to LineFunctions; bounded unless g vanishes near 0."""
    support = _image_support(beta, g, zero_radius)

    def func(t):
        t = np.asarray(t, dtype=float)
        safe = np.where(t == 0, 1.0, t)
        return np.where(t == 0, 0.0, g(-beta / safe))

    if support is not None and all(np.isfinite(support)):
        return LineFunction(func, DecayClass.COMPACT, support, _mapped_jumps(beta, g),
                            name=f"J*[{g.name}]")
    return LineFunction(func, DecayClass.BOUNDED, jumps=_mapped_jumps(beta, g) + [0.0],
                        name=f"J*[{g.name}]", check_decay=False)


def line_l1_norm(f: LineFunction, tol: float = 1e-10) -> float:
    """int |f| over the support."""
    cuts = list(f.breakpoints()) + [0.0]
    return float(integrate(lambda t: np.abs(f(t)), f.support, tol, cuts))


def line_pairing(phi: Callable, f: LineFunction, tol: float = 1e-10) -> float:
    """<phi, f> = int phi f over the support of f."""
    cuts = list(f.breakpoints()) + [0.0]
    value = integrate(lambda t: evaluate_on(phi, np.asarray(t)) * f(t), f.support, tol, cuts)
    return complex(value) if isinstance(value, complex) else float(value)


def _check_vanishes_near_zero(phi: LineFunction, radius: float) -> None:
    samples = np.linspace(-radius, radius, 101)
    if np.any(phi(samples) != 0):
        raise InvalidInput(f"'{phi.name}' must vanish on (-{radius:g}, {radius:g})")


def commutator_Jstar_hilbert(beta: float, phi: LineFunction, xs: Sequence[float],
                             cfg: Optional[PvConfig] = None,
                             zero_radius: Optional[float] = None) -> float:
    """
    max |H(J*phi)(x) - (Hphi)(-beta/x) - (1/pi) int phi(t)/t dt|.

    phi must be compactly supported away from 0: either its support avoids 0,
    or it vanishes on (-r, r) with r = ``zero_radius``.
    """
    cfg = _cfg(cfg)
    if not phi.is_compact:
        raise InvalidInput("commutator check needs a compactly supported phi")
    lo, hi = phi.support
    if lo < 0 < hi:
        if not zero_radius:
            raise InvalidInput("phi's support contains 0; pass zero_radius")
        _check_vanishes_near_zero(phi, zero_radius)
    jphi = involution_Jstar_line(beta, phi, zero_radius)
    correction = float(integrate(lambda t: phi(t) / np.asarray(t), phi.support,
                                 cfg.quad_tol, list(phi.breakpoints()) + [0.0])) / np.pi
    worst = 0.0
    for x in xs:
        if x == 0:
            raise InvalidInput("commutator samples must avoid 0")
        residual = hilbert(jphi, x, cfg) - hilbert(phi, -beta / x, cfg) - correction
        worst = max(worst, abs(residual))
    logger.debug("J* commutator beta=%g: residual %.3e", beta, worst)
    return worst


def modified_commutator_residual(beta: float, f: LineFunction, xs: Sequence[float],
                                 cfg: Optional[PvConfig] = None) -> float:
    """max |J*(H~f)(x) - H~(J*f)(x) - c_beta(f)| over nonzero samples."""
    cfg = _cfg(cfg)
    jf = involution_Jstar_line(beta, f)
    c = c_beta(beta, f, cfg)
    worst = 0.0
    for x in xs:
        if x == 0:
            raise InvalidInput("commutator samples must avoid 0")
        residual = hilbert_modified(f, -beta / x, cfg) - hilbert_modified(jf, x, cfg) - c
        worst = max(worst, abs(residual))
    return worst


def _window_jumps(F: PeriodicFunction, lo: float, hi: float):
    cuts = []
    for j in F.jumps:
        k = math.ceil((lo - j) / 2.0)
        point = j + 2.0 * k
        while point < hi:
            if point > lo:
                cuts.append(point)
            point += 2.0
    return cuts


def hilbert_periodic(F: PeriodicFunction, x: float, cfg: Optional[PvConfig] = None) -> float:
    """(1/2) pv int over a period of F(t) cot(pi (x - t)/2) dt."""
    cfg = _cfg(cfg)
    x = float(x)

    def kernel(t):
        t = np.asarray(t, dtype=float)
        return 0.5 * F(t) / np.tan(0.5 * np.pi * (x - t))

    lo, hi = x - 1.0, x + 1.0
    value = integrate_pv(kernel, x, (lo, hi), cfg, _window_jumps(F, lo, hi))
    return float(np.real_if_close(value))


def hilbert_window(F: PeriodicFunction, x: float, n: int,
                   cfg: Optional[PvConfig] = None) -> float:
    """
    Line Hilbert transform of F over the window |x - t| < 2n + 1.

    The 2n + 1 periods are folded onto (x - 1, x + 1), where the kernel becomes
    (1/pi) [1/u + sum_{k=1..n} 2u/(u^2 - 4k^2)], u = x - t.
    """
    cfg = _cfg(cfg)
    if n < 0:
        raise InvalidInput("window index must be nonnegative")
    x = float(x)
    ks = 4.0 * np.arange(1, n + 1, dtype=float) ** 2

    def kernel(t):
        u = x - np.asarray(t, dtype=float)
        folded = 1.0 / u + np.sum(2.0 * u[..., None] / (u[..., None] ** 2 - ks), axis=-1)
        return F(t) * folded / np.pi

    lo, hi = x - 1.0, x + 1.0
    return float(np.real_if_close(integrate_pv(kernel, x, (lo, hi), cfg, _window_jumps(F, lo, hi))))


def windowed_hilbert_limit(F: PeriodicFunction, x: float,
                           windows: Sequence[int] = (10, 40, 160),
                           cfg: Optional[PvConfig] = None) -> Tuple[float, float]:
    """
    Richardson limit of hilbert_window in h = 1/(2n + 1).

    Returns:
        (limit, gap): the extrapolant through all windows and its distance to
        the extrapolant that drops the coarsest one
    """
    if len(windows) < 2:
        raise InvalidInput("need at least two windows")
    hs = np.array([1.0 / (2 * n + 1) for n in windows])
    values = np.array([hilbert_window(F, x, n, cfg) for n in windows])
    limit = _polynomial_at_zero(hs, values)
    coarser = _polynomial_at_zero(hs[1:], values[1:])
    return float(limit), float(abs(limit - coarser))


def _polynomial_at_zero(hs, values):
    p = list(values)
    n = len(hs)
    for level in range(1, n):
        for i in range(n - level):
            p[i] = (hs[i + level] * p[i] - hs[i] * p[i + 1]) / (hs[i + level] - hs[i])
    return p[0]


def periodize(f: LineFunction, x: float, tol: float = 1e-9):
    """
    Pi_2 f(x) = sum_j f(x + 2j).

    Raises:
        TailNotControlled: Unless f is compact or decays like 1/t^2
    """
    x = float(x)
    lo, hi = f.support
    forward = lattice_sum(f, x, 2.0, f.decay.value, f.support, tol=tol)
    backward = lattice_sum(lambda t: f(-np.asarray(t, dtype=float)), 2.0 - x, 2.0,
                           f.decay.value, (-hi, -lo), tol=tol)
    return forward + backward


def periodize_function(f: LineFunction, tol: float = 1e-9) -> PeriodicFunction:
    """Pi_2 f as a PeriodicFunction; compact inputs are summed vectorised."""
    if f.is_compact:
        lo, hi = f.support

        def func(x):
            x = np.asarray(x, dtype=float)
            k_lo = math.floor((lo - 1.0) / 2.0) - 1
            k_hi = math.ceil((hi + 1.0) / 2.0) + 1
            shifts = 2.0 * np.arange(k_lo, k_hi + 1)
            return np.sum(f(x[..., None] + shifts), axis=-1)
    else:
        def func(x):
            return periodize(f, float(x), tol)

    return PeriodicFunction(func, continuous=False, jumps=f.breakpoints(), name=f"Pi2[{f.name}]")


def periodization_fourier_gap(f: LineFunction, n: int, tol: float = 1e-10) -> float:
    """|int_{-1}^{1} e^{i pi n t} Pi_2 f dt - int e^{i pi n t} f dt|."""
    F = periodize_function(f)
    cuts = [PeriodicFunction.reduce(b) for b in f.breakpoints()]
    circle = integrate(lambda t: np.exp(1j * np.pi * n * np.asarray(t)) * F(t),
                       (-1.0, 1.0), tol, cuts)
    line = integrate(lambda t: np.exp(1j * np.pi * n * np.asarray(t)) * f(t),
                     f.support, tol, f.breakpoints())
    return float(abs(circle - line))


def periodization_l1_gap(f: LineFunction, tol: float = 1e-10) -> float:
    """||f||_1 - ||Pi_2 f||_{L1(-1,1)}; nonnegative, zero for f >= 0."""
    F = periodize_function(f)
    cuts = [PeriodicFunction.reduce(b) for b in f.breakpoints()]
    circle = integrate(lambda t: np.abs(F(t)), (-1.0, 1.0), tol, cuts)
    return line_l1_norm(f, tol) - float(circle)


def periodization_commutator_gap(phi: PeriodicFunction, g: LineFunction,
                                 cfg: Optional[PvConfig] = None, nodes: int = 64) -> float:
    """
    |<phi, Pi_2(Hg)> - <phi, H_2(Pi_2 g)>| over one period.

    g must be smooth, compactly supported and of mean zero so that Hg decays
    like 1/t^2.
    """
    cfg = _cfg(cfg)
    if not g.is_compact:
        raise InvalidInput("periodization commutator needs a compactly supported g")
    mean = integrate(g, g.support, 1e-12, g.breakpoints())
    if abs(mean) > ZERO_MEAN_TOL:
        raise InvalidInput(f"'{g.name}' must have mean zero, got {mean:.3e}")
    hg = tabulate_transform(g, "hilbert", cfg)
    hg = LineFunction(hg.func, DecayClass.INVERSE_SQUARE, name=hg.name, check_decay=False)
    pg = periodize_function(g)

    x, w = gauss_legendre(nodes)
    phis = phi(x)
    left = sum(wk * pk * periodize(hg, xk) for xk, wk, pk in zip(x, w, phis))
    right = sum(wk * pk * hilbert_periodic(pg, xk, cfg) for xk, wk, pk in zip(x, w, phis))
    return float(abs(left - right))


def szego_plus(f: LineFunction, x: float, cfg: Optional[PvConfig] = None) -> complex:
    """(f + iHf)(x)/2."""
    return 0.5 * (complex(f(x)) + 1j * hilbert(f, x, cfg))


def szego_minus(f: LineFunction, x: float, cfg: Optional[PvConfig] = None) -> complex:
    """(f - iHf)(x)/2."""
    return 0.5 * (complex(f(x)) - 1j * hilbert(f, x, cfg))


def _line_fourier(amplitude: Callable, y: float, cfg: PvConfig) -> complex:
    """int e^{iyt} A(t) dt over the line, as two oscillatory half-lines."""
    if y == 0:
        raise InvalidInput("line Fourier pairings need y != 0")
    xi = y / np.pi
    right = integrate_osc_halfline(xi, cfg, amplitude, start=0.0)
    left = integrate_osc_halfline(-xi, cfg, lambda t: amplitude(-np.asarray(t)), start=0.0)
    return complex(right + left)


def hardy_pairing(f: LineFunction, y: float, cfg: Optional[PvConfig] = None) -> complex:
    """int e^{iyt} (f + iHf)(t) dt; vanishes for y > 0 when f + iHf is of Hardy type."""
    return szego_pairing(f, y, +1, cfg) * 2.0


def szego_pairing(f: LineFunction, y: float, sign: int = 1,
                  cfg: Optional[PvConfig] = None) -> complex:
    """int e^{iyt} (f +- iHf)(t)/2 dt, the sign picking the projection."""
    cfg = _cfg(cfg)
    if sign not in (1, -1):
        raise InvalidInput("sign must be +1 or -1")
    hf = tabulate_transform(f, "hilbert", cfg)

    def amplitude(t):
        t = np.asarray(t, dtype=float)
        return 0.5 * (f(t) + sign * 1j * hf(t))

    return _line_fourier(amplitude, y, cfg)


def _smooth_step(u):
    """0 for u <= 0, 1 for u >= 1, C-infinity in between."""
    u = np.clip(np.asarray(u, dtype=float), 0.0, 1.0)
    a = np.where(u > 0, np.exp(-1.0 / np.where(u > 0, u, 1.0)), 0.0)
    b = np.where(u < 1, np.exp(-1.0 / np.where(u < 1, 1.0 - u, 1.0)), 0.0)
    return a / (a + b)


def _cutoff(x: float, r: float) -> Callable:
    """Equals 1 on [x - r, x + r], vanishes outside (x - 2r, x + 2r)."""
    def chi(t):
        d = np.abs(np.asarray(t, dtype=float) - x)
        return _smooth_step((2.0 * r - d) / r)
    return chi


def valeur_au_point(f: LineFunction, g: LineFunction, x: float,
                    cfg: Optional[PvConfig] = None,
                    eps: Sequence[float] = (1e-2, 1e-3)) -> Tuple[float, float, float]:
    """
    Pointwise value of u = f + Hg at x along three routes.

    (i) f(x) + Hg(x); (ii), (iii) the Poisson pairings <chi P_{x+i eps}, u> for
    two cutoffs chi, extrapolated linearly to eps = 0.

    Raises:
        InvalidInput: If g does not have mean zero
    """
    cfg = _cfg(cfg)
    x = float(x)
    mean = integrate(g, g.support, 1e-12, g.breakpoints())
    if abs(mean) > ZERO_MEAN_TOL:
        raise InvalidInput(f"'{g.name}' must have mean zero to {ZERO_MEAN_TOL:g}, got {mean:.3e}")

    pointwise = float(f(x)) + hilbert(g, x, cfg)

    cuts = list(f.breakpoints()) + list(g.breakpoints())
    distance = min((abs(x - b) for b in cuts), default=np.inf)
    radii = (0.2, 0.4) if distance > 0.9 else (0.25 * distance, 0.45 * distance)
    reach = 2.0 * radii[1]
    samples = np.linspace(x - reach, x + reach, 161)
    hg = CubicSpline(samples, [hilbert(g, s, cfg) for s in samples])

    def pairing(r, e):
        chi = _cutoff(x, r)

        def integrand(t):
            t = np.asarray(t, dtype=float)
            poisson = e / (np.pi * (e * e + (x - t) ** 2))
            return chi(t) * poisson * (f(t) + hg(t))

        marks = [x - r, x, x + r] + [x + s * k * e for s in (-1, 1) for k in (10, 100)]
        return float(integrate(integrand, (x - 2 * r, x + 2 * r), 1e-10, marks))

    routes = []
    for r in radii:
        v1, v2 = pairing(r, eps[0]), pairing(r, eps[1])
        routes.append(v2 - eps[1] * (v1 - v2) / (eps[0] - eps[1]))
    logger.debug("pev at %g: %.8f %.8f %.8f", x, pointwise, *routes)
    return pointwise, routes[0], routes[1]
