"""
Fourier transforms of measures on the Klein-Gordon hyperbola.

A measure on the hyperbola x1 x2 = M^2/(4 pi^2) is carried by its compression
to the x1-axis; its Fourier transform is an oscillatory integral of that
density against exp(i pi [xi1 t + M^2 xi2 / (4 pi^2 t)]). This module
evaluates it, scans lattice-cross residuals, and supplies the critical
density f0 together with the sine/cosine-integral spiral behind its
one-extra-point uniqueness.
"""

import logging
import math
from dataclasses import dataclass
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from .core_numerics import (
    InvalidInput,
    NumericsError,
    PvConfig,
    bessel_j1_ratio,
    integrate,
    integrate_osc_halfline,
    lattice_sum,
    sici,
)
from .models import DecayClass, LineFunction

logger = logging.getLogger(__name__)

TWO_PI = 2.0 * np.pi

QUADRANTS = ("full", "++", "--", "+-", "-+")


def _cfg(cfg: Optional[PvConfig]) -> PvConfig:
    return cfg if cfg is not None else PvConfig()


@dataclass
class HyperbolaMeasure:
    """A measure on the hyperbola branch pair, given by its x1-compression."""

    density: LineFunction
    mass: float = TWO_PI
    name: str = "mu"

    def __post_init__(self):
        if not self.mass > 0:
            raise InvalidInput(f"hyperbola mass must be positive, got {self.mass}")
        total = integrate(lambda t: np.abs(self.density(t)), self.density.support, 1e-8,
                          list(self.density.breakpoints()) + [0.0])
        if not np.isfinite(total):
            raise InvalidInput(f"density '{self.density.name}' is not integrable")
        self.total_variation = float(total)


@dataclass(frozen=True)
class LatticeCross:
    """(alpha Z x {0}) U ({0} x beta Z), truncated to |m| <= m_max, |n| <= n_max."""

    alpha: float = 2.0
    beta: float = 2.0
    m_max: int = 8
    n_max: int = 8
    quadrant: str = "full"

    def __post_init__(self):
        if not (self.alpha > 0 and self.beta > 0):
            raise InvalidInput("lattice-cross spacings must be positive")
        if self.m_max < 0 or self.n_max < 0:
            raise InvalidInput("lattice truncations must be nonnegative")
        if self.quadrant not in QUADRANTS:
            raise InvalidInput(f"quadrant must be one of {', '.join(QUADRANTS)}")

    def points(self) -> List[Tuple[str, Tuple[float, float]]]:
        """Labelled points; the origin appears once."""
        horizontal, vertical = self._signs()
        points = [("origin", (0.0, 0.0))]
        for m in range(1, self.m_max + 1):
            for s in horizontal:
                points.append((f"m={s * m}", (s * m * self.alpha, 0.0)))
        for n in range(1, self.n_max + 1):
            for s in vertical:
                points.append((f"n={s * n}", (0.0, s * n * self.beta)))
        return points

    def _signs(self):
        if self.quadrant == "full":
            return (1, -1), (1, -1)
        h = 1 if self.quadrant[0] == "+" else -1
        v = 1 if self.quadrant[1] == "+" else -1
        return (h,), (v,)


@dataclass
class LatticeEntry:
    label: str
    point: Tuple[float, float]
    value: Optional[complex]
    residual: Optional[float]
    error: Optional[str] = None


@dataclass(frozen=True)
class CriticalDensity:
    """
    C0 [1_{[0,2/alpha]}/(2(2 + alpha t)) - 1_{[2/alpha,inf)}/(alpha t (2 + alpha t))].

    With mass 2 pi this compression is annihilated on the cross with spacings
    alpha and 4/alpha.
    """

    scale: complex = 1.0
    alpha: float = 2.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise InvalidInput("alpha must be positive")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        a = self.alpha
        safe = np.where(t > 0, t, 1.0)
        inner = 1.0 / (2.0 * (2.0 + a * safe))
        outer = -1.0 / (a * safe * (2.0 + a * safe))
        values = np.where(t <= 2.0 / a, inner, outer)
        return self.scale * np.where(t > 0, values, 0.0)

    @property
    def breakpoint(self) -> float:
        return 2.0 / self.alpha

    def line_function(self) -> LineFunction:
        return LineFunction(self, DecayClass.INVERSE_SQUARE, (0.0, math.inf),
                            (self.breakpoint,), name=f"critical(alpha={self.alpha:g})",
                            check_decay=False)


def critical_f0(t, alpha: Optional[float] = None):
    """
    The critical density.

    Without alpha: 1/(1+t) on (0, 1], -1/(t(1+t)) beyond, with the left value
    at t = 1. With alpha: the general form, equal to f0(alpha t/2)/4.
    """
    arr = np.asarray(t, dtype=float)
    if alpha is not None:
        out = CriticalDensity(1.0, alpha)(arr)
    else:
        safe = np.where(arr > 0, arr, 1.0)
        out = np.where(arr <= 1.0, 1.0 / (1.0 + safe), -1.0 / (safe * (1.0 + safe)))
        out = np.where(arr > 0, out, 0.0)
    return float(out) if out.ndim == 0 else out


def f0_line() -> LineFunction:
    """f0 on the positive half-line."""
    return LineFunction(critical_f0, DecayClass.INVERSE_SQUARE, (0.0, math.inf), (1.0,),
                        name="f0")


def f0_measure(mass: float = TWO_PI, scale: complex = 1.0) -> HyperbolaMeasure:
    density = f0_line()
    if scale != 1.0:
        density = LineFunction(lambda t: scale * critical_f0(t), DecayClass.INVERSE_SQUARE,
                               (0.0, math.inf), (1.0,), name=f"{scale}*f0", check_decay=False)
    return HyperbolaMeasure(density, mass, "f0")


def critical_measure(alpha: float, scale: complex = 1.0, mass: float = TWO_PI) -> HyperbolaMeasure:
    return HyperbolaMeasure(CriticalDensity(scale, alpha).line_function(), mass,
                            f"critical(alpha={alpha:g})")


def _side_transform(f: Callable, a: float, b: float, jumps: Sequence[float],
                    cfg: PvConfig) -> complex:
    """int_0^inf exp(i pi (a s + b/s)) f(s) ds, split at s = 1."""
    far = [j for j in jumps if j > 1]
    near = [1.0 / j for j in jumps if 0 < j < 1]

    if a == 0:
        outer = integrate(lambda s: np.exp(1j * np.pi * b / np.asarray(s)) * f(s),
                          (1.0, np.inf), cfg.quad_tol, far)
    else:
        outer = integrate_osc_halfline(
            a, cfg, lambda s: np.exp(1j * np.pi * b / np.asarray(s)) * f(s), 1.0, far
        )

    if b == 0:
        inner = integrate(lambda s: np.exp(1j * np.pi * a * np.asarray(s)) * f(s),
                          (0.0, 1.0), cfg.quad_tol, [j for j in jumps if 0 < j < 1])
    else:
        def amplitude(u):
            u = np.asarray(u, dtype=float)
            return np.exp(1j * np.pi * a / u) * f(1.0 / u) / (u * u)

        inner = integrate_osc_halfline(b, cfg, amplitude, 1.0, near)
    return complex(outer) + complex(inner)


def hyperbola_ft(mu: HyperbolaMeasure, xi: Tuple[float, float],
                 cfg: Optional[PvConfig] = None) -> complex:
    """
    Fourier transform of a hyperbola measure at (xi1, xi2).

    int exp(i pi [xi1 t + M^2 xi2/(4 pi^2 t)]) d(pi1 mu)(t) over t != 0. Each
    half-line is split at |t| = 1; the piece (0, 1] is mapped to [1, inf) by
    t = 1/u so that both pieces become oscillatory tails.

    Raises:
        NonConvergence: If an oscillatory tail does not settle
    """
    cfg = _cfg(cfg)
    a = float(xi[0])
    b = mu.mass ** 2 * float(xi[1]) / (4.0 * np.pi ** 2)
    f = mu.density
    lo, hi = f.support
    total = 0j
    if hi > 0:
        jumps = [j for j in f.breakpoints() if j > 0]
        total += _side_transform(f, a, b, jumps, cfg)
    if lo < 0:
        jumps = [-j for j in f.breakpoints() if j < 0]
        total += _side_transform(lambda s: f(-np.asarray(s, dtype=float)), -a, -b, jumps, cfg)
    return complex(total)


def lattice_residual_scan(mu: HyperbolaMeasure, cross: LatticeCross,
                          cfg: Optional[PvConfig] = None) -> Tuple[List[LatticeEntry], float]:
    """
    |mu^| at every point of the truncated cross.

    Points whose quadrature fails are reported with their error and left out
    of the maximum.

    Returns:
        (entries, max residual over converged entries)
    """
    cfg = _cfg(cfg)
    entries = []
    for label, point in cross.points():
        try:
            value = hyperbola_ft(mu, point, cfg)
            entries.append(LatticeEntry(label, point, value, abs(value)))
        except NumericsError as e:
            logger.warning("lattice point %s: %s", label, e)
            entries.append(LatticeEntry(label, point, None, None, str(e)))
    residuals = [e.residual for e in entries if e.residual is not None]
    worst = max(residuals) if residuals else math.nan
    logger.info("lattice scan of %s: %d points, max residual %.3e", mu.name, len(entries), worst)
    return entries, worst


def _on_even_lattice(xi1: float) -> bool:
    half = xi1 / 2.0
    return abs(half - round(half)) < 1e-12


def cross_ft_closed_form(xi1: float, scale: complex = 1.0, cfg: Optional[PvConfig] = None,
                         require_nonvanishing: bool = False) -> complex:
    """
    C0 (e^{-i pi xi1} - 1) int_1^inf e^{i pi xi1 t} dt/t, the f0-measure's
    transform on the horizontal axis.

    Raises:
        InvalidInput: For xi1 in 2Z when a nonvanishing value is required
    """
    cfg = _cfg(cfg)
    xi1 = float(xi1)
    if _on_even_lattice(xi1):
        if require_nonvanishing:
            raise InvalidInput(f"xi1 = {xi1:g} lies on 2Z, where the transform vanishes")
        return 0j
    prefactor = np.exp(-1j * np.pi * xi1) - 1.0
    return complex(scale * prefactor * integrate_osc_halfline(xi1, cfg))


def ft_exp_inv_t_check(y: complex, cfg: Optional[PvConfig] = None,
                       tol: float = 1e-12) -> Tuple[complex, complex, float]:
    """
    int_0^inf e^{i pi x y} x^{-1/2} J1(2 sqrt x) dx against 1 - e^{-i/(pi y)}.

    Returns:
        (lhs, rhs, gap)
    """
    y = complex(y)
    if y.imag <= 0:
        raise InvalidInput(f"the transform needs Im y > 0, got {y}")
    x_max = 32.0 / (np.pi * y.imag)
    cuts = np.arange(1.0, x_max, 1.0)

    def integrand(x):
        x = np.asarray(x, dtype=float)
        return np.exp(1j * np.pi * x * y) * bessel_j1_ratio(x)

    lhs = complex(integrate(integrand, (0.0, x_max), tol, cuts))
    rhs = complex(1.0 - np.exp(-1j / (np.pi * y)))
    return lhs, rhs, float(abs(lhs - rhs))


def regularized_ft_exp_check(xs: Sequence[float], eps: float,
                             cfg: Optional[PvConfig] = None) -> List[Tuple[float, float, float, float]]:
    """
    (2 pi)^-1 int e^{i/t + i t x - eps |t|} dt against the transform of e^{i/t}.

    The transform is delta_0 - 1_{x>0} x^{-1/2} J1(2 sqrt x); damping by
    e^{-eps|t|} convolves it with the Poisson kernel P_eps, so the target is
    P_eps(x) - int_0^inf P_eps(x - s) s^{-1/2} J1(2 sqrt s) ds. Rows are
    (x, regularized value, target, gap).
    """
    cfg = _cfg(cfg)
    if not 1e-3 <= eps <= 1e-1:
        raise InvalidInput(f"eps must lie in [1e-3, 1e-1], got {eps}")
    rows = []
    for x in xs:
        x = float(x)
        if x <= 0:
            raise InvalidInput("samples must be positive")
        target = poisson_smoothed_bessel_target(x, eps)
        # (1/pi) Re int_0^inf e^{-eps t} e^{i(1/t + x t)} dt, split at t = 1
        outer = integrate_osc_halfline(
            x / np.pi, cfg,
            lambda t: np.exp(-eps * np.asarray(t) + 1j / np.asarray(t)), 1.0,
        )
        inner = integrate_osc_halfline(
            1.0 / np.pi, cfg,
            lambda u: np.exp((1j * x - eps) / np.asarray(u)) / np.asarray(u) ** 2, 1.0,
        )
        value = float(np.real(outer + inner)) / np.pi
        rows.append((x, value, target, abs(value - target)))
    return rows


def poisson_smoothed_bessel_target(x: float, eps: float, tol: float = 1e-9) -> float:
    """
    P_eps(x) - int_0^inf P_eps(x - s) s^{-1/2} J1(2 sqrt s) ds.

    The integral stops at x + 1e4; past it the integrand is below
    eps s^{-11/4}, which leaves less than 1e-9.
    """
    x, eps = float(x), float(eps)

    def kernel(s):
        s = np.asarray(s, dtype=float)
        return eps / (np.pi * ((x - s) ** 2 + eps * eps))

    upper = x + 1e4
    cuts = [c for c in (x - 1.0, x - 10 * eps, x - eps, x, x + eps, x + 10 * eps, x + 1.0,
                        10.0, 100.0, 1000.0)
            if 0.0 < c < upper]
    smoothed = integrate(lambda s: kernel(s) * bessel_j1_ratio(s), (0.0, upper), tol,
                         sorted(set(cuts)))
    return float(kernel(0.0)) - float(smoothed)


def rescaled(mu: HyperbolaMeasure) -> Tuple[HyperbolaMeasure, float]:
    """The mass-2pi measure with density lam f(lam s), lam = M/(2 pi)."""
    lam = mu.mass / TWO_PI
    f = mu.density
    lo, hi = f.support

    def func(s):
        return lam * f(lam * np.asarray(s, dtype=float))

    density = LineFunction(func, f.decay, (lo / lam, hi / lam), [j / lam for j in f.jumps],
                           name=f"rescaled[{f.name}]", check_decay=False)
    return HyperbolaMeasure(density, TWO_PI, f"rescaled[{mu.name}]"), lam


def scaling_covariance_gap(mu: HyperbolaMeasure, xi: Tuple[float, float],
                           cfg: Optional[PvConfig] = None) -> float:
    """|mu^_M(xi) - nu^_{2pi}(lam xi)| for the rescaled measure nu."""
    nu, lam = rescaled(mu)
    direct = hyperbola_ft(mu, xi, cfg)
    scaled = hyperbola_ft(nu, (lam * xi[0], lam * xi[1]), cfg)
    return float(abs(direct - scaled))


def periodized_vanishing_residual(f: LineFunction, gamma: float, ts: Sequence[float],
                                  tol: float = 1e-7) -> Tuple[float, float]:
    """
    max_t |sum_j f(t + j)| and max_t |sum_j (t + j)^-2 f(gamma/(t + j))|.

    Both sums run over j >= 0 with certified lattice tails.
    """
    if not 0 < gamma <= 1:
        raise InvalidInput(f"gamma must lie in (0, 1], got {gamma}")
    lo, hi = f.support

    def inverted(s):
        s = np.asarray(s, dtype=float)
        return f(gamma / s) / (s * s)

    if lo > 0 and np.isfinite(hi):
        inv_decay, inv_support = "compact", (gamma / hi, gamma / lo)
    elif lo > 0:
        inv_decay, inv_support = "compact", (0.0, gamma / lo)
    else:
        inv_decay, inv_support = "inverse_square", (0.0, math.inf)

    r1 = r2 = 0.0
    for t in ts:
        if not 0 < t < 1:
            raise InvalidInput(f"samples must lie in (0, 1), got {t}")
        first = lattice_sum(f, t, 1.0, f.decay.value, f.support, tol=tol)
        second = lattice_sum(inverted, t, 1.0, inv_decay, inv_support, tol=tol)
        r1, r2 = max(r1, abs(first)), max(r2, abs(second))
    return float(r1), float(r2)


def spiral_samples(x_min: float, x_max: float,
                   step: float) -> Tuple[List[Tuple[float, float, float, float]], float]:
    """
    Rows (x, ci(pi x), si(pi x), |ci + i si|) and the minimum modulus.

    The curve x -> ci(pi x) + i si(pi x) never reaches the origin.
    """
    if not 0 < x_min <= x_max:
        raise InvalidInput(f"need 0 < x_min <= x_max, got [{x_min}, {x_max}]")
    if step <= 0:
        raise InvalidInput("step must be positive")
    count = int(round((x_max - x_min) / step)) + 1
    xs = x_min + step * np.arange(count)
    si, ci = sici(np.pi * xs)
    modulus = np.hypot(ci, si)
    rows = [(float(x), float(c), float(s), float(m)) for x, c, s, m in zip(xs, ci, si, modulus)]
    return rows, float(np.min(modulus))
