"""
Data models for Gauss HUP Verifier.

This module contains the shared carriers used throughout the package:
quadrature grids, sampled functions with optional closed forms, map
parameters, functions on the line and on the circle, and the check/report
records produced by verification campaigns.
"""

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .core_numerics import (
    InvalidInput,
    SegmentInterpolant,
    evaluate_on,
    gauss_legendre,
)


class MapFamily(str, Enum):
    """Which Gauss-type map a parameter belongs to."""

    SIGMA = "sigma"  # sigma_gamma on (0, 1)
    TAU = "tau"  # tau_beta on (-1, 1]


class DecayClass(str, Enum):
    """Declared behaviour of a function on the line at infinity."""

    COMPACT = "compact"
    INVERSE_SQUARE = "inverse_square"
    INVERSE_LINEAR = "inverse_linear"
    BOUNDED = "bounded"


_DECAY_POWER = {
    DecayClass.INVERSE_SQUARE: 2.0,
    DecayClass.INVERSE_LINEAR: 1.0,
    DecayClass.BOUNDED: 0.0,
}


def _dedupe(points: Sequence[float], lo: float, hi: float, tol: float = 1e-12):
    """Sorted points strictly inside (lo, hi), merged when closer than tol."""
    kept: List[float] = []
    for p in sorted(float(p) for p in points):
        if not (lo + tol < p < hi - tol):
            continue
        if kept and p - kept[-1] < tol:
            continue
        kept.append(p)
    return tuple(kept)


@dataclass(eq=False)
class Grid:
    """
    Composite Gauss-Legendre grid on an open interval.

    Nodes avoid the endpoints, so densities with poles at the ends can be
    sampled. Breakpoints are panel edges; functions with jumps there are
    resampled segment by segment.
    """

    a: float
    b: float
    nodes: np.ndarray
    weights: np.ndarray
    breakpoints: Tuple[float, ...] = ()
    rule: str = "composite-gauss-legendre"
    panels: int = 32
    order: int = 8
    grading_levels: int = 8

    def __post_init__(self):
        self.a = float(self.a)
        self.b = float(self.b)
        self.nodes = np.asarray(self.nodes, dtype=float)
        self.weights = np.asarray(self.weights, dtype=float)
        if not self.a < self.b:
            raise InvalidInput(f"Grid needs a < b, got [{self.a}, {self.b}]")
        if self.nodes.ndim != 1 or len(self.nodes) < 8:
            raise InvalidInput("Grid needs at least 8 nodes")
        if self.weights.shape != self.nodes.shape:
            raise InvalidInput("Grid weights must match nodes")
        if np.any(np.diff(self.nodes) <= 0):
            raise InvalidInput("Grid nodes must be strictly increasing")
        if self.nodes[0] <= self.a or self.nodes[-1] >= self.b:
            raise InvalidInput("Grid nodes must lie strictly inside (a, b)")
        self.breakpoints = _dedupe(self.breakpoints, self.a, self.b)

    @classmethod
    def composite(
        cls,
        a: float,
        b: float,
        panels: int = 32,
        order: int = 8,
        breakpoints: Sequence[float] = (),
        grading_levels: int = 8,
    ) -> "Grid":
        """
        Build a composite grid with geometric refinement toward both ends.

        Args:
            a, b: Interval endpoints
            panels: Number of uniform panels
            order: Gauss-Legendre points per panel
            breakpoints: Extra panel edges (jumps of the sampled functions)
            grading_levels: Number of halvings of the end panels
        """
        if panels < 1 or order < 2:
            raise InvalidInput("Grid needs panels >= 1 and order >= 2")
        h = (b - a) / panels
        edges = set(np.linspace(a, b, panels + 1).tolist())
        for k in range(1, grading_levels + 1):
            edges.add(a + h * 2.0 ** -k)
            edges.add(b - h * 2.0 ** -k)
        cuts = _dedupe(breakpoints, a, b)
        edges.update(cuts)
        edges = np.array(sorted(edges))
        edges = edges[np.concatenate(([True], np.diff(edges) > 1e-13))]

        x, w = gauss_legendre(order)
        lo, hi = edges[:-1], edges[1:]
        half = 0.5 * (hi - lo)
        mid = 0.5 * (hi + lo)
        nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
        weights = (half[:, None] * w[None, :]).ravel()
        return cls(
            a, b, nodes, weights, cuts,
            panels=panels, order=order, grading_levels=grading_levels,
        )

    def refined(self, extra_breakpoints: Sequence[float]) -> "Grid":
        """Rebuild with the same resolution and additional breakpoints."""
        extra = _dedupe(extra_breakpoints, self.a, self.b)
        if not extra:
            return self
        return Grid.composite(
            self.a,
            self.b,
            panels=self.panels,
            order=self.order,
            breakpoints=tuple(self.breakpoints) + extra,
            grading_levels=self.grading_levels,
        )

    @property
    def size(self) -> int:
        return len(self.nodes)

    @property
    def interval(self) -> Tuple[float, float]:
        return self.a, self.b

    def symmetric(self, tol: float = 1e-12) -> bool:
        """True when the nodes are mirror images about the midpoint."""
        mid = 0.5 * (self.a + self.b)
        return bool(np.allclose(self.nodes - mid, -(self.nodes[::-1] - mid), atol=tol))


@dataclass(frozen=True)
class ClosedForm:
    """
    An analytically known function with its name, parameters and jumps.

    ``func`` must accept numpy arrays. ``symmetry`` is one of ``none``,
    ``odd-increasing``, ``even``, ``even-convex-positive``, ``even-increasing-positive``.
    """

    name: str
    params: Tuple[Tuple[str, Any], ...]
    func: Callable = field(compare=False, repr=False)
    breakpoints: Tuple[float, ...] = ()
    symmetry: str = "none"
    bounded: bool = True

    def __call__(self, x):
        return evaluate_on(self.func, np.asarray(x, dtype=float))

    @property
    def label(self) -> str:
        if not self.params:
            return self.name
        inner = ",".join(f"{k}={v:g}" if isinstance(v, float) else f"{k}={v}"
                         for k, v in self.params)
        return f"{self.name}({inner})"

    def masked(self, mask: Callable, name: str, breakpoints: Sequence[float] = ()) -> "ClosedForm":
        """Product with an indicator (or any factor) given as a callable."""
        base = self

        def func(x):
            return base(x) * mask(x)

        return ClosedForm(
            f"{name}*{self.name}",
            self.params,
            func,
            tuple(sorted(set(self.breakpoints) | set(breakpoints))),
            "none",
            self.bounded,
        )

    def composed(self, outer: Callable, name: str, breakpoints: Sequence[float] = ()) -> "ClosedForm":
        """x -> outer(x, self) for composition-type operators."""
        base = self

        def func(x):
            return outer(np.asarray(x, dtype=float), base)

        return ClosedForm(
            f"{name}[{self.name}]",
            self.params,
            func,
            tuple(breakpoints),
            "none",
            self.bounded,
        )


def lambda1() -> ClosedForm:
    """The Gauss density 1/(1+x)."""
    return ClosedForm("lambda1", (), lambda x: 1.0 / (1.0 + x), (), "none", True)


def kappa(alpha: float) -> ClosedForm:
    """
    alpha/(alpha^2 - x^2) on I_1.

    For alpha < 1 the density has poles at +-alpha and is negative beyond
    them; the operators only sample it on (-alpha, alpha). kappa(1) is the
    infinite-mass invariant density of tau_1.
    """
    alpha = float(alpha)
    if not 0 < alpha <= 1:
        raise InvalidInput(f"kappa needs 0 < alpha <= 1, got {alpha}")

    def func(x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore"):
            return alpha / (alpha * alpha - x * x)

    if alpha < 1:
        return ClosedForm("kappa", (("alpha", alpha),), func, (-alpha, alpha), "even", False)
    return ClosedForm("kappa", (("alpha", alpha),), func, (), "even-convex-positive", False)


def indicator(lo: float, hi: float) -> ClosedForm:
    """Indicator of the closed interval [lo, hi]."""
    lo, hi = float(lo), float(hi)
    if not lo < hi:
        raise InvalidInput(f"indicator needs lo < hi, got [{lo}, {hi}]")

    def func(x):
        x = np.asarray(x, dtype=float)
        return ((x >= lo) & (x <= hi)).astype(float)

    return ClosedForm("indicator", (("lo", lo), ("hi", hi)), func, (lo, hi), "none", True)


def monomial(k: int) -> ClosedForm:
    """x**k."""
    k = int(k)
    if k < 0:
        raise InvalidInput("monomial degree must be nonnegative")
    if k % 2 == 1:
        symmetry = "odd-increasing"
    elif k == 0:
        symmetry = "none"
    else:
        symmetry = "even-convex-positive"
    return ClosedForm("monomial", (("k", k),), lambda x: np.asarray(x, dtype=float) ** k,
                      (), symmetry, True)


def constant(c: float = 1.0) -> ClosedForm:
    c = float(c)
    return ClosedForm("constant", (("c", c),),
                      lambda x: np.full(np.shape(x), c), (), "none", True)


def bump(center: float, width: float, height: float = 1.0) -> ClosedForm:
    """Smooth compactly supported bump exp(-1/(1-u^2)) scaled to peak ``height``."""
    center, width, height = float(center), float(width), float(height)
    if width <= 0:
        raise InvalidInput("bump width must be positive")

    def func(x):
        u = (np.asarray(x, dtype=float) - center) / width
        inside = np.abs(u) < 1
        safe = np.where(inside, u, 0.0)
        return np.where(inside, height * np.exp(1.0 - 1.0 / (1.0 - safe * safe)), 0.0)

    return ClosedForm(
        "bump", (("center", center), ("width", width), ("height", height)), func,
        (), "none", True,
    )


def cosh_bump(scale: float = 1.0) -> ClosedForm:
    """cosh(scale*x): even, convex, positive and increasing on [0, 1)."""
    scale = float(scale)
    return ClosedForm("cosh", (("scale", scale),),
                      lambda x: np.cosh(scale * np.asarray(x, dtype=float)),
                      (), "even-convex-positive", True)


def custom(name: str, func: Callable, breakpoints: Sequence[float] = (),
           symmetry: str = "none", bounded: bool = True) -> ClosedForm:
    """Wrap an arbitrary vectorised callable."""
    return ClosedForm(name, (), func, tuple(breakpoints), symmetry, bounded)


class GridFunction:
    """
    A function sampled at the nodes of a Grid.

    With a closed form attached, every evaluation goes through it and the node
    values must agree with it. Without one, off-node values come from
    per-segment spline resampling.
    """

    def __init__(self, grid: Grid, values, closed_form: Optional[ClosedForm] = None):
        values = np.asarray(values)
        if values.shape != grid.nodes.shape:
            raise InvalidInput(
                f"GridFunction has {values.size} values for {grid.size} nodes"
            )
        if closed_form is not None:
            exact = closed_form(grid.nodes)
            scale = float(np.max(np.abs(exact), initial=1.0))
            if not np.allclose(values, exact, rtol=1e-12, atol=1e-14 * scale):
                raise InvalidInput(
                    f"values disagree with closed form '{closed_form.label}'"
                )
        self.grid = grid
        self.values = values
        self.closed_form = closed_form
        self._interpolant: Optional[SegmentInterpolant] = None

    @classmethod
    def from_closed_form(cls, grid: Grid, closed_form: ClosedForm) -> "GridFunction":
        if closed_form.breakpoints:
            grid = grid.refined(closed_form.breakpoints)
        return cls(grid, closed_form(grid.nodes), closed_form)

    @classmethod
    def from_callable(cls, grid: Grid, func: Callable) -> "GridFunction":
        """Sample a callable with no closed-form tag."""
        return cls(grid, evaluate_on(func, grid.nodes))

    @property
    def interpolant(self) -> SegmentInterpolant:
        if self._interpolant is None:
            self._interpolant = SegmentInterpolant(
                self.grid.nodes, self.values, self.grid.a, self.grid.b, self.grid.breakpoints
            )
        return self._interpolant

    def evaluate(self, x) -> np.ndarray:
        """Values at arbitrary points; zero outside the grid interval."""
        x = np.asarray(x, dtype=float)
        if self.closed_form is not None:
            out = self.closed_form(x)
        else:
            out = self.interpolant(x)
        inside = (x > self.grid.a) & (x <= self.grid.b)
        return np.where(inside, out, 0.0)

    __call__ = evaluate

    def interpolation_error(self) -> float:
        """Resampling error estimate; zero for closed forms."""
        if self.closed_form is not None:
            return 0.0
        return self.interpolant.error_estimate()

    @property
    def is_complex(self) -> bool:
        return np.iscomplexobj(self.values)

    def __repr__(self) -> str:
        tag = self.closed_form.label if self.closed_form else "sampled"
        return f"GridFunction({tag}, [{self.grid.a:g}, {self.grid.b:g}], n={self.grid.size})"


@dataclass(frozen=True)
class MapParams:
    """A Gauss-type map: sigma_gamma on (0, 1) or tau_beta on (-1, 1]."""

    family: MapFamily
    param: float

    def __post_init__(self):
        object.__setattr__(self, "family", MapFamily(self.family))
        param = float(self.param)
        if not 0 < param <= 1:
            raise InvalidInput(f"map parameter must lie in (0, 1], got {param}")
        object.__setattr__(self, "param", param)

    @classmethod
    def tau(cls, beta: float) -> "MapParams":
        return cls(MapFamily.TAU, beta)

    @classmethod
    def sigma(cls, gamma: float) -> "MapParams":
        return cls(MapFamily.SIGMA, gamma)

    @property
    def domain(self) -> Tuple[float, float]:
        return (-1.0, 1.0) if self.family is MapFamily.TAU else (0.0, 1.0)

    @property
    def core(self) -> Tuple[float, float]:
        """The closed core interval whose complement is the 2-periodic attractor."""
        if self.family is MapFamily.TAU:
            return -self.param, self.param
        return 0.0, self.param

    def base_grid(self, panels: int = 32, order: int = 8) -> Grid:
        """Composite grid on the map's domain with the core's edges as breakpoints."""
        a, b = self.domain
        if self.family is MapFamily.TAU:
            cuts = (-self.param, 0.0, self.param)
        else:
            cuts = (self.param,)
        return Grid.composite(a, b, panels=panels, order=order, breakpoints=cuts)


@dataclass(frozen=True)
class WanderingQuery:
    """Depth-N wandering set of a map: points whose first N-1 iterates stay in the core."""

    params: MapParams
    depth: int

    def __post_init__(self):
        if int(self.depth) != self.depth or self.depth < 1:
            raise InvalidInput(f"wandering depth must be a positive integer, got {self.depth}")


class LineFunction:
    """
    A function on the real line with a declared decay class.

    The declared class drives every tail treatment downstream. Unless
    ``check_decay`` is off, the claim is spot-checked: t^p |f(t)| must not grow
    by more than a factor 10 across |t| in {1e2, 1e3, 1e4}.
    """

    def __init__(
        self,
        func: Callable,
        decay,
        support: Tuple[float, float] = (-math.inf, math.inf),
        jumps: Sequence[float] = (),
        name: str = "f",
        check_decay: bool = True,
    ):
        self.func = func
        self.decay = DecayClass(decay)
        self.support = (float(support[0]), float(support[1]))
        self.jumps = tuple(sorted({float(j) for j in jumps}))
        self.name = name
        if not self.support[0] < self.support[1]:
            raise InvalidInput(f"support of '{name}' is empty: {self.support}")
        if self.decay is DecayClass.COMPACT and not all(np.isfinite(self.support)):
            raise InvalidInput(f"'{name}' declared compact needs a finite support")
        if check_decay and self.decay is not DecayClass.COMPACT:
            self._check_decay()

    def _check_decay(self):
        power = _DECAY_POWER[self.decay]
        for sign in (1.0, -1.0):
            ts = sign * np.array([1e2, 1e3, 1e4])
            inside = (ts >= self.support[0]) & (ts <= self.support[1])
            if not np.all(inside):
                continue
            scaled = np.abs(ts) ** power * np.abs(evaluate_on(self.func, ts))
            if not np.all(np.isfinite(scaled)):
                raise InvalidInput(f"'{self.name}' is not finite at large |t|")
            floor = max(float(scaled[0]), 1e-300)
            if np.any(scaled[1:] > 10.0 * floor + 1e-12):
                raise InvalidInput(
                    f"'{self.name}' does not decay like class {self.decay.value}"
                )

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        lo, hi = self.support
        inside = (t >= lo) & (t <= hi)
        if np.all(inside):
            return evaluate_on(self.func, t)
        values = evaluate_on(self.func, np.clip(t, lo, hi))
        return np.where(inside, values, 0.0)

    @property
    def is_compact(self) -> bool:
        return self.decay is DecayClass.COMPACT

    def breakpoints(self) -> Tuple[float, ...]:
        """Jumps plus finite support edges."""
        edges = [e for e in self.support if np.isfinite(e)]
        return tuple(sorted(set(self.jumps) | set(edges)))

    def __repr__(self) -> str:
        return f"LineFunction({self.name}, {self.decay.value}, support={self.support})"


def poisson_kernel(eps: float = 1.0, center: float = 0.0) -> LineFunction:
    """pi^-1 eps/(eps^2 + (t - center)^2)."""
    if eps <= 0:
        raise InvalidInput("Poisson kernel width must be positive")

    def func(t):
        u = np.asarray(t, dtype=float) - center
        return eps / (np.pi * (eps * eps + u * u))

    return LineFunction(func, DecayClass.INVERSE_SQUARE, name=f"poisson({eps:g},{center:g})")


def line_indicator(lo: float, hi: float) -> LineFunction:
    """Indicator of [lo, hi] on the line."""
    form = indicator(lo, hi)
    return LineFunction(form.func, DecayClass.COMPACT, (lo, hi), (lo, hi), form.label)


def line_bump(center: float, width: float, height: float = 1.0) -> LineFunction:
    """Smooth bump supported in [center - width, center + width]."""
    form = bump(center, width, height)
    return LineFunction(form.func, DecayClass.COMPACT, (center - width, center + width),
                        name=form.label)


class PeriodicFunction:
    """
    A 2-periodic function given on the fundamental domain [-1, 1).

    For inputs declared continuous the seam values f(-1) and f(1-) must agree
    to 1e-8 relative.
    """

    def __init__(self, func: Callable, continuous: bool = True,
                 jumps: Sequence[float] = (), name: str = "F"):
        self.func = func
        self.continuous = continuous
        self.jumps = tuple(sorted({self.reduce(j) for j in jumps}))
        self.name = name
        if continuous:
            left = evaluate_on(func, np.array([-1.0 + 1e-12]))[0]
            right = evaluate_on(func, np.array([1.0 - 1e-12]))[0]
            scale = max(1.0, abs(left), abs(right))
            if abs(left - right) > 1e-8 * scale:
                raise InvalidInput(
                    f"'{name}' declared continuous but jumps across the seam "
                    f"({left:.6g} vs {right:.6g})"
                )

    @staticmethod
    def reduce(x):
        """Representative of x modulo 2 in [-1, 1)."""
        reduced = np.mod(np.asarray(x, dtype=float) + 1.0, 2.0) - 1.0
        return float(reduced) if np.ndim(reduced) == 0 else reduced

    def __call__(self, x):
        return evaluate_on(self.func, np.asarray(self.reduce(x), dtype=float))


@dataclass
class CheckResult:
    """One measured quantity and its acceptance bound."""

    description: str
    measured: float
    bound: float
    kind: str = "max"

    def __post_init__(self):
        if self.kind not in ("max", "min"):
            raise InvalidInput(f"check kind must be 'max' or 'min', got {self.kind}")
        self.measured = float(self.measured)
        self.bound = float(self.bound)

    @property
    def margin(self) -> float:
        """Distance to the bound; negative when the check fails."""
        if self.kind == "max":
            return self.bound - self.measured
        return self.measured - self.bound

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.measured) and self.margin >= 0)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "description": self.description,
            "measured": _finite_or_none(self.measured),
            "bound": _finite_or_none(self.bound),
            "margin": _finite_or_none(self.margin),
            "passed": self.passed,
        }


def _finite_or_none(value: float) -> Optional[float]:
    return float(value) if np.isfinite(value) else None


@dataclass
class Report:
    """Outcome of one verification campaign."""

    campaign_id: str
    anchor: str
    checks: List[CheckResult] = field(default_factory=list)
    seed: int = 0
    overrides: Dict[str, Any] = field(default_factory=dict)
    wall_time: Optional[float] = None

    @property
    def passed(self) -> bool:
        """Overall pass: every check passes."""
        return all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if not check.passed]

    def to_dict(self, include_timing: bool = False) -> Dict[str, Any]:
        data = {
            "campaign_id": self.campaign_id,
            "anchor": self.anchor,
            "checks": [check.to_dict() for check in self.checks],
            "passed": self.passed,
            "seed": self.seed,
            "overrides": {k: self.overrides[k] for k in sorted(self.overrides)},
        }
        if include_timing and self.wall_time is not None:
            data["wall_time_s"] = round(self.wall_time, 3)
        return data
