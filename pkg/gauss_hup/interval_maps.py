"""
Point dynamics of the Gauss-type maps.

sigma_gamma(x) = {gamma/x}_1 on (0, 1) and tau_beta(x) = {-beta/x}_2 on
(-1, 1], their orbits, the 2-periodic attractor outside the core interval and
the wandering sets of points whose orbits linger in the core.
"""

import logging
import math
import warnings
from typing import List

import numpy as np

from .core_numerics import InvalidInput, NumericsError
from .models import MapFamily, MapParams, WanderingQuery

logger = logging.getLogger(__name__)

# Truncation of the kappa1 weight near its poles at +-1.
KAPPA_TRUNCATION = 1.0 - 1e-6

MIN_RESOLUTION = 1000


class OrbitHitsZero(NumericsError):
    """Raised when an orbit lands exactly on 0, where the maps are undefined."""
    pass


def frac1(x):
    """Fractional part in [0, 1)."""
    x = np.asarray(x, dtype=float)
    y = x - np.floor(x)
    # floor rounding can leave y == 1 for tiny negative x
    y = np.where(y >= 1.0, 0.0, y)
    return float(y) if y.ndim == 0 else y


def frac2(x):
    """Even-fractional part: the y in (-1, 1] with x - y in 2Z."""
    x = np.asarray(x, dtype=float)
    y = x - 2.0 * np.ceil((x - 1.0) / 2.0)
    y = np.where(y <= -1.0, y + 2.0, y)
    return float(y) if y.ndim == 0 else y


def _check_domain(p: MapParams, x: float) -> None:
    if x == 0:
        raise InvalidInput("the Gauss-type maps are undefined at x = 0")
    if p.family is MapFamily.SIGMA and not 0 < x < 1:
        raise InvalidInput(f"sigma map needs x in (0, 1), got {x}")
    if p.family is MapFamily.TAU and not -1 < x <= 1:
        raise InvalidInput(f"tau map needs x in (-1, 1], got {x}")


def apply_map(p: MapParams, x: float) -> float:
    """
    Apply sigma_gamma or tau_beta to a single point.

    Raises:
        InvalidInput: At x = 0 or outside the map's domain
    """
    x = float(x)
    _check_domain(p, x)
    if p.family is MapFamily.SIGMA:
        return frac1(p.param / x)
    return frac2(-p.param / x)


def step(p: MapParams, xs) -> np.ndarray:
    """Vectorised map; NaN where x == 0."""
    xs = np.asarray(xs, dtype=float)
    safe = np.where(xs == 0, 1.0, xs)
    if p.family is MapFamily.SIGMA:
        out = frac1(p.param / safe)
    else:
        out = frac2(-p.param / safe)
    return np.where(xs == 0, np.nan, out)


def orbit(p: MapParams, x: float, n: int) -> List[float]:
    """
    [x, T(x), ..., T^n(x)].

    Raises:
        OrbitHitsZero: If an iterate before the last equals 0
    """
    if n < 0:
        raise InvalidInput("orbit length must be nonnegative")
    _check_domain(p, float(x))
    points = [float(x)]
    for k in range(n):
        current = points[-1]
        if current == 0:
            raise OrbitHitsZero(f"orbit of {x} hits 0 after {k} steps")
        points.append(apply_map(p, current))
    return points


def in_core(p: MapParams, xs):
    """Membership in the closed core interval."""
    lo, hi = p.core
    xs = np.asarray(xs, dtype=float)
    if p.family is MapFamily.SIGMA:
        return (xs > lo) & (xs <= hi)
    return (xs >= lo) & (xs <= hi)


def in_wandering_prefix(q: WanderingQuery, x: float) -> bool:
    """
    True when x and its next N-1 iterates all lie in the closed core.

    An orbit that hits 0 is a measure-zero exception: it is reported with a
    warning and counted as outside.
    """
    p = q.params
    if not bool(in_core(p, x)):
        return False
    try:
        points = orbit(p, x, q.depth - 1)
    except OrbitHitsZero as e:
        logger.warning("%s; treated as outside the wandering set", e)
        warnings.warn(str(e), RuntimeWarning, stacklevel=2)
        return False
    return all(bool(in_core(p, y)) for y in points)


def wandering_indicator(q: WanderingQuery, xs) -> np.ndarray:
    """Vectorised membership test; points whose orbit hits 0 count as outside."""
    p = q.params
    xs = np.asarray(xs, dtype=float)
    current = xs.copy()
    member = in_core(p, current)
    for _ in range(q.depth - 1):
        current = step(p, np.where(member, current, 0.5 * p.param))
        member = member & np.isfinite(current) & in_core(p, current)
    return member


def _weight(weight: str):
    if weight == "lambda1":
        return lambda t: 1.0 / (1.0 + t)
    if weight == "kappa1":
        return lambda t: 1.0 / (1.0 - t * t)
    raise InvalidInput(f"unknown weight '{weight}'; use lambda1 or kappa1")


def wandering_measure(q: WanderingQuery, weight: str = "lambda1",
                      resolution: int = 100000) -> float:
    """
    Midpoint-rule weighted measure of the depth-N wandering set.

    The sigma family integrates 1/(1+t) over F_{gamma,N}; the tau family
    integrates 1/(1-t^2) over E_{beta,N}, cut to |t| <= 1 - 1e-6 when
    beta = 1.

    Args:
        q: Map and depth
        weight: ``lambda1`` or ``kappa1``
        resolution: Number of midpoints across the core

    Raises:
        InvalidInput: If resolution is below 1000
    """
    if resolution < MIN_RESOLUTION:
        raise InvalidInput(f"resolution must be at least {MIN_RESOLUTION}, got {resolution}")
    w = _weight(weight)
    lo, hi = q.params.core
    if weight == "kappa1":
        lo, hi = max(lo, -KAPPA_TRUNCATION), min(hi, KAPPA_TRUNCATION)
    h = (hi - lo) / resolution
    mids = lo + h * (np.arange(resolution) + 0.5)
    member = wandering_indicator(q, mids)
    value = float(h * np.sum(w(mids[member])))
    logger.debug("wandering measure %s N=%d: %.8f", q.params, q.depth, value)
    return value


def wandering_bound(q: WanderingQuery) -> float:
    """
    Geometric bound on the wandering measure for parameters below 1.

    (2g/(1+g))^N log 2 for the sigma family, 4 b^N/(1-b) for the tau family.
    """
    p = q.params
    if p.param >= 1:
        raise InvalidInput("the geometric wandering bound needs a parameter strictly below 1")
    if p.family is MapFamily.SIGMA:
        return (2 * p.param / (1 + p.param)) ** q.depth * math.log(2)
    return 4 * p.param ** q.depth / (1 - p.param)


def attractor_points(p: MapParams, count: int = 200) -> np.ndarray:
    """Evenly spread points of the attractor, the domain minus the closed core."""
    lo, hi = p.core
    if p.family is MapFamily.SIGMA:
        return np.linspace(hi, 1.0, count + 2)[1:-1]
    right = np.linspace(hi, 1.0, count // 2 + 2)[1:-1]
    return np.concatenate((-right[::-1], right))


def involution_residual(p: MapParams, xs=None) -> float:
    """max |T(T(x)) - x| over attractor points; the map is an involution there."""
    if p.param >= 1:
        return 0.0
    xs = attractor_points(p) if xs is None else np.asarray(xs, dtype=float)
    twice = step(p, step(p, xs))
    return float(np.max(np.abs(twice - xs)))
