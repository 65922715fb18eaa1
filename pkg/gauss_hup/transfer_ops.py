"""
Subtransfer, transfer and compressed Koopman operators of the Gauss-type maps.

The operators act on GridFunctions. Their infinite branch sums are summed
directly up to ``j_max`` and closed with a tail obtained from a cubic fit of
f near 0 paired with Hurwitz zeta moments of the branch weights. The fit is
done per evaluation point, in the branch index, which keeps it valid for
inputs carrying wandering-set indicators.
"""

import logging
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterator, List, Optional, Tuple

import numpy as np
from scipy import special

from .config import NumericsConfig
from .core_numerics import (
    InterpolationDegraded,
    InvalidInput,
    TailNotControlled,
    gauss_legendre,
    integrate,
)
from .interval_maps import apply_map, in_core, step, wandering_indicator
from .models import (
    CheckResult,
    ClosedForm,
    Grid,
    GridFunction,
    MapFamily,
    MapParams,
    WanderingQuery,
    constant,
    custom,
    kappa,
    lambda1,
)

logger = logging.getLogger(__name__)

# pi^2/6 - 5/4 and pi^2/6 - 1
SANDWICH_C0 = np.pi ** 2 / 6 - 1.25
SANDWICH_C1 = np.pi ** 2 / 6 - 1.0

# Upper bound on (points x branches) per vectorised block.
_MAX_CELLS = 1 << 21
_FIT_SAMPLES = 48


class OpKind(str, Enum):
    SUB_T = "SubT"
    SUB_S = "SubS"
    TRANSFER_TP = "TransferTp"
    TRANSFER_SP = "TransferSp"
    KOOPMAN_L = "KoopmanL"
    KOOPMAN_G = "KoopmanG"


_TAU_KINDS = {OpKind.SUB_T, OpKind.TRANSFER_TP, OpKind.KOOPMAN_L}
_KOOPMAN_KINDS = {OpKind.KOOPMAN_L, OpKind.KOOPMAN_G}
_TRANSFER_KINDS = {OpKind.TRANSFER_TP, OpKind.TRANSFER_SP}


@dataclass(frozen=True)
class OperatorKind:
    """An operator family bound to its map parameter."""

    kind: OpKind
    params: MapParams

    def __post_init__(self):
        object.__setattr__(self, "kind", OpKind(self.kind))
        expected = MapFamily.TAU if self.kind in _TAU_KINDS else MapFamily.SIGMA
        if self.params.family is not expected:
            raise InvalidInput(
                f"{self.kind.value} acts with the {expected.value} family, "
                f"got {self.params.family.value}"
            )

    @classmethod
    def parse(cls, name: str, param: float) -> "OperatorKind":
        """Build from a kind name such as ``SubT`` and its parameter."""
        try:
            kind = OpKind(name)
        except ValueError:
            valid = ", ".join(k.value for k in OpKind)
            raise InvalidInput(f"unknown operator kind '{name}'; valid kinds: {valid}")
        family = MapFamily.TAU if kind in _TAU_KINDS else MapFamily.SIGMA
        return cls(kind, MapParams(family, param))

    @property
    def is_koopman(self) -> bool:
        return self.kind in _KOOPMAN_KINDS

    @property
    def includes_zero_branch(self) -> bool:
        return self.kind in _TRANSFER_KINDS


@dataclass(frozen=True)
class OperatorConfig:
    """Series truncation, tail tolerance and output grid for operator application."""

    j_max: int = 10000
    tail_tol: float = 1e-8
    output_grid: Optional[Grid] = None
    grid_panels: int = 32
    grid_order: int = 8

    def __post_init__(self):
        if self.j_max < 8:
            raise InvalidInput(f"j_max must be at least 8, got {self.j_max}")
        if self.tail_tol <= 0:
            raise InvalidInput("tail_tol must be positive")

    @classmethod
    def from_settings(cls, settings: NumericsConfig, grid: Optional[Grid] = None) -> "OperatorConfig":
        return cls(
            j_max=settings.j_max,
            tail_tol=settings.tail_tol,
            output_grid=grid,
            grid_panels=settings.grid_panels,
            grid_order=settings.grid_order,
        )

    def grid_for(self, params: MapParams) -> Grid:
        """The configured output grid, or the map's default grid."""
        if self.output_grid is None:
            return params.base_grid(self.grid_panels, self.grid_order)
        if self.output_grid.interval != params.domain:
            raise InvalidInput(
                f"output grid {self.output_grid.interval} does not match the "
                f"domain {params.domain}"
            )
        return self.output_grid


def _sides(params: MapParams):
    """(scale, orient, sign) per side: a_k = scale*k + orient*x, s_k = sign*param/a_k."""
    if params.family is MapFamily.TAU:
        return ((2.0, 1.0, -1.0), (2.0, -1.0, 1.0))
    return ((1.0, 1.0, 1.0),)


def _call(g: Callable, points: np.ndarray) -> np.ndarray:
    return np.asarray(g(points.ravel())).reshape(points.shape)


def _fit_tail(values, a, a_ref, moments, degree):
    """Least-squares polynomial in u = a_ref/a; returns (tail, rms residual)."""
    u = a_ref[:, None] / a
    design = u[..., None] ** np.arange(degree + 1)
    normal = np.einsum("nkm,nkl->nml", design, design)
    rhs = np.einsum("nkm,nk->nm", design, values)
    coeffs = np.linalg.solve(normal, rhs[..., None])[..., 0]
    fitted = np.einsum("nkm,nm->nk", design, coeffs)
    rms = np.sqrt(np.mean(np.abs(values - fitted) ** 2, axis=1))
    tail = np.sum(coeffs * moments[:, : degree + 1], axis=1)
    return tail, rms


def _branch_block(g, params, xs, j_max, include_zero):
    ks = np.arange(1, j_max + 1, dtype=float)
    first = max(j_max // 4, 1) - 1
    fit = np.unique(np.linspace(first, j_max - 1, min(_FIT_SAMPLES, j_max - first)).astype(int))
    param = params.param
    total = np.zeros(xs.shape, dtype=complex)
    error = np.zeros(xs.shape)

    for scale, orient, sign in _sides(params):
        a = scale * ks[None, :] + orient * xs[:, None]
        s = sign * param / a
        vals = _call(g, s)
        total = total + np.sum(param / (a * a) * vals, axis=1)

        # sum_{k>J} w_k (s_k/s_ref)^m = param a_ref^m scale^-(m+2) zeta(m+2, q)
        a_ref = a[:, fit[0]]
        q = j_max + 1 + orient * xs / scale
        moments = np.stack(
            [param * a_ref ** m * scale ** -(m + 2) * special.zeta(m + 2, q) for m in range(4)],
            axis=1,
        )
        a_fit = a[:, fit]
        v_fit = vals[:, fit]
        cubic, rms = _fit_tail(v_fit, a_fit, a_ref, moments, 3)
        quadratic, _ = _fit_tail(v_fit, a_fit, a_ref, moments, 2)
        total = total + cubic
        error = error + np.abs(cubic - quadratic) + np.abs(moments[:, 0]) * rms

    if include_zero:
        safe = np.where(xs == 0, 1.0, xs)
        if params.family is MapFamily.TAU:
            s0 = -param / safe
            active = (xs != 0) & (np.abs(s0) <= 1.0)
        else:
            s0 = param / safe
            active = (xs > 0) & (s0 < 1.0)
        s0 = np.where(active, s0, 0.5 * param)
        total = total + np.where(active, param / (safe * safe) * _call(g, s0), 0.0)

    return total, error


def _branch_sum(g: Callable, params: MapParams, xs, j_max: int, include_zero: bool,
                tail_tol: float) -> Tuple[np.ndarray, float]:
    """
    Sum over all inverse branches of the map, weights param/a^2.

    Raises:
        TailNotControlled: If the tail estimate exceeds tail_tol or a value
            is not finite
    """
    xs = np.asarray(xs, dtype=float)
    flat = xs.ravel()
    rows = max(1, _MAX_CELLS // j_max)
    values, errors = [], []
    for start in range(0, flat.size, rows):
        v, e = _branch_block(g, params, flat[start:start + rows], j_max, include_zero)
        values.append(v)
        errors.append(e)
    total = np.concatenate(values) if values else np.zeros(0, dtype=complex)
    err = np.concatenate(errors) if errors else np.zeros(0)
    worst = float(np.max(err, initial=0.0))
    if not np.all(np.isfinite(total)) or not np.isfinite(worst):
        raise TailNotControlled(
            "branch sum is not finite; the input needs a closed form near its poles"
        )
    if worst > tail_tol:
        raise TailNotControlled(
            f"series tail estimate {worst:.3e} exceeds tail_tol {tail_tol:.3e} "
            f"at j_max={j_max}"
        )
    if not np.iscomplexobj(total) or np.all(total.imag == 0):
        total = total.real
    return total.reshape(xs.shape), worst


def _domain_mask(params: MapParams, xs):
    a, b = params.domain
    return (xs > a) & (xs <= b)


def _koopman_form(params: MapParams, inner: ClosedForm) -> ClosedForm:
    def outer(x, base):
        image = step(params, x)
        keep = in_core(params, x) & np.isfinite(image)
        return np.where(keep, base(np.where(keep, image, 0.5 * params.param)), 0.0)

    name = "L" if params.family is MapFamily.TAU else "G"
    return inner.composed(outer, name, params.core)


def _propagated_jumps(params: MapParams, f: GridFunction) -> List[float]:
    """Images under the map of the input's breakpoints: the output's jumps."""
    points = set(f.grid.breakpoints)
    if f.closed_form is not None:
        points.update(f.closed_form.breakpoints)
    images = []
    lo, hi = params.domain
    for b in points:
        if b == 0 or not lo < b <= hi:
            continue
        try:
            image = apply_map(params, b)
        except InvalidInput:
            continue
        if lo + 1e-12 < image < hi - 1e-12 and image != 0:
            images.append(image)
    return images


def _check_input(op: OperatorKind, f: GridFunction) -> None:
    if f.grid.interval != op.params.domain:
        raise InvalidInput(
            f"{op.kind.value} acts on functions over {op.params.domain}, "
            f"got {f.grid.interval}"
        )


def apply(op: OperatorKind, f: GridFunction, cfg: OperatorConfig) -> GridFunction:
    """
    Apply an operator once, sampling the result on the output grid.

    Koopman kinds compose exactly when f has a closed form. The other kinds
    sum over inverse branches; the output grid gains the images of the input's
    jumps as breakpoints.

    Raises:
        TailNotControlled: If the series tail cannot be certified
    """
    _check_input(op, f)
    params = op.params
    grid = cfg.grid_for(params)

    if op.is_koopman:
        if f.closed_form is not None:
            form = _koopman_form(params, f.closed_form)
            return GridFunction(grid, form(grid.nodes), form)
        image = step(params, grid.nodes)
        keep = in_core(params, grid.nodes) & np.isfinite(image)
        values = np.where(keep, f.evaluate(np.where(keep, image, 0.5 * params.param)), 0.0)
        return GridFunction(grid, values)

    grid = grid.refined(_propagated_jumps(params, f))
    values, err = _branch_sum(
        f.evaluate, params, grid.nodes, cfg.j_max, op.includes_zero_branch, cfg.tail_tol
    )
    logger.debug("%s(%g): tail estimate %.2e on %d nodes", op.kind.value, params.param, err, grid.size)
    return GridFunction(grid, values)


def iterate_path(op: OperatorKind, f: GridFunction, n_max: int,
                 cfg: OperatorConfig) -> Iterator[Tuple[int, GridFunction]]:
    """Yield (n, op^n f) for n = 0..n_max, resampling between steps."""
    current = f
    yield 0, current
    for n in range(1, n_max + 1):
        current = apply(op, current, cfg)
        if not op.is_koopman:
            estimate = current.interpolation_error()
            if estimate > 10 * cfg.tail_tol:
                message = (
                    f"{op.kind.value} iterate {n}: resampling error estimate "
                    f"{estimate:.2e} exceeds {10 * cfg.tail_tol:.1e}"
                )
                logger.warning(message)
                warnings.warn(message, InterpolationDegraded, stacklevel=3)
        yield n, current


def iterate(op: OperatorKind, n: int, f: GridFunction, cfg: OperatorConfig) -> GridFunction:
    """n-fold application with resampling onto the output grid between steps."""
    if n < 0:
        raise InvalidInput("iteration count must be nonnegative")
    result = f
    for _, result in iterate_path(op, f, n, cfg):
        pass
    return result


def evaluate_iterate_at(op: OperatorKind, n: int, f, xs, cfg: OperatorConfig,
                        j_max: Optional[int] = None,
                        tail_tol: Optional[float] = None) -> np.ndarray:
    """
    op^n f at arbitrary points by recursion over inverse branches.

    No resampling takes place: every leaf is an evaluation of f itself, so f
    should carry a closed form. Cost grows like (2 j_max)^n; keep j_max small
    for n > 1.
    """
    params = op.params
    base = f.evaluate if hasattr(f, "evaluate") else f
    j_max = j_max or cfg.j_max
    tail_tol = tail_tol or cfg.tail_tol

    def level(k, points):
        points = np.asarray(points, dtype=float)
        if k == 0:
            inside = _domain_mask(params, points)
            anchor = 0.5 * (params.domain[0] + params.domain[1])
            return np.where(inside, base(np.where(inside, points, anchor)), 0.0)
        if op.is_koopman:
            image = step(params, points)
            keep = in_core(params, points) & np.isfinite(image)
            return np.where(keep, level(k - 1, np.where(keep, image, 0.5 * params.param)), 0.0)
        values, _ = _branch_sum(
            lambda s: level(k - 1, s), params, points, j_max, op.includes_zero_branch, tail_tol
        )
        return values

    return level(n, xs)


def l1_norm(f: GridFunction, sub: Optional[Tuple[float, float]] = None,
            tol: float = 1e-9) -> float:
    """
    L1 norm over the grid interval or a subinterval.

    Over the whole interval the node weights are used. On a subinterval the
    closed form, or else the resampled function, is integrated adaptively.
    """
    if sub is None:
        return float(np.sum(f.grid.weights * np.abs(f.values)))
    lo, hi = sub
    if not f.grid.a <= lo < hi <= f.grid.b:
        raise InvalidInput(f"subinterval [{lo}, {hi}] is not inside {f.grid.interval}")
    cuts = set(f.grid.breakpoints)
    if f.closed_form is not None:
        cuts.update(f.closed_form.breakpoints)
    return float(integrate(lambda x: np.abs(f.evaluate(x)), (lo, hi), tol, sorted(cuts)))


def sup_norm(f: GridFunction) -> float:
    """Maximum modulus over the grid nodes."""
    return float(np.max(np.abs(f.values)))


def _sub_kind(params: MapParams) -> OperatorKind:
    kind = OpKind.SUB_T if params.family is MapFamily.TAU else OpKind.SUB_S
    return OperatorKind(kind, params)


def _koopman_kind(params: MapParams) -> OperatorKind:
    kind = OpKind.KOOPMAN_L if params.family is MapFamily.TAU else OpKind.KOOPMAN_G
    return OperatorKind(kind, params)


def _transfer_kind(params: MapParams) -> OperatorKind:
    kind = OpKind.TRANSFER_TP if params.family is MapFamily.TAU else OpKind.TRANSFER_SP
    return OperatorKind(kind, params)


def koopman_pairing(params: MapParams, f: GridFunction, g: GridFunction,
                    branches: int = 4096) -> complex:
    """
    <f, Koopman g> integrated branch by branch.

    On each fundamental interval of the map, g(T x) is smooth; the intervals
    accumulating at 0 past ``branches`` are summed in closed form with f
    frozen at 0+ (and 0-).
    """
    x16, w16 = gauss_legendre(16)
    k = np.arange(1, branches + 1, dtype=float)[:, None]
    p = params.param
    f0_plus = f.evaluate(np.array([1e-12]))[0]

    def branch_quadrature(lo, hi, image):
        half = 0.5 * (hi - lo)
        xs = 0.5 * (hi + lo) + half * x16[None, :]
        return np.sum(half * w16[None, :] * f.evaluate(xs) * g.evaluate(image(xs)))

    if params.family is MapFamily.SIGMA:
        total = branch_quadrature(p / (k + 1), p / k, lambda x: p / x - k)
        tail = integrate(
            lambda y: g.evaluate(y) * p * special.zeta(2, branches + 1 + y),
            (0.0, 1.0), 1e-12, g.grid.breakpoints,
        )
        return total + f0_plus * tail

    f0_minus = f.evaluate(np.array([-1e-12]))[0]
    right = branch_quadrature(p / (2 * k + 1), p / (2 * k - 1), lambda x: 2 * k - p / x)
    left = branch_quadrature(-p / (2 * k - 1), -p / (2 * k + 1), lambda x: p / -x - 2 * k)
    tail_right = integrate(
        lambda y: g.evaluate(y) * p * 0.25 * special.zeta(2, branches + 1 - y / 2),
        (-1.0, 1.0), 1e-12, g.grid.breakpoints,
    )
    tail_left = integrate(
        lambda y: g.evaluate(y) * p * 0.25 * special.zeta(2, branches + 1 + y / 2),
        (-1.0, 1.0), 1e-12, g.grid.breakpoints,
    )
    return right + left + f0_plus * tail_right + f0_minus * tail_left


def duality_gap(params: MapParams, f: GridFunction, g: GridFunction,
                cfg: OperatorConfig, branches: int = 4096) -> float:
    """
    |<Sub f, g> - <f, Koopman g>|.

    The left side is a node quadrature of the sampled subtransfer image, the
    right side a branch-wise quadrature of f times g composed with the map.
    """
    image = apply(_sub_kind(params), f, cfg)
    lhs = np.sum(image.grid.weights * image.values * g.evaluate(image.grid.nodes))
    rhs = koopman_pairing(params, f, g, branches)
    gap = float(abs(lhs - rhs))
    logger.debug("duality gap %s: %.3e", params, gap)
    return gap


def decay_profile(op: OperatorKind, f: GridFunction, n_max: int, cfg: OperatorConfig,
                  sub: Optional[Tuple[float, float]] = None) -> List[Tuple[int, float]]:
    """L1 norms of op^n f for n = 0..n_max, optionally on a subinterval."""
    return [(n, l1_norm(g, sub)) for n, g in iterate_path(op, f, n_max, cfg)]


def koopman_duality_measure(q: WanderingQuery, cfg: OperatorConfig) -> float:
    """
    Weighted wandering measure by duality: <S^N lambda1, 1> or <T^N kappa1, 1>.

    The tau route needs beta < 1, where T kappa1 is bounded.
    """
    params = q.params
    grid = cfg.grid_for(params)
    if params.family is MapFamily.SIGMA:
        start = GridFunction.from_closed_form(grid, lambda1())
    else:
        if params.param >= 1:
            raise InvalidInput("the kappa1 duality route needs beta < 1")
        start = GridFunction.from_closed_form(grid, kappa(1.0))
    image = iterate(_sub_kind(params), q.depth, start, cfg)
    return float(np.sum(image.grid.weights * image.values))


def _tree_config(cfg: OperatorConfig, j_max: int, tail_tol: float) -> OperatorConfig:
    return OperatorConfig(j_max=j_max, tail_tol=tail_tol, output_grid=cfg.output_grid,
                          grid_panels=cfg.grid_panels, grid_order=cfg.grid_order)


def interlace_residual(params, f: GridFunction, depth: int, cfg: OperatorConfig,
                       panels: int = 48, tree_j_max: int = 24) -> Tuple[float, float]:
    """
    The two interlacing distances between transfer and subtransfer iterates.

    r1 = || 1_core T'^(N-1) f - T'^(N-1)(1_W f) ||_1 and
    r2 = || T'^N (1_W f) - T^N f ||_1, W the depth-N wandering set. The
    sampled iterates of f and the branch recursion through the masked input
    are independent evaluation routes.

    Args:
        params: MapParams, or a float meaning tau_beta
        f: Input with a closed form
        depth: N >= 1
    """
    if not isinstance(params, MapParams):
        params = MapParams.tau(params)
    if f.closed_form is None:
        raise InvalidInput("interlace_residual needs an input with a closed form")
    query = WanderingQuery(params, depth)
    transfer = _transfer_kind(params)
    sub = _sub_kind(params)
    form = f.closed_form
    masked = form.masked(lambda x: wandering_indicator(query, x), "wandering")
    tree = _tree_config(cfg, tree_j_max, max(cfg.tail_tol, 1e-6))

    a, b = params.domain
    cuts = (-params.param, 0.0, params.param) if params.family is MapFamily.TAU else (params.param,)
    grid = Grid.composite(a, b, panels=panels, order=8, breakpoints=cuts)
    nodes, weights = grid.nodes, grid.weights
    sampled_cfg = OperatorConfig(cfg.j_max, cfg.tail_tol, grid)
    start = GridFunction.from_closed_form(grid, form)

    if depth == 1:
        r1 = 0.0
    else:
        grid_route = iterate(transfer, depth - 1, start, sampled_cfg).evaluate(nodes)
        left = np.where(in_core(params, nodes), grid_route, 0.0)
        right = evaluate_iterate_at(transfer, depth - 1, masked, nodes, tree)
        r1 = float(np.sum(weights * np.abs(left - right)))

    left = evaluate_iterate_at(transfer, depth, masked, nodes, tree)
    right = iterate(sub, depth, start, sampled_cfg).evaluate(nodes)
    r2 = float(np.sum(weights * np.abs(left - right)))
    logger.debug("interlacing %s N=%d: r1=%.2e r2=%.2e", params, depth, r1, r2)
    return r1, r2


def interlace_residual_sigma(gamma: float, f: GridFunction, depth: int,
                             cfg: OperatorConfig) -> Tuple[float, float]:
    """The sigma-family interlacing pair (S', S, F_{gamma,N})."""
    return interlace_residual(MapParams.sigma(gamma), f, depth, cfg)


def _reflect(form: ClosedForm) -> ClosedForm:
    return custom(f"reflect[{form.name}]", lambda x: form(-np.asarray(x, dtype=float)),
                  [-p for p in form.breakpoints], form.symmetry, form.bounded)


def shape_checks(beta: float, f: GridFunction, cfg: OperatorConfig,
                 samples: int = 200) -> List[CheckResult]:
    """
    Symmetry, monotonicity, convexity and sandwich checks for T_beta f.

    Which checks run depends on the symmetry tag of f's closed form. All
    values come from direct branch sums at sample points of [-0.99, 0.99].
    """
    if f.closed_form is None:
        raise InvalidInput("shape_checks needs an input with a closed form")
    form = f.closed_form
    op = OperatorKind(OpKind.SUB_T, MapParams.tau(beta))
    xs = np.linspace(-0.99, 0.99, samples)
    tf = evaluate_iterate_at(op, 1, form, xs, cfg).real
    tf_mirror = evaluate_iterate_at(op, 1, form, -xs, cfg).real
    reflected = evaluate_iterate_at(op, 1, _reflect(form), xs, cfg).real
    label = f"beta={beta:g}, f={form.label}"

    checks = [
        CheckResult(f"antipodal symmetry T(f(-x)) = (Tf)(-x), {label}",
                    np.max(np.abs(reflected - tf_mirror)), 1e-8),
    ]

    if form.symmetry == "odd-increasing":
        endpoint = evaluate_iterate_at(op, 1, form, np.array([1.0]), cfg).real[0]
        expected = beta * float(form(np.array([beta]))[0])
        checks += [
            CheckResult(f"odd output, {label}", np.max(np.abs(tf + tf_mirror)), 1e-8),
            CheckResult(f"increasing output, {label}", np.min(np.diff(tf)), -1e-10, "min"),
            CheckResult(f"endpoint T f(1) = beta f(beta), {label}",
                        abs(endpoint - expected), 1e-8),
        ]

    if form.symmetry.startswith("even"):
        checks += [
            CheckResult(f"even output, {label}", np.max(np.abs(tf - tf_mirror)), 1e-8),
            CheckResult(f"positive output, {label}", np.min(tf), 0.0, "min"),
        ]
        if form.symmetry == "even-convex-positive":
            second = tf[2:] - 2 * tf[1:-1] + tf[:-2]
            checks.append(
                CheckResult(f"convex output, {label}", np.min(second), -1e-8, "min")
            )
        argument = beta / (2 - np.abs(xs))
        leading = beta / (2 - np.abs(xs)) ** 2 * form(argument)
        middle = tf - leading
        lower = beta * SANDWICH_C0 * float(form(np.array([0.0]))[0])
        upper = beta * SANDWICH_C1 * float(form(np.array([beta / 2]))[0])
        checks += [
            CheckResult(f"sandwich lower bound, {label}", np.min(middle - lower), -1e-6, "min"),
            CheckResult(f"sandwich upper bound, {label}", np.max(middle - upper), 1e-6),
        ]
    return checks


def endpoint_identity_gap(beta: float, form: ClosedForm, cfg: OperatorConfig) -> float:
    """|T_beta f(1) - beta f(beta)| for odd f."""
    op = OperatorKind(OpKind.SUB_T, MapParams.tau(beta))
    value = evaluate_iterate_at(op, 1, form, np.array([1.0]), cfg)[0]
    return float(abs(value - beta * form(np.array([beta]))[0]))


def fixed_point_residual_S2(gamma: float, f: GridFunction, cfg: OperatorConfig) -> float:
    """|| f - S_gamma^2 f ||_1 on (0, 1)."""
    op = OperatorKind(OpKind.SUB_S, MapParams.sigma(gamma))
    image = iterate(op, 2, f, cfg)
    diff = f.evaluate(image.grid.nodes) - image.values
    return float(np.sum(image.grid.weights * np.abs(diff)))


def extend_from_unit_interval(gamma: float, f: GridFunction, x_max: float,
                              cfg: OperatorConfig, panels: int = 64) -> GridFunction:
    """
    Extend a density on (0, 1) to (0, x_max].

    g = f on (0, 1]; beyond 1, g(t) = -sum_j gamma^2 (gamma+jt)^-2 f(gamma t/(gamma+jt)),
    which equals -(gamma/t^2) (S_gamma f)(gamma/t).
    """
    if x_max <= 1:
        raise InvalidInput(f"extension range must exceed 1, got {x_max}")
    op = OperatorKind(OpKind.SUB_S, MapParams.sigma(gamma))
    grid = Grid.composite(0.0, x_max, panels=panels, order=8, breakpoints=(1.0,))
    nodes = grid.nodes
    values = np.zeros(nodes.shape, dtype=complex if f.is_complex else float)
    inner = nodes <= 1
    values[inner] = f.evaluate(nodes[inner])
    outer = nodes[~inner]
    if outer.size:
        image = evaluate_iterate_at(op, 1, f, gamma / outer, cfg)
        values[~inner] = -(gamma / outer ** 2) * image
    return GridFunction(grid, values)


def attractor_periodicity_residual(params: MapParams, f: GridFunction,
                                   cfg: OperatorConfig, j_max: int = 64) -> float:
    """|| T'^2 f - f ||_1 for f supported on the attractor, by branch recursion."""
    if f.closed_form is None:
        raise InvalidInput("attractor_periodicity_residual needs a closed form")
    grid = f.grid
    twice = evaluate_iterate_at(_transfer_kind(params), 2, f.closed_form, grid.nodes, cfg,
                                j_max=j_max, tail_tol=max(cfg.tail_tol, 1e-8))
    return float(np.sum(grid.weights * np.abs(twice - f.values)))


def koopman_indicator_mismatch(q: WanderingQuery, cfg: OperatorConfig) -> int:
    """Number of grid nodes where Koopman^N 1 differs from the wandering indicator."""
    grid = cfg.grid_for(q.params)
    one = GridFunction.from_closed_form(grid, constant(1.0))
    image = iterate(_koopman_kind(q.params), q.depth, one, cfg)
    expected = wandering_indicator(q, image.grid.nodes).astype(float)
    return int(np.count_nonzero(image.values != expected))
