"""
Verification campaigns.

A campaign binds one identity or bound of the Gauss-type map theory to the
numerical checks that measure it. Each campaign is registered under the
reference anchor of the statement it checks, so the registry can be diffed
against ``ANCHORS``. Campaigns run against a seeded random generator and
return a Report whose checks carry measured values, bounds and margins.
"""

import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import special

from .config import NumericsConfig
from .core_numerics import (
    InvalidInput,
    NumericsError,
    PvConfig,
    bessel_j1_ratio,
    bisect,
    integrate_osc_halfline,
    integrate_pv,
    lattice_sum,
    sici,
)
from .hilbert import (
    c_beta,
    commutator_Jstar_hilbert,
    double_modified_residual,
    hardy_pairing,
    harmonic_extension,
    hilbert,
    hilbert_periodic,
    involution_J_line,
    involution_Jstar,
    line_l1_norm,
    line_pairing,
    modified_commutator_residual,
    periodization_commutator_gap,
    periodization_fourier_gap,
    periodization_l1_gap,
    szego_minus,
    szego_pairing,
    szego_plus,
    valeur_au_point,
    windowed_hilbert_limit,
)
from .interval_maps import involution_residual, wandering_bound, wandering_measure
from .kg_fourier import (
    HyperbolaMeasure,
    LatticeCross,
    critical_f0,
    critical_measure,
    cross_ft_closed_form,
    f0_line,
    f0_measure,
    ft_exp_inv_t_check,
    hyperbola_ft,
    lattice_residual_scan,
    periodized_vanishing_residual,
    regularized_ft_exp_check,
    scaling_covariance_gap,
    spiral_samples,
)
from .models import (
    CheckResult,
    ClosedForm,
    DecayClass,
    GridFunction,
    LineFunction,
    MapParams,
    PeriodicFunction,
    Report,
    WanderingQuery,
    constant,
    cosh_bump,
    custom,
    indicator,
    kappa,
    lambda1,
    line_bump,
    line_indicator,
    monomial,
    poisson_kernel,
)
from .transfer_ops import (
    OperatorConfig,
    OperatorKind,
    OpKind,
    apply,
    attractor_periodicity_residual,
    decay_profile,
    duality_gap,
    endpoint_identity_gap,
    evaluate_iterate_at,
    extend_from_unit_interval,
    fixed_point_residual_S2,
    interlace_residual,
    interlace_residual_sigma,
    iterate_path,
    koopman_duality_measure,
    koopman_indicator_mismatch,
    l1_norm,
    shape_checks,
    sup_norm,
)

logger = logging.getLogger(__name__)

# Every statement with numerical content gets exactly one campaign, registered
# under its anchor.
ANCHORS: Tuple[str, ...] = (
    # maps and operators
    "sec-3.3",
    "eq-Uop.Wop",
    "eq-Cop.Kop",
    "eq-Sop1.002-W",
    "eq-duality.Uop.Wop.Cop.Kop",
    "eq-EsetN",
    "lem-5.8.1",
    "prop-contract1",
    "prop-kappa1",
    "prop-Wop.iter",
    "prop-Uop.iter",
    "prop-3.8.2",
    "lem-symmetry1",
    "prop-increaspres1",
    "prop-convexitypres1",
    "prop-convexitypres2",
    "prop-exactappl1",
    "prop-exactappl2",
    "prop-weak.convergence1",
    "prop-5.8.2",
    # the critical density and hyperbola transforms
    "eq-fusb1",
    "eq-fusb3",
    "eq-fusb5",
    "eq-fusb7.4",
    "eq-f0.101",
    "thm-2.1",
    "eq-1.3",
    "eq-bpi1",
    "eq-9.1.12.11",
    "cor-onebranch",
    "prop-3.5",
    # Hilbert transforms
    "eq-Hilbert02",
    "eq-tildeHilbert01",
    "lem-Jbetacomm1.1",
    "eq-Jop1.1",
    "prop-7.1.2",
    "eq-projform1",
    "eq-pv1001",
    "eq-Hilbert04",
    "eq-Peropdef1.1",
    "eq-Pi2id1.1",
    "prop-7.2.2",
)


class UnknownCampaign(NumericsError, KeyError):
    """Raised when a campaign id is not registered."""

    def __str__(self) -> str:
        return str(self.args[0]) if self.args else "unknown campaign"


@dataclass
class CampaignContext:
    """What a campaign sees while it runs: parameters, seeded randomness and settings."""

    seed: int
    params: Dict[str, Any]
    settings: NumericsConfig
    rng: np.random.Generator = field(init=False)

    def __post_init__(self):
        self.rng = np.random.default_rng(self.seed)

    def __getitem__(self, key: str) -> Any:
        return self.params[key]

    def operator_config(self, grid=None) -> OperatorConfig:
        """Operator settings, with the campaign's j_max when it declares one."""
        cfg = OperatorConfig.from_settings(self.settings, grid)
        if "j_max" in self.params:
            cfg = OperatorConfig(int(self.params["j_max"]), cfg.tail_tol, grid,
                                 cfg.grid_panels, cfg.grid_order)
        return cfg

    def pv_config(self) -> PvConfig:
        return PvConfig.from_settings(self.settings)


@dataclass
class Campaign:
    """A named, runnable group of checks; the id is the anchor it checks."""

    id: str
    description: str
    run: Callable[[CampaignContext], List[CheckResult]]
    defaults: Dict[str, Any] = field(default_factory=dict)

    @property
    def anchor(self) -> str:
        return self.id


_REGISTRY: Dict[str, Campaign] = {}


def register(anchor: str, **defaults) -> Callable:
    """Decorator registering a campaign function under ``anchor``."""
    if anchor not in ANCHORS:
        raise InvalidInput(f"'{anchor}' is not a listed anchor")

    def decorator(func: Callable[[CampaignContext], List[CheckResult]]):
        if anchor in _REGISTRY:
            raise InvalidInput(f"campaign '{anchor}' is already registered")
        description = (func.__doc__ or "").strip().splitlines()[0] if func.__doc__ else ""
        _REGISTRY[anchor] = Campaign(anchor, description, func, defaults)
        return func

    return decorator


def get_campaign(campaign_id: str, registry: Optional[Mapping[str, Campaign]] = None) -> Campaign:
    registry = _REGISTRY if registry is None else registry
    try:
        return registry[campaign_id]
    except KeyError:
        valid = ", ".join(sorted(registry)) or "(none)"
        raise UnknownCampaign(f"unknown campaign '{campaign_id}'; valid ids: {valid}")


def list_campaigns(registry: Optional[Mapping[str, Campaign]] = None) -> List[Campaign]:
    registry = _REGISTRY if registry is None else registry
    return [registry[k] for k in sorted(registry)]


def registry_listing(registry: Optional[Mapping[str, Campaign]] = None) -> Dict[str, str]:
    """Campaign id -> description."""
    return {c.id: c.description for c in list_campaigns(registry)}


def anchor_coverage(registry: Optional[Mapping[str, Campaign]] = None,
                    anchors: Sequence[str] = ANCHORS) -> Tuple[List[str], List[str]]:
    """(anchors without a campaign, campaigns without a listed anchor)."""
    ids = {c.id for c in list_campaigns(registry)}
    return sorted(set(anchors) - ids), sorted(ids - set(anchors))


def _normalise(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_normalise(v) for v in value]
    if isinstance(value, np.generic):
        return value.item()
    return value


def run_campaign(campaign_id: str, overrides: Optional[Mapping[str, Any]] = None,
                 seed: int = 0, settings: Optional[NumericsConfig] = None,
                 registry: Optional[Mapping[str, Campaign]] = None) -> Report:
    """
    Execute one campaign.

    Overrides replace the campaign's declared defaults; keys it does not
    declare are ignored and left out of the report.

    Raises:
        UnknownCampaign: If the id is not registered
    """
    campaign = get_campaign(campaign_id, registry)
    overrides = dict(overrides or {})
    applied = {k: _normalise(v) for k, v in overrides.items() if k in campaign.defaults}
    ignored = sorted(set(overrides) - set(applied))
    if ignored:
        logger.debug("campaign %s ignores overrides %s", campaign_id, ", ".join(ignored))

    params = {k: _normalise(v) for k, v in campaign.defaults.items()}
    params.update(applied)
    ctx = CampaignContext(seed, params, settings or NumericsConfig())

    logger.info("Running campaign %s", campaign_id)
    start = time.perf_counter()
    checks = campaign.run(ctx)
    elapsed = time.perf_counter() - start

    report = Report(campaign_id, campaign.anchor, list(checks), seed, applied, elapsed)
    logger.info("Campaign %s: %d/%d checks passed (%.1fs)", campaign_id,
                len(report.checks) - len(report.failures), len(report.checks), elapsed)
    for failure in report.failures:
        logger.warning("  failed: %s (measured %.3e, bound %.3e)",
                       failure.description, failure.measured, failure.bound)
    return report


def run_all(seed: int = 0, registry: Optional[Mapping[str, Campaign]] = None,
            overrides: Optional[Mapping[str, Any]] = None,
            settings: Optional[NumericsConfig] = None) -> List[Report]:
    """Run every registered campaign in id order."""
    registry = _REGISTRY if registry is None else registry
    reports = [run_campaign(c.id, overrides, seed, settings, registry)
               for c in list_campaigns(registry)]
    passed = sum(r.passed for r in reports)
    logger.info("%d/%d campaigns passed", passed, len(reports))
    return reports


# -- random test functions ---------------------------------------------------

def random_smooth_form(rng: np.random.Generator, domain, name: str = "random",
                       cosines_only: bool = False) -> ClosedForm:
    """
    A sum of one to four scaled Gaussian bumps and cosines on ``domain``.

    Every term is analytic, so fixed-order quadratures converge quickly.
    """
    lo, hi = domain
    span = hi - lo
    terms = []
    for _ in range(int(rng.integers(1, 5))):
        if cosines_only or rng.random() < 0.5:
            freq = int(rng.integers(1, 4))
            amp, phase = rng.uniform(-1.0, 1.0), rng.uniform(0.0, 2.0 * np.pi)
            terms.append(("cos", freq, amp, phase))
        else:
            center = rng.uniform(lo, hi)
            width = rng.uniform(0.3, 0.8) * span
            height = rng.uniform(-1.0, 1.0)
            terms.append(("gauss", center, width, height))

    def func(x):
        x = np.asarray(x, dtype=float)
        total = np.zeros(x.shape)
        for kind, p1, p2, p3 in terms:
            if kind == "cos":
                total = total + p2 * np.cos(np.pi * p1 * x + p3)
            else:
                total = total + p3 * np.exp(-(((x - p1) / p2) ** 2))
        return total

    return custom(name, func)


def _grid_function(params: MapParams, form: ClosedForm, cfg: OperatorConfig) -> GridFunction:
    return GridFunction.from_closed_form(cfg.grid_for(params), form)


def _sign_pulse(width: float = 0.5) -> ClosedForm:
    """1 on [0, width], -1 on [-width, 0): zero mean."""
    pos, neg = indicator(0.0, width), indicator(-width, 0.0)
    return custom(f"sign-pulse({width:g})",
                  lambda x: pos(x) - np.where(np.asarray(x) == 0, 0.0, neg(x)),
                  (-width, 0.0, width))


def _families(ctx: CampaignContext):
    """(label, parameter, MapParams) over the campaign's gammas and betas."""
    for gamma in ctx.params.get("gammas", []):
        yield "gamma", gamma, MapParams.sigma(gamma)
    for beta in ctx.params.get("betas", []):
        yield "beta", beta, MapParams.tau(beta)


def _kappa1_on(xs) -> np.ndarray:
    xs = np.asarray(xs, dtype=float)
    return 1.0 / (1.0 - xs * xs)


# -- campaigns: maps and operators -------------------------------------------

@register("sec-3.3", betas=[0.3, 0.7])
def _maps(ctx: CampaignContext) -> List[CheckResult]:
    """tau_beta is an involution on its attractor."""
    return [
        CheckResult(f"tau_beta involutive on the attractor, beta={beta:g}",
                    involution_residual(MapParams.tau(beta)), 1e-12)
        for beta in ctx["betas"]
    ]


@register("eq-Uop.Wop", j_max=4096)
def _subtransfer(ctx: CampaignContext) -> List[CheckResult]:
    """One grid step of the subtransfer operators at parameter 1 keeps their densities."""
    cfg = ctx.operator_config()
    checks = []
    tau = MapParams.tau(1.0)
    image = apply(OperatorKind(OpKind.SUB_T, tau), _grid_function(tau, kappa(1.0), cfg), cfg)
    xs = np.linspace(-0.9, 0.9, 91)
    checks.append(CheckResult("T_1 kappa_1 = kappa_1 on I_0.9, grid route",
                              np.max(np.abs(image.evaluate(xs) - _kappa1_on(xs))), 1e-6))
    sigma = MapParams.sigma(1.0)
    image = apply(OperatorKind(OpKind.SUB_S, sigma), _grid_function(sigma, lambda1(), cfg), cfg)
    checks.append(CheckResult("S_1 keeps the mass log 2 of lambda_1",
                              abs(l1_norm(image) - math.log(2.0)), 1e-6))
    return checks


@register("eq-Cop.Kop", betas=[0.5, 0.9], gammas=[0.5, 0.9], depth_max=4, j_max=4096)
def _koopman(ctx: CampaignContext) -> List[CheckResult]:
    """Iterated compressed Koopman operators map 1 to the wandering indicator."""
    cfg = ctx.operator_config()
    return [
        CheckResult(f"Koopman^N 1 is the wandering indicator, {family}={p:g}, N={depth}",
                    koopman_indicator_mismatch(WanderingQuery(params, depth), cfg), 0)
        for family, p, params in _families(ctx)
        for depth in range(1, int(ctx["depth_max"]) + 1)
    ]


@register("eq-Sop1.002-W", betas=[0.3, 0.7, 1.0], gammas=[0.6], j_max=2048)
def _transfer(ctx: CampaignContext) -> List[CheckResult]:
    """Transfer operators are L1 isometries on positive f and 2-periodic on the attractor."""
    cfg = ctx.operator_config()
    checks = []
    for beta in ctx["betas"]:
        params = MapParams.tau(beta)
        f = _grid_function(params, indicator(-0.3, 0.2), cfg)
        image = apply(OperatorKind(OpKind.TRANSFER_TP, params), f, cfg)
        checks.append(CheckResult(f"TransferTp isometric on positive f, beta={beta:g}",
                                  abs(l1_norm(image) - l1_norm(f)), 1e-6))
    for gamma in ctx["gammas"]:
        params = MapParams.sigma(gamma)
        f = _grid_function(params, indicator(0.1, 0.7), cfg)
        image = apply(OperatorKind(OpKind.TRANSFER_SP, params), f, cfg)
        checks.append(CheckResult(f"TransferSp isometric on positive f, gamma={gamma:g}",
                                  abs(l1_norm(image) - l1_norm(f)), 1e-6))

    for family, make in (("beta", MapParams.tau), ("gamma", MapParams.sigma)):
        params = make(0.5)
        bump = GridFunction.from_closed_form(params.base_grid(32, 8), _attractor_bump())
        checks.append(CheckResult(f"transfer squared is the identity on the attractor, {family}=0.5",
                                  attractor_periodicity_residual(params, bump, cfg), 1e-6))
    return checks


@register("eq-duality.Uop.Wop.Cop.Kop", betas=[0.3, 0.7, 1.0], gammas=[0.3, 0.7, 1.0],
          pairs=20, j_max=2048)
def _duality(ctx: CampaignContext) -> List[CheckResult]:
    """Subtransfer operators are preadjoint to the compressed Koopman operators."""
    cfg = ctx.operator_config()
    checks = []
    for family, p, params in _families(ctx):
        worst = 0.0
        for k in range(int(ctx["pairs"])):
            f = _grid_function(params, random_smooth_form(ctx.rng, params.domain, f"f{k}"), cfg)
            g = _grid_function(params, random_smooth_form(ctx.rng, params.domain, f"g{k}",
                                                          cosines_only=True), cfg)
            worst = max(worst, duality_gap(params, f, g, cfg))
        checks.append(CheckResult(
            f"duality gap over {ctx['pairs']} random pairs, {family}={p:g}", worst, 1e-6))

    tau = MapParams.tau(0.7)
    f = _grid_function(tau, custom("1-x^2", lambda x: 1.0 - np.asarray(x) ** 2), cfg)
    g = _grid_function(tau, custom("cos(pi x)", lambda x: np.cos(np.pi * np.asarray(x))), cfg)
    checks.append(CheckResult("duality gap, beta=0.7, f=1-x^2, g=cos(pi x)",
                              duality_gap(tau, f, g, cfg), 1e-6))
    return checks


@register("eq-EsetN", betas=[0.5, 0.9], gammas=[0.5, 0.9], depth_max=8, j_max=4096)
def _wandering_sets(ctx: CampaignContext) -> List[CheckResult]:
    """Wandering-set measures by point membership and by Koopman duality agree."""
    cfg = ctx.operator_config()
    resolution = ctx.settings.wandering_resolution
    checks = []
    for family, p, params in _families(ctx):
        weight = "lambda1" if family == "gamma" else "kappa1"
        for depth in range(1, int(ctx["depth_max"]) + 1):
            q = WanderingQuery(params, depth)
            direct = wandering_measure(q, weight, resolution)
            checks.append(CheckResult(
                f"membership and duality routes agree, {family}={p:g}, N={depth}",
                abs(direct - koopman_duality_measure(q, cfg)), 1e-4,
            ))
    return checks


@register("lem-5.8.1", betas=[0.3, 0.5, 0.7, 0.9], gammas=[0.3, 0.5, 0.7, 0.9], depth_max=8)
def _wandering_bounds(ctx: CampaignContext) -> List[CheckResult]:
    """Wandering measures stay below their geometric bounds and shrink with N."""
    resolution = ctx.settings.wandering_resolution
    checks = []
    for family, p, params in _families(ctx):
        weight = "lambda1" if family == "gamma" else "kappa1"
        measures = []
        for depth in range(1, int(ctx["depth_max"]) + 1):
            q = WanderingQuery(params, depth)
            measure = wandering_measure(q, weight, resolution)
            measures.append(measure)
            checks.append(CheckResult(
                f"wandering measure below bound, {family}={p:g}, N={depth}",
                measure - wandering_bound(q), 1e-4,
            ))
        growth = max((b - a for a, b in zip(measures, measures[1:])), default=0.0)
        checks.append(CheckResult(f"wandering measure nonincreasing in N, {family}={p:g}",
                                  growth, 1e-6))
    return checks


@register("prop-contract1", betas=[0.3, 0.7, 1.0], j_max=2048)
def _contraction(ctx: CampaignContext) -> List[CheckResult]:
    """Norm contraction and positivity of T_beta and its transfer operator."""
    cfg = ctx.operator_config()
    checks = []
    for beta in ctx["betas"]:
        params = MapParams.tau(beta)
        f = _grid_function(params, indicator(-0.3, 0.2), cfg)
        before = l1_norm(f)
        for kind in (OpKind.SUB_T, OpKind.TRANSFER_TP):
            image = apply(OperatorKind(kind, params), f, cfg)
            checks.append(CheckResult(f"{kind.value} contracts L1, beta={beta:g}",
                                      l1_norm(image) - before, 1e-8))
            checks.append(CheckResult(f"{kind.value} keeps positivity, beta={beta:g}",
                                      np.min(image.values), -1e-12, "min"))

    params = MapParams.tau(1.0)
    f = _grid_function(params, indicator(-0.5, 0.5), cfg)
    image = apply(OperatorKind(OpKind.SUB_T, params), f, cfg)
    checks.append(CheckResult("T_1 isometric on positive f",
                              abs(l1_norm(image) - l1_norm(f)), 1e-6))
    return checks


@register("prop-kappa1", betas=[0.3, 0.7, 1.0], j_max=4096)
def _invariant_densities(ctx: CampaignContext) -> List[CheckResult]:
    """T_beta kappa_beta = kappa_1, S_1 lambda_1 = lambda_1 and the kappa_1 domination."""
    cfg = ctx.operator_config()
    xs = np.linspace(-0.9, 0.9, 181)
    target = _kappa1_on(xs)
    checks = []
    for beta in ctx["betas"]:
        op = OperatorKind(OpKind.SUB_T, MapParams.tau(beta))
        image = evaluate_iterate_at(op, 1, kappa(beta), xs, cfg)
        checks.append(CheckResult(f"T_beta kappa_beta = kappa_1 on I_0.9, beta={beta:g}",
                                  np.max(np.abs(image - target)), 1e-8))
        if beta < 1:
            dominated = evaluate_iterate_at(op, 1, kappa(1.0), xs, cfg)
            checks.append(CheckResult(f"T_beta kappa_1 <= beta kappa_1, beta={beta:g}",
                                      np.max(dominated - beta * target), 1e-10))
            checks.append(CheckResult(f"T_beta kappa_1 >= 0, beta={beta:g}",
                                      np.min(dominated), 0.0, "min"))

    ts = np.linspace(0.01, 0.99, 99)
    gauss = OperatorKind(OpKind.SUB_S, MapParams.sigma(1.0))
    image = evaluate_iterate_at(gauss, 1, lambda1(), ts, cfg)
    checks.append(CheckResult("S_1 lambda_1 = lambda_1",
                              np.max(np.abs(image - 1.0 / (1.0 + ts))), 1e-8))
    return checks


@register("prop-Wop.iter", gammas=[0.3, 0.5, 0.9], n_max=6, j_max=4096)
def _sigma_iterates(ctx: CampaignContext) -> List[CheckResult]:
    """S_gamma^n lambda_1 <= (2g/(1+g))^n lambda_1."""
    cfg = ctx.operator_config()
    checks = []
    for gamma in ctx["gammas"]:
        params = MapParams.sigma(gamma)
        start = _grid_function(params, lambda1(), cfg)
        ratio = 2 * gamma / (1 + gamma)
        worst = -math.inf
        for n, g in iterate_path(OperatorKind(OpKind.SUB_S, params), start, int(ctx["n_max"]), cfg):
            if n == 0:
                continue
            worst = max(worst, float(np.max(g.values - ratio ** n / (1 + g.grid.nodes))))
        checks.append(CheckResult(f"S^n lambda_1 below geometric envelope, gamma={gamma:g}",
                                  worst, 1e-6))
    return checks


@register("prop-Uop.iter", betas=[0.3, 0.5, 0.9], n_max=6, j_max=4096)
def _tau_iterates(ctx: CampaignContext) -> List[CheckResult]:
    """sup T_beta^n kappa_1 <= 2b^n/(1-b), and T_1 leaves kappa_1 in place."""
    cfg = ctx.operator_config()
    checks = []
    for beta in ctx["betas"]:
        if beta >= 1:
            continue
        params = MapParams.tau(beta)
        start = _grid_function(params, kappa(1.0), cfg)
        worst = -math.inf
        for n, g in iterate_path(OperatorKind(OpKind.SUB_T, params), start, int(ctx["n_max"]), cfg):
            if n == 0:
                continue
            worst = max(worst, sup_norm(g) - 2 * beta ** n / (1 - beta))
        checks.append(CheckResult(f"sup T^n kappa_1 <= 2 beta^n/(1 - beta), beta={beta:g}",
                                  worst, 1e-6))

    params = MapParams.tau(1.0)
    g = _grid_function(params, kappa(1.0), cfg)
    for _, g in iterate_path(OperatorKind(OpKind.SUB_T, params), g, 5, cfg):
        pass
    xs = np.linspace(-0.9, 0.9, 91)
    checks.append(CheckResult("T_1^5 kappa_1 = kappa_1 on I_0.9",
                              np.max(np.abs(g.evaluate(xs) - _kappa1_on(xs))), 1e-6))
    return checks


def _odd_forms() -> List[ClosedForm]:
    return [
        monomial(1),
        monomial(3),
        custom("sin(pi x/2)", lambda x: np.sin(0.5 * np.pi * np.asarray(x, dtype=float)),
               symmetry="odd-increasing"),
        custom("tanh(2x)", lambda x: np.tanh(2.0 * np.asarray(x, dtype=float)),
               symmetry="odd-increasing"),
        custom("x cos(x)", lambda x: np.asarray(x, dtype=float) * np.cos(np.asarray(x, dtype=float))),
    ]


@register("prop-3.8.2", betas=[0.25, 0.5, 1.0], j_max=4096)
def _endpoint_identity(ctx: CampaignContext) -> List[CheckResult]:
    """T_beta f(1) = beta f(beta) for five odd continuous f."""
    cfg = ctx.operator_config()
    return [
        CheckResult(f"T f(1) = beta f(beta), beta={beta:g}, f={form.label}",
                    endpoint_identity_gap(beta, form, cfg), 1e-8)
        for beta in ctx["betas"]
        for form in _odd_forms()
    ]


def _even_forms() -> List[ClosedForm]:
    return [kappa(1.0), monomial(2), cosh_bump(1.5)]


def _shape(ctx: CampaignContext, forms: List[ClosedForm],
           prefixes: Tuple[str, ...]) -> List[CheckResult]:
    """The shape checks of T_beta whose description starts with one of ``prefixes``."""
    cfg = ctx.operator_config()
    checks = []
    for beta in ctx["betas"]:
        params = MapParams.tau(beta)
        for form in forms:
            f = _grid_function(params, form, cfg)
            checks.extend(check for check in shape_checks(beta, f, cfg, int(ctx["samples"]))
                          if check.description.startswith(prefixes))
    return checks


@register("lem-symmetry1", betas=[0.3, 0.6, 0.8], samples=200, j_max=4096)
def _symmetry(ctx: CampaignContext) -> List[CheckResult]:
    """T_beta commutes with the antipodal map and keeps parity."""
    return _shape(ctx, _even_forms() + [monomial(1), monomial(3)],
                  ("antipodal symmetry", "odd output", "even output"))


@register("prop-increaspres1", betas=[0.3, 0.6, 0.8], samples=200, j_max=4096)
def _monotonicity(ctx: CampaignContext) -> List[CheckResult]:
    """T_beta keeps odd increasing functions increasing."""
    return _shape(ctx, [monomial(1), monomial(3)], ("increasing output",))


@register("prop-convexitypres1", betas=[0.3, 0.6, 0.8], samples=200, j_max=4096)
def _convexity(ctx: CampaignContext) -> List[CheckResult]:
    """T_beta keeps even convex positive functions convex and positive."""
    return _shape(ctx, _even_forms(), ("positive output", "convex output"))


@register("prop-convexitypres2", betas=[0.3, 0.6, 0.8], samples=200, j_max=4096)
def _sandwich(ctx: CampaignContext) -> List[CheckResult]:
    """T_beta f minus its leading branch lies between beta C0 f(0) and beta C1 f(beta/2)."""
    return _shape(ctx, _even_forms(), ("sandwich lower bound", "sandwich upper bound"))


@register("prop-exactappl1", betas=[0.4, 0.8], gammas=[0.4, 0.8], n_max=40, j_max=2048)
def _decay(ctx: CampaignContext) -> List[CheckResult]:
    """Iterates of the subtransfer operators shrink in L1 below parameter 1."""
    cfg = ctx.operator_config()
    n_max = int(ctx["n_max"])
    checks = []
    for family, p, params in _families(ctx):
        kind = OpKind.SUB_S if family == "gamma" else OpKind.SUB_T
        f = _grid_function(params, constant(1.0), cfg)
        norms = [v for _, v in decay_profile(OperatorKind(kind, params), f, n_max, cfg)]
        checks.append(CheckResult(f"||{kind.value}^{n_max} 1|| / ||1||, {family}={p:g}",
                                  norms[-1] / norms[0], 0.05))
        steps = np.diff(norms[2:])
        checks.append(CheckResult(f"norms strictly decreasing after n=2, {family}={p:g}",
                                  np.max(steps) if steps.size else -1.0, 0.0))
    return checks


@register("prop-exactappl2", n_max_critical=60, j_max=2048)
def _critical_decay(ctx: CampaignContext) -> List[CheckResult]:
    """A zero-mean input decays under T_1."""
    cfg = ctx.operator_config()
    n_crit = int(ctx["n_max_critical"])
    params = MapParams.tau(1.0)
    pulse = _grid_function(params, _sign_pulse(0.5), cfg)
    norms = [v for _, v in decay_profile(OperatorKind(OpKind.SUB_T, params), pulse, n_crit, cfg)]
    return [CheckResult(f"zero-mean input decays at beta=1, n={n_crit}",
                        norms[-1] / norms[0], 0.2)]


@register("prop-weak.convergence1", n_max_critical=60, j_max=2048)
def _local_mass(ctx: CampaignContext) -> List[CheckResult]:
    """The mass T_1^n puts on I_0.5 does not grow."""
    cfg = ctx.operator_config()
    params = MapParams.tau(1.0)
    block = _grid_function(params, indicator(-0.5, 0.5), cfg)
    norms = [v for _, v in decay_profile(OperatorKind(OpKind.SUB_T, params), block,
                                         int(ctx["n_max_critical"]), cfg, sub=(-0.5, 0.5))]
    return [CheckResult("mass on I_0.5 nonincreasing at beta=1",
                        max(b - a for a, b in zip(norms, norms[1:])), 1e-3)]


@register("prop-5.8.2", betas=[0.4, 0.8], gammas=[0.5], depth_max=3, j_max=2048)
def _interlacing(ctx: CampaignContext) -> List[CheckResult]:
    """Transfer and subtransfer iterates interlace through the wandering sets."""
    cfg = ctx.operator_config()
    depths = range(1, int(ctx["depth_max"]) + 1)
    inputs = [constant(1.0),
              custom("bump(0.1,0.5)", lambda x: np.exp(-((np.asarray(x) - 0.1) / 0.5) ** 2))]
    checks = []
    for beta in ctx["betas"]:
        params = MapParams.tau(beta)
        for form in inputs:
            f = _grid_function(params, form, cfg)
            for depth in depths:
                r1, r2 = interlace_residual(params, f, depth, cfg)
                label = f"beta={beta:g}, N={depth}, f={form.label}"
                checks.append(CheckResult(f"core restriction interlaces, {label}", r1, 1e-4))
                checks.append(CheckResult(f"transfer of masked input matches, {label}", r2, 1e-4))

    for gamma in ctx["gammas"]:
        f = _grid_function(MapParams.sigma(gamma), constant(1.0), cfg)
        for depth in depths:
            r1, r2 = interlace_residual_sigma(gamma, f, depth, cfg)
            label = f"gamma={gamma:g}, N={depth}"
            checks.append(CheckResult(f"core restriction interlaces, {label}", r1, 1e-4))
            checks.append(CheckResult(f"transfer of masked input matches, {label}", r2, 1e-4))
    return checks


def _attractor_bump() -> ClosedForm:
    """A smooth bump inside (0.5, 1]."""
    def func(x):
        u = (np.asarray(x, dtype=float) - 0.75) / 0.2
        inside = np.abs(u) < 1
        safe = np.where(inside, u, 0.0)
        return np.where(inside, np.exp(1.0 - 1.0 / (1.0 - safe * safe)), 0.0)

    return custom("attractor-bump", func, (0.55, 0.95))


# -- campaigns: the critical density -----------------------------------------

@register("eq-fusb1", m_max=8)
def _vanishing_system(ctx: CampaignContext) -> List[CheckResult]:
    """The f0 measure solves the lattice-cross vanishing system; a generic one does not."""
    pv = ctx.pv_config()
    m = int(ctx["m_max"])
    _, worst = lattice_residual_scan(f0_measure(), LatticeCross(2.0, 2.0, m, m), pv)
    checks = [CheckResult(f"f0 measure vanishes on the cross, |m|,|n| <= {m}", worst, 1e-4)]

    generic = HyperbolaMeasure(
        LineFunction(poisson_kernel(1.0), DecayClass.INVERSE_SQUARE, (0.0, math.inf),
                     name="poisson on R+", check_decay=False),
        name="poisson",
    )
    _, worst = lattice_residual_scan(generic, LatticeCross(2.0, 2.0, 2, 2), pv)
    checks.append(CheckResult("generic density is not annihilated", worst, 1e-2, "min"))
    return checks


@register("eq-fusb3")
def _periodized_vanishing(ctx: CampaignContext) -> List[CheckResult]:
    """f0 and its inversion periodize to zero; lambda_1 alone does not."""
    ts = np.linspace(0.05, 0.95, 19)
    r1, r2 = periodized_vanishing_residual(f0_line(), 1.0, ts)
    checks = [CheckResult("periodized f0 vanishes", r1, 1e-5),
              CheckResult("periodized inverted f0 vanishes", r2, 1e-5)]
    cut = LineFunction(lambda t: 1.0 / (1.0 + np.asarray(t)), DecayClass.COMPACT, (0.0, 1.0),
                       name="lambda1 on (0,1]")
    r1, _ = periodized_vanishing_residual(cut, 1.0, [0.5])
    checks.append(CheckResult("lambda_1 alone is not periodized to 0", r1, 0.3, "min"))
    return checks


@register("eq-fusb5", x_max=10.0, j_max=4096)
def _extension(ctx: CampaignContext) -> List[CheckResult]:
    """Extending lambda_1 past t = 1 gives -1/(t(1+t))."""
    cfg = ctx.operator_config()
    f = _grid_function(MapParams.sigma(1.0), lambda1(), cfg)
    g = extend_from_unit_interval(1.0, f, float(ctx["x_max"]), cfg)
    outer = g.grid.nodes[g.grid.nodes > 1]
    expected = -1.0 / (outer * (1.0 + outer))
    return [CheckResult(f"extension of lambda_1 is -1/(t(1+t)) on [1, {ctx['x_max']:g}]",
                        np.max(np.abs(g.evaluate(outer) - expected)), 1e-6)]


@register("eq-fusb7.4", j_max=4096)
def _fixed_point(ctx: CampaignContext) -> List[CheckResult]:
    """lambda_1 solves f = S_1^2 f and fails it for gamma < 1."""
    cfg = ctx.operator_config()
    f = _grid_function(MapParams.sigma(1.0), lambda1(), cfg)
    half = _grid_function(MapParams.sigma(0.5), lambda1(), cfg)
    return [
        CheckResult("f0 on (0,1) is fixed by S_1^2", fixed_point_residual_S2(1.0, f, cfg), 1e-6),
        CheckResult("lambda_1 is not fixed by S_0.5^2",
                    fixed_point_residual_S2(0.5, half, cfg), 0.1, "min"),
    ]


@register("eq-f0.101", x_max=10.0, j_max=4096)
def _f0(ctx: CampaignContext) -> List[CheckResult]:
    """The extension of lambda_1 reproduces f0 on the whole range."""
    cfg = ctx.operator_config()
    f = _grid_function(MapParams.sigma(1.0), lambda1(), cfg)
    g = extend_from_unit_interval(1.0, f, float(ctx["x_max"]), cfg)
    nodes = g.grid.nodes
    return [CheckResult(f"extension of lambda_1 equals f0 on (0, {ctx['x_max']:g}]",
                        np.max(np.abs(g.evaluate(nodes) - critical_f0(nodes))), 1e-6)]


@register("thm-2.1", alphas=[1.0, 4.0], m_max=4)
def _general_critical_density(ctx: CampaignContext) -> List[CheckResult]:
    """The general critical density and its vanishing on the alpha cross."""
    pv = ctx.pv_config()
    m = int(ctx["m_max"])
    checks = []
    for alpha in ctx["alphas"]:
        checks.append(CheckResult(f"density at t = 1/alpha is 1/6, alpha={alpha:g}",
                                  abs(critical_f0(1.0 / alpha, alpha) - 1.0 / 6.0), 1e-14))
        checks.append(CheckResult(f"density at t = 4/alpha is -1/24, alpha={alpha:g}",
                                  abs(critical_f0(4.0 / alpha, alpha) + 1.0 / 24.0), 1e-14))
        cross = LatticeCross(alpha, 4.0 / alpha, m, m)
        _, worst = lattice_residual_scan(critical_measure(alpha), cross, pv)
        checks.append(CheckResult(f"critical density vanishes on its cross, alpha={alpha:g}",
                                  worst, 1e-4))
    return checks


@register("eq-1.3")
def _transform(ctx: CampaignContext) -> List[CheckResult]:
    """The hyperbola transform at the origin is the total mass."""
    total = hyperbola_ft(f0_measure(), (0.0, 0.0), ctx.pv_config())
    return [CheckResult("transform at the origin is the zero total mass", abs(total), 1e-6)]


@register("eq-bpi1", masses=[np.pi, 4 * np.pi], points=[[0.7, 0.0], [0.0, 0.9], [1.3, -0.4]])
def _scaling_covariance(ctx: CampaignContext) -> List[CheckResult]:
    """u_M(xi) equals the rescaled 2pi-measure's transform at lambda xi."""
    pv = ctx.pv_config()
    checks = []
    for mass in ctx["masses"]:
        mu = f0_measure(mass)
        worst = max(scaling_covariance_gap(mu, tuple(p), pv) for p in ctx["points"])
        checks.append(CheckResult(f"scaling covariance, M={mass:.6g}", worst, 1e-5))
    return checks


@register("eq-9.1.12.11", samples=20)
def _one_branch_transform(ctx: CampaignContext) -> List[CheckResult]:
    """The f0 transform on the horizontal axis by two routes and its generalized integrals."""
    pv = ctx.pv_config()
    mu = f0_measure()
    xis = []
    while len(xis) < int(ctx["samples"]):
        xi = float(ctx.rng.uniform(0.1, 8.0))
        if abs(xi / 2 - round(xi / 2)) > 0.05:
            xis.append(xi)
    worst = max(abs(hyperbola_ft(mu, (xi, 0.0), pv) - cross_ft_closed_form(xi, 1.0, pv))
                for xi in xis)
    checks = [CheckResult(f"direct and closed-form transforms agree at {len(xis)} points",
                          worst, 1e-4)]

    value = cross_ft_closed_form(1.0, 1.0, pv)
    checks.append(CheckResult("closed form at xi1 = 1",
                              abs(value - (0.147336 + 0.562282j)), 1e-5))
    si, ci = sici(np.pi)
    tail = integrate_osc_halfline(1.0, pv)
    checks.append(CheckResult("oscillatory tail matches -ci(pi) - i si(pi)",
                              abs(tail - complex(-ci, -si)), 1e-6))
    total = lattice_sum(lambda t: 1.0 / (1.0 + t) ** 2, 0.25, 1.0, "inverse_square")
    checks.append(CheckResult("lattice sum matches zeta(2, 1.25)",
                              abs(total - special.zeta(2, 1.25)), 1e-8))
    return checks


@register("cor-onebranch", x_min=0.1, x_max=10.0, step=0.1)
def _spiral(ctx: CampaignContext) -> List[CheckResult]:
    """The sine/cosine-integral spiral stays away from the origin."""
    si, ci = sici(2.0)
    si_ref, ci_ref = special.sici(2.0)
    checks = [CheckResult("sine/cosine integrals in tail convention",
                          max(abs(si - (si_ref - 0.5 * math.pi)), abs(ci - ci_ref)), 1e-14)]
    _, minimum = spiral_samples(float(ctx["x_min"]), float(ctx["x_max"]), float(ctx["step"]))
    checks.append(CheckResult("spiral stays away from the origin", minimum, 1e-3, "min"))
    return checks


@register("prop-3.5", ys=[[0.0, 1.0], [0.0, 2.0], [1.0, 1.0]], xs=[2.0, 5.0, 20.0], eps=1e-2)
def _bessel_fourier(ctx: CampaignContext) -> List[CheckResult]:
    """Fourier transform of x^-1/2 J1(2 sqrt x) and the regularized transform of e^{i/t}."""
    pv = ctx.pv_config()
    checks = []
    ts = np.linspace(0.1, 30.0, 60)
    oracle = special.j1(2.0 * np.sqrt(ts)) / np.sqrt(ts)
    checks.append(CheckResult("J1 ratio matches the Bessel oracle",
                              np.max(np.abs(bessel_j1_ratio(ts) - oracle)), 1e-10))
    for re, im in ctx["ys"]:
        _, _, gap = ft_exp_inv_t_check(complex(re, im), pv)
        checks.append(CheckResult(f"J1-ratio transform at y={complex(re, im)}", gap, 1e-5))

    eps = float(ctx["eps"])
    zero = bisect(bessel_j1_ratio, 3.0, 4.5)
    first = (special.jn_zeros(1, 1)[0] / 2.0) ** 2
    checks.append(CheckResult("first zero of the J1 ratio", abs(zero - first), 1e-8))
    for x, _, _, gap in regularized_ft_exp_check(list(ctx["xs"]) + [zero], eps, pv):
        checks.append(CheckResult(f"regularized transform at x={x:.4g}, eps={eps:g}",
                                  gap, 1e-5))
    return checks


# -- campaigns: Hilbert transforms -------------------------------------------

def _odd_decaying() -> LineFunction:
    return LineFunction(lambda t: np.asarray(t) / (1 + np.asarray(t) ** 2),
                        DecayClass.INVERSE_LINEAR, name="t/(1+t^2)")


@register("eq-Hilbert02")
def _line_hilbert(ctx: CampaignContext) -> List[CheckResult]:
    """Principal values and the line transform against closed forms."""
    pv = ctx.pv_config()
    value = integrate_pv(lambda t: 1.0 / (0.5 - t), 0.5, (-1.0, 1.0), pv)
    checks = [CheckResult("pv int_-1^1 dt/(0.5 - t) = log 3", abs(value - math.log(3.0)), 1e-6)]
    p = poisson_kernel(1.0)
    xs = np.linspace(-4.5, 4.5, 10)
    worst = max(abs(hilbert(p, x, pv) - x / (np.pi * (1.0 + x * x))) for x in xs)
    checks.append(CheckResult("H of the Poisson kernel", worst, 1e-6))
    box = line_indicator(-1.0, 1.0)
    checks.append(CheckResult("H of the unit box at 2",
                              abs(hilbert(box, 2.0, pv) - math.log(3.0) / np.pi), 1e-6))
    return checks


@register("eq-tildeHilbert01")
def _modified_hilbert(ctx: CampaignContext) -> List[CheckResult]:
    """The modified transform squares to -f + c(f) and its extension vanishes at i."""
    pv = ctx.pv_config()
    smooth = LineFunction(lambda t: (1 - np.asarray(t) ** 2) / (1 + np.asarray(t) ** 2) ** 2,
                          DecayClass.INVERSE_SQUARE, name="(1-t^2)/(1+t^2)^2")
    wave = LineFunction(lambda t: np.sin(t) / (1 + np.asarray(t) ** 2),
                        DecayClass.INVERSE_SQUARE, name="sin(t)/(1+t^2)")
    return [
        CheckResult("H~H~f = -f + c(f)",
                    double_modified_residual(smooth, [-2.0, -0.5, 0.3, 1.7], pv), 1e-4),
        CheckResult("modified extension vanishes at i",
                    abs(harmonic_extension(wave, 1j, pv)), 1e-6),
    ]


@register("lem-Jbetacomm1.1", betas=[0.5, 1.0])
def _modified_commutator(ctx: CampaignContext) -> List[CheckResult]:
    """J*_beta commutes with the modified transform up to the constant c_beta."""
    pv = ctx.pv_config()
    odd = _odd_decaying()
    checks = [
        CheckResult(f"modified commutator with J*_beta, beta={beta:g}",
                    modified_commutator_residual(beta, odd, [-1.5, 0.5, 2.0], pv), 1e-4)
        for beta in ctx["betas"]
    ]
    checks.append(CheckResult("c_1 vanishes", abs(c_beta(1.0, odd, pv)), 1e-12))
    return checks


@register("eq-Jop1.1", betas=[0.5, 1.0])
def _involutions(ctx: CampaignContext) -> List[CheckResult]:
    """J_beta is an L1 isometry and J*_beta is its adjoint."""
    p = poisson_kernel(1.0)
    phi = line_bump(1.5, 0.5)
    checks = []
    for beta in ctx["betas"]:
        jphi = involution_J_line(beta, phi)
        checks.append(CheckResult(f"J_beta preserves the L1 norm, beta={beta:g}",
                                  abs(line_l1_norm(jphi) - line_l1_norm(phi)), 1e-8))
        lhs = line_pairing(lambda t, b=beta: involution_Jstar(b, p, t), phi)
        checks.append(CheckResult(f"<J*_beta g, f> = <g, J_beta f>, beta={beta:g}",
                                  abs(lhs - line_pairing(p, jphi)), 1e-8))
    return checks


@register("prop-7.1.2")
def _jstar_commutator(ctx: CampaignContext) -> List[CheckResult]:
    """J*_1 commutes with H up to the mean of phi/t."""
    phi = line_bump(1.5, 0.5)
    return [CheckResult("J*_1 commutes with H up to the mean of phi/t",
                        commutator_Jstar_hilbert(1.0, phi, [0.5, -0.8, 3.0], ctx.pv_config()),
                        1e-4)]


@register("eq-projform1")
def _szego(ctx: CampaignContext) -> List[CheckResult]:
    """Szego projections of the Poisson kernel and their Fourier pairings."""
    pv = ctx.pv_config()
    p = poisson_kernel(1.0)
    xs = [-1.2, 0.4, 2.5]
    worst = max(abs(szego_plus(p, x, pv) - 1j / (2.0 * np.pi * (x + 1j))) for x in xs)
    checks = [CheckResult("plus projection of P_i is i/(2 pi (x + i))", worst, 1e-6)]
    worst = max(abs(szego_plus(p, x, pv) + szego_minus(p, x, pv) - float(p(x))) for x in xs)
    checks.append(CheckResult("Szego projections sum to the identity", worst, 1e-12))
    checks.append(CheckResult("Hardy pairing of P_i vanishes for y > 0",
                              abs(hardy_pairing(p, 1.0, pv)), 2e-4))
    checks.append(CheckResult("minus projection of P_i pairs to e^-y",
                              abs(szego_pairing(p, 1.0, -1, pv) - math.exp(-1.0)), 1e-4))
    return checks


@register("eq-pv1001")
def _pointwise_value(ctx: CampaignContext) -> List[CheckResult]:
    """The pointwise value of f + Hg does not depend on the cutoff."""
    pv = ctx.pv_config()
    pulse = LineFunction(_sign_pulse(1.0).func, DecayClass.COMPACT, (-1.0, 1.0),
                         (-1.0, 0.0, 1.0), name="sign pulse")
    pointwise, route_a, route_b = valeur_au_point(line_bump(2.0, 1.0), pulse, 2.0, pv)
    return [
        CheckResult("pointwise value, first cutoff", abs(route_a - pointwise), 1e-4),
        CheckResult("pointwise value, second cutoff", abs(route_b - pointwise), 1e-4),
    ]


def _cos_pi() -> PeriodicFunction:
    return PeriodicFunction(lambda t: np.cos(np.pi * np.asarray(t)), name="cos(pi t)")


@register("eq-Hilbert04")
def _periodic_hilbert(ctx: CampaignContext) -> List[CheckResult]:
    """The conjugate function on the circle."""
    pv = ctx.pv_config()
    one = PeriodicFunction(lambda t: np.ones_like(np.asarray(t, dtype=float)), name="1")
    wave = _cos_pi()
    xs = [-0.7, -0.2, 0.1, 0.45, 0.9]
    checks = [
        CheckResult("H_2 annihilates constants",
                    max(abs(hilbert_periodic(one, x, pv)) for x in xs), 1e-8),
        CheckResult("H_2 cos(pi t) = sin(pi x)",
                    max(abs(hilbert_periodic(wave, x, pv) - math.sin(math.pi * x)) for x in xs),
                    1e-6),
    ]
    limit, _ = windowed_hilbert_limit(wave, 0.3, cfg=pv)
    checks.append(CheckResult("windowed line transform tends to H_2",
                              abs(limit - hilbert_periodic(wave, 0.3, pv)), 1e-4))
    return checks


@register("eq-Peropdef1.1")
def _periodization(ctx: CampaignContext) -> List[CheckResult]:
    """Pi_2 keeps the L1 norm of positive functions."""
    return [CheckResult("Pi_2 preserves the L1 norm of positive f",
                        abs(periodization_l1_gap(line_indicator(0.3, 2.7))), 1e-8)]


@register("eq-Pi2id1.1", frequencies=[0, 1, 3])
def _periodized_coefficients(ctx: CampaignContext) -> List[CheckResult]:
    """Pi_2 keeps the Fourier coefficients at integer frequencies."""
    box = line_indicator(0.3, 2.7)
    return [
        CheckResult(f"Pi_2 preserves Fourier coefficient n={n}",
                    periodization_fourier_gap(box, int(n)), 1e-6)
        for n in ctx["frequencies"]
    ]


@register("prop-7.2.2")
def _intertwining(ctx: CampaignContext) -> List[CheckResult]:
    """Pi_2 intertwines H and H_2 on zero-mean compactly supported g."""
    left, right = line_bump(0.5, 0.4), line_bump(-0.5, 0.4)
    dipole = LineFunction(lambda t: left(t) - right(t), DecayClass.COMPACT, (-0.9, 0.9),
                          name="dipole")
    return [CheckResult("Pi_2 intertwines H and H_2",
                        periodization_commutator_gap(_cos_pi(), dipole, ctx.pv_config()), 1e-4)]
