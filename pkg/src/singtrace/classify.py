"""The three equivalent traceability tests and their aggregation.

A compact-type decay profile admits a singular trace that is finite and
nonzero exactly when its asymptotics sit at the critical rate.  Three
equivalent detectors:

* indices: the growth indices straddle 1, delta_lower <= 1 <= delta_upper;
* liminf: liminf of x mu(x) / S(x) equals 0;
* ratio: 1 is a limit point of S(lam x) / S(x) for some (any) lam > 1.

The limit statements are detected numerically on dyadic tail windows of
the logarithmic coordinate s = log x: window j covers
[T 2^(-j-1), T 2^(-j)].  Recurrence (a hit below theta in every window)
and monotone geometric decay of the window minima both count as
positive evidence; stable minima bounded away from the target refute;
everything else is honestly undecided.  Oscillating staircase profiles
produce the recurrence pattern, convergent families the decay pattern.

Verdicts are three-valued (True / False / None) because horizon limited
data cannot settle a liminf.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import NotApplicable, UndecidedBranch
from .functions import EigenvalueFunction, GFunction, g_transform
from .ideals import IdealConfig, IdealDecision, in_kernel, in_principal_ideal
from .indices import EstimatorConfig, MatuszewskaReport, as_g, is_regular, matuszewska
from .integral import TraceClassVerdict, is_trace_class, log_S_grid

CRIT_INDICES = "indices"
CRIT_LIMINF = "liminf"
CRIT_RATIO = "ratio_limit_point"


@dataclass(frozen=True)
class ClassifyConfig:
    theta: float = 0.01  # near-target threshold for a window hit
    ratio_lambda: float = 2.0
    horizon_log: float = 4000.0  # tail horizon in s = log x
    n_windows: int = 4
    window_points: int = 800
    index_band: float = 0.02  # estimated-mode indecision band around 1
    regular_tol: float = 0.05
    index_config: EstimatorConfig | None = None

    def __post_init__(self):
        if self.theta <= 0 or self.horizon_log <= 0:
            raise ValueError("theta and horizon_log must be positive")
        if self.ratio_lambda <= 1:
            raise ValueError("ratio_lambda must exceed 1")
        if self.n_windows < 2 or self.window_points < 8:
            raise ValueError("need at least 2 windows and 8 points per window")


@dataclass
class TraceabilityVerdict:
    traceable: bool | None
    criterion: str
    evidence: dict = field(default_factory=dict)
    horizon_limited: bool = False
    note: str = ""


def _as_mu(fn) -> EigenvalueFunction:
    if isinstance(fn, EigenvalueFunction):
        return fn
    if isinstance(fn, GFunction):
        return fn.mu_view()
    raise TypeError(f"expected a profile or its g view, got {type(fn)!r}")


# ---------------------------------------------------------------------------
# dyadic window machinery


def _windows(T: float, n: int):
    """[(lo, hi)] nearest the horizon first: [T/2, T], [T/4, T/2], ..."""
    return [(T * 2.0 ** (-(j + 1)), T * 2.0 ** (-j)) for j in range(n)]


def _window_grid(g: GFunction, lo: float, hi: float, points: int) -> np.ndarray:
    from .functions import step_knots_t

    ss = np.linspace(lo, hi, points)
    knots = step_knots_t(g.family)
    if knots is not None:
        # the near-target dips of a step profile start right at its jumps
        extra = []
        for raw in knots:
            tau = raw + g.a
            if lo <= tau <= hi:
                extra.extend((tau, min(tau + 1e-9, hi), min(tau + 1.0, hi)))
        if extra:
            ss = np.unique(np.concatenate([ss, np.array(extra)]))
    return ss


def _limit_point_verdict(minima, theta):
    """Shared decision rule on dyadic-window minima (nearest horizon first)."""
    m = np.asarray(minima, dtype=float)
    if np.all(m < theta):
        return True, "hit below theta in every window"
    decaying = bool(np.all(m[:-1] <= 0.8 * m[1:] + 1e-300))
    if m[0] < theta and decaying:
        return True, "window minima decay geometrically to a hit"
    stable = m[0] >= 0.5 * float(np.max(m))
    if float(np.min(m)) >= 3.0 * theta and stable:
        return False, "bounded away from the target with stable minima"
    return None, "window minima neither recur nor separate cleanly"


def _effective_horizon(g: GFunction, cfg: ClassifyConfig, slack: float = 0.0):
    T = cfg.horizon_log
    limited = False
    if g.horizon_t is not None:
        T = min(T, g.horizon_t - slack)
        limited = True
    return T, limited


# ---------------------------------------------------------------------------
# criterion 1: indices straddle 1


def traceable_by_indices(fn, cfg: ClassifyConfig | None = None,
                         report: MatuszewskaReport | None = None) -> TraceabilityVerdict:
    cfg = cfg or ClassifyConfig()
    g = as_g(fn)
    if g.finite_rank:
        return TraceabilityVerdict(False, CRIT_INDICES,
                                   note="finite rank: singular traces vanish")
    rep = report if report is not None else matuszewska(fn, cfg.index_config)
    dl, du = rep.delta_lower, rep.delta_upper
    ev = {"delta_lower": dl, "delta_upper": du, "mode": rep.mode}
    if rep.mode == "exact":
        return TraceabilityVerdict(dl <= 1.0 <= du, CRIT_INDICES, evidence=ev)
    band = cfg.index_band
    if dl <= 1.0 - band and du >= 1.0 + band:
        verdict = True
    elif dl >= 1.0 + band or du <= 1.0 - band:
        verdict = False
    else:
        verdict = None
    return TraceabilityVerdict(verdict, CRIT_INDICES, evidence=ev,
                               horizon_limited=rep.horizon_limited)


# ---------------------------------------------------------------------------
# criterion 2: liminf of x mu(x) / S(x)


def traceable_by_liminf(fn, cfg: ClassifyConfig | None = None,
                        horizon: float | None = None) -> TraceabilityVerdict:
    cfg = cfg or ClassifyConfig()
    mu = _as_mu(fn)
    g = g_transform(mu)
    if g.finite_rank:
        return TraceabilityVerdict(False, CRIT_LIMINF,
                                   note="finite rank: singular traces vanish")
    try:
        is_trace_class(mu).is_trace_class
    except UndecidedBranch as exc:
        return TraceabilityVerdict(None, CRIT_LIMINF, horizon_limited=True,
                                   note=str(exc))
    T, limited = _effective_horizon(g, cfg)
    if horizon is not None:
        T = min(T, math.log(horizon))
    if T < 4.0:
        return TraceabilityVerdict(None, CRIT_LIMINF, horizon_limited=True,
                                   note="horizon too short for dyadic windows")
    minima = []
    for lo, hi in _windows(T, cfg.n_windows):
        ss = _window_grid(g, lo, hi, cfg.window_points)
        with np.errstate(over="ignore", invalid="ignore"):
            # group the large terms first: g and log S cancel to O(s) for
            # rapidly decaying profiles and would swallow s otherwise
            q = np.exp(ss - (g.eval(ss) + log_S_grid(mu, ss)))
        q = np.where(np.isnan(q), np.inf, q)
        minima.append(float(np.min(q)))
    verdict, why = _limit_point_verdict(minima, cfg.theta)
    return TraceabilityVerdict(
        verdict, CRIT_LIMINF,
        evidence={"window_minima": tuple(minima), "horizon_log": T, "theta": cfg.theta},
        horizon_limited=limited, note=why,
    )


# ---------------------------------------------------------------------------
# criterion 3: 1 as a limit point of S(lam x)/S(x)


def traceable_by_ratio(fn, lam: float | None = None,
                       cfg: ClassifyConfig | None = None,
                       horizon: float | None = None) -> TraceabilityVerdict:
    cfg = cfg or ClassifyConfig()
    lam = cfg.ratio_lambda if lam is None else lam
    if lam <= 1:
        raise ValueError("lam must exceed 1")
    mu = _as_mu(fn)
    g = g_transform(mu)
    if g.finite_rank:
        return TraceabilityVerdict(False, CRIT_RATIO,
                                   note="finite rank: singular traces vanish")
    try:
        is_trace_class(mu).is_trace_class
    except UndecidedBranch as exc:
        return TraceabilityVerdict(None, CRIT_RATIO, horizon_limited=True,
                                   note=str(exc))
    T, limited = _effective_horizon(g, cfg, slack=math.log(lam))
    if horizon is not None:
        T = min(T, math.log(horizon))
    if T < 4.0:
        return TraceabilityVerdict(None, CRIT_RATIO, horizon_limited=True,
                                   note="horizon too short for dyadic windows")
    minima = []
    for lo, hi in _windows(T, cfg.n_windows):
        ss = _window_grid(g, lo, hi, cfg.window_points)
        with np.errstate(over="ignore", invalid="ignore"):
            ratio = np.exp(log_S_grid(mu, ss + math.log(lam)) - log_S_grid(mu, ss))
        dist = np.abs(ratio - 1.0)
        dist = np.where(np.isnan(dist), np.inf, dist)
        minima.append(float(np.min(dist)))
    verdict, why = _limit_point_verdict(minima, cfg.theta)
    return TraceabilityVerdict(
        verdict, CRIT_RATIO,
        evidence={"window_minima": tuple(minima), "lambda": lam,
                  "horizon_log": T, "theta": cfg.theta},
        horizon_limited=limited, note=why,
    )


# ---------------------------------------------------------------------------
# aggregation


@dataclass
class ClassificationReport:
    trace_class: TraceClassVerdict
    indices_report: MatuszewskaReport
    regular: bool | None
    delta: float | None
    by_indices: TraceabilityVerdict
    by_liminf: TraceabilityVerdict
    by_ratio: TraceabilityVerdict
    agreement: bool
    finite_rank: bool
    horizon_limited: bool
    config: ClassifyConfig

    @property
    def verdicts(self):
        return (self.by_indices, self.by_liminf, self.by_ratio)

    @property
    def traceable(self) -> bool | None:
        """Consensus of the decided criteria; None when nothing decided."""
        decided = {v.traceable for v in self.verdicts if v.traceable is not None}
        if not decided:
            return None
        if len(decided) > 1:
            return None
        return decided.pop()


def classify(fn, cfg: ClassifyConfig | None = None) -> ClassificationReport:
    """Run the trace class split, the index report and all three criteria."""
    cfg = cfg or ClassifyConfig()
    mu = _as_mu(fn)
    g = g_transform(mu)
    tc = is_trace_class(mu)
    rep = matuszewska(fn, cfg.index_config)
    regular, delta = is_regular(fn, tol=cfg.regular_tol, cfg=cfg.index_config)
    v_idx = traceable_by_indices(fn, cfg, report=rep)
    v_lim = traceable_by_liminf(fn, cfg)
    v_rat = traceable_by_ratio(fn, None, cfg)
    decided = {v.traceable for v in (v_idx, v_lim, v_rat) if v.traceable is not None}
    return ClassificationReport(
        trace_class=tc,
        indices_report=rep,
        regular=regular,
        delta=delta,
        by_indices=v_idx,
        by_liminf=v_lim,
        by_ratio=v_rat,
        agreement=len(decided) <= 1,
        finite_rank=g.finite_rank,
        horizon_limited=any(v.horizon_limited for v in (v_idx, v_lim, v_rat)),
        config=cfg,
    )


# ---------------------------------------------------------------------------
# the zero/infinite dichotomy


OUTCOME_INFINITE = "infinite"
OUTCOME_ZERO = "zero"


@dataclass
class DichotomyResult:
    outcome: str  # infinite | zero
    a_trace_class: bool
    ideal_decision: IdealDecision
    kernel_decision: IdealDecision
    note: str = ""


def dichotomy(A, B, cfg: ClassifyConfig | None = None,
              ideal_cfg: IdealConfig | None = None) -> DichotomyResult:
    """Every singular trace on the ideal of B is infinite or zero on A.

    Preconditions: A is not singularly traceable and B is regular with
    index 1.  Then a non trace class A falls outside the ideal of B
    (infinite), while a trace class A falls into its kernel (zero); the
    membership decisions are cross checked against the order-theoretic
    module.
    """
    cfg = cfg or ClassifyConfig()
    mu_a = _as_mu(A)
    report_a = classify(mu_a, cfg)
    if report_a.traceable is not False:
        raise NotApplicable("A must be decisively not singularly traceable")
    regular, delta = is_regular(B, tol=cfg.regular_tol)
    if not regular or delta is None or abs(delta - 1.0) > cfg.regular_tol:
        raise NotApplicable("B must be regular with index 1")
    if not report_a.trace_class.decided:
        raise NotApplicable("trace class status of A undecided")

    ga, gb = as_g(A), as_g(B)
    ideal_dec = in_principal_ideal(ga, gb, ideal_cfg)
    kernel_dec = in_kernel(ga, gb, ideal_cfg)
    if report_a.trace_class.is_trace_class:
        outcome, want = OUTCOME_ZERO, kernel_dec.verdict == "member"
        note = "A is trace class, so A lies in the kernel of the ideal of B"
    else:
        outcome, want = OUTCOME_INFINITE, ideal_dec.verdict == "non_member"
        note = "A is not trace class, so A falls outside the ideal of B"
    if not want:
        raise NotApplicable(
            f"membership cross-check disagrees with the {outcome} verdict"
        )
    return DichotomyResult(outcome, report_a.trace_class.is_trace_class,
                           ideal_dec, kernel_dec, note)
