"""Order-theoretic membership for principal ideals and their kernels.

Two-sided ideals correspond to subsets of G closed under minima,
domination, and horizontal/vertical shifts.  The principal set generated
by B is

    H(B) = { f : exists a, b with f(t) >= b + g_B(t - a) eventually },

and its kernel consists of the f whose gap over some shifted copy of
g_B exceeds every constant from some point on.  Since vertical shifts
are free, strict slope dominance settles membership conclusively; the
decisions below compare exact growth profiles when both sides carry
them and otherwise fall back to a tail-window search that is honest
about its horizon (Member needs a verified witness, NonMember needs a
slope refutation, anything else stays undecided).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .functions import EXP, GFunction, LINLOG, pointwise_min, shift
from .errors import NotRegular
from .indices import as_g, is_regular

MEMBER = "member"
NON_MEMBER = "non_member"
UNDECIDED = "undecided"


@dataclass(frozen=True)
class IdealConfig:
    a_max: float = 50.0
    a_count: int = 21
    tail_fraction: float = 0.5
    horizon_t: float | None = None  # None: adapt to the inputs
    grid_points: int = 1200
    slope_margin: float = 0.05
    kernel_thresholds: tuple = (1.0, 10.0, 100.0)

    def __post_init__(self):
        if self.a_max <= 0 or self.a_count < 1 or self.grid_points < 16:
            raise ValueError("bad search parameters")
        if not 0 < self.tail_fraction < 1:
            raise ValueError("tail_fraction must lie in (0, 1)")


@dataclass
class ShiftWitness:
    a: float
    b: float
    t0: float
    horizon: float
    n_points: int
    thresholds: tuple = ()  # (c, first t past which gap > c, verified?) triples


@dataclass
class SlopeCertificate:
    slope_a: float
    slope_b: float
    basis: str  # exact | fitted
    window: tuple = ()
    detail: str = ""


@dataclass
class IdealDecision:
    verdict: str
    mode: str  # exact | horizon
    witness: ShiftWitness | None = None
    refutation: SlopeCertificate | None = None
    note: str = ""
    dominating: GFunction | None = None

    @property
    def is_member(self):
        return self.verdict == MEMBER


# ---------------------------------------------------------------------------
# grids and slope fits


def _tail_grid(ga: GFunction, gb: GFunction, cfg: IdealConfig):
    from .functions import step_knots_t

    horizons = [h for h in (ga.horizon_t, gb.horizon_t) if h is not None]
    T = cfg.horizon_t if cfg.horizon_t is not None else (min(horizons) if horizons else 200.0)
    lo = cfg.tail_fraction * T
    ts = np.linspace(lo, T, cfg.grid_points)
    extra = []
    for g in (ga, gb):
        knots = step_knots_t(g.family)
        if knots is not None:
            for raw in knots:
                tau = raw + g.a
                if lo <= tau <= T:
                    extra.extend((tau, min(tau + 1.0, T)))
    if extra:
        ts = np.unique(np.concatenate([ts, np.array(extra)]))
    return ts, T


def _fit_slope(g: GFunction, ts: np.ndarray) -> float:
    ys = g.eval(ts)
    keep = np.isfinite(ys)
    return float(np.polyfit(ts[keep], ys[keep], 1)[0])


def _gap_trend_stable(gaps: np.ndarray) -> bool:
    n = len(gaps) // 2
    m1, m2 = float(np.min(gaps[:n])), float(np.min(gaps[n:]))
    return m2 >= m1 - max(0.1, 0.02 * (abs(m1) + 1.0))


def _threshold_ladder(gaps: np.ndarray, ts: np.ndarray, cs) -> tuple:
    """(c, t0, crossed) per threshold, t0 = first grid point past which gap > c."""
    out = []
    for c in cs:
        above = gaps > c
        if above[-1] and np.any(above):
            # last index where the gap was <= c
            below = np.nonzero(~above)[0]
            idx = (below[-1] + 1) if len(below) else 0
            out.append((c, float(ts[idx]), True))
        else:
            out.append((c, None, False))
    return tuple(out)


# ---------------------------------------------------------------------------
# principal ideal membership


def in_principal_ideal(ga, gb, cfg: IdealConfig | None = None) -> IdealDecision:
    """Is the profile behind ga in the principal ideal generated by gb?"""
    ga, gb = as_g(ga), as_g(gb)
    cfg = cfg or IdealConfig()

    if ga.finite_rank:
        return IdealDecision(
            MEMBER, "exact",
            witness=ShiftWitness(0.0, 0.0, t0=_rank_t(ga), horizon=math.inf, n_points=0),
            note="finite rank profiles lie in every ideal",
        )
    if gb.finite_rank:
        return IdealDecision(
            NON_MEMBER, "exact",
            note="finite rank base: its ideal is the finite rank ideal",
        )

    ts, T = _tail_grid(ga, gb, cfg)
    pa, pb = ga.profile, gb.profile
    if pa is not None and pb is not None:
        return _exact_ideal(ga, gb, pa, pb, ts, T)
    return _horizon_ideal(ga, gb, ts, T, cfg)


def _rank_t(g: GFunction) -> float:
    bps = getattr(g.family, "breakpoints", None)
    if bps is None:
        return 0.0
    raw = bps[-1]
    from .functions import StepMu, SampledMu

    if isinstance(g.family, (StepMu, SampledMu)):
        raw = math.log(raw) if raw > 0 else 0.0
    return raw + g.a


def _profile_order(pa, pb):
    """'gt', 'lt', 'eq_const' (same slope and log term), or 'exp_pair'."""
    if pa.kind == EXP and pb.kind == EXP:
        return "exp_pair"
    if pa.kind == EXP:
        return "gt"
    if pb.kind == EXP:
        return "lt"
    ka, kb = (pa.slope, pa.log_coeff), (pb.slope, pb.log_coeff)
    if ka > kb:
        return "gt"
    if ka < kb:
        return "lt"
    return "eq_const"


def _exact_ideal(ga, gb, pa, pb, ts, T) -> IdealDecision:
    order = _profile_order(pa, pb)
    if order == "lt":
        return IdealDecision(
            NON_MEMBER, "exact",
            refutation=SlopeCertificate(pa.slope if pa.kind == LINLOG else math.inf,
                                        pb.slope if pb.kind == LINLOG else math.inf,
                                        basis="exact",
                                        detail="no shift repairs a growth rate deficit"),
        )
    if order == "exp_pair":
        a = math.log(pb.rate / pa.rate)
        gaps = ga.eval(ts) - gb.eval(ts - a)
        b = min(0.0, float(np.min(gaps)))
        return IdealDecision(
            MEMBER, "exact",
            witness=ShiftWitness(a, b, t0=float(ts[0]), horizon=T, n_points=len(ts)),
            note="exponential profiles generate one ideal",
        )
    gaps = ga.eval(ts) - gb.eval(ts)
    min_gap = float(np.min(gaps))
    if order == "gt":
        b = 0.0 if min_gap >= 0.0 else min_gap - 1e-9
        return IdealDecision(
            MEMBER, "exact",
            witness=ShiftWitness(0.0, b, t0=float(ts[0]), horizon=T, n_points=len(ts)),
        )
    # same slope and log term: the gap converges to the constant difference
    limit = pa.const - pb.const
    b = min(min_gap, limit) - 0.5
    return IdealDecision(
        MEMBER, "exact",
        witness=ShiftWitness(0.0, b, t0=float(ts[0]), horizon=T, n_points=len(ts)),
        note="equal growth: bounded gap absorbed by the vertical shift",
    )


def _horizon_ideal(ga, gb, ts, T, cfg) -> IdealDecision:
    sa, sb = _fit_slope(ga, ts), _fit_slope(gb, ts)
    window = (float(ts[0]), float(ts[-1]))
    if sa < sb - cfg.slope_margin:
        return IdealDecision(
            NON_MEMBER, "horizon",
            refutation=SlopeCertificate(sa, sb, basis="fitted", window=window),
        )
    best = None
    for a in np.concatenate([[0.0], np.linspace(-cfg.a_max, cfg.a_max, cfg.a_count)]):
        gaps = ga.eval(ts) - gb.eval(ts - a)
        if not np.all(np.isfinite(gaps)):
            continue
        b = float(np.min(gaps))
        stable = _gap_trend_stable(gaps)
        if stable:
            best = (float(a), b if b < 0 else 0.0)
            break
    if best is not None:
        a, b = best
        return IdealDecision(
            MEMBER, "horizon",
            witness=ShiftWitness(a, b, t0=float(ts[0]), horizon=T, n_points=len(ts)),
            note="verified on the trusted horizon only",
        )
    return IdealDecision(
        UNDECIDED, "horizon",
        note=f"fitted slopes {sa:.4g} vs {sb:.4g}: gap drifts down without a slope margin",
    )


# ---------------------------------------------------------------------------
# kernel membership


def in_kernel(ga, gb, cfg: IdealConfig | None = None) -> IdealDecision:
    """Is the profile behind ga in the kernel of the ideal generated by gb?

    Membership requires the shifted gap to exceed every constant from
    some point on, so bounded gaps refute it even when the ideal
    membership holds.
    """
    ga, gb = as_g(ga), as_g(gb)
    cfg = cfg or IdealConfig()

    if ga.finite_rank:
        return IdealDecision(
            MEMBER, "exact",
            witness=ShiftWitness(0.0, 0.0, t0=_rank_t(ga), horizon=math.inf, n_points=0),
            note="finite rank profiles lie in every kernel",
        )
    if gb.finite_rank:
        return IdealDecision(NON_MEMBER, "exact", note="finite rank base")

    ts, T = _tail_grid(ga, gb, cfg)
    pa, pb = ga.profile, gb.profile
    if pa is not None and pb is not None:
        return _exact_kernel(ga, gb, pa, pb, ts, T, cfg)
    return _horizon_kernel(ga, gb, ts, T, cfg)


def _exact_kernel(ga, gb, pa, pb, ts, T, cfg) -> IdealDecision:
    order = _profile_order(pa, pb)
    if order == "lt":
        return IdealDecision(
            NON_MEMBER, "exact",
            refutation=SlopeCertificate(getattr(pa, "slope", math.inf),
                                        getattr(pb, "slope", math.inf),
                                        basis="exact"),
        )
    if order == "exp_pair":
        a = math.log(pb.rate / pa.rate) + 1.0  # shifted rate strictly below
        gaps = ga.eval(ts) - gb.eval(ts - a)
        ladder = _threshold_ladder(gaps, ts, cfg.kernel_thresholds)
        return IdealDecision(
            MEMBER, "exact",
            witness=ShiftWitness(a, 0.0, t0=float(ts[0]), horizon=T,
                                 n_points=len(ts), thresholds=ladder),
            note="a horizontal shift scales the rate below any multiple",
        )
    if order == "gt":
        gaps = ga.eval(ts) - gb.eval(ts)
        ladder = _threshold_ladder(gaps, ts, cfg.kernel_thresholds)
        return IdealDecision(
            MEMBER, "exact",
            witness=ShiftWitness(0.0, 0.0, t0=float(ts[0]), horizon=T,
                                 n_points=len(ts), thresholds=ladder),
        )
    # equal slope: only the log term can still force divergence
    if pa.log_coeff > pb.log_coeff:
        gaps = ga.eval(ts) - gb.eval(ts)
        ladder = _threshold_ladder(gaps, ts, cfg.kernel_thresholds)
        return IdealDecision(
            MEMBER, "exact",
            witness=ShiftWitness(0.0, 0.0, t0=float(ts[0]), horizon=T,
                                 n_points=len(ts), thresholds=ladder),
            note="divergent logarithmic gap",
        )
    return IdealDecision(
        NON_MEMBER, "exact",
        refutation=SlopeCertificate(pa.slope, pb.slope, basis="exact",
                                    detail="equal growth: the shifted gap stays bounded"),
    )


def _horizon_kernel(ga, gb, ts, T, cfg) -> IdealDecision:
    sa, sb = _fit_slope(ga, ts), _fit_slope(gb, ts)
    window = (float(ts[0]), float(ts[-1]))
    if sa < sb - cfg.slope_margin:
        return IdealDecision(
            NON_MEMBER, "horizon",
            refutation=SlopeCertificate(sa, sb, basis="fitted", window=window),
        )
    gaps = ga.eval(ts) - gb.eval(ts)
    ladder = _threshold_ladder(gaps, ts, cfg.kernel_thresholds)
    crossed = [t0 for _, t0, ok in ladder if ok]
    full = len(crossed) == len(cfg.kernel_thresholds)
    increasing = full and crossed[-1] > crossed[0]
    slope_dominant = sa > sb + cfg.slope_margin
    if (slope_dominant and ladder[0][2]) or (full and increasing):
        return IdealDecision(
            MEMBER, "horizon",
            witness=ShiftWitness(0.0, 0.0, t0=float(ts[0]), horizon=T,
                                 n_points=len(ts), thresholds=ladder),
            note="verified on the trusted horizon only",
        )
    if not slope_dominant and abs(sa - sb) <= cfg.slope_margin and not ladder[-1][2]:
        return IdealDecision(
            UNDECIDED, "horizon",
            note="matching slopes: cannot separate a bounded gap from slow divergence",
        )
    return IdealDecision(UNDECIDED, "horizon", note="threshold ladder incomplete")


# ---------------------------------------------------------------------------
# face axioms and regular domination


@dataclass
class FaceAxiomReport:
    n_checks: int
    violations: tuple

    @property
    def ok(self):
        return not self.violations


def face_axioms_check(family, cfg: IdealConfig | None = None) -> FaceAxiomReport:
    """Closure spot checks for the principal set of each member.

    For every base B in the family: membership is closed under pointwise
    minima, under domination (grid checked), and invariant under
    horizontal and vertical shifts of the candidate.
    """
    fams = [as_g(f) for f in family]
    if not fams:
        raise ValueError("need a nonempty family")
    cfg = cfg or IdealConfig()
    checks = 0
    violations = []
    probe = np.linspace(5.0, 60.0, 111)
    for bi, base in enumerate(fams):
        verdicts = [in_principal_ideal(f, base, cfg).verdict for f in fams]
        members = [i for i, v in enumerate(verdicts) if v == MEMBER]
        # minima of members stay members
        for i in members:
            for j in members:
                if j < i:
                    continue
                checks += 1
                m = pointwise_min(fams[i], fams[j])
                if in_principal_ideal(m, base, cfg).verdict != MEMBER:
                    violations.append(("min_closure", f"base {bi}: min of {i}, {j} left H(B)"))
        # domination: f member and g >= f on the probe grid forces g member
        for i in members:
            fi = fams[i].eval(probe)
            for j, other in enumerate(fams):
                checks += 1
                if np.all(other.eval(probe) >= fi) and verdicts[j] != MEMBER:
                    violations.append(("domination", f"base {bi}: {j} dominates member {i}"))
        # shift invariance of the decision, both directions
        for i, f in enumerate(fams):
            if verdicts[i] == UNDECIDED:
                continue
            for a, b in [(1.0, 0.0), (-1.0, 0.0), (0.0, 1.0), (0.0, -1.0)]:
                checks += 1
                moved = in_principal_ideal(shift(f, a, b), base, cfg).verdict
                if moved != verdicts[i]:
                    violations.append(
                        ("shift", f"base {bi}: candidate {i} changed verdict under shift {(a, b)}")
                    )
    return FaceAxiomReport(checks, tuple(violations))


def regular_domination(ga, B, cfg: IdealConfig | None = None) -> IdealDecision:
    """Membership in the ideal of a regular B via a regular dominated witness.

    When A belongs, some shifted copy T of g_B (itself regular, since the
    indices are shift invariant) satisfies g_A >= g_T on the tail; the
    decision must agree with in_principal_ideal.
    """
    regular, _ = is_regular(B)
    if not regular:
        raise NotRegular("the base profile is not regular")
    ga = as_g(ga)
    gb = as_g(B)
    dec = in_principal_ideal(ga, gb, cfg)
    if dec.verdict == MEMBER and dec.witness is not None:
        dominating = shift(gb, dec.witness.a, dec.witness.b)
        return IdealDecision(dec.verdict, dec.mode, witness=dec.witness,
                             refutation=dec.refutation, note=dec.note,
                             dominating=dominating)
    return dec
