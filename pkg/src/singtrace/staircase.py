"""Inductive staircase constructions.

Given a compact-type profile with logarithmic coordinate g_A (finite
valued and unbounded), two greedy breakpoint procedures produce a
companion step profile g whose growth indices collapse to (0, inf),
which makes the companion singularly traceable, while its steps are
pinned to a power of g_A:

* vanisher: steps at height sqrt(g_A(t_n)); since g <= sqrt(g_A) and
  g_A - sqrt(g_A) diverges, the source profile lands in the kernel of
  the companion's ideal (every singular trace there vanishes on it).
* dominator: steps at height g_A(t_{n+1})^2, so g >= g_A^2 on the
  constructed range and the source profile stays outside the
  companion's ideal (some singular trace is infinite on it).

Breakpoints follow the minimal greedy rule

    t_{n+1} = max(t_n + (n+1), inf{ t : phi(g_A(t)) > phi(g_A(t_n)) + (n+1) })

with phi the square root or the square.  The margin n+1 makes both gap
requirements (breakpoint gaps and phi gaps exceeding n) hold strictly,
and the rule is deterministic, so a construction is reproducible from
its inputs.  Sources whose g may dip below 1 are raised by a vertical
offset first (harmless: ideal membership is shift invariant), since the
square root step heights assume g_A >= 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import Bounded, ConstructionRange, FiniteRank, VerificationFailed
from .functions import GFunction, g_step, shift
from .indices import as_g, matuszewska

VANISHER = "vanisher"
DOMINATOR = "dominator"

_BRACKET_MAX = 1e12
_BISECT_TOL = 1e-9


@dataclass(frozen=True)
class StaircaseConstruction:
    variant: str
    breakpoints: tuple  # t_1 < t_2 < ... < t_N
    step_values: tuple  # value on [t_n, t_{n+1}) per piece
    source: GFunction
    normalization_offset: float
    start_t: float
    rule: str

    @property
    def n_steps(self):
        return len(self.breakpoints)

    def g(self) -> GFunction:
        """The staircase as a G-side step profile, integrability attached."""
        bps = self.breakpoints
        vals = self.step_values
        if self.variant == VANISHER:
            horizon = bps[-1] + len(bps) + 1
            values = (vals[0],) + vals
        else:
            horizon = bps[-1]
            bps = bps[:-1]
            values = (vals[0],) + vals
        return g_step(
            bps,
            values,
            horizon=horizon,
            integrable=_tail_integrability(self.variant, self.source),
            label=f"{self.variant} staircase",
        )

    def normalized_source(self) -> GFunction:
        return shift(self.source, 0.0, self.normalization_offset)


def _tail_integrability(variant, source: GFunction):
    """Integrability of the full (infinite) staircase, via the source growth.

    Piece masses behave like exp(t_{n+1} - w_n) with w_n the step value,
    so the series converges exactly when the heights outrun the
    breakpoints.  sqrt of linear-ish growth stays below t (divergent);
    squared growth with positive slope outruns it (convergent);
    exponential sources outrun t under both powers.  Without an exact
    profile the continuation is unknown.
    """
    p = source.profile
    if p is None:
        return None
    if p.kind == "exp":
        return True
    if variant == VANISHER:
        return False
    return p.slope > 0


def _solve_exceed(g: GFunction, level: float, t_lo: float, horizon: float | None):
    """inf{ t >= t_lo : g(t) > level }, analytic where possible."""
    t = g.inverse_point(level)
    if t is not None:
        return max(t, t_lo)
    if g(t_lo) > level:
        return t_lo
    hi = max(t_lo, 1.0)
    width = 1.0
    cap = horizon if horizon is not None else _BRACKET_MAX
    while g(hi) <= level:
        hi += width
        width *= 2.0
        if hi > cap:
            raise Bounded(
                f"g never exceeds {level:.6g} on the trusted range (up to {cap:.3g})"
            )
    lo = max(t_lo, hi - width / 2.0)
    while hi - lo > _BISECT_TOL:
        mid = 0.5 * (lo + hi)
        if g(mid) > level:
            hi = mid
        else:
            lo = mid
    return hi


def _construct(variant: str, source, n_steps: int, start_t: float) -> StaircaseConstruction:
    g_src = as_g(source)
    if g_src.finite_rank:
        raise FiniteRank("the source profile has finite rank")
    if n_steps < 2:
        raise ValueError("need at least 2 steps")
    g0 = g_src(start_t)
    if not math.isfinite(g0):
        raise FiniteRank("g is infinite at the starting point")
    offset = max(0.0, 1.0 - g0)
    gA = shift(g_src, 0.0, offset)
    phi = math.sqrt if variant == VANISHER else (lambda y: y * y)
    phi_inv = (lambda v: v * v) if variant == VANISHER else math.sqrt

    ts = [float(start_t)]
    for n in range(1, n_steps):
        t_n = ts[-1]
        target_phi = phi(gA(t_n)) + (n + 1)
        level = phi_inv(target_phi)  # g must exceed this level
        t_cand = _solve_exceed(gA, level, t_n, g_src.horizon_t)
        t_next = max(t_n + (n + 1), t_cand)
        if not math.isfinite(t_next):
            raise ConstructionRange(f"breakpoint {n + 1} left the float range")
        if g_src.horizon_t is not None and t_next > g_src.horizon_t:
            raise Bounded("construction ran past the trusted horizon of the source")
        ts.append(float(t_next))

    if variant == VANISHER:
        values = tuple(math.sqrt(gA(t)) for t in ts)
    else:
        values = tuple(gA(t) ** 2 for t in ts[1:])
    if not all(math.isfinite(v) for v in values):
        raise ConstructionRange("step values left the float range")

    return StaircaseConstruction(
        variant=variant,
        breakpoints=tuple(ts),
        step_values=values,
        source=g_src,
        normalization_offset=offset,
        start_t=float(start_t),
        rule="greedy minimal breakpoints, margin n+1, bisection 1e-9",
    )


def construct_vanisher(source, n_steps: int = 40, start_t: float = 1.0) -> StaircaseConstruction:
    """Companion whose ideal kernel swallows the source profile."""
    return _construct(VANISHER, source, n_steps, start_t)


def construct_dominator(source, n_steps: int = 40, start_t: float = 1.0) -> StaircaseConstruction:
    """Companion whose ideal excludes the source profile."""
    return _construct(DOMINATOR, source, n_steps, start_t)


# ---------------------------------------------------------------------------
# verification


@dataclass
class StaircaseVerification:
    variant: str
    gap_margins: tuple  # min over n of (t_{n+1} - t_n - n, phi gap - n)
    delta_lower: float
    delta_upper: float
    condition_t0: tuple  # (c, t0) pairs for the kernel/exclusion condition
    envelope_ok: bool


def _condition_grid(s: StaircaseConstruction, horizon: float):
    t1 = s.breakpoints[0]
    ss = np.linspace(t1, horizon, 4000)
    extra = np.array([b for b in s.breakpoints if b <= horizon])
    return np.unique(np.concatenate([ss, extra, np.minimum(extra + 1e-9, horizon)]))


def _first_permanent_index(ok: np.ndarray):
    """First index from which the mask stays true to the end, or None."""
    if not ok[-1]:
        return None
    bad = np.nonzero(~ok)[0]
    return (bad[-1] + 1) if len(bad) else 0


def verify_construction(
    s: StaircaseConstruction,
    delta_lower_max: float = 0.1,
    delta_upper_min: float = 10.0,
    c_values: tuple = (1.0, 10.0, 100.0),
) -> StaircaseVerification:
    """Re-derive every promised property of a staircase from scratch.

    Checks, in order: both gap conditions with zero tolerance, the index
    collapse on the staircase itself, the envelope against the
    appropriate power of the source, and the kernel or exclusion
    condition on a c ladder.  Raises VerificationFailed naming the first
    violated check.
    """
    bps = np.asarray(s.breakpoints)
    ns = np.arange(1, len(bps))

    gaps = np.diff(bps)
    if not np.all(gaps > ns):
        raise VerificationFailed("breakpoint_gaps: t_{n+1} - t_n > n violated")

    gA = s.normalized_source()
    phi_vals = np.sqrt(gA.eval(bps)) if s.variant == VANISHER else gA.eval(bps) ** 2
    phi_gaps = np.diff(phi_vals)
    if not np.all(phi_gaps > ns):
        raise VerificationFailed("phi_gaps: transformed value gaps must exceed n")
    gap_margins = (float(np.min(gaps - ns)), float(np.min(phi_gaps - ns)))

    stair = s.g()
    rep = matuszewska(stair)
    if not (rep.delta_lower <= delta_lower_max and rep.delta_upper >= delta_upper_min):
        raise VerificationFailed(
            f"indices: ({rep.delta_lower:.4g}, {rep.delta_upper:.4g}) "
            f"outside [<= {delta_lower_max}, >= {delta_upper_min}]"
        )

    horizon = stair.horizon_t if stair.horizon_t is not None else bps[-1]
    ss = _condition_grid(s, horizon)
    stair_vals = stair.eval(ss)
    src_vals = s.source.eval(ss)
    norm_vals = gA.eval(ss)

    if s.variant == VANISHER:
        envelope_ok = bool(np.all(stair_vals <= np.sqrt(norm_vals) + 1e-12))
        if not envelope_ok:
            raise VerificationFailed("envelope: staircase exceeds sqrt of the source")
        gap_fn = src_vals - stair_vals  # must exceed every c eventually
    else:
        envelope_ok = bool(np.all(stair_vals >= norm_vals**2 - 1e-12))
        if not envelope_ok:
            raise VerificationFailed("envelope: staircase drops below the squared source")
        gap_fn = stair_vals - src_vals  # exclusion: source < c + staircase

    t0s = []
    for c in c_values:
        idx = _first_permanent_index(gap_fn > c if s.variant == VANISHER else gap_fn > -c)
        if idx is None:
            raise VerificationFailed(f"condition: threshold c = {c} never permanently met")
        t0s.append((float(c), float(ss[idx])))
    if [t for _, t in t0s] != sorted(t for _, t in t0s):
        raise VerificationFailed("condition: t0 must be non-decreasing in c")

    return StaircaseVerification(
        variant=s.variant,
        gap_margins=gap_margins,
        delta_lower=rep.delta_lower,
        delta_upper=rep.delta_upper,
        condition_t0=tuple(t0s),
        envelope_ok=envelope_ok,
    )
