"""Decay profiles and their logarithmic coordinates.

Two function spaces drive everything here:

* M - non-increasing, right continuous, infinitesimal functions mu on
  [0, inf).  A profile mu describes how the singular values of a compact
  operator decay, with multiplicity measured by an arbitrary positive
  weight (trace), so "rank" is a real number, not an integer.
* G - non-decreasing, right continuous functions g on the real line that
  are bounded from below and unbounded from above, with +inf allowed as
  an eventual value (finite rank).

The map g(t) = -log mu(e^t) is an order-reversing bijection from M to G.
Asymptotic questions (growth indices, ideal membership) are analysed on
the G side where they become statements about slopes; integral
quantities live on the M side.  Every concrete family below carries both
views, kept consistent analytically, so the round trip is exact and no
exponentiation of large coordinates is ever required.

Horizontal and vertical shifts in the g coordinate are tracked on the
wrapper objects: a shift by (a, b) in G corresponds in M to
mu(x) -> e^(-b) mu(x e^(-a)), and the dilation D_lam mu(x) = lam mu(lam x)
is the shift (a, b) = (-log lam, -log lam).
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import (
    NegativeValue,
    NonpositiveLambda,
    NonpositiveWeight,
    NotInfinitesimal,
)
from .numutil import INF, as_float, logaddexp, logsubexp

E = math.e

# ---------------------------------------------------------------------------
# growth profiles (exact asymptotics of g, used by the ideal decisions)


LINLOG = "linlog"
EXP = "exp"


@dataclass(frozen=True)
class GrowthProfile:
    """Asymptotic expansion of g.

    kind "linlog": g(t) = slope*t + log_coeff*log(t) + const + o(1).
    kind "exp":    g(t) = rate*e^t + O(1); only the rate matters.
    """

    kind: str
    slope: float = 0.0
    log_coeff: float = 0.0
    const: float = 0.0
    rate: float = 0.0

    def shifted(self, a: float, b: float) -> "GrowthProfile":
        if self.kind == EXP:
            return GrowthProfile(EXP, rate=self.rate * math.exp(-a))
        return GrowthProfile(
            LINLOG,
            slope=self.slope,
            log_coeff=self.log_coeff,
            const=self.const + b - self.slope * a,
        )


def min_profile(pa: GrowthProfile, pb: GrowthProfile) -> GrowthProfile:
    """Profile of the pointwise minimum: the slower growing side wins."""
    if pa.kind == EXP and pb.kind == EXP:
        return pa if pa.rate <= pb.rate else pb
    if pa.kind == EXP:
        return pb
    if pb.kind == EXP:
        return pa
    ka = (pa.slope, pa.log_coeff, pa.const)
    kb = (pb.slope, pb.log_coeff, pb.const)
    return pa if ka <= kb else pb


# ---------------------------------------------------------------------------
# log-domain integration of piecewise constant profiles
#
# A step profile with g-value gv[j] on the s-interval I_j (s = log x)
# has mass  integral_{I_j} mu dx = e^(-gv[j]) (e^(s_hi) - e^(s_lo)),
# which we accumulate entirely in log space so staircases with huge
# breakpoints never overflow.


def _piece_log_masses(sb: np.ndarray, gv: np.ndarray, s_end: float) -> np.ndarray:
    m = len(sb)
    masses = np.empty(m + 1)
    masses[0] = sb[0] - gv[0]
    if m > 1:
        masses[1:m] = -gv[1:m] + logsubexp(sb[1:], sb[:-1])
    masses[m] = -gv[m] + logsubexp(s_end, sb[-1]) if np.isfinite(gv[m]) else -np.inf
    return masses


class _StepTables:
    """Prefix/suffix log-mass tables for a piecewise constant profile."""

    def __init__(self, sb, gv, s_end):
        self.sb = np.asarray(sb, dtype=float)
        self.gv = np.asarray(gv, dtype=float)
        self.s_end = float(s_end)
        masses = _piece_log_masses(self.sb, self.gv, self.s_end)
        with np.errstate(over="ignore", invalid="ignore"):
            self.prefix = np.logaddexp.accumulate(masses[:-1])
            self.suffix = np.logaddexp.accumulate(masses[::-1])[::-1]

    def log_up(self, s):
        s = np.asarray(s, dtype=float)
        idx = np.searchsorted(self.sb, s, side="right")
        lo = np.where(idx > 0, self.sb[np.maximum(idx - 1, 0)], -np.inf)
        partial = -self.gv[idx] + logsubexp(s, lo)
        head = np.where(idx > 0, self.prefix[np.maximum(idx - 1, 0)], -np.inf)
        out = logaddexp(head, np.where(idx > 0, partial, s - self.gv[0]))
        return out

    def log_down(self, s):
        s = np.asarray(s, dtype=float)
        idx = np.searchsorted(self.sb, s, side="right")
        m = len(self.sb)
        hi = np.where(idx < m, self.sb[np.minimum(idx, m - 1)], self.s_end)
        rem = -self.gv[idx] + logsubexp(hi, s)
        tail = np.where(idx < m, self.suffix[np.minimum(idx + 1, m)], -np.inf)
        return logaddexp(rem, tail)


# ---------------------------------------------------------------------------
# concrete families


@dataclass(frozen=True)
class PowerLog:
    """mu(x) = scale * (x+e)^(-p) * log(x+e)^(-q).

    The shift by e keeps the family defined and monotone on all of
    [0, inf): log(x+e) >= 1, and monotonicity requires p + min(q, 0) >= 0.
    In the g coordinate, with u(t) = log(e^t + e),

        g(t) = -log(scale) + p*u(t) + q*log(u(t)),

    so the asymptotic slope is p with a q*log(t) correction.
    """

    scale: float = 1.0
    p: float = 1.0
    q: float = 0.0

    def __post_init__(self):
        if self.scale <= 0:
            raise ValueError("scale must be positive")
        if self.p < 0:
            raise ValueError("p must be nonnegative")
        if self.p == 0 and self.q <= 0:
            raise NotInfinitesimal("p = 0 requires q > 0 for an infinitesimal profile")
        if self.q < 0 and self.p + self.q < 0:
            raise ValueError("q < -p breaks monotonicity near 0")

    finite_rank = False
    horizon_t = None
    is_step_like = False

    def mu(self, x):
        x = np.asarray(x, dtype=float)
        L = np.log(x + E)
        return self.scale * (x + E) ** (-self.p) * L ** (-self.q)

    def g(self, t):
        t = np.asarray(t, dtype=float)
        u = logaddexp(t, 1.0)
        return -math.log(self.scale) + self.p * u + self.q * np.log(u)

    @property
    def profile(self):
        return GrowthProfile(
            LINLOG, slope=self.p, log_coeff=self.q, const=-math.log(self.scale)
        )

    @property
    def exact_indices(self):
        if self.p > 0:
            return (1.0 / self.p, 1.0 / self.p)
        return (INF, INF)

    @property
    def trace_class(self):
        return self.p > 1 or (self.p == 1 and self.q > 1)

    trace_basis = "exact"

    def log_S_up(self, s):
        """Closed forms exist for q = 0 and for p = 1; otherwise None."""
        s = np.asarray(s, dtype=float)
        u = logaddexp(s, 1.0)
        c = math.log(self.scale)
        if self.q == 0 and self.p < 1:
            return c - math.log(1 - self.p) + logsubexp((1 - self.p) * u, (1 - self.p))
        if self.p == 1:
            if self.q == 0:
                return c + np.log(u - 1.0)
            if self.q == 1:
                return c + np.log(np.log(u))
            if self.q < 1:
                return c - math.log(1 - self.q) + np.log(u ** (1 - self.q) - 1.0)
        return None

    def log_S_down(self, s):
        s = np.asarray(s, dtype=float)
        u = logaddexp(s, 1.0)
        c = math.log(self.scale)
        if self.q == 0 and self.p > 1:
            return c - math.log(self.p - 1) + (1 - self.p) * u
        if self.p == 1 and self.q > 1:
            return c - math.log(self.q - 1) + (1 - self.q) * np.log(u)
        return None

    def g_inverse_point(self, y):
        if self.q != 0:
            return None
        u = (y + math.log(self.scale)) / self.p if self.p > 0 else None
        if u is None or u <= 1.0:
            return None
        # e^t = e^u - e
        return as_float(logsubexp(u, 1.0))


@dataclass(frozen=True)
class Exponential:
    """mu(x) = e^(-alpha x); g(t) = alpha e^t."""

    alpha: float = 1.0

    def __post_init__(self):
        if self.alpha <= 0:
            raise ValueError("alpha must be positive")

    finite_rank = False
    horizon_t = None
    is_step_like = False

    def mu(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(over="ignore", under="ignore"):
            return np.exp(-self.alpha * x)

    def g(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(over="ignore"):
            return self.alpha * np.exp(t)

    @property
    def profile(self):
        return GrowthProfile(EXP, rate=self.alpha)

    exact_indices = (0.0, 0.0)
    trace_class = True
    trace_basis = "exact"

    def log_S_up(self, s):
        return None

    def log_S_down(self, s):
        s = np.asarray(s, dtype=float)
        with np.errstate(over="ignore"):
            return -self.alpha * np.exp(s) - math.log(self.alpha)

    def g_inverse_point(self, y):
        if y <= 0:
            return None
        return math.log(y / self.alpha)


@dataclass(frozen=True)
class PurePower:
    """mu(x) = min(cap, scale * x^(-p)); exactly linear in the g coordinate.

    g(t) = max(-log cap, p*t - log scale), so past the crossover the graph
    of g is the line p*t - log(scale) with no lower order correction.
    """

    p: float = 1.0
    scale: float = 1.0
    cap: float = 1.0

    def __post_init__(self):
        if self.p <= 0 or self.scale <= 0 or self.cap <= 0:
            raise ValueError("p, scale and cap must be positive")

    finite_rank = False
    horizon_t = None
    is_step_like = False

    @property
    def _floor(self):
        return -math.log(self.cap)

    @property
    def _crossover_s(self):
        # p*t - log scale = -log cap
        return (math.log(self.scale) - math.log(self.cap)) / self.p

    def mu(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", over="ignore"):
            tail = self.scale * x ** (-self.p)
        return np.minimum(self.cap, tail)

    def g(self, t):
        t = np.asarray(t, dtype=float)
        return np.maximum(self._floor, self.p * t - math.log(self.scale))

    @property
    def profile(self):
        return GrowthProfile(LINLOG, slope=self.p, const=-math.log(self.scale))

    @property
    def exact_indices(self):
        return (1.0 / self.p, 1.0 / self.p)

    @property
    def trace_class(self):
        return self.p > 1

    trace_basis = "exact"

    def log_S_up(self, s):
        if self.p > 1:
            return None
        s = np.asarray(s, dtype=float)
        sc = self._crossover_s
        head = np.log(self.cap) + np.minimum(s, sc)
        if self.p == 1:
            with np.errstate(divide="ignore"):
                tail_part = math.log(self.scale) + np.log(np.maximum(s - sc, 0.0))
            tail_part = np.where(s > sc, tail_part, -np.inf)
        else:
            tail_part = (
                math.log(self.scale)
                - math.log(1 - self.p)
                + logsubexp((1 - self.p) * np.maximum(s, sc), (1 - self.p) * sc)
            )
            tail_part = np.where(s > sc, tail_part, -np.inf)
        return logaddexp(head, tail_part)

    def log_S_down(self, s):
        if self.p <= 1:
            return None
        s = np.asarray(s, dtype=float)
        sc = self._crossover_s
        tail_at = math.log(self.scale) - math.log(self.p - 1) + (1 - self.p) * np.maximum(s, sc)
        head = np.log(self.cap) + logsubexp(sc, np.minimum(s, sc))
        return np.where(s >= sc, tail_at, logaddexp(head, tail_at))

    def g_inverse_point(self, y):
        if y <= self._floor:
            return None
        return (y + math.log(self.scale)) / self.p


@dataclass(frozen=True)
class StepMu:
    """Finite rank step profile in the x coordinate.

    Value values[i] on [breakpoints[i], breakpoints[i+1]), zero from
    breakpoints[-1] on; breakpoints start at 0 and increase strictly.
    """

    breakpoints: tuple
    values: tuple

    def __post_init__(self):
        bp = tuple(float(b) for b in self.breakpoints)
        vals = tuple(float(v) for v in self.values)
        if not bp or bp[0] != 0.0:
            raise ValueError("breakpoints must start at 0")
        if any(b2 <= b1 for b1, b2 in zip(bp, bp[1:])):
            raise ValueError("breakpoints must increase strictly")
        if len(vals) != len(bp) - 1:
            raise ValueError("need one value per bounded piece")
        if any(v < 0 for v in vals):
            raise NegativeValue("step values must be nonnegative")
        if any(v1 < v2 for v1, v2 in zip(vals, vals[1:])):
            raise ValueError("step values must be non-increasing")
        # zero-valued pieces carry no support; trim them into the tail
        while vals and vals[-1] == 0.0:
            vals = vals[:-1]
            bp = bp[:-1]
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)

    finite_rank = True
    horizon_t = None
    is_step_like = True
    profile = None
    exact_indices = (0.0, 0.0)
    trace_class = True
    trace_basis = "exact"

    @property
    def rank(self):
        """Total mass of the support (the point past which mu vanishes)."""
        return self.breakpoints[-1] if self.values else 0.0

    @cached_property
    def _bp(self):
        return np.asarray(self.breakpoints)

    @cached_property
    def _vals(self):
        return np.asarray(self.values)

    @cached_property
    def _gsteps(self):
        # s-coordinate boundaries skip the x = 0 breakpoint
        sb = np.log(self._bp[1:]) if len(self.breakpoints) > 1 else np.array([0.0])
        with np.errstate(divide="ignore"):
            gv = np.concatenate([-np.log(self._vals), [np.inf]])
        if len(self.breakpoints) == 1:
            gv = np.array([np.inf, np.inf])
        return sb, gv

    def mu(self, x):
        x = np.asarray(x, dtype=float)
        idx = np.searchsorted(self._bp, x, side="right") - 1
        padded = np.concatenate([self._vals, [0.0]]) if self.values else np.array([0.0])
        return padded[np.minimum(np.maximum(idx, 0), len(padded) - 1)]

    def g(self, t):
        sb, gv = self._gsteps
        t = np.asarray(t, dtype=float)
        return gv[np.searchsorted(sb, t, side="right")]

    @cached_property
    def _tables(self):
        sb, gv = self._gsteps
        return _StepTables(sb, gv, sb[-1])

    def log_S_up(self, s):
        if not self.values:
            return np.full_like(np.asarray(s, dtype=float), -np.inf)
        return self._tables.log_up(s)

    def log_S_down(self, s):
        if not self.values:
            return np.full_like(np.asarray(s, dtype=float), -np.inf)
        return self._tables.log_down(s)

    def mass(self):
        return float(np.dot(self._vals, np.diff(self._bp))) if self.values else 0.0

    def g_inverse_point(self, y):
        return None


@dataclass(frozen=True)
class GStep:
    """Step profile in the g coordinate (staircases live here).

    Value values[j] holds on [breakpoints[j-1], breakpoints[j]); values[0]
    extends to the left and values[-1] to the right.  A final value of
    +inf encodes finite rank.  Otherwise the profile is only trusted up
    to horizon_t and operations on it are horizon limited.

    integrable, when set, records whether the (infinite) continuation of
    the staircase is integrable; the constructors in the staircase module
    derive it from the growth profile of their source.
    """

    breakpoints: tuple
    values: tuple
    horizon: float | None = None
    integrable: bool | None = None
    label: str = ""

    def __post_init__(self):
        bp = tuple(float(b) for b in self.breakpoints)
        vals = tuple(float(v) for v in self.values)
        if not bp:
            raise ValueError("need at least one breakpoint")
        if any(b2 <= b1 for b1, b2 in zip(bp, bp[1:])):
            raise ValueError("breakpoints must increase strictly")
        if len(vals) != len(bp) + 1:
            raise ValueError("need len(breakpoints) + 1 values")
        if any(v2 < v1 for v1, v2 in zip(vals, vals[1:])):
            raise ValueError("values must be non-decreasing")
        object.__setattr__(self, "breakpoints", bp)
        object.__setattr__(self, "values", vals)

    @property
    def finite_rank(self):
        return math.isinf(self.values[-1])

    @property
    def horizon_t(self):
        if self.finite_rank:
            return None
        return self.horizon if self.horizon is not None else self.breakpoints[-1]

    is_step_like = True
    profile = None
    exact_indices = None

    @property
    def trace_class(self):
        if self.finite_rank:
            return True
        return self.integrable

    @property
    def trace_basis(self):
        if self.finite_rank:
            return "exact"
        return "tail_model" if self.integrable is not None else "horizon_only"

    @cached_property
    def _bp(self):
        return np.asarray(self.breakpoints)

    @cached_property
    def _vals(self):
        return np.asarray(self.values)

    def g(self, t):
        t = np.asarray(t, dtype=float)
        return self._vals[np.searchsorted(self._bp, t, side="right")]

    def mu(self, x):
        x = np.asarray(x, dtype=float)
        with np.errstate(divide="ignore", under="ignore"):
            s = np.log(x)
            return np.exp(-self.g(s))

    @cached_property
    def _tables(self):
        end = self.breakpoints[-1] if self.finite_rank else self.horizon_t
        return _StepTables(self._bp, self._vals, end)

    def log_S_up(self, s):
        return self._tables.log_up(s)

    def log_S_down(self, s):
        # truncated at the horizon unless finite rank; callers flag this
        return self._tables.log_down(s)

    def g_inverse_point(self, y):
        """First t with g(t) > y, or None when the staircase never exceeds y."""
        idx = bisect_right(list(self.values), y)
        if idx >= len(self.values):
            return None
        if idx == 0:
            return -INF
        return self.breakpoints[idx - 1]


@dataclass(frozen=True)
class SampledMu:
    """Piecewise constant samples of a decay profile on an x grid.

    Without a tail model every asymptotic operation is restricted to the
    sampled horizon; with one, the tail family takes over past grid[-1].
    """

    grid: tuple
    values: tuple
    tail: object = None

    def __post_init__(self):
        g = tuple(float(x) for x in self.grid)
        v = tuple(float(x) for x in self.values)
        if len(g) != len(v) or len(g) < 2:
            raise ValueError("need matching grid/values with at least 2 samples")
        if g[0] < 0 or any(b <= a for a, b in zip(g, g[1:])):
            raise ValueError("grid must be nonnegative and strictly increasing")
        if any(x < 0 for x in v):
            raise NegativeValue("sample values must be nonnegative")
        if any(b > a for a, b in zip(v, v[1:])):
            raise ValueError("sample values must be non-increasing")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)

    is_step_like = True
    profile = None
    exact_indices = None

    @property
    def finite_rank(self):
        if self.tail is not None:
            return self.tail.finite_rank
        return self.values[-1] == 0.0

    @property
    def horizon_t(self):
        if self.tail is not None:
            return self.tail.horizon_t
        if self.finite_rank:
            return None
        return math.log(self.grid[-1])

    @property
    def trace_class(self):
        if self.tail is not None:
            return self.tail.trace_class
        return True if self.finite_rank else None

    @property
    def trace_basis(self):
        if self.tail is not None:
            return "tail_model"
        return "exact" if self.finite_rank else "horizon_only"

    @cached_property
    def _grid(self):
        return np.asarray(self.grid)

    @cached_property
    def _vals(self):
        return np.asarray(self.values)

    def mu(self, x):
        x = np.asarray(x, dtype=float)
        idx = np.minimum(
            np.maximum(np.searchsorted(self._grid, x, side="right") - 1, 0),
            len(self.values) - 1,
        )
        out = self._vals[idx]
        if self.tail is not None:
            beyond = x >= self.grid[-1]
            if np.any(beyond):
                out = np.where(beyond, self.tail.mu(x), out)
        return out

    def g(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(over="ignore", divide="ignore"):
            return -np.log(self.mu(np.exp(t)))

    @cached_property
    def _tables(self):
        # values[0] holds on [0, grid[1]); value changes at grid[1:], so the
        # s-space boundaries are the logs of grid[1:] (all positive)
        sb = np.log(self._grid[1:])
        with np.errstate(divide="ignore"):
            gvals = -np.log(self._vals)
        return _StepTables(sb, gvals, sb[-1])

    def log_S_up(self, s):
        s = np.asarray(s, dtype=float)
        end = self._tables.s_end
        base = self._tables.log_up(np.minimum(s, end))
        if self.tail is None:
            return base
        tail_at_end = self.tail.log_S_up(np.asarray(end))
        tail_at_s = self.tail.log_S_up(s)
        if tail_at_end is None or tail_at_s is None:
            return None
        extra = logsubexp(tail_at_s, tail_at_end)
        return np.where(s > end, logaddexp(base, extra), base)

    def log_S_down(self, s):
        s = np.asarray(s, dtype=float)
        end = self._tables.s_end
        base = self._tables.log_down(np.minimum(s, end))
        if self.tail is None:
            return base
        tail_down = self.tail.log_S_down(np.maximum(s, end))
        if tail_down is None:
            return None
        tail_at_end = self.tail.log_S_down(np.full_like(s, end))
        return np.where(s >= end, tail_down, logaddexp(base, tail_at_end))

    def g_inverse_point(self, y):
        return None


@dataclass(frozen=True)
class MinOf:
    """Pointwise minimum of two G-side functions."""

    left: "GFunction"
    right: "GFunction"

    @property
    def finite_rank(self):
        return self.left.finite_rank and self.right.finite_rank

    @property
    def horizon_t(self):
        hs = [h for h in (self.left.horizon_t, self.right.horizon_t) if h is not None]
        return min(hs) if hs else None

    is_step_like = False

    @property
    def exact_indices(self):
        # the slower growing side fixes the asymptotics of the minimum
        p = self.profile
        if p is None:
            return None
        if p.kind == EXP:
            return (0.0, 0.0)
        if p.slope > 0:
            return (1.0 / p.slope, 1.0 / p.slope)
        return (INF, INF)

    @property
    def trace_class(self):
        # min in G is max in M, integrable iff both sides are
        lt = self.left.family.trace_class
        rt = self.right.family.trace_class
        if lt is False or rt is False:
            return False
        if lt and rt:
            return True
        return None

    @property
    def trace_basis(self):
        return "horizon_only" if self.trace_class is None else "exact"

    @property
    def profile(self):
        pa, pb = self.left.profile, self.right.profile
        if pa is None or pb is None:
            return None
        return min_profile(pa, pb)

    def g(self, t):
        return np.minimum(self.left.eval(t), self.right.eval(t))

    def mu(self, x):
        x = np.asarray(x, dtype=float)
        return np.maximum(self.left.mu_view().eval(x), self.right.mu_view().eval(x))

    def log_S_up(self, s):
        return None

    def log_S_down(self, s):
        return None

    def g_inverse_point(self, y):
        return None


def step_knots_t(family):
    """Jump locations in the t = log x coordinate for piecewise constant
    families, None for smooth ones.  Estimators scan these exactly."""
    if isinstance(family, GStep):
        return family.breakpoints
    if isinstance(family, StepMu):
        return tuple(math.log(b) for b in family.breakpoints if b > 0)
    if isinstance(family, SampledMu):
        return tuple(math.log(x) for x in family.grid if x > 0)
    return None


# ---------------------------------------------------------------------------
# public wrappers


@dataclass(frozen=True)
class GFunction:
    """Element of G: a family plus a shift, g(t) = b + family.g(t - a)."""

    family: object
    a: float = 0.0
    b: float = 0.0

    def eval(self, t):
        return self.b + self.family.g(np.asarray(t, dtype=float) - self.a)

    def __call__(self, t):
        return as_float(self.eval(t))

    @property
    def finite_rank(self):
        return self.family.finite_rank

    @property
    def horizon_t(self):
        h = self.family.horizon_t
        return None if h is None else h + self.a

    @property
    def profile(self):
        p = self.family.profile
        return None if p is None else p.shifted(self.a, self.b)

    def shifted(self, a, b):
        return GFunction(self.family, self.a + a, self.b + b)

    def mu_view(self):
        return EigenvalueFunction(self.family, self.a, self.b)

    def inverse_point(self, y):
        """First t with g(t) > y (analytic families only)."""
        t = self.family.g_inverse_point(y - self.b)
        return None if t is None else t + self.a


@dataclass(frozen=True)
class EigenvalueFunction:
    """Element of M: mu(x) = e^(-b) * family.mu(x e^(-a))."""

    family: object
    a: float = 0.0
    b: float = 0.0

    def eval(self, x):
        x = np.asarray(x, dtype=float)
        if np.any(x < 0):
            raise ValueError("decay profiles are defined on [0, inf)")
        return math.exp(-self.b) * self.family.mu(x * math.exp(-self.a))

    def __call__(self, x):
        return as_float(self.eval(x))

    @property
    def finite_rank(self):
        return self.family.finite_rank

    @property
    def rank(self):
        r = getattr(self.family, "rank", None)
        return None if r is None else r * math.exp(self.a)

    @property
    def horizon_t(self):
        h = self.family.horizon_t
        return None if h is None else h + self.a

    def g_view(self):
        return GFunction(self.family, self.a, self.b)


# constructors

def power_log(scale=1.0, p=1.0, q=0.0) -> EigenvalueFunction:
    return EigenvalueFunction(PowerLog(scale=scale, p=p, q=q))


def exponential(alpha=1.0) -> EigenvalueFunction:
    return EigenvalueFunction(Exponential(alpha=alpha))


def pure_power(p=1.0, scale=1.0, cap=1.0) -> EigenvalueFunction:
    return EigenvalueFunction(PurePower(p=p, scale=scale, cap=cap))


def step_mu(breakpoints, values) -> EigenvalueFunction:
    return EigenvalueFunction(StepMu(tuple(breakpoints), tuple(values)))


def sampled(grid, values, tail=None) -> EigenvalueFunction:
    return EigenvalueFunction(SampledMu(tuple(grid), tuple(values), tail))


def g_step(breakpoints, values, horizon=None, integrable=None, label="") -> GFunction:
    return GFunction(GStep(tuple(breakpoints), tuple(values), horizon, integrable, label))


# ---------------------------------------------------------------------------
# spectral data and rearrangement


@dataclass(frozen=True)
class SpectralData:
    """Finite list of (spectral value, trace weight) pairs.

    Weights are real multiplicities (the trace of the corresponding
    spectral projection), so they need not be integers.
    """

    pairs: tuple
    total_weight: float | None = None

    def __post_init__(self):
        pairs = tuple((float(v), float(w)) for v, w in self.pairs)
        for v, w in pairs:
            if v < 0:
                raise NegativeValue(f"spectral value {v} is negative")
            if w <= 0:
                raise NonpositiveWeight(f"weight {w} is not positive")
        object.__setattr__(self, "pairs", pairs)
        if self.total_weight is not None and self.total_weight != INF:
            s = math.fsum(w for _, w in pairs)
            if self.total_weight < s - 1e-9:
                raise ValueError("total_weight smaller than the sum of weights")

    def mass(self):
        return math.fsum(v * w for v, w in self.pairs)


@dataclass(frozen=True)
class DistributionFunction:
    """lambda(t) = total weight of spectral values strictly above t."""

    data: SpectralData

    def __call__(self, t):
        return math.fsum(w for v, w in self.data.pairs if v > t)

    def quantile(self, t):
        """inf{s >= 0 : lambda(s) <= t}, the defining formula for mu."""
        if self(0.0) <= t:
            return 0.0
        for s in sorted({v for v, _ in self.data.pairs}):
            if self(s) <= t:
                return s
        raise AssertionError("unreachable: lambda vanishes past the largest value")


def rearrange(data: SpectralData) -> EigenvalueFunction:
    """Non-increasing rearrangement of finite spectral data as a step profile.

    Values are sorted in descending order, each occupying an interval
    whose length is its weight; equal values merge.  Zero values carry no
    support (mu is already zero there).  Empty input gives the zero
    profile (rank zero).
    """
    items = sorted(((v, w) for v, w in data.pairs if v > 0), reverse=True)
    breakpoints = [0.0]
    values = []
    for v, w in items:
        if values and values[-1] == v:
            breakpoints[-1] += w
        else:
            values.append(v)
            breakpoints.append(breakpoints[-1] + w)
    return step_mu(breakpoints, values)


# ---------------------------------------------------------------------------
# the transform and the group actions


def g_transform(mu: EigenvalueFunction) -> GFunction:
    """g(t) = -log mu(e^t); exact on every family."""
    return GFunction(mu.family, mu.a, mu.b)


def g_inverse(g: GFunction) -> EigenvalueFunction:
    """mu(x) = e^(-g(log x)); inverse of g_transform."""
    fam = g.family
    if isinstance(fam, GStep) and not fam.finite_rank:
        if fam.values[-1] == fam.values[0]:
            raise NotInfinitesimal("constant g gives a non-vanishing profile")
    return EigenvalueFunction(g.family, g.a, g.b)


def dilate(mu: EigenvalueFunction, lam: float) -> EigenvalueFunction:
    """D_lam mu(x) = lam * mu(lam x); a shift by (-log lam, -log lam) in G."""
    if lam <= 0:
        raise NonpositiveLambda(f"dilation parameter must be positive, got {lam}")
    ll = math.log(lam)
    return EigenvalueFunction(mu.family, mu.a - ll, mu.b - ll)


def shift(g: GFunction, a: float, b: float) -> GFunction:
    """t -> b + g(t - a); stays in G for any real a, b."""
    return g.shifted(a, b)


def pointwise_min(f: GFunction, g: GFunction) -> GFunction:
    """(f ^ g)(t) = min(f(t), g(t)); G is closed under minima."""
    return GFunction(MinOf(f, g))
