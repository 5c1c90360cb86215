import math

import numpy as np
import pytest
from scipy.integrate import quad

from singtrace.errors import SupportExceeded, UndecidedBranch, ZeroDenominator
from singtrace.functions import (
    dilate,
    exponential,
    g_step,
    power_log,
    pure_power,
    sampled,
    step_mu,
    PowerLog,
)
from singtrace.integral import (
    S,
    is_trace_class,
    log_S,
    log_S_grid,
    mu_mass,
    mu_over_S,
    s_ratio,
)

E = math.e


def quad_up(mu, x):
    val, _ = quad(lambda y: mu(y), 0.0, x, epsrel=1e-12, limit=400)
    return val


def quad_down(mu, x, cutoff=1e8):
    # decade panels keep the adaptive rule honest on huge intervals
    total, lo = 0.0, x
    while lo < cutoff:
        hi = min(lo * 10.0, cutoff)
        val, _ = quad(lambda y: mu(y), lo, hi, epsrel=1e-12, limit=400)
        total += val
        lo = hi
    return total


# ---------------------------------------------------------------------------
# trace class detection


def test_trace_class_exact_family_split():
    assert is_trace_class(power_log(p=2)).verdict == "trace_class"
    assert is_trace_class(power_log(p=2)).basis == "exact"
    assert is_trace_class(power_log(p=1)).verdict == "not_trace_class"
    assert is_trace_class(power_log(p=0.5)).verdict == "not_trace_class"
    assert is_trace_class(power_log(p=1, q=2)).verdict == "trace_class"
    assert is_trace_class(power_log(p=1, q=1)).verdict == "not_trace_class"
    assert is_trace_class(power_log(p=0, q=2)).verdict == "not_trace_class"
    assert is_trace_class(exponential(0.3)).verdict == "trace_class"
    assert is_trace_class(step_mu([0, 1], [4.0])).verdict == "trace_class"
    assert is_trace_class(pure_power(p=2)).verdict == "trace_class"


def test_trace_class_sampled_without_tail_is_undecided():
    mu = sampled([1.0, 2.0, 4.0], [1.0, 0.5, 0.25])
    v = is_trace_class(mu)
    assert v.verdict == "undecided" and v.basis == "horizon_only"
    with pytest.raises(UndecidedBranch):
        S(mu, 2.0)


def test_trace_class_sampled_with_tail_uses_tail_model():
    mu = sampled([1.0, 2.0, 4.0], [1.0, 0.5, 0.25], tail=PowerLog(p=2.0))
    v = is_trace_class(mu)
    assert v.verdict == "trace_class" and v.basis == "tail_model"


def test_trace_class_invariant_under_dilation():
    for fam in [power_log(p=2), power_log(p=0.5)]:
        for lam in [0.5, 2.0, 10.0]:
            assert is_trace_class(dilate(fam, lam)).verdict == is_trace_class(fam).verdict


def test_branch_selection():
    from singtrace.integral import branch_of

    assert branch_of(power_log(p=1)) == "up"
    assert branch_of(power_log(p=2)) == "down"
    assert branch_of(step_mu([0, 1], [1.0])) == "down"  # finite rank is integrable
    with pytest.raises(UndecidedBranch):
        branch_of(sampled([1.0, 2.0], [1.0, 0.5]))


# ---------------------------------------------------------------------------
# S values against quadrature oracles


def test_S_up_closed_forms_match_quadrature():
    for mu in [power_log(p=1), power_log(p=0.5), power_log(p=1, q=-1), pure_power(p=1)]:
        for x in [0.5, 3.0, 40.0, 1e4]:
            assert S(mu, x) == pytest.approx(quad_up(mu, x), rel=1e-9)


def test_S_p1_closed_form_value():
    # S_up(x) = log(x+e) - 1 for the p = 1 family
    mu = power_log(p=1)
    for x in [1.0, 10.0, 1e5]:
        assert S(mu, x) == pytest.approx(math.log(x + E) - 1.0, rel=1e-13)


def test_S_down_closed_forms_match_quadrature():
    for mu in [power_log(p=2), power_log(p=4), pure_power(p=2)]:
        for x in [0.5, 3.0, 40.0]:
            assert S(mu, x) == pytest.approx(quad_down(mu, x, cutoff=1e13), rel=1e-6)
    # 1/((x+e) log^2): the tail past any feasible cutoff still matters, so
    # compare the increment S(x) - S(X) against quadrature on [x, X]
    mu = power_log(p=1, q=2)
    for x in [0.5, 3.0, 40.0]:
        inc = S(mu, x) - S(mu, 1e10)
        assert inc == pytest.approx(quad_down(mu, x, cutoff=1e10), rel=1e-9)


def test_S_exponential_down_branch():
    mu = exponential(1.0)
    for x in [0.5, 2.0, 10.0]:
        assert S(mu, x) == pytest.approx(math.exp(-x), rel=1e-12)
    assert S(exponential(2.0), 3.0) == pytest.approx(math.exp(-6.0) / 2.0, rel=1e-12)


def test_S_quadrature_fallback_families():
    # no closed form: p = 0 pure log decay, and p < 1 with a log factor
    mu = power_log(p=0, q=2)
    for x in [2.0, 50.0]:
        assert S(mu, x) == pytest.approx(quad_up(mu, x), rel=1e-8)
    mu2 = power_log(p=0.5, q=1)
    assert S(mu2, 100.0) == pytest.approx(quad_up(mu2, 100.0), rel=1e-8)
    mu3 = power_log(p=2, q=1)  # trace class, no closed tail form
    assert S(mu3, 5.0) == pytest.approx(quad_down(mu3, 5.0, cutoff=1e12), rel=1e-6)


def test_S_step_example_both_branches():
    # mu = 3 on [0,1), 2 on [1,2), 1 on [2,3): finite rank, so the down
    # branch applies; the cumulative integral up to 2 is 3 + 2 = 5
    mu = step_mu([0, 1, 2, 3], [3, 2, 1])
    assert mu_mass(mu, 0.0, 2.0) == pytest.approx(5.0, abs=1e-14)
    assert S(mu, 2.0) == pytest.approx(1.0, rel=1e-12)
    assert S(mu, 2.5) == pytest.approx(0.5, rel=1e-12)
    assert S(mu, 3.0) == 0.0


def test_S_shift_consistency():
    # S of a dilated profile equals the dilated closed form
    mu = power_log(p=2)
    d = dilate(mu, 3.0)
    for x in [1.0, 7.0]:
        assert S(d, x) == pytest.approx(quad_down(d, x, cutoff=1e12), rel=1e-6)


def test_log_S_grid_matches_pointwise():
    ss = np.linspace(0.0, 30.0, 50)
    fams = [
        power_log(p=1),          # closed form, up
        power_log(p=2),          # closed form, down
        power_log(p=0, q=2),     # quadrature, up
        power_log(p=2, q=1),     # quadrature, down
        exponential(1.0),
    ]
    for mu in fams:
        grid_vals = log_S_grid(mu, ss)
        for i in [0, 10, 49]:
            assert grid_vals[i] == pytest.approx(log_S(mu, float(ss[i])), rel=1e-7, abs=1e-9)


# ---------------------------------------------------------------------------
# ratio quantities


def test_s_ratio_tendencies():
    mu1 = power_log(p=1)
    r_small = s_ratio(mu1, 2.0, 1e2)
    r_big = s_ratio(mu1, 2.0, 1e8)
    assert abs(r_big - 1.0) < abs(r_small - 1.0)
    assert r_big == pytest.approx(1.0, abs=0.05)

    mu2 = power_log(p=2)
    assert s_ratio(mu2, 2.0, 1e8) == pytest.approx(0.5, abs=1e-3)

    assert s_ratio(exponential(1.0), 2.0, 50.0) == pytest.approx(math.exp(-50.0), rel=1e-9)


def test_mu_over_S_closed_checks():
    mu1 = power_log(p=1)
    for x in [10.0, 1e4]:
        want = x * mu1(x) / (math.log(x + E) - 1.0)
        assert mu_over_S(mu1, x) == pytest.approx(want, rel=1e-12)
    assert mu_over_S(mu1, 1e8) < 0.06

    mu2 = power_log(p=2)
    assert mu_over_S(mu2, 1e8) == pytest.approx(1.0, abs=1e-3)
    # x mu / S_down = x/(x+e) exactly for p = 2
    assert mu_over_S(mu2, 10.0) == pytest.approx(10.0 / (10.0 + E), rel=1e-12)

    assert mu_over_S(exponential(1.0), 25.0) == pytest.approx(25.0, rel=1e-9)


def test_support_errors():
    mu = step_mu([0, 1], [2.0])
    with pytest.raises(SupportExceeded):
        s_ratio(mu, 2.0, 1.5)
    with pytest.raises(ZeroDenominator):
        mu_over_S(mu, 1.5)


# ---------------------------------------------------------------------------
# proof-chain inequalities (spot check; the acceptance suite runs the full grid)


def up_chain_holds(mu, xs):
    for x in xs:
        r2 = s_ratio(mu, 2.0, x)
        q = mu_over_S(mu, x)
        shalf = S(mu, x / 2) / S(mu, x)
        lhs = r2 - 1.0
        rhs = 2.0 * (1.0 - shalf)
        if not (0 < lhs <= q + 1e-12 and q <= rhs + 1e-12):
            return False
    return True


def down_chain_holds(mu, xs):
    for x in xs:
        r2 = s_ratio(mu, 2.0, x)
        q = mu_over_S(mu, x)
        shalf = S(mu, x / 2) / S(mu, x)
        lhs = 1.0 - r2
        rhs = 2.0 * (shalf - 1.0)
        if not (0 < lhs <= q + 1e-12 and q <= rhs + 1e-12):
            return False
    return True


def test_proposition_chains_spot():
    xs = np.exp(np.linspace(0, np.log(1e5), 40))
    assert up_chain_holds(power_log(p=1), xs)
    assert up_chain_holds(power_log(p=0.5), xs)
    assert down_chain_holds(power_log(p=2), xs)
    assert down_chain_holds(power_log(p=1, q=2), xs)


def test_monotone_branches_and_tail_bound():
    xs = np.exp(np.linspace(0, np.log(1e6), 80))
    up = np.array([S(power_log(p=1), x) for x in xs])
    assert np.all(np.diff(up) > 0)
    down = np.array([S(power_log(p=2), x) for x in xs])
    assert np.all(np.diff(down) < 0)
    # S_down(t) >= t mu(2t)
    mu = power_log(p=3)
    for t in xs[::8]:
        assert S(mu, t) >= t * mu(2 * t) - 1e-15


# ---------------------------------------------------------------------------
# staircase-style g-step profiles in the log domain


def test_gstep_log_S_matches_plain_sums():
    # small staircase where plain float arithmetic is still exact:
    # mu = e^-1 on [0, e^3), e^-2 on [e^3, e^6), e^-4 past e^6
    g = g_step([1.0, 3.0, 6.0], [1.0, 1.0, 2.0, 4.0], integrable=False)
    mu = g.mu_view()

    def expected(s):
        x = math.exp(s)
        acc = math.exp(-1.0) * min(x, math.exp(3.0))
        if x > math.exp(3.0):
            acc += math.exp(-2.0) * (min(x, math.exp(6.0)) - math.exp(3.0))
        if x > math.exp(6.0):
            acc += math.exp(-4.0) * (x - math.exp(6.0))
        return acc

    for s in [0.0, 2.0, 5.0, 5.9, 6.2]:
        assert math.exp(log_S(mu, s)) == pytest.approx(expected(s), rel=1e-12)


def test_gstep_huge_breakpoints_no_overflow():
    g = g_step([1e5, 3e5, 6e5], [10.0, 10.0, 400.0, 900.0], integrable=False)
    mu = g.mu_view()
    v1 = log_S(mu, 2e5)
    v2 = log_S(mu, 5e5)
    assert math.isfinite(v1) and math.isfinite(v2)
    assert v2 > v1  # S_up grows
    # within the first piece the integral is x * e^(-10)
    assert log_S(mu, 5e4) == pytest.approx(5e4 - 10.0, rel=1e-12)
