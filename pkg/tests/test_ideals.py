import numpy as np
import pytest

from singtrace.errors import NotRegular
from singtrace.functions import (
    dilate,
    exponential,
    g_step,
    g_transform,
    power_log,
    pure_power,
    sampled,
    shift,
    step_mu,
)
from singtrace.ideals import (
    MEMBER,
    NON_MEMBER,
    UNDECIDED,
    face_axioms_check,
    in_kernel,
    in_principal_ideal,
    regular_domination,
)


def g_of(p=1.0, q=0.0, scale=1.0):
    return g_transform(power_log(scale=scale, p=p, q=q))


# ---------------------------------------------------------------------------
# principal ideal


def test_reflexive_membership_with_zero_witness():
    g = g_of(p=1)
    dec = in_principal_ideal(g, g)
    assert dec.verdict == MEMBER
    assert dec.witness.a == 0.0 and dec.witness.b <= 0.0


def test_slope_dominance_member():
    dec = in_principal_ideal(g_of(p=2), g_of(p=1))
    assert dec.verdict == MEMBER and dec.mode == "exact"


def test_slope_deficit_non_member():
    dec = in_principal_ideal(g_of(p=0.5), g_of(p=1))
    assert dec.verdict == NON_MEMBER
    assert dec.refutation is not None
    assert dec.refutation.slope_a < dec.refutation.slope_b


def test_log_term_breaks_ties():
    assert in_principal_ideal(g_of(p=1, q=2), g_of(p=1)).verdict == MEMBER
    assert in_principal_ideal(g_of(p=1, q=-1), g_of(p=1)).verdict == NON_MEMBER


def test_order_reversal_gives_zero_shift_witness():
    # mu_A <= mu_B pointwise, so g_A >= g_B and (0, 0) must witness
    ga, gb = g_of(p=2), g_of(p=1)
    xs = np.exp(np.linspace(-3, 20, 100))
    assert np.all(power_log(p=2).eval(xs) <= power_log(p=1).eval(xs))
    dec = in_principal_ideal(ga, gb)
    assert dec.verdict == MEMBER and dec.witness.a == 0.0 and dec.witness.b == 0.0


def test_finite_rank_policies():
    fr = g_transform(step_mu([0, 1, 2], [2.0, 1.0]))
    assert in_principal_ideal(fr, g_of(p=1)).verdict == MEMBER
    assert in_principal_ideal(g_of(p=1), fr).verdict == NON_MEMBER
    assert in_principal_ideal(fr, fr).verdict == MEMBER


def test_exponentials_generate_one_ideal():
    a, b = g_transform(exponential(1.0)), g_transform(exponential(3.0))
    assert in_principal_ideal(a, b).verdict == MEMBER
    assert in_principal_ideal(b, a).verdict == MEMBER
    # and dominate every power profile's ideal requirement
    assert in_principal_ideal(a, g_of(p=1)).verdict == MEMBER
    assert in_principal_ideal(g_of(p=1), a).verdict == NON_MEMBER


# ---------------------------------------------------------------------------
# kernel


def test_kernel_examples():
    assert in_kernel(g_of(p=2), g_of(p=1)).verdict == MEMBER
    g = g_of(p=1)
    assert in_kernel(g, g).verdict == NON_MEMBER
    # scalar multiple: gap is log 2, bounded
    assert in_kernel(g_of(p=1, scale=2.0), g_of(p=1, scale=1.0)).verdict == NON_MEMBER


def test_kernel_subset_of_ideal_on_suite(symbolic_suite):
    gs = [g_transform(mu) for _, mu in symbolic_suite]
    for ga in gs:
        for gb in gs:
            if in_kernel(ga, gb).verdict == MEMBER:
                assert in_principal_ideal(ga, gb).verdict == MEMBER


def test_kernel_threshold_ladder_recorded():
    dec = in_kernel(g_of(p=2), g_of(p=1))
    assert dec.witness is not None
    ladder = dec.witness.thresholds
    assert [c for c, _, _ in ladder] == [1.0, 10.0, 100.0]
    t0s = [t for _, t, ok in ladder if ok]
    assert len(t0s) >= 1 and t0s == sorted(t0s)


def test_exponential_in_own_kernel():
    # a horizontal shift strictly lowers the rate, so the gap diverges
    g = g_transform(exponential(1.0))
    assert in_kernel(g, g).verdict == MEMBER


# ---------------------------------------------------------------------------
# shift and dilation stability


def test_shift_absorption():
    base = g_of(p=1)
    for a, b in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]:
        moved = shift(base, a, b)
        for ga in [g_of(p=2), g_of(p=0.5), g_of(p=1, q=2)]:
            assert in_principal_ideal(ga, moved).verdict == in_principal_ideal(ga, base).verdict
            assert in_kernel(ga, moved).verdict == in_kernel(ga, base).verdict


def test_dilation_invariance_of_faces():
    base = g_of(p=1)
    for name, mu in [("p2", power_log(p=2)), ("pq", power_log(p=1, q=2))]:
        assert in_principal_ideal(g_transform(mu), base).verdict == MEMBER
        for lam in [2.0, 10.0]:
            moved = g_transform(dilate(mu, lam))
            assert in_principal_ideal(moved, base).verdict == MEMBER, name


# ---------------------------------------------------------------------------
# horizon mode


def test_horizon_mode_staircase_vs_line():
    # sqrt-growth staircase against the line g(t) = t
    bps = [float(((n * (n + 1)) // 2) ** 2) for n in range(1, 41)]
    vals = [float((n * (n + 1)) // 2) for n in range(1, 41)]
    stair = g_step(bps, [vals[0]] + vals, integrable=False)
    line = g_transform(pure_power(p=1))
    assert in_kernel(line, stair).verdict == MEMBER
    assert in_principal_ideal(line, stair).verdict == MEMBER
    # and the staircase is not in the ideal of the line... it is:
    # sqrt growth < linear growth
    assert in_principal_ideal(stair, line).verdict == NON_MEMBER


def test_horizon_mode_equal_slope_sampled_is_undecided_kernel():
    xs = np.exp(np.linspace(0.0, 25.0, 2000))
    a = sampled(xs, 1.0 / xs)
    b = sampled(xs, 2.0 / xs)
    dec = in_kernel(g_transform(a), g_transform(b))
    assert dec.verdict == UNDECIDED
    ideal = in_principal_ideal(g_transform(a), g_transform(b))
    assert ideal.verdict == MEMBER and ideal.mode == "horizon"


# ---------------------------------------------------------------------------
# face axioms


def test_face_axioms_base_and_shift():
    g = g_of(p=1)
    rep = face_axioms_check([g, shift(g, 0.0, 5.0)])
    assert rep.ok and rep.n_checks > 4


def test_face_axioms_two_powers():
    rep = face_axioms_check([g_of(p=1), g_of(p=2)])
    assert rep.ok


def test_face_axioms_singleton():
    rep = face_axioms_check([g_of(p=0.5)])
    assert rep.ok


# ---------------------------------------------------------------------------
# regular domination


def test_regular_domination_agrees_and_returns_witness():
    dec = regular_domination(g_of(p=2), power_log(p=1))
    assert dec.verdict == MEMBER
    assert dec.dominating is not None
    ts = np.linspace(10, 100, 200)
    assert np.all(g_of(p=2).eval(ts) >= dec.dominating.eval(ts) - 1e-9)
    assert regular_domination(g_of(p=0.5), power_log(p=1)).verdict == NON_MEMBER
    same = regular_domination(g_of(p=1), power_log(p=1))
    assert same.verdict == MEMBER


def test_regular_domination_rejects_irregular_base():
    bps = [float(((n * (n + 1)) // 2) ** 2) for n in range(1, 21)]
    vals = [float((n * (n + 1)) // 2) for n in range(1, 21)]
    stair = g_step(bps, [vals[0]] + vals, integrable=False)
    with pytest.raises(NotRegular):
        regular_domination(g_of(p=2), stair)


def test_regular_domination_agreement_on_suite(symbolic_suite):
    base = power_log(p=1)
    for name, mu in symbolic_suite:
        ga = g_transform(mu)
        assert regular_domination(ga, base).verdict == in_principal_ideal(
            ga, g_transform(base)
        ).verdict, name
