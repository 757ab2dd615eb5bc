import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from walkident.exact import EPS, EpsPoly, binomial, is_pole, lf
from walkident.identities import (
    REVERSAL_TARGET,
    apply_reversal,
    check_reversal,
    degenerate_symbols,
    eval_identity,
    eval_rhs,
    eval_term,
    get,
    registry,
)

RATIONALS = [F(1, 2), F(-1, 2), F(1, 3), F(7, 5), F(-3, 2), F(9, 7)]


def test_registry_shape():
    reg = registry()
    assert list(reg) == [f"I{i}" for i in range(1, 11)]
    assert reg["I1"].rhs.binomials[0].upper == lf("n+m+r+1")
    assert reg["I9"].rhs_constant == -1
    assert reg["I10"].rhs_constant == -2
    assert reg["I9"].free == () and reg["I5"].free == ("m",)
    with pytest.raises(TypeError):
        reg["I1"] = None


def test_registry_powers_of_two():
    i8 = registry()["I8"]
    (p,) = i8.summand.powers
    assert (p.base, p.exponent) == (2, lf("-k"))
    (q,) = i8.rhs.powers
    assert (q.base, q.exponent) == (2, lf("1-n"))


def test_eval_term_examples():
    assert eval_term("I7", 0, 5, m=-1) == 2
    assert eval_term("I1", 0, 0, m=3, r=5) == 1
    assert eval_term("I5", 1, 1, m=1) == 1


def test_eval_term_against_hand_computation():
    # I2 at n=2, m=1, r=0, k=1: 2/3 * C(3,1) * C(2,1) = 4
    assert eval_term("I2", 1, 2, m=1, r=0) == 4
    # I8 at n=1, m=0, k=1: (5 + 3)/24 * 1/2 * C(2,1)
    assert eval_term("I8", 1, 1, m=0) == F(1, 3)


def test_eval_term_range_checks():
    with pytest.raises(ValueError):
        eval_term("I1", 3, 2, m=0, r=0)
    with pytest.raises(ValueError):
        eval_term("I1", 0, 2, m=0)
    with pytest.raises(ValueError):
        eval_term("I9", 0, 2, m=0)


@pytest.mark.parametrize("ident, n, m, r, lhs, rhs", [
    ("I1", 1, 0, 0, 2, 2),
    ("I2", 1, 0, 0, 3, 3),
    ("I5", 1, 1, None, 2, 2),
    ("I7", 1, -1, None, 4, 4),
    ("I9", 1, None, None, 1, 1),
    ("I1", 0, F(1, 2), F(1, 3), 1, 1),
])
def test_eval_identity_examples(ident, n, m, r, lhs, rhs):
    rep = eval_identity(ident, n, m, r)
    assert (rep.lhs, rep.rhs, rep.status) == (lhs, rhs, "equal")


def test_eval_identity_usage_errors():
    with pytest.raises(ValueError):
        eval_identity("I1", 2, m=1)
    with pytest.raises(ValueError):
        eval_identity("I7", 2, m=1, r=1)
    with pytest.raises(ValueError):
        eval_identity("I9", -1)
    with pytest.raises(ValueError):
        eval_identity("I11", 1)


def test_eval_identity_keeps_terms():
    rep = eval_identity("I7", 1, -1, keep_terms=True)
    assert rep.terms == (2, 2)
    assert rep.reason == "eps-limit in m"


def test_summand_count_is_n_plus_one():
    for n in range(6):
        assert len(eval_identity("I2", n, 1, 2, keep_terms=True).terms) == n + 1


def test_integer_grid_small():
    for ident in ("I1", "I2", "I3", "I4"):
        for n in range(6):
            for m in range(-4, 5):
                for r in range(-4, 5):
                    rep = eval_identity(ident, n, m, r)
                    assert rep.status in ("equal", "pole"), rep


def test_rational_points():
    for ident in ("I1", "I2", "I3", "I4"):
        for m in RATIONALS:
            for r in RATIONALS:
                for n in range(8):
                    assert eval_identity(ident, n, m, r).status == "equal"
    for ident in ("I7", "I8"):
        for m in RATIONALS:
            for n in range(10):
                assert eval_identity(ident, n, m).status == "equal"


def test_lower_index_identities_on_nonnegative_m():
    for ident in ("I5", "I6"):
        for m in range(13):
            for n in range(10):
                assert eval_identity(ident, n, m).status == "equal"


def test_special_cases_hold():
    for n in range(31):
        assert eval_identity("I9", n).status == "equal"
        assert eval_identity("I10", n).status == "equal"


def test_special_cases_follow_from_the_degenerate_sums():
    # the m = -1 sums of I7 and I8 expressed through I9 and I10
    for n in range(1, 12):
        s7 = eval_identity("I7", n, -1).lhs
        s8 = eval_identity("I8", n, -1).lhs
        s9 = eval_identity("I9", n).lhs
        s10 = eval_identity("I10", n - 1).lhs
        assert s7 == 2 + 2 * s9 - 2 * eval_term("I9", 0, n)
        assert s8 == 1 + s10 / 2


@pytest.mark.parametrize("m", [-1, -2])
@pytest.mark.parametrize("ident", ["I7", "I8"])
def test_degenerate_terms_resolve(ident, m):
    for n in range(21):
        rep = eval_identity(ident, n, m, keep_terms=True)
        assert rep.status == "equal"
        assert not any(is_pole(t) for t in rep.terms)


@pytest.mark.parametrize("ident", ["I7", "I8"])
def test_poles_cancel_across_terms_at_minus_three(ident):
    # single terms blow up but the sum has a finite limit
    for n in range(1, 21):
        rep = eval_identity(ident, n, -3, keep_terms=True)
        assert rep.status == "equal"
        assert any(is_pole(t) for t in rep.terms)
    assert eval_identity(ident, 0, -3).status == "pole"


def test_degenerate_symbols():
    assert degenerate_symbols("I7", 2, -1) == {"m"}
    assert degenerate_symbols("I7", 2, 4) == frozenset()
    assert degenerate_symbols("I4", 1, -1, -2) == {"m", "r"}
    assert degenerate_symbols("I6", 1, -1) == {"m"}


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(["I1", "I2", "I3", "I4", "I7", "I8"]), st.integers(0, 6),
       st.fractions(-6, 6, max_denominator=7), st.fractions(-6, 6, max_denominator=7))
def test_eps_path_matches_direct_value_at_regular_points(ident, n, m, r):
    d = get(ident)
    r = r if "r" in d.free else None
    if degenerate_symbols(d, n, m, r):
        return
    for k in range(n + 1):
        direct = eval_term(d, k, n, m, r)
        if is_pole(direct):
            return
        assert eval_term(d, k, n, m, r, perturbed=frozenset(d.free)) == direct
    assert eval_rhs(d, n, m, r, perturbed=frozenset(d.free)) == eval_rhs(d, n, m, r)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(["I1", "I2", "I3", "I4"]), st.integers(0, 7),
       st.fractions(-8, 8, max_denominator=9), st.fractions(-8, 8, max_denominator=9))
def test_identities_hold_at_random_rationals(ident, n, m, r):
    rep = eval_identity(ident, n, m, r)
    assert rep.status in ("equal", "pole")
    if rep.status == "equal":
        shuffled = list(rep.terms or eval_identity(ident, n, m, r, keep_terms=True).terms)
        random.Random(n).shuffle(shuffled)
        assert sum(shuffled) == rep.lhs


# -- high-precision numerical oracle for the limits ---------------------------


def _mp_sides(mp, ident, n, m):
    """Both sides of I5-I8 from their closed formulas, with Gamma binomials."""
    B, k_range = mp.binomial, range(n + 1)
    if ident == "I5":
        lhs = sum((2 * k + 1) ** 2 / ((n + k + 1) * (m + k + 1)) * B(2 * m, m + k) * B(2 * n, n + k)
                  for k in k_range)
        return lhs, B(2 * n + 2 * m, n + m) / (n + m + 1)
    if ident == "I6":
        lhs = sum((k + 1) * (k + 2) / (m + k + 2) * B(2 * m + k + 1, m) * B(2 * n - k, n) for k in k_range)
        return lhs, (n + 1) / (n + m + 2) * B(2 * n + 2 * m + 2, n + m + 1)
    q = 3 if ident == "I7" else 1
    lhs = 0
    for k in k_range:
        extra = 3 * (m + 2 * k + 1) ** 2 if ident == "I7" else (m + 2 * k - 1) * (m + 2 * k + 1)
        lhs += (((m + 1) * (m + 5) + extra) / ((m + k + 1) * (m + k + 2) * (m + k + 3))
                * B(m + 2 * k, k) * (mp.mpf(2) ** -k if q == 1 else 1))
    rhs = B(2 * n + m + 2, n) / (n + m + 3)
    return lhs, (4 * rhs if ident == "I7" else 2 ** (1 - n) * rhs)


@pytest.mark.parametrize("ident, ms", [
    ("I5", [-1, -2, -3, -4]),
    ("I6", [-1, -2, -3, -4]),
    ("I7", [-1, -2, -3, -4]),
    ("I8", [-1, -2, -3, -4]),
])
def test_limits_match_high_precision_numerics(ident, ms):
    mp = pytest.importorskip("mpmath")
    mp.mp.dps = 80
    delta = mp.mpf(10) ** -30
    for m in ms:
        for n in range(7):
            rep = eval_identity(ident, n, m)
            lhs, rhs = _mp_sides(mp, ident, n, m + delta)
            for exact, approx in ((rep.lhs, lhs), (rep.rhs, rhs)):
                if is_pole(exact):
                    assert abs(approx) > 10 ** 10
                else:
                    value = mp.mpf(F(exact).numerator) / F(exact).denominator
                    assert abs(approx - value) < mp.mpf(10) ** -20 * (1 + abs(value))


def test_lower_index_identities_hold_at_negative_m():
    for ident in ("I5", "I6"):
        for m in range(-10, 0):
            for n in range(16):
                assert eval_identity(ident, n, m).status in ("equal", "pole")


# -- reversal ------------------------------------------------------------------


def test_reversal_targets():
    assert dict(REVERSAL_TARGET) == {"I1": "I1", "I2": "I3", "I3": "I2", "I4": "I4"}
    with pytest.raises(ValueError):
        apply_reversal("I7")


@pytest.mark.parametrize("ident, point", [
    ("I2", (3, 2, 5)),
    ("I1", (2, F(1, 2), 4)),
    ("I4", (2, 3, 3)),
    ("I3", (4, F(-3, 2), F(9, 7))),
])
def test_reversal_examples(ident, point):
    rep = check_reversal(ident, *point)
    assert rep.status == "equal"
    assert len(rep.lhs) == point[0] + 2


def test_reversal_swaps_symbols():
    rev = apply_reversal("I2")
    assert rev.rhs.binomials[0].upper == lf("2n+m+r+1")
    assert rev.summand.numerator[0][1] == (lf("r+1"),)
    assert rev.summand.denominator == (lf("n+r-k+1"),)


def test_reversal_of_wrong_target_is_detected():
    # I2 reversed is I3, not I2
    rev = apply_reversal("I2")
    m, r, n = F(1, 2), F(7, 5), 3
    assert any(eval_term(rev, k, n, m, r) != eval_term("I2", k, n, m, r) for k in range(n + 1))


def test_eps_poly_binomial_matches_scalar_on_shift():
    p = binomial(EpsPoly((-1, 1)), 3)
    assert p == binomial(EPS - 1, 3)
    assert p(F(1, 5)) == binomial(F(-4, 5), 3)
