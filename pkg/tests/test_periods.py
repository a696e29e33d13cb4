import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semibloch.catalog import strina1_tail
from semibloch.errors import ParameterError, UnsupportedRepresentation
from semibloch.frequency import PI_SQRT2, SQRT2, Frequency
from semibloch.periods import (
    ALL_M,
    almost_anti_periodic_test,
    bloch_exact_check,
    epsilon_period_scan,
    quantifier_search,
    semi_anti_witness,
    semi_bloch_witness,
    witness_bound,
)
from semibloch.signals import (
    PiecewiseConstantSignal,
    SampledSignal,
    TrigPolynomial,
    TruncatedSeries,
    bloch_reduce,
    constant,
    cosine,
    exponential,
    sine,
)


def strina():
    return sine(1) + sine(Frequency(1, PI_SQRT2))


def test_cos_antiperiod_scan():
    scan = epsilon_period_scan(cosine(1), "antiperiod", 0.01, (0, 20), 0.001)
    assert scan.certified and scan.hits.size
    # every hit sits near an odd multiple of pi
    k = np.round((scan.hits - math.pi) / (2 * math.pi))
    assert np.all(np.abs(scan.hits - (math.pi + 2 * math.pi * k)) < 0.011)
    assert np.all(scan.bounds <= 0.01)


def test_constant_has_no_antiperiods():
    scan = epsilon_period_scan(constant(1.0), "antiperiod", 1.0, (0, 100), 0.1)
    assert scan.hits.size == 0 and scan.max_gap == 100


def test_strina_almost_anti_on_window():
    res = almost_anti_periodic_test(strina(), 0.2, (0, 1e4), 0.01)
    assert res.passed
    # frozen from an independent scan of |1 + e^{i tau}| + |1 + e^{i pi sqrt2 tau}|
    assert res.scan.hits.size == 2031
    assert res.scan.max_gap == pytest.approx(43.81, abs=0.01)


def test_scan_independent_oracle():
    tau = 0.01 * np.arange(1, 100001)
    env = np.abs(1 + np.exp(1j * tau)) + np.abs(1 + np.exp(1j * math.pi * math.sqrt(2) * tau))
    scan = epsilon_period_scan(strina(), "antiperiod", 0.2, (0, 1000), 0.01)
    np.testing.assert_allclose(scan.hits, tau[env <= 0.2])


def test_scan_worker_independence():
    a = epsilon_period_scan(strina(), "antiperiod", 0.3, (0, 2000), 0.01, workers=1)
    b = epsilon_period_scan(strina(), "antiperiod", 0.3, (0, 2000), 0.01, workers=8)
    assert np.array_equal(a.hits, b.hits) and np.array_equal(a.bounds, b.bounds)


def test_piecewise_scan_exact():
    F = PiecewiseConstantSignal(np.arange(0, 21), [(-1.0) ** n for n in range(20)])
    scan = epsilon_period_scan(F, "antiperiod", 0.5, (0, 10), 0.5)
    np.testing.assert_allclose(scan.hits, [1, 3, 5, 7, 9])
    scan = epsilon_period_scan(F, "period", 0.5, (0, 10), 0.5)
    np.testing.assert_allclose(scan.hits, [2, 4, 6, 8])


def test_sampled_scan_certification():
    h = 2 * math.pi / 400
    x = h * np.arange(4001)
    s = SampledSignal(0, h, np.cos(x), lipschitz_bound=1.0)
    # Lipschitz slack is 1 * h = 0.0157, so epsilon must exceed it
    scan = epsilon_period_scan(s, "period", 0.02, (0, 20), h)
    assert scan.certified and np.any(np.isclose(scan.hits, 2 * math.pi))
    raw = SampledSignal(0, h, np.cos(x))
    assert not epsilon_period_scan(raw, "period", 0.01, (0, 20), h).certified


def test_scan_parameter_errors():
    with pytest.raises(ParameterError):
        epsilon_period_scan(cosine(1), "antiperiod", 0.0)
    with pytest.raises(ParameterError):
        epsilon_period_scan(cosine(1), "bloch", 0.1)
    with pytest.raises(UnsupportedRepresentation):
        epsilon_period_scan(PiecewiseConstantSignal([0, 1], [1.0]), "bloch", 0.1, k=1)


def test_semi_bloch_witness_examples():
    w = semi_bloch_witness(cosine(1), Fraction(1, 2), 1e-3)
    assert w.p == pytest.approx(4 * math.pi) and w.bound == 0 and w.m_horizon == ALL_M
    assert semi_bloch_witness(cosine(1), Frequency(1, SQRT2), 1e-3) is None
    w = semi_bloch_witness(exponential(Fraction(1, 3)), 0, 1e-3)
    assert w.p == pytest.approx(6 * math.pi)


def test_semi_anti_witness_examples():
    head = TrigPolynomial((1.0 / n ** 2, Fraction(1, 2 * n + 1)) for n in (1, 2))
    w = semi_anti_witness(head, 1e-3)
    assert w.p == pytest.approx(15 * math.pi) and w.bound == 0
    assert semi_anti_witness(constant(1.0), 1e-3) is None
    w = semi_anti_witness(TrigPolynomial([(1, Fraction(1, 3)), (1, Fraction(5, 7))]), 1e-3)
    assert w.p == pytest.approx(21 * math.pi)
    assert semi_anti_witness(cosine(1) + cosine(2), 1e-3) is None


def test_series_witness_carries_tail():
    N = 4
    head = TrigPolynomial((1.0 / n ** 2, Fraction(1, 2 * n + 1)) for n in range(1, N + 1))
    f = TruncatedSeries(head, strina1_tail(N))
    assert semi_anti_witness(f, 0.3) is None
    w = semi_anti_witness(f, 0.5)
    assert w.bound == pytest.approx(2 * strina1_tail(N))


def test_bloch_exact_check():
    ok, res = bloch_exact_check(cosine(1), 2 * math.pi, 0)
    assert ok and res < 1e-15  # float(2 pi) is off by ~2.4e-16
    ok, res = bloch_exact_check(cosine(1), math.pi, 0)
    assert not ok and res == pytest.approx(2.0)
    f = exponential(Fraction(1, 2)) * cosine(1)  # Bloch (2 pi, 1/2)
    ok, res = bloch_exact_check(f, 2 * math.pi, Fraction(1, 2))
    assert ok and res < 1e-14


def test_witness_bound_general_p():
    # at an arbitrary p the envelope equals sum |a| |e^{i lam m p} - 1| maximised over m
    f = cosine(1)
    p = 1.0
    m = np.arange(1, 65)
    expected = np.max(np.abs(np.exp(1j * m * p) - 1))
    assert witness_bound(f, p, "bloch", 0) == pytest.approx(expected, rel=1e-12)


commensurable = st.lists(
    st.tuples(st.floats(0.1, 2.0), st.integers(-8, 8)), min_size=1, max_size=4,
    unique_by=lambda t: t[1],
)


@settings(max_examples=40, deadline=None)
@given(commensurable, st.sampled_from([Fraction(1, 3), Fraction(2, 5), Fraction(-7, 4), Fraction(0)]),
       st.sampled_from([Fraction(1, 2), Fraction(1, 3), Fraction(1)]))
def test_bloch_reduction_equivalence(terms, k, unit):
    f = TrigPolynomial((a, n * unit) for a, n in terms)
    w1 = semi_bloch_witness(f, k, 1e-3)
    w2 = semi_bloch_witness(bloch_reduce(f, k), 0, 1e-3)
    assert (w1 is None) == (w2 is None)
    if w1 is not None:
        assert w1.p == w2.p


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(-10, 10).filter(lambda n: n % 2), min_size=1, max_size=4, unique=True),
       st.sampled_from([Fraction(1, 3), Fraction(2, 7), Fraction(1)]))
def test_anti_witness_shape(odd, unit):
    f = TrigPolynomial((1.0, n * unit) for n in odd)
    eps = 1e-3
    w = semi_anti_witness(f, eps / 2)
    assert w is not None
    assert witness_bound(f, 2 * w.p, "bloch", 0) <= eps
    for m in range(0, 8):
        assert witness_bound(f, (2 * m + 1) * w.p, "anti", m_max=1) <= eps


def test_quantifier_search_on_incommensurable():
    # strina: small m only, so near-periods exist numerically, but never exactly zero
    q = quantifier_search(strina(), "bloch", 1e-3, (0.5, 50.0), 1e-3, m_max=2)
    assert q.best_value > 0
