import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semibloch.errors import ParameterError, UnsupportedRepresentation
from semibloch.frequency import PI_SQRT2, SQRT2, Frequency
from semibloch.periods import quantifier_search
from semibloch.signals import (
    PiecewiseConstantSignal,
    TrigPolynomial,
    TruncatedSeries,
    constant,
    cosine,
    sine,
)
from semibloch.spectrum import (
    NO,
    UNKNOWN,
    YES,
    bohr_coefficient,
    commensurability_theta,
    spectral_classify,
    spectrum,
)


def strina():
    return sine(1) + sine(Frequency(1, PI_SQRT2))


def test_bohr_examples():
    est, bound = bohr_coefficient(cosine(1), 1, 100)
    assert abs(est - 0.5) <= bound
    est, bound = bohr_coefficient(cosine(1), Fraction(1, 2), 100)
    assert abs(est) <= bound
    # positive-frequency coefficient of sin(a x) is 1/(2i) = -i/2
    errs = []
    for T in (10, 100, 1000):
        est, bound = bohr_coefficient(strina(), Frequency(1, PI_SQRT2), T)
        assert abs(est - (-0.5j)) <= bound
        errs.append(abs(est + 0.5j))
    assert errs[-1] < errs[0]


def test_bohr_piecewise_exact_integral():
    F = PiecewiseConstantSignal([0, 1, 2], [1.0, 3.0])
    est, bound = bohr_coefficient(F, 0, 2)
    assert est == pytest.approx(2.0) and bound == math.inf
    est, _ = bohr_coefficient(F, 1.0, 2)
    exact = ((1 - np.exp(-1j)) + 3 * (np.exp(-1j) - np.exp(-2j))) / 1j / 2
    assert est == pytest.approx(exact, abs=1e-14)


def test_bohr_rejects_short_T():
    with pytest.raises(ParameterError):
        bohr_coefficient(cosine(1), 1, 0.5)


@settings(max_examples=30, deadline=None)
@given(
    st.lists(st.fractions(min_value=-4, max_value=4, max_denominator=5), min_size=1, max_size=4, unique=True),
    st.sampled_from([10.0, 100.0]),
    st.floats(-5, 5),
)
def test_bohr_bound_is_honest(lams, T, probe):
    f = TrigPolynomial((1.0 + j, lam) for j, lam in enumerate(lams))
    for c, lam in f.terms:
        est, bound = bohr_coefficient(f, lam, T)
        assert abs(est - c) <= bound
    est, bound = bohr_coefficient(f, probe, T)
    assert abs(est - f.coefficient(Fraction(probe))) <= bound or any(abs(float(l) - probe) < 1e-12 for l in lams)


def test_bohr_worker_independence():
    a = bohr_coefficient(strina(), 1, 1000, workers=1)
    b = bohr_coefficient(strina(), 1, 1000, workers=4)
    assert a == b


def test_spectrum_examples():
    assert set(spectrum(strina())) == {Frequency(1), Frequency(-1), Frequency(1, PI_SQRT2), Frequency(-1, PI_SQRT2)}
    assert spectrum(constant(2.0)).has_zero
    assert spectrum(TruncatedSeries(cosine(1), 0.1)).head_only
    with pytest.raises(UnsupportedRepresentation):
        spectrum(PiecewiseConstantSignal([0, 1], [1.0]))


def test_commensurability_theta():
    assert commensurability_theta([Frequency(Fraction(1, 3)), Frequency(Fraction(5, 7))]) == Frequency(Fraction(1, 21))
    assert commensurability_theta([Frequency(1), Frequency(1, PI_SQRT2)]) is None
    assert commensurability_theta([Frequency(0), Frequency(2)]) == Frequency(2)
    assert commensurability_theta([Frequency(0)]) is None


@pytest.mark.parametrize(
    "f,expected",
    [
        (constant(1.0), (YES, NO, NO)),
        (cosine(1), (YES, YES, YES)),
        (strina(), (NO, NO, YES)),
        (TrigPolynomial([(1, Fraction(1, 3)), (1, Fraction(5, 7))]), (YES, YES, YES)),
        (cosine(1) + cosine(2), (YES, NO, YES)),
        (cosine(1) + 1, (YES, NO, NO)),
        (TrigPolynomial([]), (YES, YES, YES)),
        (cosine(Frequency(2, SQRT2)) + cosine(Frequency(6, SQRT2)), (YES, YES, YES)),
    ],
)
def test_spectral_classify(f, expected):
    v = spectral_classify(f)
    assert (v.semi_periodic, v.semi_anti, v.anp_member) == expected


def test_series_head_nonuniform_is_unknown():
    v = spectral_classify(TruncatedSeries(cosine(1) + cosine(2), 0.01))
    assert v.semi_anti == UNKNOWN and v.tail_slack == 0.01


def test_spectral_classify_theta_and_multipliers():
    v = spectral_classify(TrigPolynomial([(1, Fraction(1, 3)), (1, Fraction(5, 7))]))
    assert v.theta == Frequency(Fraction(1, 21)) and v.multipliers == (7, 15)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.integers(1, 12), min_size=2, max_size=4, unique=True))
def test_nonuniform_valuation_matches_quantifier_search(ns):
    # the spectral "no" for mixed 2-adic valuations agrees with a brute-force search over p:
    # no p in one full period of the envelope gives an antiperiod at level 1e-3
    f = TrigPolynomial((1.0, n) for n in ns)
    v = spectral_classify(f)
    search = quantifier_search(f, "anti", 1e-3, (1e-3, 2 * math.pi), 1e-4, m_max=1)
    if v.semi_anti == NO:
        assert search.lower_bound > 1e-3
    else:
        # uniform valuation: p = pi/gcd is an exact antiperiod, so the grid minimum
        # is within the Lipschitz slack of zero
        assert v.semi_anti == YES
        assert search.best_value <= sum(ns) * 1e-4
