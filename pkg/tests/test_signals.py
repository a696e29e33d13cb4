import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semibloch.errors import DomainError, ParameterError, PreconditionError, UnsupportedRepresentation
from semibloch.frequency import PI_SQRT2, Frequency
from semibloch.signals import (
    HALF_LINE,
    PiecewiseConstantSignal,
    SampledSignal,
    TrigPolynomial,
    TruncatedSeries,
    bloch_reduce,
    constant,
    cosine,
    exponential,
    extend_to_real_line,
    modulus_bounds,
    reciprocal,
    scale,
    sine,
    sup_distance,
    translate,
)

coef = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)
freq = st.fractions(min_value=-6, max_value=6, max_denominator=8)


@st.composite
def trig_polys(draw, max_terms=5):
    lams = draw(st.lists(freq, min_size=1, max_size=max_terms, unique=True))
    cs = draw(st.lists(coef, min_size=len(lams), max_size=len(lams)))
    return TrigPolynomial(zip(cs, lams))


def test_evaluate_examples():
    c = cosine(1)
    assert c(0.0) == pytest.approx(1.0)
    assert c(math.pi) == pytest.approx(-1.0)
    strina = sine(1) + sine(Frequency(1, PI_SQRT2))
    assert abs(strina(0.0)) < 1e-15
    x = np.linspace(-5, 5, 11)
    np.testing.assert_allclose(strina(x), np.sin(x) + np.sin(math.pi * math.sqrt(2) * x), atol=1e-13)


def test_invariants_enforced():
    with pytest.raises(ParameterError):
        TrigPolynomial([(1, 1), (2, 1)])
    assert len(TrigPolynomial([(0.0, 1), (1.0, 2)])) == 1
    with pytest.raises(ParameterError):
        PiecewiseConstantSignal([0, 1, 1], [1, 2])
    with pytest.raises(ParameterError):
        SampledSignal(0, 0.0, [1.0])
    with pytest.raises(ParameterError):
        SampledSignal(0, 0.1, [0.0, 1.0], lipschitz_bound=1.0)


def test_domains():
    h = cosine(1, domain=HALF_LINE)
    with pytest.raises(DomainError):
        h(-0.1)
    with pytest.raises(DomainError):
        translate(h, -1.0)
    F = PiecewiseConstantSignal([0, 1, 3], [1.0, -1.0])
    assert F(0.5) == 1.0 and F(1.0) == -1.0
    with pytest.raises(DomainError):
        F(3.0)
    assert extend_to_real_line(h).domain == "R"
    with pytest.raises(UnsupportedRepresentation):
        extend_to_real_line(F)


def test_translate_examples():
    c = cosine(1)
    np.testing.assert_allclose(translate(c, 2 * math.pi).coefficients, c.coefficients, atol=1e-15)
    e = translate(exponential(1), math.pi)
    assert e.coefficients[0] == pytest.approx(-1.0, abs=1e-15)
    F = PiecewiseConstantSignal([0, 1, 3], [1.0, -1.0])
    np.testing.assert_array_equal(translate(F, 0.5).breakpoints, [-0.5, 0.5, 2.5])


def test_translate_large_shift_is_accurate():
    # the phase is reduced in high precision, so shifting by a huge multiple of the period is exact
    c = cosine(1)
    shifted = translate(c, 2 * math.pi * 10 ** 12)
    # the float shift itself is not an exact multiple of 2 pi; compare to the exact phase
    import mpmath

    with mpmath.workdps(50):
        ph = complex(mpmath.expj(mpmath.mpf(2 * math.pi * 10 ** 12)))
    assert shifted.coefficient(1) == pytest.approx(0.5 * ph, abs=1e-15)


@settings(max_examples=50, deadline=None)
@given(trig_polys(), st.floats(-50, 50), st.floats(-20, 20))
def test_translate_matches_evaluation(f, tau, x):
    assert translate(f, tau)(x) == pytest.approx(f(x + tau), abs=1e-9 * (1 + f.coefficient_l1))


def test_bloch_reduce_examples():
    assert set(bloch_reduce(cosine(1), 1).frequencies) == {Frequency(0), Frequency(-2)}
    k = Frequency(Fraction(1, 2))
    assert set(bloch_reduce(cosine(1), k).frequencies) == {Frequency(1) - k, Frequency(-1) - k}
    g = cosine(2) + 3
    k = Frequency(Fraction(3, 5))
    assert bloch_reduce(g * exponential(k), k) == g


@settings(max_examples=50, deadline=None)
@given(trig_polys(), freq, st.floats(-10, 10))
def test_bloch_reduce_pointwise(f, k, x):
    r = bloch_reduce(f, k)
    assert r(x) == pytest.approx(np.exp(-1j * float(k) * x) * f(x), abs=1e-9 * (1 + f.coefficient_l1))


def test_scale_and_reciprocal():
    f = constant(2.0) + cosine(1)
    assert scale(f, 3)(0.0) == pytest.approx(9.0)
    m, M = modulus_bounds(f)
    assert 0.99 < m <= 1.0 and 3.0 <= M < 3.01
    r = reciprocal(f, (0, 10), 0.01)
    x = np.linspace(0, 10, 7)
    np.testing.assert_allclose(r(x), 1 / (2 + np.cos(x)), atol=1e-4)
    assert r.lipschitz_bound == pytest.approx(f.lipschitz / m ** 2)
    with pytest.raises(PreconditionError):
        reciprocal(cosine(1), (0, 1), 0.1)
    with pytest.raises(PreconditionError):
        reciprocal(PiecewiseConstantSignal([0, 1], [1.0]), (0, 1), 0.1)


def test_bloch_reciprocal_flips_wave_vector():
    # f Bloch (p,k)-periodic => 1/f Bloch (p,-k)-periodic
    k = 0.5
    f = exponential(Fraction(1, 2)) * (constant(2.0) + cosine(1))
    p = 2 * math.pi
    h = p / 600  # shifts by p land on the sample grid
    r = reciprocal(f, (0, 3 * p), h)
    x = h * np.arange(0, 600, 37)
    np.testing.assert_allclose(r(x + p), np.exp(-1j * k * p) * r(x), atol=1e-10)


def test_sup_distance():
    c = cosine(1)
    d = sup_distance(c, translate(c, 0.2), (0, 2 * math.pi), 1e-3)
    exact = 2 * math.sin(0.1)  # |cos(x+t) - cos x| peaks at 2 sin(t/2)
    assert d.certified and d.lo <= exact <= d.hi
    assert d.hi - d.lo <= 1e-3 * 1.0 + 1e-12  # Lipschitz slack L*h/2 with L = 2
    F = PiecewiseConstantSignal([0, 1, 2], [1.0, 3.0])
    G = PiecewiseConstantSignal([0, 1.5, 2], [1.0, 0.0])
    assert sup_distance(F, G, (0, 2), 0.1).hi == 3.0
    s = TruncatedSeries(c, 0.1)
    d = sup_distance(s, c, (0, 1), 0.01)
    assert d.lo == 0.0 and d.hi >= 0.1


def test_sampled_interpolation():
    x = 0.1 * np.arange(11)
    s = SampledSignal(0.0, 0.1, 2 * x, lipschitz_bound=2.0)
    assert s(0.55) == pytest.approx(1.1)
    with pytest.raises(DomainError):
        s(1.5)
