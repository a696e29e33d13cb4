import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semibloch.errors import NonSummableError, ParameterError, PreconditionError, UnsupportedRepresentation
from semibloch.convolution import (
    KernelFamily,
    asymptotic_conditions,
    conjugate_exponent,
    convolve_trig,
    decompose,
    finite_convolution,
    heat_evolve,
    heat_quadrature,
    infinite_convolution,
    preservation_check,
    shifted_summability,
    summability_constant,
    transfer,
)
from semibloch.frequency import SQRT2, Frequency
from semibloch.periods import bloch_exact_check
from semibloch.signals import (
    PiecewiseConstantSignal,
    TrigPolynomial,
    TruncatedSeries,
    constant,
    cosine,
    exponential,
    translate,
)
from semibloch.spectrum import spectral_classify

EXP = KernelFamily.exponential(1.0)
# closed forms (checked with mpmath)
M_INF = 1.5819767068693265      # 1/(1 - e^-1)
M_TWO = 1.0401810933050679      # sqrt((1 - e^-2)/2)/(1 - e^-1)
M_GAUSS = 0.6410473958869391    # (4 pi)^-1/2 sum_k e^{-k^2/4}
GAUSS_TRANSFER_1 = 0.18393972058572116 - 0.3035788529206969j


def test_conjugate_exponent():
    assert conjugate_exponent(1) == math.inf
    assert conjugate_exponent(2) == 2
    assert conjugate_exponent(math.inf) == 1
    with pytest.raises(ParameterError):
        conjugate_exponent(0.5)


def test_kernel_validation():
    with pytest.raises(ParameterError):
        KernelFamily.exponential(0)
    with pytest.raises(ParameterError):
        KernelFamily.gauss(-1)
    with pytest.raises(ParameterError):
        KernelFamily.tabulated(0.1, [1.0])
    with pytest.raises(ParameterError):
        KernelFamily("bessel")


@pytest.mark.parametrize(
    "kernel,qp,expected",
    [(EXP, math.inf, M_INF), (EXP, 1.0, 1.0), (EXP, 2.0, M_TWO), (KernelFamily.gauss(1.0), math.inf, M_GAUSS)],
)
def test_summability_constants(kernel, qp, expected):
    s = summability_constant(kernel, qp)
    assert s.M == pytest.approx(expected, rel=1e-9)
    assert s.tail_bound <= 1e-10 * s.M


def test_shifted_summability_exponential():
    # m_s = e^{-s}/(1 - e^{-1}) for q' = inf
    for s in (0.5, 3.0, 10.0):
        assert shifted_summability(EXP, s).M == pytest.approx(math.exp(-s) * M_INF, rel=1e-9)


def test_tabulated_kernel():
    step = 0.01
    t = step * np.arange(2001)
    k = KernelFamily.tabulated(step, np.exp(-t))
    s = summability_constant(k)
    assert s.tail_bound is None
    assert s.M == pytest.approx(sum(math.exp(-j) for j in range(20)), rel=1e-6)
    flat = KernelFamily.tabulated(1.0, np.ones(200))
    with pytest.raises(NonSummableError):
        summability_constant(flat)


def test_infinite_convolution_closed_forms():
    val, bound = infinite_convolution(EXP, exponential(1), 0.0, full_output=True)
    assert abs(val - (0.5 - 0.5j)) <= 1e-9
    assert bound < 1e-9
    np.testing.assert_allclose(infinite_convolution(EXP, constant(1.0), [0.0, 3.0, -7.0]), 1.0, atol=1e-9)
    assert infinite_convolution(EXP, cosine(1), 0.0) == pytest.approx(0.5, abs=1e-9)


def test_infinite_convolution_translation_invariance():
    g = cosine(1) + 0.5 * exponential(Fraction(1, 3))
    tau = 1.7
    a = infinite_convolution(EXP, translate(g, tau), [0.0, 2.0])
    b = infinite_convolution(EXP, g, [tau, 2.0 + tau])
    np.testing.assert_allclose(a, b, atol=1e-9)


def test_finite_convolution():
    for t in (0.5, 2.0, 7.0):
        assert finite_convolution(EXP, constant(1.0), t) == pytest.approx(1 - math.exp(-t), abs=1e-12)
    assert finite_convolution(EXP, constant(1.0), 0.0) == 0
    with pytest.raises(ParameterError):
        finite_convolution(EXP, constant(1.0), -1.0)
    t = 3.0
    exact = np.exp(1j * t) * (1 - np.exp(-(1 + 1j) * t)) / (1 + 1j)
    assert finite_convolution(EXP, exponential(1), t) == pytest.approx(exact, abs=1e-12)
    # H(t) -> G(t) as t grows
    g = exponential(1)
    assert abs(finite_convolution(EXP, g, 50.0) - np.exp(50j) / (1 + 1j)) < 1e-10


def test_transfer_and_convolve_trig():
    assert transfer(EXP, 1.0) == pytest.approx(1 / (1 + 1j), abs=1e-12)
    assert transfer(KernelFamily.gauss(1.0), 1.0) == pytest.approx(GAUSS_TRANSFER_1, abs=1e-10)
    G = convolve_trig(EXP, cosine(1))
    x = np.linspace(-3, 3, 7)
    np.testing.assert_allclose(G(x), infinite_convolution(EXP, cosine(1), x), atol=1e-9)
    with pytest.raises(UnsupportedRepresentation):
        convolve_trig(EXP, PiecewiseConstantSignal([0, 1], [1.0]))


@settings(max_examples=20, deadline=None)
@given(st.lists(st.integers(-5, 5), min_size=1, max_size=3, unique=True),
       st.sampled_from([Fraction(1, 2), Fraction(1, 3)]))
def test_young_invariance(ns, k):
    # exact Bloch (p, k) inputs stay exact Bloch (p, k) after convolution
    f = exponential(k) * TrigPolynomial((1.0, n) for n in ns)
    p = 2 * math.pi
    assert bloch_exact_check(f, p, k)[0]
    G = convolve_trig(EXP, f)
    ok, residual = bloch_exact_check(G, p, k)
    assert ok and residual < 1e-12


def test_heat_multiplier():
    u = heat_evolve(exponential(1), 1.0)
    assert u.coefficient(1) == pytest.approx(math.exp(-1), abs=1e-15)
    assert heat_quadrature(exponential(1), 0.0, 1.0) == pytest.approx(math.exp(-1), abs=1e-12)
    assert heat_evolve(constant(2.0), 5.0) == constant(2.0)
    u = heat_evolve(cosine(1), 0.5)
    assert u(0.3) == pytest.approx(heat_quadrature(cosine(1), 0.3, 0.5), abs=1e-12)
    s = heat_evolve(TruncatedSeries(cosine(1), 0.1), 1.0)
    assert s.tail_sup_bound == 0.1
    with pytest.raises(ParameterError):
        heat_evolve(cosine(1), 0.0)
    with pytest.raises(ParameterError):
        heat_quadrature(cosine(1), 0.0, -1.0)


def test_heat_preserves_verdicts():
    for f in (cosine(1), cosine(1) + 1, cosine(1) + cosine(2), TrigPolynomial([(1, Fraction(1, 3)), (1, Fraction(5, 7))])):
        a, b = spectral_classify(f), spectral_classify(heat_evolve(f, 1.0))
        assert (a.semi_periodic, a.semi_anti, a.anp_member) == (b.semi_periodic, b.semi_anti, b.anp_member)


def test_preservation_check():
    rep = preservation_check(EXP, exponential(Fraction(1, 3)), 0, 1e-3)
    assert rep.witness.p == pytest.approx(6 * math.pi)
    assert rep.measured < 1e-9 and rep.passed
    assert rep.ceiling == pytest.approx(M_INF * 1e-3)
    rep = preservation_check(EXP, TrigPolynomial([(1, Fraction(1, 3)), (1, Fraction(5, 7))]), 0, 1e-3, mode="anti")
    assert rep.passed
    with pytest.raises(PreconditionError):
        preservation_check(EXP, cosine(1) + cosine(Frequency(1, SQRT2)), 0, 1e-3)


def test_preservation_with_inexact_witness():
    # a witness with bound exactly epsilon: the convolved defect stays below M * epsilon
    from semibloch.periods import SemiWitness

    g = cosine(1)
    p = 2 * math.pi + 1e-4
    eps = 2 * math.sin(32 * 1e-4 / 2) * 1.0  # |e^{i m dp} - 1| summed over the two terms at m = 32
    w = SemiWitness(p, "bloch", eps, 32, Fraction(2), None)
    rep = preservation_check(EXP, g, 0, eps, witness=w, m_max=32, t_grid=np.linspace(0, 5, 6))
    assert 0 < rep.measured <= rep.ceiling + 1e-8


def test_asymptotic_conditions():
    phi = lambda t: np.exp(-np.asarray(t, dtype=float))  # noqa: E731
    dec = decompose(cosine(1), phi, q=1)
    rep = asymptotic_conditions(EXP, dec)
    assert rep.passed, rep.violations
    assert all(b < a for a, b in zip(rep.condition_ii, rep.condition_ii[1:]))
    # condition (ii) at t: int_t^{t+1} e^{-s}/(1-e^{-1}) ds = e^{-t}
    assert rep.condition_ii[0] == pytest.approx(math.exp(-10), rel=1e-6)
    with pytest.raises(PreconditionError):
        decompose(cosine(1), lambda t: np.ones_like(np.asarray(t, dtype=float)), q=1)
    with pytest.raises(ParameterError):
        asymptotic_conditions(EXP, dec, q=2)


def test_asymptotic_conditions_non_decaying_kernel():
    flat = KernelFamily.tabulated(1.0, np.ones(300))
    phi = lambda t: np.exp(-np.asarray(t, dtype=float))  # noqa: E731
    rep = asymptotic_conditions(flat, decompose(cosine(1), phi, q=1))
    assert not rep.passed and rep.violations
