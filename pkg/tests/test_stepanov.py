import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from semibloch.catalog import levitan_step
from semibloch.errors import ParameterError
from semibloch.signals import PiecewiseConstantSignal, SampledSignal, constant, cosine, translate
from semibloch.stepanov import (
    StepanovParams,
    lift_distance,
    separation_constant,
    separation_witness,
    stepanov_norm,
    stepanov_semi_test,
)

# sup_t int_t^{t+1} |cos|^q, attained on the window centred at 0 (mpmath quadrature)
COS_S1 = 0.958851077208406   # 2 sin(1/2)
COS_S2 = 0.9595496299847904  # sqrt(1/2 + sin(1)/2)
COS_S4 = 0.9609085913209166


@pytest.mark.parametrize("q,expected", [(1, COS_S1), (2, COS_S2), (4, COS_S4)])
def test_cos_norms(q, expected):
    assert stepanov_norm(cosine(1), q) == pytest.approx(expected, abs=1e-6)


def test_constant_and_piecewise_norms():
    assert stepanov_norm(constant(3.0), 2) == pytest.approx(3.0, abs=1e-9)
    F = PiecewiseConstantSignal([0, 1, 2, 5], [1.0, -3.0, 0.5])
    assert stepanov_norm(F, 1) == pytest.approx(3.0)
    # window straddling the jump at 2: (0.5*9 + 0.5*0.25) at best is below 9
    assert stepanov_norm(F, 2) == pytest.approx(3.0)


def test_full_output_brackets():
    value, upper = stepanov_norm(cosine(1), 2, full_output=True)
    assert value <= COS_S2 + 1e-9 <= upper + 1e-9


def test_params_validation():
    with pytest.raises(ParameterError):
        StepanovParams(q=0.5)
    with pytest.raises(ParameterError):
        stepanov_norm(cosine(1), 0.5)


@settings(max_examples=20, deadline=None)
@given(st.lists(st.floats(-5, 5), min_size=2, max_size=12))
def test_norm_monotone_in_q(values):
    bp = np.arange(len(values) + 1, dtype=float) * 0.7
    F = PiecewiseConstantSignal(bp, values)
    n1, n2, n4 = (stepanov_norm(F, q) for q in (1, 2, 4))
    assert n1 <= n2 * (1 + 1e-12) + 1e-12
    assert n2 <= n4 * (1 + 1e-12) + 1e-12
    assert n4 <= max(abs(v) for v in values) + 1e-12


def test_lift_distance_examples():
    c = cosine(1)
    # int_0^1 |cos(s + tau) - cos s| ds at t = 0 versus direct quadrature
    from scipy.integrate import quad

    tau = 0.7
    exact = quad(lambda s: abs(math.cos(s + tau) - math.cos(s)), 0, 1)[0]
    assert lift_distance(translate(c, tau), c, 1, 0.0) == pytest.approx(exact, abs=1e-8)
    F = PiecewiseConstantSignal([0, 1, 2], [1.0, -1.0])
    G = PiecewiseConstantSignal([0, 2], [1.0])
    assert lift_distance(F, G, 1, 0.5) == pytest.approx(1.0)
    assert lift_distance(F, G, 2, 0.5) == pytest.approx(math.sqrt(2.0))


def test_semi_test_trig_delegates():
    w = stepanov_semi_test(cosine(1), "periodic", 2, 1e-3)
    assert w.p == pytest.approx(2 * math.pi)
    w = stepanov_semi_test(cosine(1), "anti", 1, 1e-3)
    assert w.p == pytest.approx(math.pi)


def test_semi_test_piecewise_periodic():
    F = PiecewiseConstantSignal(np.arange(0, 41) * 0.5, [(-1.0) ** n for n in range(40)])
    w = stepanov_semi_test(F, "periodic", 1, 1e-3)
    assert w is not None and w.p == pytest.approx(1.0)
    w = stepanov_semi_test(F, "anti", 1, 1e-3)
    assert w.p == pytest.approx(0.5)


def test_semi_test_sampled():
    h = 0.01
    x = h * np.arange(3001)
    s = SampledSignal(0, h, np.cos(2 * math.pi * x))
    w = stepanov_semi_test(s, "periodic", 1, 1e-3, candidates=[0.5, 1.0])
    assert w.p == 1.0


def test_levitan_separation():
    F = levitan_step()
    assert separation_constant(F) == 2.0
    for p in (1.0, 2.5, math.pi):
        cert = separation_witness(F, 1, p, x=9.5)
        assert cert.conclusive and cert.m >= 1
        assert cert.lower_bound >= cert.c == 2.0
        lo = 9.5 + cert.m * p
        assert F(lo) * F(9.5) < 0
    assert stepanov_semi_test(F, "periodic", 1, 0.5) is None
    assert stepanov_semi_test(F, "periodic", 2, 0.5) is None


def test_separation_inconclusive_when_window_short():
    F = PiecewiseConstantSignal([0, 2, 4], [1.0, -1.0])
    cert = separation_witness(F, 1, 10.0, x=0.5)
    assert not cert.conclusive and cert.m is None
    with pytest.raises(ParameterError):
        separation_witness(PiecewiseConstantSignal([0, 2], [1.0]), 1, 1.0)
