"""Stepanov norms, lift distances and Stepanov-class tests.

The lift of ``f`` is ``t -> f(t + .)`` viewed in ``L^q[0, 1]``; Stepanov
classes are periodicity classes of the lift.  Piecewise-constant signals are
handled with exact block arithmetic: the running integral of ``|F|^q`` is
piecewise linear, so every window integral and every supremum over ``t`` is
computed exactly at finitely many candidate points.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy.optimize import minimize_scalar

from ._numerics import block_map
from .errors import DomainError, ParameterError, UnsupportedRepresentation
from .frequency import Frequency
from .periods import semi_anti_witness, semi_bloch_witness, SemiWitness
from .signals import (
    PiecewiseConstantSignal,
    SampledSignal,
    TrigPolynomial,
    TruncatedSeries,
    lipschitz_bound,
    translate,
)

__all__ = [
    "StepanovParams",
    "SeparationCertificate",
    "stepanov_norm",
    "lift_distance",
    "stepanov_semi_test",
    "separation_witness",
    "separation_constant",
]


@dataclass(frozen=True)
class StepanovParams:
    """Discretisation of the Stepanov sup-integral.

    ``t_step`` is the outer grid for ``sup_t``; ``inner_panels`` the Simpson
    panel count on each unit window.
    """

    q: float = 1.0
    window_length: float = 1.0
    t_step: float = 0.05
    inner_panels: int = 64

    def __post_init__(self):
        if not self.q >= 1:
            raise ParameterError("Stepanov exponent q must be >= 1")
        if self.window_length != 1.0:
            raise ParameterError("window length is fixed to 1")
        if self.inner_panels < 64:
            raise ParameterError("inner_panels must be >= 64")
        if not self.t_step > 0:
            raise ParameterError("t_step must be positive")


def _piecewise_cumulative(bp: np.ndarray, vals: np.ndarray, q: float) -> np.ndarray:
    """Running integral of ``|F|^q`` at the breakpoints."""
    return np.concatenate([[0.0], np.cumsum(np.diff(bp) * np.abs(vals) ** q)])


def _window_integrals(bp, cum, t):
    return np.interp(t + 1.0, bp, cum) - np.interp(t, bp, cum)


def _piecewise_sup_window(bp, vals, q, t0, t1) -> tuple[float, float]:
    """Exact ``max_{t in [t0, t1]} int_t^{t+1} |F|^q`` and its argmax."""
    cum = _piecewise_cumulative(bp, vals, q)
    cand = np.concatenate([[t0, t1], bp, bp - 1.0])
    cand = cand[(cand >= t0) & (cand <= t1)]
    vals_t = _window_integrals(bp, cum, cand)
    i = int(np.argmax(vals_t))
    return float(vals_t[i]), float(cand[i])


def _simpson_nodes(panels: int):
    n = 2 * panels
    s = np.linspace(0.0, 1.0, n + 1)
    w = np.ones(n + 1)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return s, w / (3.0 * n)


def _local_power_means(func, ts: np.ndarray, q: float, panels: int) -> np.ndarray:
    """``int_0^1 |func(t + s)|^q ds`` for every ``t`` in ``ts`` (Simpson)."""
    s, w = _simpson_nodes(panels)
    vals = np.abs(func(np.add.outer(ts, s))) ** q
    return vals @ w


def _default_window(f) -> tuple[float, float]:
    if isinstance(f, (PiecewiseConstantSignal, SampledSignal)):
        lo, hi = f.window
        return lo, hi - 1.0
    return 0.0, 100.0


def stepanov_norm(f, q: float = 1.0, window=None, params: StepanovParams | None = None,
                  workers: int = 1, full_output: bool = False):
    """``sup_t (int_t^{t+1} |f(s)|^q ds)^(1/q)`` over ``t`` in ``window``.

    Piecewise-constant signals are exact.  Otherwise the outer supremum uses a
    grid of step ``params.t_step`` refined by a bounded scalar search around
    the best grid point; with ``full_output`` the second return value is a
    certified upper bound ``grid max + Lip(f) * t_step / 2`` (``inf`` when no
    Lipschitz bound is known).
    """
    params = params or StepanovParams(q=q)
    if params.q != q:
        params = StepanovParams(q, params.window_length, params.t_step, params.inner_panels)
    if not q >= 1:
        raise ParameterError("Stepanov exponent q must be >= 1")
    t0, t1 = window if window is not None else _default_window(f)
    if t1 < t0:
        raise ParameterError("empty t-window")

    if isinstance(f, PiecewiseConstantSignal):
        lo, hi = f.window
        if t0 < lo or t1 + 1 > hi:
            raise DomainError("t-window plus unit length exceeds the signal window")
        best, _ = _piecewise_sup_window(f.breakpoints, f.values, q, t0, t1)
        value = best ** (1.0 / q)
        return (value, value) if full_output else value

    head = f.head if isinstance(f, TruncatedSeries) else f
    n = int(math.floor((t1 - t0) / params.t_step + 1e-9)) + 1
    panels = params.inner_panels

    def chunk(sl: slice) -> np.ndarray:
        ts = t0 + params.t_step * np.arange(sl.start, sl.stop)
        return _local_power_means(head, ts, q, panels)

    grid = np.concatenate(block_map(chunk, n, workers, block=1024))
    i = int(np.argmax(grid))
    t_best = t0 + params.t_step * i
    a, b = max(t0, t_best - params.t_step), min(t1, t_best + params.t_step)
    best = float(grid[i])
    if b > a:
        res = minimize_scalar(
            lambda t: -float(_local_power_means(head, np.array([t]), q, panels)[0]),
            bounds=(a, b), method="bounded", options={"xatol": 1e-10},
        )
        best = max(best, -float(res.fun))
    value = best ** (1.0 / q)
    if isinstance(f, TruncatedSeries):
        value += f.tail_sup_bound
    if not full_output:
        return value
    lip = lipschitz_bound(head)
    upper = math.inf if lip is None else float(grid[i]) ** (1.0 / q) + lip * params.t_step / 2
    if isinstance(f, TruncatedSeries):
        upper += f.tail_sup_bound
    return value, max(upper, value)


def _difference_blocks(f: PiecewiseConstantSignal, g: PiecewiseConstantSignal, lo, hi):
    cuts = np.union1d(f.breakpoints, g.breakpoints)
    cuts = np.concatenate([[lo], cuts[(cuts > lo) & (cuts < hi)], [hi]])
    diff = f(cuts[:-1]) - g(cuts[:-1])
    return cuts, diff


def lift_distance(f, g, q: float, t: float, inner_panels: int = 256) -> float:
    """``(int_0^1 |f(t+s) - g(t+s)|^q ds)^(1/q)``; exact for piecewise pairs."""
    if not q >= 1:
        raise ParameterError("Stepanov exponent q must be >= 1")
    t = float(t)
    if isinstance(f, PiecewiseConstantSignal) and isinstance(g, PiecewiseConstantSignal):
        cuts, diff = _difference_blocks(f, g, t, t + 1.0)
        return float(np.sum(np.diff(cuts) * np.abs(diff) ** q) ** (1.0 / q))
    fh = f.head if isinstance(f, TruncatedSeries) else f
    gh = g.head if isinstance(g, TruncatedSeries) else g
    val = _local_power_means(lambda x: fh(x) - gh(x), np.array([t]), q, inner_panels)[0]
    return float(val ** (1.0 / q))


def _target(mode: str, k_val: float, m: int, p: float) -> complex:
    if mode == "anti":
        return -1.0 if m % 2 else 1.0
    if mode == "bloch":
        return complex(np.exp(1j * k_val * m * p))
    return 1.0


def _piecewise_lift_sup(F: PiecewiseConstantSignal, shift: float, c: complex, q: float) -> float:
    """Exact ``sup_t (int_0^1 |F(t+shift+s) - c F(t+s)|^q ds)^(1/q)`` over the overlap."""
    lo, hi = F.window
    hi_eff = hi - shift
    if hi_eff - lo < 1.0:
        raise DomainError("shift leaves less than a unit window")
    bp_shift = F.breakpoints - shift
    cuts = np.union1d(bp_shift, F.breakpoints)
    cuts = np.concatenate([[lo], cuts[(cuts > lo) & (cuts < hi_eff)], [hi_eff]])
    left = cuts[:-1]
    diff = F(left + shift) - c * F(left)
    best, _ = _piecewise_sup_window(cuts, diff, q, lo, hi_eff - 1.0)
    return best ** (1.0 / q)


def stepanov_semi_test(f, mode: str = "periodic", q: float = 1.0, epsilon: float = 1e-3, k=None,
                       candidates=None, m_max: int | None = None, window=None,
                       t_step: float = 0.05, inner_panels: int = 64) -> SemiWitness | None:
    """Search a ``p`` making the lift semi-periodic / semi-Bloch / semi-anti at level epsilon.

    Trigonometric signals inherit the uniform witness (a uniform bound is a
    Stepanov bound for every ``q``).  Piecewise-constant signals are tested
    exactly for each candidate ``p`` and every ``m`` whose shift fits the
    window; sampled or callable signals use Simpson lift distances on a
    ``t`` grid.  Non-trigonometric witnesses are window evidence
    (``m_horizon`` is the largest ``m`` checked).
    """
    if mode not in ("periodic", "bloch", "anti"):
        raise ParameterError(f"unknown mode {mode!r}")
    if not q >= 1:
        raise ParameterError("Stepanov exponent q must be >= 1")
    if not epsilon > 0:
        raise ParameterError("epsilon must be positive")
    if isinstance(f, (TrigPolynomial, TruncatedSeries)):
        if mode == "anti":
            return semi_anti_witness(f, epsilon)
        return semi_bloch_witness(f, k if mode == "bloch" else 0, epsilon)

    kf = None
    k_val = 0.0
    if mode == "bloch":
        kf = k if isinstance(k, Frequency) else Frequency(Fraction(k or 0))
        k_val = float(kf)
    if candidates is None:
        candidates = np.round(np.arange(0.25, 20.0 + 1e-9, 0.25), 12)

    if isinstance(f, PiecewiseConstantSignal):
        lo, hi = f.window
    elif isinstance(f, SampledSignal):
        lo, hi = f.window
    elif window is not None:
        lo, hi = window[0], window[1] + 1.0
    else:
        raise UnsupportedRepresentation("callable signals need an explicit window")

    for p in candidates:
        p = float(p)
        horizon = int(math.floor((hi - lo - 1.0) / p))
        if m_max is not None:
            horizon = min(horizon, m_max)
        if horizon < 1:
            continue
        worst = 0.0
        for m in range(1, horizon + 1):
            c = _target(mode, k_val, m, p)
            if isinstance(f, PiecewiseConstantSignal):
                d = _piecewise_lift_sup(f, m * p, c, q)
            else:
                ts = np.arange(lo, hi - 1.0 - m * p + 1e-12, t_step)
                vals = _local_power_means(lambda x: f(x + m * p) - c * f(x), ts, q, inner_panels)
                d = float(vals.max()) ** (1.0 / q)
            worst = max(worst, d)
            if worst > epsilon:
                break
        if worst <= epsilon:
            return SemiWitness(p, "anti" if mode == "anti" else "bloch", worst, horizon,
                               Fraction(p / math.pi).limit_denominator(10**6), None, kf)
    return None


@dataclass(frozen=True)
class SeparationCertificate:
    """Shift ``m*p`` moving the unit window at ``x`` into an opposite-sign block.

    ``lower_bound`` is the exact lift distance
    ``(int_0^1 |F(x+mp+s) - F(x+s)|^q ds)^(1/q)``, which is at least ``c``.
    ``m`` is None when the window ran out first (inconclusive).
    """

    m: int | None
    x: float
    lower_bound: float
    c: float
    p: float
    conclusive: bool = True
    reason: str = ""


def separation_constant(F: PiecewiseConstantSignal) -> float:
    """``min |b_n - b_l|`` over blocks of opposite sign (0 if one sign is missing)."""
    v = np.real(F.values)
    pos, neg = v[v > 0], v[v < 0]
    if pos.size == 0 or neg.size == 0:
        return 0.0
    return float(pos.min() + np.abs(neg).min())


def _enclosing_block(F: PiecewiseConstantSignal, x: float) -> int | None:
    lo, hi = F.window
    if x < lo or x + 1.0 > hi:
        return None
    n = int(np.searchsorted(F.breakpoints, x, side="right") - 1)
    return n if F.breakpoints[n + 1] >= x + 1.0 else None


def separation_witness(F: PiecewiseConstantSignal, q: float, p: float,
                       x: float | None = None) -> SeparationCertificate:
    """Find ``m >= 1`` with ``[x+mp, x+mp+1]`` inside a block of opposite sign.

    With ``x`` omitted, unit windows starting at each block of length
    ``>= 1`` are tried in order.  An exhausted window gives an inconclusive
    certificate rather than an error.
    """
    if not q >= 1:
        raise ParameterError("Stepanov exponent q must be >= 1")
    if not p > 0:
        raise ParameterError("p must be positive")
    c = separation_constant(F)
    if c <= 0:
        raise ParameterError("signal needs blocks of both signs")
    if x is None:
        bp = F.breakpoints
        starts = [float(bp[n]) for n in range(bp.size - 1) if bp[n + 1] - bp[n] >= 1.0]
    else:
        starts = [float(x)]
    lo, hi = F.window
    for x0 in starts:
        n = _enclosing_block(F, x0)
        if n is None:
            continue
        sign = np.sign(np.real(F.values[n]))
        m = 1
        while x0 + m * p + 1.0 <= hi:
            l = _enclosing_block(F, x0 + m * p)
            if l is not None and np.sign(np.real(F.values[l])) == -sign:
                bound = lift_distance_shift(F, q, x0, m * p)
                return SeparationCertificate(m, x0, bound, c, float(p))
            m += 1
    return SeparationCertificate(None, float(starts[0]) if starts else math.nan, 0.0, c, float(p),
                                 conclusive=False,
                                 reason="window exhausted before an opposite-sign enclosing block")


def lift_distance_shift(F: PiecewiseConstantSignal, q: float, x: float, shift: float) -> float:
    """Exact ``(int_0^1 |F(x+shift+s) - F(x+s)|^q ds)^(1/q)``."""
    return lift_distance(translate(F, shift), F, q, x)
