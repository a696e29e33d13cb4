"""Quantifier tests: epsilon-periods, epsilon-antiperiods, Bloch periods, witnesses.

For a trigonometric signal every distance used here is certified by the
analytic envelope

    sup_x |f(x + tau) - phase * f(x)| <= sum_j |a_j| |exp(i lambda_j tau) - phase|,

which needs no grid in ``x``.  Witnesses ``p`` for the "for every m" quantifier
are exact: they are rational multiples of ``pi / theta`` where ``theta`` is a
common unit of the (reduced) spectrum, so each phase is a rational number of
turns and ``D(m p)`` is periodic in ``m``.  Density verdicts are always
qualified by the finite scan window.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath
import numpy as np

from ._numerics import block_map
from .errors import ParameterError, UnsupportedRepresentation
from .frequency import DPS, Frequency, common_unit
from .signals import (
    REAL_LINE,
    PiecewiseConstantSignal,
    SampledSignal,
    TrigPolynomial,
    TruncatedSeries,
    _piecewise_sup,
    bloch_reduce,
    translate,
)

__all__ = [
    "EpsilonPeriodSet",
    "AlmostAntiResult",
    "SemiWitness",
    "ALL_M",
    "epsilon_period_scan",
    "almost_anti_periodic_test",
    "semi_bloch_witness",
    "semi_anti_witness",
    "bloch_exact_check",
    "witness_bound",
    "QuantifierSearch",
    "quantifier_search",
]

ALL_M = "all-m-certified"
PHASE_TOL = 1e-12
DENSITY_FRACTION = 0.1


def _as_freq(k) -> Frequency:
    if k is None:
        return Frequency()
    return k if isinstance(k, Frequency) else Frequency(Fraction(k))


def _split(f):
    """(trig head, tail slack) for exact signals."""
    if isinstance(f, TruncatedSeries):
        return f.head, f.tail_sup_bound
    if isinstance(f, TrigPolynomial):
        return f, 0.0
    raise UnsupportedRepresentation("exact trigonometric representation required")


@dataclass(frozen=True)
class EpsilonPeriodSet:
    """Result of an epsilon-(anti/Bloch-)period scan on ``[0, L]``.

    ``hits`` are the grid shifts whose certified distance is ``<= epsilon``
    and ``bounds`` the matching distances.  ``max_gap`` includes the gaps to
    the window ends; with no hits it equals ``L``.
    """

    kind: str
    epsilon: float
    window: tuple
    hits: np.ndarray
    bounds: np.ndarray
    max_gap: float
    scan_step: float
    certified: bool
    k: Frequency | None = None
    density_threshold: float = math.nan

    @property
    def relatively_dense(self) -> bool:
        return bool(self.hits.size) and self.max_gap < self.density_threshold


def _target_phase(kind: str, k_val: float, tau: np.ndarray) -> np.ndarray:
    if kind == "period":
        return np.ones_like(tau, dtype=complex)
    if kind == "antiperiod":
        return -np.ones_like(tau, dtype=complex)
    return np.exp(1j * k_val * tau)


def _gaps(hits: np.ndarray, L: float) -> float:
    if hits.size == 0:
        return float(L)
    pts = np.concatenate([[0.0], hits, [L]])
    return float(np.max(np.diff(pts)))


def epsilon_period_scan(f, kind: str, epsilon: float, window=(0.0, 1e4), scan_step: float = 0.01,
                        k=None, workers: int = 1,
                        density_fraction: float = DENSITY_FRACTION) -> EpsilonPeriodSet:
    """Scan shifts ``tau`` on ``(0, L]`` for epsilon-periods of the given kind.

    Parameters
    ----------
    kind : {'period', 'antiperiod', 'bloch'}
        Compare ``f(. + tau)`` with ``f``, ``-f`` or ``exp(i k tau) f``.
    window : (0, L)
        Shift range; only ``L`` matters (shifts start at one scan step).
    density_fraction : float
        "Relatively dense on the window" means ``max_gap < density_fraction * L``.

    Trigonometric signals use the analytic envelope (certified at every grid
    shift).  Piecewise-constant signals use exact block arithmetic.  Sampled
    signals restrict shifts to multiples of the sample step; hits are
    certified only when a Lipschitz bound is known.
    """
    if not epsilon > 0:
        raise ParameterError("epsilon must be positive")
    if kind not in ("period", "antiperiod", "bloch"):
        raise ParameterError(f"unknown kind {kind!r}")
    if kind == "bloch" and k is None:
        raise ParameterError("Bloch scan needs k")
    if not scan_step > 0:
        raise ParameterError("scan_step must be positive")
    L = float(window[1]) - float(window[0])
    if not L > 0:
        raise ParameterError("empty window")
    kf = _as_freq(k) if kind == "bloch" else None
    k_val = float(kf) if kf is not None else 0.0

    if isinstance(f, (TrigPolynomial, TruncatedSeries)):
        head, slack = _split(f)
        n = int(math.floor(L / scan_step + 1e-9))
        a = np.abs(head.coefficients)
        lam = head.frequency_values

        def chunk(sl: slice):
            tau = scan_step * np.arange(sl.start + 1, sl.stop + 1)
            target = _target_phase(kind, k_val, tau)
            env = np.abs(np.exp(1j * np.multiply.outer(tau, lam)) - target[:, None]) @ a
            env = env + 2 * slack
            keep = env <= epsilon
            return tau[keep], env[keep]

        parts = block_map(chunk, n, workers)
        hits = np.concatenate([p[0] for p in parts]) if parts else np.zeros(0)
        bounds = np.concatenate([p[1] for p in parts]) if parts else np.zeros(0)
        certified = True
    elif isinstance(f, PiecewiseConstantSignal):
        if kind == "bloch":
            raise UnsupportedRepresentation("Bloch scans need trigonometric or sampled signals")
        lo, hi = f.window
        n = int(math.floor(min(L, hi - lo) / scan_step + 1e-9))
        hits_l, bounds_l = [], []
        other = f if kind == "period" else PiecewiseConstantSignal(f.breakpoints, -f.values)
        for i in range(1, n):
            tau = i * scan_step
            g = translate(f, tau)
            d = _piecewise_sup(g, other, lo, hi - tau)
            if d <= epsilon:
                hits_l.append(tau)
                bounds_l.append(d)
        hits, bounds = np.array(hits_l), np.array(bounds_l)
        certified = True
    elif isinstance(f, SampledSignal):
        stride = max(1, int(round(scan_step / f.step)))
        s = f.samples
        n_max = min(int(math.floor(L / f.step + 1e-9)), s.size - 2)
        hits_l, bounds_l = [], []
        lip = f.lipschitz_bound
        for j in range(stride, n_max + 1, stride):
            tau = j * f.step
            target = _target_phase(kind, k_val, np.array([tau]))[0]
            d = float(np.max(np.abs(s[j:] - target * s[: s.size - j])))
            if lip is not None:
                d += lip * f.step
            if d <= epsilon:
                hits_l.append(tau)
                bounds_l.append(d)
        hits, bounds = np.array(hits_l), np.array(bounds_l)
        certified = lip is not None
        scan_step = stride * f.step
    else:
        raise UnsupportedRepresentation(f"cannot scan {type(f).__name__}")

    return EpsilonPeriodSet(
        kind=kind, epsilon=float(epsilon), window=(float(window[0]), float(window[1])),
        hits=hits, bounds=bounds, max_gap=_gaps(hits, L), scan_step=float(scan_step),
        certified=certified, k=kf, density_threshold=density_fraction * L,
    )


@dataclass(frozen=True)
class AlmostAntiResult:
    verdict: str  # "yes-on-window" / "no-on-window"
    scan: EpsilonPeriodSet

    @property
    def passed(self) -> bool:
        return self.verdict == "yes-on-window"


def almost_anti_periodic_test(f, epsilon: float, window=(0.0, 1e4), scan_step: float = 0.01,
                              workers: int = 1,
                              density_fraction: float = DENSITY_FRACTION) -> AlmostAntiResult:
    """Window evidence that epsilon-antiperiods are relatively dense.

    This is finite-window evidence, never a proof of almost
    anti-periodicity.
    """
    scan = epsilon_period_scan(f, "antiperiod", epsilon, window, scan_step,
                               workers=workers, density_fraction=density_fraction)
    return AlmostAntiResult("yes-on-window" if scan.relatively_dense else "no-on-window", scan)


@dataclass(frozen=True)
class SemiWitness:
    """A period ``p`` certifying ``sup_x |f(x+mp) - target_m f(x)| <= bound``.

    ``p = multiple * pi / theta`` exactly (``theta`` None means the reduced
    spectrum is empty or zero and ``p = multiple * pi``).  ``m_horizon`` is
    :data:`ALL_M` when the bound was proved for every ``m``, otherwise the
    largest ``m`` checked.
    """

    p: float
    mode: str  # "bloch" or "anti"
    bound: float
    m_horizon: object
    multiple: Fraction
    theta: Frequency | None
    k: Frequency | None = None

    @property
    def p_exact(self) -> str:
        if self.theta is None:
            return f"{self.multiple}*pi"
        return f"{self.multiple}*pi/({self.theta})"


def _phase_turns_bound(coeffs: np.ndarray, turns: list[Fraction], anti: bool) -> tuple[float, int]:
    """Sup over m in Z of sum_j |c_j| |exp(2 pi i turns_j m) - target_m|, and its m-period.

    ``target_m`` is 1, or ``(-1)**m`` when ``anti``; the expression is periodic
    in ``m`` with period the lcm of the turn denominators (times 2 for anti),
    so checking one period covers all integers.
    """
    period = 1
    for t in turns:
        period = math.lcm(period, t.denominator)
    if anti:
        period = math.lcm(period, 2)
    best = 0.0
    for m in range(1, period + 1):
        target = -1.0 if anti and m % 2 else 1.0
        total = 0.0
        for c, t in zip(coeffs, turns):
            frac = (t * m) % 1
            if frac == 0 or frac == Fraction(1, 2):
                unit = 1.0 if frac == 0 else -1.0
                total += abs(c) * abs(unit - target)
                continue
            ang = 2 * math.pi * float(frac)
            total += abs(c) * abs(complex(math.cos(ang), math.sin(ang)) - target)
        best = max(best, total)
    return best, period


def _exact_witness(f, k: Frequency | None, anti: bool, epsilon: float) -> SemiWitness | None:
    head, slack = _split(f)
    reduced = bloch_reduce(head, k) if (k is not None and not k.is_zero) else head
    coeffs = np.abs(reduced.coefficients)
    freqs = reduced.frequencies
    nonzero = [lam for lam in freqs if not lam.is_zero]
    mode = "anti" if anti else "bloch"
    if not nonzero:
        if anti and freqs:
            return None  # nonzero constant after reduction
        multiple = Fraction(1) if anti else Fraction(2)
        bound = 2 * slack
        if bound > epsilon:
            return None
        return SemiWitness(float(multiple) * math.pi, mode, bound, ALL_M, multiple, None, k)
    unit = common_unit(nonzero)
    if unit is None:
        return None
    theta, _ = unit
    # reduced frequency lambda = n * theta; p = multiple * pi / theta gives n*multiple/2 turns
    multiple = Fraction(1) if anti else Fraction(2)
    turns = [lam.ratio(theta) * multiple / 2 for lam in freqs]
    bound, period = _phase_turns_bound(coeffs, turns, anti)
    bound += 2 * slack
    if bound > epsilon:
        return None
    with mpmath.workdps(DPS):
        p = float(multiple.numerator * mpmath.pi / (multiple.denominator * theta.mp))
    return SemiWitness(p, mode, float(bound), ALL_M, multiple, theta, k)


def semi_bloch_witness(f, k, epsilon: float) -> SemiWitness | None:
    """Certified ``p`` with ``|f(x+mp) - exp(ikmp) f(x)| <= epsilon`` for all ``m``, ``x``.

    Candidates are restricted to periods making every reduced phase
    ``(lambda_j - k) p`` a rational number of turns; the smallest such ``p``
    is ``2 pi / theta`` for the common unit ``theta`` of the reduced spectrum,
    at which the bound vanishes (plus twice the tail for truncated series).
    Returns None when the reduced spectrum is incommensurable, which means
    ``f`` is not semi-Bloch ``k``-periodic.
    """
    if not epsilon > 0:
        raise ParameterError("epsilon must be positive")
    return _exact_witness(f, _as_freq(k), anti=False, epsilon=epsilon)


def semi_anti_witness(f, epsilon: float) -> SemiWitness | None:
    """Certified ``p`` with ``|f(x+mp) - (-1)**m f(x)| <= epsilon`` for all ``m``, ``x``.

    Exists iff zero is absent from the spectrum and every frequency is an odd
    multiple of a common unit ``theta``; then ``p = pi / theta``.
    """
    if not epsilon > 0:
        raise ParameterError("epsilon must be positive")
    return _exact_witness(f, None, anti=True, epsilon=epsilon)


def bloch_exact_check(f, p: float, k) -> tuple[bool, float]:
    """Is ``f(x + p) == exp(ikp) f(x)``?  Returns ``(ok, residual)``.

    ``ok`` requires every reduced phase ``(lambda_j - k) p`` to be within
    ``1e-12`` of a multiple of ``2 pi``; ``residual`` is the envelope
    ``sum_j |a_j| |exp(i(lambda_j - k)p) - 1|``.
    """
    if not p > 0:
        raise ParameterError("p must be positive")
    head, _ = _split(f)
    kf = _as_freq(k)
    ok = True
    residual = mpmath.mpf(0)
    with mpmath.workdps(DPS):
        two_pi = 2 * mpmath.pi
        pm = mpmath.mpf(p)
        for c, lam in head.terms:
            phase = (lam - kf).mp * pm
            off = phase - two_pi * mpmath.nint(phase / two_pi)
            if abs(off) > PHASE_TOL:
                ok = False
            residual += abs(c) * abs(mpmath.expj(phase) - 1)
    return ok, float(residual)


def witness_bound(f, p: float, mode: str = "bloch", k=None, m_max: int = 64) -> float:
    """Envelope ``max_{1<=m<=m_max} sum_j |a_j| |exp(i mu_j m p) - target_m|``.

    ``mu_j = lambda_j - k`` and ``target_m`` is 1 (``mode='bloch'``) or
    ``(-1)**m`` (``mode='anti'``).  Negative ``m`` give the same values, so this
    covers ``|m| <= m_max`` on the whole line.  Twice the tail is added for
    truncated series.  Works for any real ``p``.
    """
    head, slack = _split(f)
    kf = _as_freq(k) if mode == "bloch" else Frequency()
    a = np.abs(head.coefficients)
    with mpmath.workdps(DPS):
        two_pi = 2 * mpmath.pi
        base = np.array([float(mpmath.fmod((lam - kf).mp * mpmath.mpf(p), two_pi))
                         for lam in head.frequencies])
    m = np.arange(1, m_max + 1)
    phases = np.exp(1j * np.multiply.outer(m, base))
    target = np.where(m % 2 == 1, -1.0, 1.0) if mode == "anti" else np.ones(m.size)
    env = np.abs(phases - target[:, None]) @ a
    return float(env.max()) + 2 * slack


@dataclass(frozen=True)
class QuantifierSearch:
    """Brute-force search over ``p`` on a grid.

    ``lower_bound`` is a certified lower bound of the envelope over the whole
    scanned ``p``-interval (grid minimum minus the Lipschitz slack), so if it
    exceeds epsilon no ``p`` in the interval satisfies the tested ``m``.
    """

    best_p: float
    best_value: float
    lower_bound: float
    candidates: np.ndarray
    p_range: tuple


def quantifier_search(f, mode: str, epsilon: float, p_range: tuple, step: float,
                      k=None, m_max: int = 2) -> QuantifierSearch:
    """Numeric quantifier test independent of the spectral decision.

    Evaluates ``max_{1<=m<=m_max} sum_j |a_j||exp(i mu_j m p) - target_m|`` on
    a ``p`` grid.  For a commensurable spectrum the envelope is periodic in
    ``p`` with period ``2 pi / theta``, so scanning one period settles every
    ``p``.
    """
    head, slack = _split(f)
    kf = _as_freq(k) if mode == "bloch" else Frequency()
    mu = np.array([float(lam - kf) for lam in head.frequencies])
    a = np.abs(head.coefficients)
    p0, p1 = map(float, p_range)
    n = int(math.floor((p1 - p0) / step + 1e-9)) + 1
    p = p0 + step * np.arange(n)
    m = np.arange(1, m_max + 1)
    target = np.where(m % 2 == 1, -1.0, 1.0) if mode == "anti" else np.ones(m.size)
    worst = np.zeros(n)
    for mi, tg in zip(m, target):
        env = np.abs(np.exp(1j * np.multiply.outer(p * mi, mu)) - tg) @ a
        worst = np.maximum(worst, env)
    worst += 2 * slack
    lip = float(np.sum(a * np.abs(mu))) * m_max
    i = int(np.argmin(worst))
    return QuantifierSearch(
        best_p=float(p[i]), best_value=float(worst[i]),
        lower_bound=float(worst.min() - lip * step / 2),
        candidates=p[worst <= epsilon], p_range=(p0, p1),
    )
