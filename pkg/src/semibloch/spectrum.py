"""Bohr coefficients, exact spectra and spectral classification.

The Bohr coefficient of ``f`` at ``r`` is the oscillatory mean

    P_r(f) = lim_{T->inf} (1/T) int_0^T exp(-i r s) f(s) ds.

For trigonometric signals the spectrum is read off exactly; the classification
below decides semi-periodicity (commensurable spectrum), semi-anti-periodicity
(commensurable, zero-free, and every frequency an odd multiple of a common
unit) and membership in the closure of almost anti-periodic functions (zero
not in the spectrum).
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from ._numerics import block_map, exact_sum
from .errors import ParameterError, UnsupportedRepresentation
from .frequency import Frequency, common_unit, two_adic_valuation
from .signals import PiecewiseConstantSignal, SampledSignal, TrigPolynomial, TruncatedSeries

__all__ = [
    "Spectrum",
    "SpectralVerdict",
    "bohr_coefficient",
    "spectrum",
    "commensurability_theta",
    "spectral_classify",
    "YES",
    "NO",
    "UNKNOWN",
]

YES, NO, UNKNOWN = "yes", "no", "unknown"

# frequencies closer than this to the probe are treated as "on" the probe
_ON_SPECTRUM = 1e-12
# target relative accuracy of the Simpson rule for the oscillatory mean
_QUAD_REL = 1e-10


def _simpson_step(omega: float) -> float:
    # composite Simpson: |err| <= T h^4 max|F''''| / 180 and |F''''| <= omega^4 sum|a|
    if omega == 0:
        return 0.05
    return min(0.05, (180 * _QUAD_REL) ** 0.25 / omega * 0.9)


def bohr_coefficient(f, r, T: float, workers: int = 1) -> tuple[complex, float]:
    """Estimate ``(1/T) int_0^T exp(-i r s) f(s) ds`` and bound ``|estimate - P_r(f)|``.

    Parameters
    ----------
    f : signal
        Trigonometric signals and truncated series get a rigorous error bound:
        the truncation term ``sum_{lambda_j != r} 2|a_j| / (T |lambda_j - r|)``
        plus the Simpson remainder (plus the tail bound for series).
        Piecewise-constant signals are integrated exactly but the mean's
        distance to the limit is unknown (``inf``); likewise for samples.
    r : float or Frequency
    T : float
        Averaging length, ``T >= 1``.
    workers : int
        Thread count for the quadrature blocks; the result does not depend on it.

    Returns
    -------
    estimate : complex
    error_bound : float
    """
    if not T >= 1:
        raise ParameterError("averaging length T must be >= 1")
    T = float(T)
    r_freq = r if isinstance(r, Frequency) else None
    r = float(r)

    if isinstance(f, PiecewiseConstantSignal):
        lo, hi = f.window
        if lo > 0 or hi < T:
            raise ParameterError("piecewise signal must cover [0, T]")
        cuts = np.concatenate([[0.0], f.breakpoints[(f.breakpoints > 0) & (f.breakpoints < T)], [T]])
        vals = f(cuts[:-1])
        if r == 0:
            pieces = vals * np.diff(cuts)
        else:
            pieces = vals * (np.exp(-1j * r * cuts[1:]) - np.exp(-1j * r * cuts[:-1])) / (-1j * r)
        return exact_sum([pieces]) / T, math.inf

    head = f.head if isinstance(f, TruncatedSeries) else f
    if isinstance(head, TrigPolynomial):
        mu = head.frequency_values - r
        omega = float(np.max(np.abs(mu))) if len(head) else 0.0
        h = _simpson_step(omega)
    elif isinstance(head, SampledSignal):
        lo, hi = head.window
        if lo > 0 or hi < T:
            raise ParameterError("sampled signal must cover [0, T]")
        h = head.step / 2
    else:
        h = 0.005
    n_panels = max(1, math.ceil(T / (2 * h)))
    h = T / (2 * n_panels)
    n_nodes = 2 * n_panels + 1

    def chunk(sl: slice) -> np.ndarray:
        idx = np.arange(sl.start, sl.stop)
        s = idx * h
        w = np.where((idx == 0) | (idx == n_nodes - 1), 1.0, np.where(idx % 2 == 1, 4.0, 2.0))
        return (h / 3.0) * w * np.exp(-1j * r * s) * head(s)

    estimate = exact_sum(block_map(chunk, n_nodes, workers)) / T

    if not isinstance(head, TrigPolynomial):
        return estimate, math.inf

    a = np.abs(head.coefficients)
    bound = 0.0
    for j, (coef, lam) in enumerate(head.terms):
        if r_freq is not None:
            d = abs(float(lam - r_freq))
            exact_hit = lam == r_freq
        else:
            d = abs(mu[j])
            exact_hit = False
        if exact_hit:
            continue
        if d <= _ON_SPECTRUM:
            # mean of exp(i d s) over [0, T] differs from 1 by at most d*T/2
            bound += a[j] * d * T / 2
        else:
            bound += 2 * a[j] / (T * d)
    bound += h ** 4 * float(np.sum(a * np.abs(mu) ** 4)) / 180.0
    bound += 1e-15 * float(a.sum())  # floating-point floor
    if isinstance(f, TruncatedSeries):
        bound += f.tail_sup_bound
    return estimate, float(bound)


@dataclass(frozen=True)
class Spectrum:
    """Exact spectrum of a trigonometric signal (sorted by value)."""

    frequencies: tuple
    source: str = ""
    head_only: bool = False

    def __contains__(self, lam):
        lam = lam if isinstance(lam, Frequency) else Frequency(Fraction(lam))
        return lam in self.frequencies

    def __iter__(self):
        return iter(self.frequencies)

    def __len__(self):
        return len(self.frequencies)

    @property
    def has_zero(self) -> bool:
        return any(f.is_zero for f in self.frequencies)


def spectrum(f, source: str = "") -> Spectrum:
    """Frequencies carrying nonzero coefficients."""
    if isinstance(f, TruncatedSeries):
        return Spectrum(f.head.frequencies, source, head_only=True)
    if isinstance(f, TrigPolynomial):
        return Spectrum(f.frequencies, source)
    raise UnsupportedRepresentation(
        "exact spectrum needs a trigonometric signal; probe with bohr_coefficient instead"
    )


def commensurability_theta(s) -> Frequency | None:
    """Largest ``theta > 0`` with every nonzero frequency in ``theta * Z``.

    Zero frequencies are ignored.  Returns None when the nonzero frequencies
    are not pairwise rational multiples of each other (or there are none).
    """
    freqs = s.frequencies if isinstance(s, Spectrum) else tuple(s)
    unit = common_unit(lam for lam in freqs if not lam.is_zero)
    return None if unit is None else unit[0]


@dataclass(frozen=True)
class SpectralVerdict:
    semi_periodic: str
    semi_anti: str
    anp_member: str
    theta: Frequency | None = None
    multipliers: tuple = ()
    evidence: str = ""
    tail_slack: float = 0.0
    notes: tuple = field(default=())


def spectral_classify(f) -> SpectralVerdict:
    """Decide semi-periodicity classes of a trigonometric signal from its spectrum.

    * semi-periodic iff the nonzero frequencies are commensurable;
    * semi-anti-periodic iff additionally zero is absent and all frequencies
      share one 2-adic valuation, i.e. ``lambda_j = n_j * theta`` with every
      ``n_j`` odd (then ``pi/theta`` is an anti-period);
    * member of the closure of almost anti-periodic functions iff zero is
      absent from the spectrum.

    For truncated series the verdicts concern the head; ``tail_slack`` carries
    the tail bound, and a non-uniform valuation on a head is reported as
    ``unknown`` rather than ``no``.
    """
    spec = spectrum(f)
    slack = f.tail_sup_bound if isinstance(f, TruncatedSeries) else 0.0
    nonzero = [lam for lam in spec if not lam.is_zero]
    anp = NO if spec.has_zero else YES

    if not nonzero:
        if spec.has_zero:
            return SpectralVerdict(YES, NO, NO, evidence="constant signal: periodic, nonzero mean",
                                   tail_slack=slack)
        return SpectralVerdict(YES, YES, YES, evidence="zero signal", tail_slack=slack)

    unit = common_unit(nonzero)
    if unit is None:
        return SpectralVerdict(
            NO, NO, anp,
            evidence="incommensurable spectrum: no theta with spectrum in theta*Q",
            tail_slack=slack,
        )
    theta, ratios = unit
    mult = tuple(int(r) for r in ratios)
    if spec.has_zero:
        return SpectralVerdict(
            YES, NO, NO, theta, mult,
            evidence=f"commensurable with theta={theta}; zero frequency (nonzero mean) excludes anti-periodic behaviour",
            tail_slack=slack,
        )
    valuations = {two_adic_valuation(Fraction(m)) for m in mult}
    if valuations == {0}:
        return SpectralVerdict(
            YES, YES, YES, theta, mult,
            evidence=f"all frequencies are odd multiples of theta={theta}; anti-period pi/theta",
            tail_slack=slack,
        )
    semi_anti = UNKNOWN if isinstance(f, TruncatedSeries) else NO
    return SpectralVerdict(
        YES, semi_anti, YES, theta, mult,
        evidence=f"commensurable with theta={theta} but 2-adic valuations differ: {sorted(valuations)}",
        tail_slack=slack,
    )
