"""Built-in fixture signals with their known class memberships.

Each entry builds its signal on demand and lists the verdicts the toolkit is
expected to reproduce.  ``k`` in an expectation selects the Bloch wave
vector for that check; entries whose membership is an open problem carry no
expectations at all.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath
import numpy as np

from .frequency import DPS, ONE, PI_SQRT2, SQRT2, Frequency
from .signals import (
    PiecewiseConstantSignal,
    SampledSignal,
    TrigPolynomial,
    TruncatedSeries,
    constant,
    cosine,
    sine,
)

__all__ = ["Expectation", "CatalogEntry", "CATALOG", "get", "names", "strina1_tail"]


@dataclass(frozen=True)
class Expectation:
    cls: str
    verdict: str
    k: Frequency | None = None
    note: str = ""


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    description: str
    build: Callable = field(repr=False)
    expected: tuple = ()
    epsilon: float | None = None
    heat_time: float | None = None
    no_verdict: bool = False

    def signal(self):
        return self.build()


def strina1_tail(N: int) -> float:
    """``sum_{n>N} 1/n^2`` (the trigamma function at ``N + 1``)."""
    with mpmath.workdps(DPS):
        return float(mpmath.psi(1, N + 1))


def _strina():
    return sine(1) + sine(Frequency(1, PI_SQRT2))


def _strina1(N: int = 4):
    head = TrigPolynomial((1.0 / n ** 2, Fraction(1, 2 * n + 1)) for n in range(1, N + 1))
    return TruncatedSeries(head, strina1_tail(N))


def _olomuc():
    return TrigPolynomial([(1.0, Fraction(1, 3)), (1.0, Fraction(5, 7))])


def _stepa_denominator(t):
    return 2.0 + np.cos(t) + np.cos(math.sqrt(2) * t)


def _pepa_stepa(which: str, length: float = 200.0, step: float = 0.01):
    t = step * np.arange(int(round(length / step)) + 1)
    inner = 1.0 / _stepa_denominator(t)
    return SampledSignal(0.0, step, np.sin(inner) if which == "sin" else np.cos(inner))


def levitan_step(N: int = 30) -> PiecewiseConstantSignal:
    """``F = (-1)**n`` on ``[n|n|, (n+1)|n+1|)`` for ``-N <= n < N``."""
    bp = [n * abs(n) for n in range(-N, N + 1)]
    return PiecewiseConstantSignal(bp, [(-1.0) ** n for n in range(-N, N)])


_HALF = Frequency(Fraction(1, 2))
_ROOT2 = Frequency(1, SQRT2)

CATALOG = {
    e.name: e
    for e in [
        CatalogEntry(
            "demos", "constant signal f = 1",
            lambda: constant(1.0),
            (Expectation("semi_periodic", "yes"), Expectation("semi_anti", "no"),
             Expectation("anp_member", "no"), Expectation("almost_anti", "no")),
        ),
        CatalogEntry(
            "kosinus", "f = cos x; semi-Bloch exactly for rational k",
            lambda: cosine(1),
            (Expectation("semi_periodic", "yes"), Expectation("semi_anti", "yes"),
             Expectation("semi_bloch", "yes", _HALF),
             Expectation("semi_bloch", "no", _ROOT2)),
        ),
        CatalogEntry(
            "strina", "f = sin x + sin(pi sqrt(2) x)",
            _strina,
            (Expectation("semi_periodic", "no"), Expectation("semi_anti", "no"),
             Expectation("anp_member", "yes"),
             Expectation("almost_anti", "yes", note="epsilon = 0.2 on [0, 1e4]")),
            epsilon=0.2,
        ),
        CatalogEntry(
            "strina1", "head N = 4 of sum_n exp(i x/(2n+1))/n^2 with certified tail",
            _strina1,
            (Expectation("semi_periodic", "yes"), Expectation("semi_anti", "yes"),
             Expectation("anp_member", "yes")),
            epsilon=0.5,
        ),
        CatalogEntry(
            "olomuc", "frequencies 1/3 and 5/7: odd multiples of 1/21",
            _olomuc,
            (Expectation("semi_periodic", "yes"), Expectation("semi_anti", "yes"),
             Expectation("anp_member", "yes")),
        ),
        CatalogEntry(
            "gaston", "cos x as initial datum of the heat equation, evolved to t = 1",
            lambda: cosine(1),
            (Expectation("semi_periodic", "yes"), Expectation("semi_anti", "yes"),
             Expectation("semi_bloch", "yes", _HALF)),
            heat_time=1.0,
        ),
        CatalogEntry(
            "pepa-stepa", "sin(1/(2 + cos t + cos sqrt(2) t)) sampled on [0, 200]",
            lambda: _pepa_stepa("sin"),
            no_verdict=True,
        ),
        CatalogEntry(
            "pepa-stepa-g", "cos(1/(2 + cos t + cos sqrt(2) t)) sampled on [0, 200]",
            lambda: _pepa_stepa("cos"),
            no_verdict=True,
        ),
        CatalogEntry(
            "pepa-stepa-levitan", "step function (-1)^n on [n|n|, (n+1)|n+1|)",
            levitan_step,
            (Expectation("stepanov_semi_periodic", "no"),),
            epsilon=0.5,
        ),
    ]
}


def names() -> list[str]:
    return list(CATALOG)


def get(name: str) -> CatalogEntry:
    try:
        return CATALOG[name]
    except KeyError:
        raise KeyError(f"unknown catalog entry {name!r}; choose from {', '.join(CATALOG)}") from None
