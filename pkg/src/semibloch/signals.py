"""Signal representations and the basic operations on them.

Four representations are supported:

* :class:`TrigPolynomial` -- finite sum ``sum_j a_j exp(i lambda_j x)`` with
  exact frequencies; the workhorse for everything decided exactly.
* :class:`TruncatedSeries` -- a trigonometric head plus a sup-norm bound on
  the discarded tail.
* :class:`PiecewiseConstantSignal` -- a step function on a finite window.
* :class:`SampledSignal` -- uniform samples, linearly interpolated, with an
  optional Lipschitz bound.

Values are complex scalars.  Signals are immutable; all operations return new
objects.  Any plain vectorised callable is also accepted wherever only point
evaluation is needed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

import mpmath
import numpy as np

from ._numerics import block_map
from .errors import DomainError, ParameterError, PreconditionError, UnsupportedRepresentation
from .frequency import DPS, ONE, Frequency

__all__ = [
    "REAL_LINE",
    "HALF_LINE",
    "TrigPolynomial",
    "TruncatedSeries",
    "PiecewiseConstantSignal",
    "SampledSignal",
    "SupDistance",
    "evaluate",
    "translate",
    "bloch_reduce",
    "scale",
    "reciprocal",
    "modulus_bounds",
    "sup_distance",
    "extend_to_real_line",
    "lipschitz_bound",
    "constant",
    "exponential",
    "cosine",
    "sine",
]

REAL_LINE = "R"
HALF_LINE = "R+"


def _as_frequency(lam) -> Frequency:
    if isinstance(lam, Frequency):
        return lam
    return Frequency(Fraction(lam))


def _unit_phase(freq: Frequency, tau: float) -> complex:
    """``exp(i * freq * tau)`` with the phase reduced at high precision."""
    with mpmath.workdps(DPS):
        phase = freq.mp * mpmath.mpf(tau)
        phase = mpmath.fmod(phase, 2 * mpmath.pi)
        return complex(mpmath.cos(phase), mpmath.sin(phase))


def _check_domain(domain: str) -> str:
    if domain not in (REAL_LINE, HALF_LINE):
        raise ParameterError(f"domain must be 'R' or 'R+', got {domain!r}")
    return domain


class TrigPolynomial:
    """Finite exponential sum with exact frequencies.

    Parameters
    ----------
    terms : iterable of (coefficient, frequency)
        Frequencies may be :class:`Frequency` objects or rationals (taken in
        units of :data:`ONE`).  Zero coefficients are dropped.
    domain : {'R', 'R+'}
        Whole line or half line ``[0, inf)``.
    combine : bool
        Sum coefficients of repeated frequencies instead of raising.
    """

    __slots__ = ("_terms", "domain", "_a", "_lam")

    def __init__(self, terms: Iterable = (), domain: str = REAL_LINE, combine: bool = False):
        acc: dict[Frequency, complex] = {}
        for coef, lam in terms:
            lam = _as_frequency(lam)
            coef = complex(coef)
            if not np.isfinite(coef):
                raise ParameterError("coefficients must be finite")
            if lam in acc:
                if not combine:
                    raise ParameterError(f"duplicate frequency {lam}")
                acc[lam] += coef
            else:
                acc[lam] = coef
        items = sorted(((lam, c) for lam, c in acc.items() if c != 0),
                       key=lambda t: t[0].sort_key())
        self._terms = tuple((c, lam) for lam, c in items)
        self.domain = _check_domain(domain)
        self._a = np.array([c for c, _ in self._terms], dtype=complex)
        self._lam = np.array([float(lam) for _, lam in self._terms], dtype=float)

    # -- accessors -----------------------------------------------------
    @property
    def terms(self) -> tuple:
        """Tuple of ``(coefficient, Frequency)`` sorted by frequency value."""
        return self._terms

    @property
    def coefficients(self) -> np.ndarray:
        return self._a.copy()

    @property
    def frequency_values(self) -> np.ndarray:
        return self._lam.copy()

    @property
    def frequencies(self) -> tuple:
        return tuple(lam for _, lam in self._terms)

    def coefficient(self, lam) -> complex:
        lam = _as_frequency(lam)
        for c, mu in self._terms:
            if mu == lam:
                return c
        return 0j

    def __len__(self):
        return len(self._terms)

    @property
    def lipschitz(self) -> float:
        return float(np.sum(np.abs(self._a) * np.abs(self._lam)))

    @property
    def coefficient_l1(self) -> float:
        return float(np.sum(np.abs(self._a)))

    def with_domain(self, domain: str) -> "TrigPolynomial":
        return TrigPolynomial(((c, lam) for c, lam in self._terms), domain)

    # -- evaluation ----------------------------------------------------
    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        if self.domain == HALF_LINE and np.any(x < 0):
            raise DomainError("half-line signal evaluated at x < 0")
        if not self._terms:
            return np.zeros(x.shape, dtype=complex)[()]
        out = np.exp(1j * np.multiply.outer(x, self._lam)) @ self._a
        return out[()] if out.ndim == 0 else out

    # -- algebra -------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, TrigPolynomial):
            return other
        if isinstance(other, (int, float, complex, np.number)):
            return TrigPolynomial([(other, 0)], self.domain)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        domain = HALF_LINE if HALF_LINE in (self.domain, other.domain) else REAL_LINE
        return TrigPolynomial(self._terms + other._terms, domain, combine=True)

    __radd__ = __add__

    def __neg__(self):
        return TrigPolynomial(((-c, lam) for c, lam in self._terms), self.domain)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, float, complex, np.number)):
            return TrigPolynomial(((complex(other) * a, lam) for a, lam in self._terms), self.domain)
        if isinstance(other, TrigPolynomial):
            # spectra add pairwise
            domain = HALF_LINE if HALF_LINE in (self.domain, other.domain) else REAL_LINE
            return TrigPolynomial(((a * b, lam + mu) for a, lam in self._terms for b, mu in other._terms),
                                  domain, combine=True)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, TrigPolynomial):
            return NotImplemented
        return self.domain == other.domain and self._terms == other._terms

    def __hash__(self):
        return hash((self.domain, self._terms))

    def __repr__(self):
        body = " + ".join(f"({c:.6g})e^(i[{lam}]x)" for c, lam in self._terms) or "0"
        return f"TrigPolynomial({body}, domain={self.domain!r})"


@dataclass(frozen=True)
class TruncatedSeries:
    """Trigonometric head of a series plus a sup bound on the discarded tail.

    Verdicts computed on the head hold for the full series up to
    ``+/- tail_sup_bound`` slack.
    """

    head: TrigPolynomial
    tail_sup_bound: float

    def __post_init__(self):
        if not (self.tail_sup_bound >= 0 and math.isfinite(self.tail_sup_bound)):
            raise ParameterError("tail_sup_bound must be finite and >= 0")

    @property
    def domain(self) -> str:
        return self.head.domain

    @property
    def terms(self):
        return self.head.terms

    def __call__(self, x):
        return self.head(x)


class PiecewiseConstantSignal:
    """Step function ``F(x) = values[n]`` on ``[breakpoints[n], breakpoints[n+1])``.

    Defined only on the window ``[breakpoints[0], breakpoints[-1])``.
    """

    __slots__ = ("breakpoints", "values")

    def __init__(self, breakpoints: Sequence[float], values: Sequence[float]):
        bp = np.asarray(breakpoints, dtype=float)
        vals = np.asarray(values)
        if bp.ndim != 1 or bp.size < 2:
            raise ParameterError("need at least two breakpoints")
        if vals.shape != (bp.size - 1,):
            raise ParameterError("need exactly one value per interval")
        if not np.all(np.isfinite(bp)) or not np.all(np.diff(bp) > 0):
            raise ParameterError("breakpoints must be finite and strictly increasing")
        if not np.all(np.isfinite(vals)):
            raise ParameterError("values must be finite")
        bp.setflags(write=False)
        vals = vals.astype(complex if np.iscomplexobj(vals) else float)
        vals.setflags(write=False)
        self.breakpoints = bp
        self.values = vals

    @property
    def window(self) -> tuple[float, float]:
        return float(self.breakpoints[0]), float(self.breakpoints[-1])

    def block_index(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.window
        if np.any((x < lo) | (x >= hi)):
            raise DomainError(f"piecewise signal evaluated outside [{lo}, {hi})")
        return np.searchsorted(self.breakpoints, x, side="right") - 1

    def __call__(self, x):
        out = self.values[self.block_index(x)]
        return out[()] if np.ndim(out) == 0 else out

    def __eq__(self, other):
        if not isinstance(other, PiecewiseConstantSignal):
            return NotImplemented
        return (np.array_equal(self.breakpoints, other.breakpoints)
                and np.array_equal(self.values, other.values))

    def __repr__(self):
        return f"PiecewiseConstantSignal({self.breakpoints.size - 1} blocks on {self.window})"


class SampledSignal:
    """Uniform samples ``samples[j]`` at ``origin + j*step``, linearly interpolated.

    If ``lipschitz_bound`` is given it is checked against the data and then
    bounds the interpolant's slope, which lets grid estimates be certified.
    """

    __slots__ = ("origin", "step", "samples", "lipschitz_bound")

    def __init__(self, origin: float, step: float, samples, lipschitz_bound: float | None = None):
        s = np.asarray(samples, dtype=complex)
        if not step > 0:
            raise ParameterError("step must be positive")
        if s.ndim != 1 or s.size == 0:
            raise ParameterError("samples must be a nonempty 1-d array")
        if lipschitz_bound is not None:
            if lipschitz_bound < 0:
                raise ParameterError("lipschitz_bound must be >= 0")
            jumps = np.abs(np.diff(s))
            if jumps.size and jumps.max() > lipschitz_bound * step * (1 + 1e-9) + 1e-15:
                raise ParameterError("samples violate the stated Lipschitz bound")
        s.setflags(write=False)
        self.origin = float(origin)
        self.step = float(step)
        self.samples = s
        self.lipschitz_bound = None if lipschitz_bound is None else float(lipschitz_bound)

    @property
    def window(self) -> tuple[float, float]:
        return self.origin, self.origin + (self.samples.size - 1) * self.step

    @property
    def grid(self) -> np.ndarray:
        return self.origin + self.step * np.arange(self.samples.size)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        lo, hi = self.window
        tol = 1e-9 * self.step
        if np.any((x < lo - tol) | (x > hi + tol)):
            raise DomainError(f"sampled signal evaluated outside [{lo}, {hi}]")
        u = np.clip((x - self.origin) / self.step, 0, self.samples.size - 1)
        j = np.minimum(np.floor(u).astype(int), self.samples.size - 2) if self.samples.size > 1 \
            else np.zeros_like(u, dtype=int)
        if self.samples.size == 1:
            out = np.broadcast_to(self.samples[0], x.shape).copy()
        else:
            w = u - j
            out = (1 - w) * self.samples[j] + w * self.samples[j + 1]
        return out[()] if out.ndim == 0 else out

    def __repr__(self):
        return f"SampledSignal({self.samples.size} samples on {self.window})"


# -- constructors ------------------------------------------------------

def constant(c, domain: str = REAL_LINE) -> TrigPolynomial:
    return TrigPolynomial([(c, Frequency())], domain)


def exponential(lam, coef=1.0, domain: str = REAL_LINE) -> TrigPolynomial:
    """``coef * exp(i*lam*x)``.

    ``lam`` is taken exactly: a float becomes the dyadic rational it stores,
    so irrational frequencies must be built from symbols, e.g.
    ``Frequency(1, SQRT2)`` rather than ``math.sqrt(2)``.
    """
    return TrigPolynomial([(coef, lam)], domain)


def cosine(lam=1, amplitude=1.0, domain: str = REAL_LINE) -> TrigPolynomial:
    lam = _as_frequency(lam)
    return TrigPolynomial([(amplitude / 2, lam), (amplitude / 2, -lam)], domain, combine=True)


def sine(lam=1, amplitude=1.0, domain: str = REAL_LINE) -> TrigPolynomial:
    lam = _as_frequency(lam)
    return TrigPolynomial([(amplitude / 2j, lam), (-amplitude / 2j, -lam)], domain, combine=True)


# -- operations --------------------------------------------------------

def evaluate(f, x):
    """Value(s) of ``f`` at ``x``; :class:`DomainError` outside the domain."""
    return f(x)


def lipschitz_bound(f) -> float | None:
    if isinstance(f, TrigPolynomial):
        return f.lipschitz
    if isinstance(f, TruncatedSeries):
        return None
    if isinstance(f, SampledSignal):
        return f.lipschitz_bound
    return None


def translate(f, tau: float):
    """Signal ``x -> f(x + tau)`` of the same kind."""
    tau = float(tau)
    if isinstance(f, TrigPolynomial):
        if f.domain == HALF_LINE and tau < 0:
            raise DomainError("negative shift of a half-line signal")
        return TrigPolynomial(((c * _unit_phase(lam, tau), lam) for c, lam in f.terms), f.domain)
    if isinstance(f, TruncatedSeries):
        return TruncatedSeries(translate(f.head, tau), f.tail_sup_bound)
    if isinstance(f, PiecewiseConstantSignal):
        return PiecewiseConstantSignal(f.breakpoints - tau, f.values)
    if isinstance(f, SampledSignal):
        return SampledSignal(f.origin - tau, f.step, f.samples, f.lipschitz_bound)
    raise UnsupportedRepresentation(f"cannot translate {type(f).__name__}")


def bloch_reduce(f, k) -> TrigPolynomial:
    """``x -> exp(-i k x) f(x)``: every frequency shifted by ``-k``.

    When ``k`` involves a symbol not present in ``f`` the shifted frequencies
    become multi-symbol combinations, which stay exact.
    """
    k = _as_frequency(k)
    if isinstance(f, TruncatedSeries):
        return TruncatedSeries(bloch_reduce(f.head, k), f.tail_sup_bound)
    if not isinstance(f, TrigPolynomial):
        raise UnsupportedRepresentation("Bloch reduction needs an exact trigonometric signal")
    return TrigPolynomial(((c, lam - k) for c, lam in f.terms), f.domain)


def scale(f, c):
    """``c * f`` in the same representation."""
    c = complex(c)
    if isinstance(f, TrigPolynomial):
        return f * c
    if isinstance(f, TruncatedSeries):
        return TruncatedSeries(f.head * c, abs(c) * f.tail_sup_bound)
    if isinstance(f, PiecewiseConstantSignal):
        return PiecewiseConstantSignal(f.breakpoints, c * f.values if c.imag else c.real * f.values)
    if isinstance(f, SampledSignal):
        lip = None if f.lipschitz_bound is None else abs(c) * f.lipschitz_bound
        return SampledSignal(f.origin, f.step, c * f.samples, lip)
    raise UnsupportedRepresentation(f"cannot scale {type(f).__name__}")


def _torus_form(f: TrigPolynomial):
    """Integer exponent matrix ``N`` and symbol scalings for ``f``.

    ``f(x) = sum_j a_j exp(i sum_s N[j, s] phi_s)`` with ``phi_s = x * s / D_s``.
    Declared independence of symbols makes ``x -> phi`` dense on the torus.
    """
    names = sorted({s.name for lam in f.frequencies for s in lam.symbols})
    dens = {n: 1 for n in names}
    for lam in f.frequencies:
        for s, c in lam.terms:
            dens[s.name] = math.lcm(dens[s.name], c.denominator)
    N = np.zeros((len(f), len(names)), dtype=float)
    for j, lam in enumerate(f.frequencies):
        for s, c in lam.terms:
            N[j, names.index(s.name)] = float(c * dens[s.name])
    return N, names


def modulus_bounds(f, max_points: int = 2_000_000) -> tuple[float, float]:
    """Certified ``(lower, upper)`` bounds on ``inf |f|`` and ``sup |f|``.

    The signal is lifted to a torus (one angle per symbol) and scanned on a
    grid with a Lipschitz correction.  Returns ``(inf_lower, sup_upper)``.
    """
    if not isinstance(f, TrigPolynomial):
        raise UnsupportedRepresentation("modulus bounds need an exact trigonometric signal")
    if len(f) == 0:
        return 0.0, 0.0
    N, names = _torus_form(f)
    a = f.coefficients
    d = len(names)
    if d == 0:
        v = abs(a.sum())
        return v, v
    n = max(16, int(max_points ** (1.0 / d)))
    axis = 2 * np.pi * np.arange(n) / n
    if d == 1:
        pts = axis[:, None]
    else:
        pts = np.stack(np.meshgrid(*([axis] * d), indexing="ij"), axis=-1).reshape(-1, d)
    lo, hi = np.inf, 0.0
    for start in range(0, pts.shape[0], 65536):
        chunk = pts[start:start + 65536]
        vals = np.abs(np.exp(1j * chunk @ N.T) @ a)
        lo = min(lo, float(vals.min()))
        hi = max(hi, float(vals.max()))
    # nearest grid point is at most pi/n away along every axis
    slack = float(np.sum(np.abs(a)[:, None] * np.abs(N), axis=0).sum()) * np.pi / n
    return max(0.0, lo - slack), hi + slack


def reciprocal(f, window: tuple[float, float], step: float, lower_bound: float | None = None) -> SampledSignal:
    """Samples of ``1/f`` on ``window`` with Lipschitz bound ``Lip(f)/m**2``.

    ``m`` is a certified positive lower bound on ``inf |f|``: computed by
    :func:`modulus_bounds` for trigonometric signals, supplied by the caller
    otherwise.
    """
    if lower_bound is None:
        if isinstance(f, TrigPolynomial):
            lower_bound, _ = modulus_bounds(f)
        else:
            raise PreconditionError("reciprocal of a non-trigonometric signal needs lower_bound")
    if not lower_bound > 0:
        raise PreconditionError(f"inf|f| lower bound {lower_bound} is not positive")
    t0, t1 = map(float, window)
    if not (step > 0 and t1 > t0):
        raise ParameterError("need t1 > t0 and step > 0")
    n = int(math.floor((t1 - t0) / step + 1e-9)) + 1
    x = t0 + step * np.arange(n)
    vals = f(x)
    if np.any(np.abs(vals) < lower_bound * (1 - 1e-9)):
        raise PreconditionError("supplied lower bound is violated on the sample grid")
    lip = lipschitz_bound(f)
    lip_r = None if lip is None else lip / lower_bound ** 2
    return SampledSignal(t0, step, 1.0 / vals, lip_r)


@dataclass(frozen=True)
class SupDistance:
    """Interval estimate of ``sup_x |f(x) - g(x)|`` over a window.

    ``certified`` is False when no Lipschitz bound was available, in which case
    ``hi`` equals ``lo`` and is only a grid estimate.  ``envelope`` is the
    analytic ``[max_j |d_j|, sum_j |d_j|]`` bracket for trigonometric pairs
    (valid over the whole domain, not just the window).
    """

    lo: float
    hi: float
    certified: bool
    envelope: tuple[float, float] | None = None
    note: str = ""


def coefficient_differences(f: TrigPolynomial, g: TrigPolynomial) -> np.ndarray:
    """Aligned term-wise coefficient differences of two trigonometric signals."""
    acc: dict[Frequency, complex] = {}
    for c, lam in f.terms:
        acc[lam] = acc.get(lam, 0j) + c
    for c, lam in g.terms:
        acc[lam] = acc.get(lam, 0j) - c
    return np.array(list(acc.values()), dtype=complex)


def _piecewise_sup(f: PiecewiseConstantSignal, g: PiecewiseConstantSignal, t0, t1) -> float:
    lo = max(t0, f.window[0], g.window[0])
    hi = min(t1, f.window[1], g.window[1])
    if hi <= lo:
        raise DomainError("window does not meet both signals")
    cuts = np.union1d(f.breakpoints, g.breakpoints)
    cuts = np.concatenate([[lo], cuts[(cuts > lo) & (cuts < hi)]])
    return float(np.max(np.abs(f(cuts) - g(cuts))))


def sup_distance(f, g, window: tuple[float, float], h: float, workers: int = 1) -> SupDistance:
    """Bracket ``sup |f - g|`` on ``window`` using a grid of spacing ``h``.

    ``lo`` is the grid maximum; ``hi = lo + L*h/2`` with ``L`` a Lipschitz
    bound for ``f - g``.  Piecewise-constant pairs are handled exactly.
    """
    t0, t1 = map(float, window)
    if not h > 0:
        raise ParameterError("grid step must be positive")
    if t1 < t0:
        raise ParameterError("window must satisfy t0 <= t1")
    if isinstance(f, PiecewiseConstantSignal) and isinstance(g, PiecewiseConstantSignal):
        v = _piecewise_sup(f, g, t0, t1)
        return SupDistance(v, v, True, note="exact block arithmetic")

    fh = f.head if isinstance(f, TruncatedSeries) else f
    gh = g.head if isinstance(g, TruncatedSeries) else g
    lf, lg = lipschitz_bound(fh), lipschitz_bound(gh)
    lip = None if lf is None or lg is None else lf + lg

    n = int(math.floor((t1 - t0) / h + 1e-9)) + 1

    def chunk_max(sl: slice) -> float:
        x = t0 + h * np.arange(sl.start, sl.stop)
        return float(np.max(np.abs(fh(x) - gh(x))))

    lo = max(block_map(chunk_max, n, workers))
    envelope = None
    note = ""
    if isinstance(fh, TrigPolynomial) and isinstance(gh, TrigPolynomial):
        d = np.abs(coefficient_differences(fh, gh))
        envelope = (float(d.max()) if d.size else 0.0, float(d.sum()))
    slack = 0.0
    for s in (f, g):
        if isinstance(s, TruncatedSeries):
            slack += s.tail_sup_bound
    if slack:
        note = "head-only values; add tail slack"
        if envelope is not None:
            envelope = (max(0.0, envelope[0] - slack), envelope[1] + slack)
    if lip is None:
        return SupDistance(lo, lo, False, envelope, note or "grid-only estimate")
    return SupDistance(max(0.0, lo - slack), lo + lip * h / 2 + slack, True, envelope, note)


def extend_to_real_line(f):
    """Unique almost periodic extension of a half-line trigonometric signal."""
    if isinstance(f, TrigPolynomial):
        return f.with_domain(REAL_LINE)
    if isinstance(f, TruncatedSeries):
        return TruncatedSeries(f.head.with_domain(REAL_LINE), f.tail_sup_bound)
    raise UnsupportedRepresentation(
        f"no canonical extension for {type(f).__name__}; only trigonometric signals extend"
    )
