"""Convolution products with scalar kernel families and class-preservation checks.

Infinite convolution
    G(t) = int_{-inf}^t R(t - s) g(s) ds = int_0^inf R(s) g(t - s) ds
Finite convolution
    H(t) = int_0^t R(t - s) f(s) ds

Both are computed block by block on ``[k, k+1]`` with composite
Gauss-Legendre, summed in ascending ``k`` with correctly rounded summation.
The summability constant ``M = sum_k ||R||_{L^q'[k, k+1]}`` bounds how much a
convolution can inflate the defect of a semi-Bloch (semi-anti) witness:
``sup |G(t + mp) - phase_m G(t)| <= M * eps``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import mpmath
import numpy as np
from scipy.special import erfc

from ._numerics import block_map, gauss_legendre
from .errors import NonSummableError, ParameterError, PreconditionError, UnsupportedRepresentation
from .frequency import DPS
from .periods import SemiWitness, semi_anti_witness, semi_bloch_witness, _as_freq
from .signals import (
    PiecewiseConstantSignal,
    SampledSignal,
    TrigPolynomial,
    TruncatedSeries,
)

__all__ = [
    "KernelFamily",
    "Summability",
    "AsymptoticDecomposition",
    "PreservationReport",
    "AsymptoticReport",
    "conjugate_exponent",
    "summability_constant",
    "shifted_summability",
    "infinite_convolution",
    "finite_convolution",
    "transfer",
    "convolve_trig",
    "heat_evolve",
    "heat_quadrature",
    "preservation_check",
    "decompose",
    "asymptotic_conditions",
]

TRUNCATION_REL = 1e-10
# convolution integrals truncate further out than the reported M
QUADRATURE_REL = 1e-15
NO_DECAY_BLOCKS = 100
_POINT_BLOCK = 16
MAX_BLOCKS = 100_000


def conjugate_exponent(q: float) -> float:
    """Hoelder conjugate: ``1/q + 1/q' = 1`` (``q = 1`` pairs with ``q' = inf``)."""
    if q == math.inf:
        return 1.0
    if not q >= 1:
        raise ParameterError("exponent must be >= 1")
    return math.inf if q == 1 else q / (q - 1)


@dataclass(frozen=True)
class KernelFamily:
    """Scalar kernel ``R(t)``, ``t > 0``.

    kinds
        ``exponential``: ``exp(-omega t)``;
        ``gauss``: ``(4 pi time)^(-1/2) exp(-t^2 / (4 time))`` (the heat kernel
        restricted to ``t > 0``);
        ``tabulated``: ``values[i]`` at ``t = i * step``, linearly
        interpolated, zero (with unknown tail) beyond the data.
    """

    kind: str
    omega: float | None = None
    time: float | None = None
    step: float | None = None
    values: tuple = ()
    q_prime: float = math.inf

    def __post_init__(self):
        if self.kind == "exponential":
            if not (self.omega is not None and self.omega > 0):
                raise ParameterError("exponential kernel needs omega > 0")
        elif self.kind == "gauss":
            if not (self.time is not None and self.time > 0):
                raise ParameterError("gauss kernel needs time > 0")
        elif self.kind == "tabulated":
            if not (self.step is not None and self.step > 0):
                raise ParameterError("tabulated kernel needs step > 0")
            if len(self.values) < 2:
                raise ParameterError("tabulated kernel needs at least two values")
            object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        else:
            raise ParameterError(f"unknown kernel kind {self.kind!r}")
        if not self.q_prime >= 1:
            raise ParameterError("q_prime must be >= 1")

    @classmethod
    def exponential(cls, omega: float = 1.0, q_prime: float = math.inf):
        return cls("exponential", omega=float(omega), q_prime=q_prime)

    @classmethod
    def gauss(cls, time: float = 1.0, q_prime: float = math.inf):
        return cls("gauss", time=float(time), q_prime=q_prime)

    @classmethod
    def tabulated(cls, step: float, values, q_prime: float = math.inf):
        return cls("tabulated", step=float(step), values=tuple(values), q_prime=q_prime)

    @property
    def q(self) -> float:
        return conjugate_exponent(self.q_prime)

    @property
    def support_end(self) -> float:
        """End of known data (``inf`` for analytic kinds)."""
        if self.kind == "tabulated":
            return (len(self.values) - 1) * self.step
        return math.inf

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "exponential":
            out = np.exp(-self.omega * t)
        elif self.kind == "gauss":
            out = np.exp(-t * t / (4 * self.time)) / math.sqrt(4 * math.pi * self.time)
        else:
            grid = self.step * np.arange(len(self.values))
            out = np.interp(t, grid, self.values, right=0.0)
        return np.where(t >= 0, out, 0.0)

    # -- block norms ---------------------------------------------------
    def block_norm(self, a: float, q_prime: float | None = None) -> float:
        """``||R||_{L^q'[a, a+1]}`` for ``a >= 0``."""
        qp = self.q_prime if q_prime is None else q_prime
        if self.kind == "exponential":
            w = self.omega
            head = math.exp(-w * a)
            if qp == math.inf:
                return head
            return head * ((1 - math.exp(-w * qp)) / (w * qp)) ** (1 / qp)
        if self.kind == "gauss":
            tau = self.time
            if qp == math.inf:
                return float(self(a))
            # int_a^{a+1} exp(-t^2/sigma^2) dt with sigma^2 = 4 tau / qp
            sigma = math.sqrt(4 * tau / qp)
            integral = sigma * math.sqrt(math.pi) / 2 * (erfc(a / sigma) - erfc((a + 1) / sigma))
            return (4 * math.pi * tau) ** -0.5 * max(integral, 0.0) ** (1 / qp)
        # tabulated: piecewise linear on the data grid
        if a >= self.support_end:
            return 0.0
        knots = self.step * np.arange(len(self.values))
        inner = knots[(knots > a) & (knots < a + 1)]
        pts = np.concatenate([[a], inner, [min(a + 1, self.support_end)]])
        if qp == math.inf:
            return float(np.max(np.abs(self(pts))))
        nodes, weights = [], []
        for lo, hi in zip(pts[:-1], pts[1:]):
            x, w = gauss_legendre(lo, hi, 1, 8)
            nodes.append(x)
            weights.append(w)
        x, w = np.concatenate(nodes), np.concatenate(weights)
        return float(np.sum(w * np.abs(self(x)) ** qp) ** (1 / qp))

    def tail_bound(self, a: float, q_prime: float | None = None) -> float | None:
        """Bound on ``sum_{j>=0} ||R||_{L^q'[a+j, a+j+1]}``; None when unknown."""
        qp = self.q_prime if q_prime is None else q_prime
        if self.kind == "exponential":
            return self.block_norm(a, qp) / (1 - math.exp(-self.omega))
        if self.kind == "gauss":
            # block <= R(a) and R(a+j+1)/R(a+j) <= exp(-(2a+1)/(4 time)) for j >= 0
            ratio = math.exp(-(2 * a + 1) / (4 * self.time))
            return float(self(a)) / (1 - ratio)
        return None


@dataclass(frozen=True)
class Summability:
    """``M`` = partial sum over ``K`` blocks + ``tail_bound`` (None: unknown tail)."""

    M: float
    truncation_K: int
    tail_bound: float | None

    def __iter__(self):
        return iter((self.M, self.truncation_K, self.tail_bound))


def shifted_summability(kernel: KernelFamily, shift: float = 0.0,
                        q_prime: float | None = None, rel: float = TRUNCATION_REL) -> Summability:
    """``m_s = sum_k ||R||_{L^q'[s+k, s+k+1]}`` with a certified tail.

    Blocks are added until the analytic tail falls below ``rel`` times the
    partial sum.
    """
    qp = kernel.q_prime if q_prime is None else q_prime
    blocks = []
    if kernel.kind == "tabulated":
        K = max(0, math.ceil(kernel.support_end - shift))
        blocks = [kernel.block_norm(shift + k, qp) for k in range(K)]
        if len(blocks) >= NO_DECAY_BLOCKS:
            tail = blocks[-NO_DECAY_BLOCKS:]
            if tail[-1] > 0 and tail[-1] >= tail[0]:
                raise NonSummableError(
                    f"block norms show no decay over {NO_DECAY_BLOCKS} blocks"
                )
        return Summability(math.fsum(blocks), K, None)
    K = 0
    while True:
        blocks.append(kernel.block_norm(shift + K, qp))
        K += 1
        partial = math.fsum(blocks)
        tail = kernel.tail_bound(shift + K, qp)
        if tail <= rel * partial or (partial == 0 and tail == 0):
            return Summability(partial + tail, K, tail)
        if K >= MAX_BLOCKS:
            raise NonSummableError("block-norm series did not converge")


def summability_constant(kernel: KernelFamily, q_prime: float | None = None) -> Summability:
    """``M = sum_{k>=0} ||R||_{L^q'[k, k+1]}`` (returned with truncation data)."""
    return shifted_summability(kernel, 0.0, q_prime)


def _sup_abs(g) -> float:
    if isinstance(g, TrigPolynomial):
        return g.coefficient_l1
    if isinstance(g, TruncatedSeries):
        return g.head.coefficient_l1 + g.tail_sup_bound
    if isinstance(g, PiecewiseConstantSignal):
        return float(np.max(np.abs(g.values)))
    if isinstance(g, SampledSignal):
        return float(np.max(np.abs(g.samples)))
    return math.inf


def _max_frequency(g) -> float:
    head = g.head if isinstance(g, TruncatedSeries) else g
    if isinstance(head, TrigPolynomial) and len(head):
        return float(np.max(np.abs(head.frequency_values)))
    if isinstance(head, SampledSignal):
        return math.pi / head.step
    return 1.0


def _panel_width(kernel: KernelFamily, omega: float) -> float:
    width = 1.0
    if omega > 0:
        width = min(width, 2.0 / omega)
    if kernel.kind == "exponential":
        width = min(width, 2.0 / kernel.omega)
    elif kernel.kind == "gauss":
        width = min(width, math.sqrt(kernel.time))
    else:
        width = min(width, kernel.step)
    return width


def _block_rule(kernel, a: float, b: float, omega: float, order: int):
    width = _panel_width(kernel, omega)
    if kernel.kind == "tabulated":
        knots = kernel.step * np.arange(len(kernel.values))
        inner = knots[(knots > a) & (knots < b)]
        edges = np.concatenate([[a], inner, [b]])
    else:
        edges = np.array([a, b])
    nodes, weights = [], []
    for lo, hi in zip(edges[:-1], edges[1:]):
        panels = max(1, math.ceil((hi - lo) / width))
        x, w = gauss_legendre(lo, hi, panels, order)
        nodes.append(x)
        weights.append(w)
    return np.concatenate(nodes), np.concatenate(weights)


def _convolve_blocks(kernel, g, t: np.ndarray, edges: list, omega: float, order: int) -> np.ndarray:
    out = np.empty(t.shape, dtype=complex)
    rules = [_block_rule(kernel, a, b, omega, order) for a, b in edges]
    for i, ti in enumerate(t):
        parts_re, parts_im = [], []
        for s, w in rules:
            vals = w * kernel(s) * g(ti - s)
            vals = np.asarray(vals, dtype=complex)
            parts_re.append(vals.real)
            parts_im.append(vals.imag)
        re = np.concatenate(parts_re)
        im = np.concatenate(parts_im)
        out[i] = complex(math.fsum(re), math.fsum(im))
    return out


def _convolve_points(kernel, g, t: np.ndarray, edges: list, omega: float, order: int,
                     workers: int) -> np.ndarray:
    parts = block_map(lambda sl: _convolve_blocks(kernel, g, t[sl], edges, omega, order),
                      t.size, workers, block=_POINT_BLOCK)
    return np.concatenate(parts) if parts else np.empty(0, dtype=complex)


def infinite_convolution(kernel: KernelFamily, g, t, order: int = 16, full_output: bool = False,
                         workers: int = 1):
    """``G(t) = int_0^inf R(s) g(t - s) ds`` by blockwise Gauss-Legendre.

    Blocks ``[k, k+1]`` are summed until the analytic tail of the kernel is
    below ``1e-15`` of the summed block norms; the discarded part is at most
    ``tail * sup|g|``.  With ``full_output`` returns ``(value, bound)``
    where ``bound`` adds a quadrature estimate (difference to a lower-order
    rule) to the truncation bound.  Evaluation points are split into fixed
    blocks across ``workers`` threads; each value is an ``fsum`` over the same
    nodes, so results do not depend on the worker count.
    """
    summ = shifted_summability(kernel, 0.0, math.inf, QUADRATURE_REL)
    K = summ.truncation_K
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    omega = _max_frequency(g)
    edges = [(float(k), float(k + 1)) for k in range(K)]
    if kernel.kind == "tabulated":
        edges = [(a, min(b, kernel.support_end)) for a, b in edges if a < kernel.support_end]
    val = _convolve_points(kernel, g, t_arr, edges, omega, order, workers)
    scalar = np.ndim(t) == 0
    if not full_output:
        return complex(val[0]) if scalar else val
    coarse = _convolve_points(kernel, g, t_arr, edges, omega, max(4, order // 2), workers)
    tail = summ.tail_bound if summ.tail_bound is not None else math.inf
    bound = np.abs(val - coarse) + tail * _sup_abs(g)
    if scalar:
        return complex(val[0]), float(bound[0])
    return val, bound


def finite_convolution(kernel: KernelFamily, f, t, order: int = 16, full_output: bool = False):
    """``H(t) = int_0^t R(r) f(t - r) dr`` for ``t >= 0``."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if np.any(t_arr < 0):
        raise ParameterError("finite convolution needs t >= 0")
    omega = _max_frequency(f)
    out = np.empty(t_arr.shape, dtype=complex)
    err = np.empty(t_arr.shape)
    for i, ti in enumerate(t_arr):
        if ti == 0:
            out[i], err[i] = 0.0, 0.0
            continue
        n = math.ceil(ti)
        edges = [(float(k), float(min(k + 1, ti))) for k in range(n)]
        fine = _convolve_blocks(kernel, f, np.array([ti]), edges, omega, order)[0]
        coarse = _convolve_blocks(kernel, f, np.array([ti]), edges, omega, max(4, order // 2))[0]
        out[i], err[i] = fine, abs(fine - coarse)
    scalar = np.ndim(t) == 0
    if not full_output:
        return complex(out[0]) if scalar else out
    return (complex(out[0]), float(err[0])) if scalar else (out, err)


def transfer(kernel: KernelFamily, lam: float, order: int = 16) -> complex:
    """``int_0^inf R(s) exp(-i lam s) ds`` (the multiplier of ``exp(i lam t)``)."""
    probe = TrigPolynomial([(1.0, 0)]) if lam == 0 else None
    lam = float(lam)

    def wave(x):
        return np.exp(1j * lam * np.asarray(x, dtype=float))

    if probe is not None:
        return infinite_convolution(kernel, probe, 0.0, order)
    summ = shifted_summability(kernel, 0.0, math.inf, QUADRATURE_REL)
    edges = [(float(k), float(k + 1)) for k in range(summ.truncation_K)]
    if kernel.kind == "tabulated":
        edges = [(a, min(b, kernel.support_end)) for a, b in edges if a < kernel.support_end]
    return complex(_convolve_blocks(kernel, wave, np.array([0.0]), edges, abs(lam), order)[0])


def convolve_trig(kernel: KernelFamily, g: TrigPolynomial) -> TrigPolynomial:
    """Infinite convolution of a trigonometric signal, as a trigonometric signal.

    Each coefficient is multiplied by :func:`transfer`; the spectrum can only
    shrink, so exact Bloch periods of ``g`` are exact Bloch periods of the
    result.
    """
    if not isinstance(g, TrigPolynomial):
        raise UnsupportedRepresentation("convolve_trig needs a trigonometric signal")
    return TrigPolynomial(((c * transfer(kernel, float(lam)), lam) for c, lam in g.terms), g.domain)


def heat_evolve(f, t: float):
    """Solution at time ``t`` of ``u_t = u_xx`` with initial data ``f``.

    Exact Fourier multiplier: the coefficient of ``exp(i lambda x)`` is
    multiplied by ``exp(-lambda^2 t)``.  The spectrum is unchanged.
    """
    if not t > 0:
        raise ParameterError("heat time must be positive")
    if isinstance(f, TruncatedSeries):
        # the heat kernel is a probability density: sup norms do not grow
        return type(f)(heat_evolve(f.head, t), f.tail_sup_bound)
    if not isinstance(f, TrigPolynomial):
        raise UnsupportedRepresentation("use heat_quadrature for non-trigonometric signals")
    with mpmath.workdps(DPS):
        tm = mpmath.mpf(t)
        factors = [float(mpmath.exp(-(lam.mp ** 2) * tm)) for lam in f.frequencies]
    return TrigPolynomial(((c * w, lam) for (c, lam), w in zip(f.terms, factors)), f.domain)


def heat_quadrature(f, x, t: float, order: int = 20):
    """Direct Gauss-Weierstrass integral ``(4 pi t)^(-1/2) int exp(-(x-s)^2/(4t)) f(s) ds``.

    The integral is truncated at 8 standard deviations (``sigma = sqrt(2t)``),
    leaving a relative tail below ``1e-14``.
    """
    if not t > 0:
        raise ParameterError("heat time must be positive")
    sigma = math.sqrt(2 * t)
    half = 8 * sigma
    omega = _max_frequency(f)
    width = min(sigma / 2, 2.0 / omega if omega > 0 else sigma / 2)
    panels = max(1, math.ceil(2 * half / width))
    y, w = gauss_legendre(-half, half, panels, order)
    kern = w * np.exp(-y * y / (4 * t)) / math.sqrt(4 * math.pi * t)
    x_arr = np.atleast_1d(np.asarray(x, dtype=float))
    out = np.empty(x_arr.shape, dtype=complex)
    for i, xi in enumerate(x_arr):
        vals = np.asarray(kern * f(xi + y), dtype=complex)
        out[i] = complex(math.fsum(vals.real), math.fsum(vals.imag))
    return complex(out[0]) if np.ndim(x) == 0 else out


@dataclass(frozen=True)
class PreservationReport:
    measured: float
    ceiling: float
    M: float
    epsilon: float
    witness: SemiWitness
    m_checked: tuple
    t_grid: np.ndarray = field(repr=False)
    slack: float = 1e-8

    @property
    def passed(self) -> bool:
        return self.measured <= self.ceiling + self.slack


def preservation_check(kernel: KernelFamily, g, k=0, epsilon: float = 1e-3, mode: str = "bloch",
                       witness: SemiWitness | None = None, t_grid=None, m_max: int = 8,
                       slack: float = 1e-8) -> PreservationReport:
    """Measure ``max |G(t + mp) - phase_m G(t)|`` against the ceiling ``M * epsilon``.

    ``G`` is the infinite convolution of ``g``.  The witness ``p`` (found by
    :mod:`semibloch.periods` unless supplied) must certify level ``epsilon``
    for ``g``; ``m`` runs over ``+-1..m_max``.
    """
    kf = _as_freq(k)
    if witness is None:
        witness = semi_anti_witness(g, epsilon) if mode == "anti" else semi_bloch_witness(g, kf, epsilon)
    if witness is None:
        raise PreconditionError("no semi-Bloch / semi-anti witness at this epsilon")
    if witness.bound > epsilon:
        raise PreconditionError(f"witness bound {witness.bound} exceeds epsilon {epsilon}")
    M = summability_constant(kernel).M
    p = witness.p
    if t_grid is None:
        t_grid = np.linspace(-10.0, 10.0, 41)
    t_grid = np.asarray(t_grid, dtype=float)
    base = infinite_convolution(kernel, g, t_grid)
    k_val = float(kf)
    ms = [m for m in range(-m_max, m_max + 1) if m]
    measured = 0.0
    for m in ms:
        shifted = infinite_convolution(kernel, g, t_grid + m * p)
        if witness.mode == "anti":
            phase = -1.0 if m % 2 else 1.0
        else:
            with mpmath.workdps(DPS):
                ang = mpmath.fmod(kf.mp * m * mpmath.mpf(p), 2 * mpmath.pi)
            phase = complex(mpmath.expj(ang)) if k_val else 1.0
        measured = max(measured, float(np.max(np.abs(shifted - phase * base))))
    return PreservationReport(measured, M * epsilon, M, float(epsilon), witness, tuple(ms),
                              t_grid, slack)


@dataclass(frozen=True)
class AsymptoticDecomposition:
    """``f = g + phi`` on ``[0, inf)`` with ``phi`` vanishing in the Stepanov sense.

    ``vanish_evidence`` holds ``(t, ||phi(t + .)||_{L^q[0,1]})`` pairs.
    """

    g: object
    phi: object
    q: float
    vanish_evidence: tuple

    def __call__(self, t):
        return self.g(t) + self.phi(t)


def _lq_window(func, t: float, q: float, panels: int = 64) -> float:
    x, w = gauss_legendre(t, t + 1.0, panels, 8)
    return float(np.sum(w * np.abs(func(x)) ** q) ** (1 / q))


def decompose(g, phi, q: float = 1.0, ts=(10.0, 20.0, 40.0, 80.0), tol: float = 1e-6) -> AsymptoticDecomposition:
    """Build a decomposition after checking that ``phi`` vanishes.

    Raises :class:`PreconditionError` unless the lift norms of ``phi`` at the
    increasing times ``ts`` are non-increasing and end below ``tol``.
    """
    evidence = tuple((float(t), _lq_window(phi, t, q)) for t in ts)
    vals = [v for _, v in evidence]
    if any(b > a for a, b in zip(vals, vals[1:])) or vals[-1] >= tol:
        raise PreconditionError(f"vanishing part does not decay: {vals}")
    return AsymptoticDecomposition(g, phi, float(q), evidence)


@dataclass(frozen=True)
class AsymptoticReport:
    ts: tuple
    condition_i: tuple
    condition_ii: tuple
    passed_i: bool
    passed_ii: bool
    violations: tuple = ()

    @property
    def passed(self) -> bool:
        return self.passed_i and self.passed_ii


def _profile_ok(vals, tol) -> bool:
    if any(not math.isfinite(v) for v in vals):
        return False
    decreasing = all(b <= a * (1 + 1e-12) + 1e-300 for a, b in zip(vals, vals[1:]))
    return decreasing and vals[-1] < tol


def asymptotic_conditions(kernel: KernelFamily, decomposition: AsymptoticDecomposition,
                          q: float | None = None, m_cut: float = 1.0,
                          ts=(10.0, 20.0, 40.0, 80.0), tol: float = 1e-6) -> AsymptoticReport:
    """Evaluate the two window conditions for the finite convolution at ``t`` in ``ts``.

    (i)  ``int_t^{t+1} [int_{m_cut}^s |R(r)| |phi(s - r)| dr]^q ds``
    (ii) ``int_t^{t+1} m_s^q ds`` with ``m_s = sum_k ||R||_{L^q'[s+k, s+k+1]}``

    Each profile must be non-increasing and end below ``tol``.
    """
    q = decomposition.q if q is None else q
    if abs(1 / q + 1 / kernel.q_prime - 1) > 1e-12:
        raise ParameterError(f"q={q} and q'={kernel.q_prime} are not Hoelder conjugate")
    violations = []
    phi = decomposition.phi

    def inner(s: float) -> float:
        if s <= m_cut:
            return 0.0
        panels = max(1, math.ceil((s - m_cut) / 0.5))
        r, w = gauss_legendre(m_cut, s, panels, 16)
        return float(np.sum(w * np.abs(kernel(r)) * np.abs(phi(s - r))))

    s_nodes, s_w = gauss_legendre(0.0, 1.0, 4, 8)
    cond_i, cond_ii = [], []
    for t in ts:
        cond_i.append(float(sum(w * inner(t + s) ** q for s, w in zip(s_nodes, s_w))))
        try:
            ms = [shifted_summability(kernel, t + s).M for s in s_nodes]
            cond_ii.append(float(np.sum(s_w * np.asarray(ms) ** q)))
        except NonSummableError as exc:
            cond_ii.append(math.inf)
            violations.append(f"t={t}: {exc}")
    ok_i = _profile_ok(cond_i, tol)
    ok_ii = _profile_ok(cond_ii, tol)
    if not ok_i:
        violations.append(f"condition (i) profile {cond_i} is not decreasing below {tol}")
    if not ok_ii:
        violations.append(f"condition (ii) profile {cond_ii} is not decreasing below {tol}")
    if kernel.kind == "tabulated":
        violations.append("tabulated kernel: tail beyond the data is unknown")
    return AsymptoticReport(tuple(ts), tuple(cond_i), tuple(cond_ii), ok_i, ok_ii, tuple(violations))
