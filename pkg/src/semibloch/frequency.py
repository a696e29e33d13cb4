"""Exact frequencies: rational combinations of declared frequency symbols.

A frequency is stored as a finite map ``symbol -> Fraction``.  Distinct symbols
are *declared* rationally independent (``1`` and ``pi*sqrt(2)`` say); nothing
here tries to prove it.  Single-symbol frequencies expose ``coeff`` and
``symbol`` directly; the zero frequency is the empty map and reports
``coeff == 0`` with ``symbol == ONE``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Iterable, Mapping

import mpmath

#: working precision (decimal digits) for symbol values and phase reduction
DPS = 60

__all__ = [
    "DPS",
    "FrequencySymbol",
    "Frequency",
    "ONE",
    "PI_SQRT2",
    "SQRT2",
    "rational_gcd",
    "rational_lcm",
    "two_adic_valuation",
    "common_unit",
]


def _mp(text: str) -> mpmath.mpf:
    with mpmath.workdps(DPS):
        return mpmath.mpf(text)


@dataclass(frozen=True)
class FrequencySymbol:
    """A named positive real used as a frequency unit.

    ``value`` is kept as a decimal string so that symbols hash and compare
    exactly; :attr:`mp` gives the value at :data:`DPS` digits.
    """

    name: str
    value: str = field(compare=True)

    def __post_init__(self):
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", self.name):
            raise ValueError(f"invalid symbol name {self.name!r}")
        try:
            v = _mp(self.value)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"symbol {self.name!r}: bad value {self.value!r}") from exc
        if not v > 0:
            raise ValueError(f"symbol {self.name!r} must be positive")

    @property
    def mp(self) -> mpmath.mpf:
        return _mp(self.value)

    def __float__(self) -> float:
        return float(self.mp)

    @classmethod
    def from_mpf(cls, name: str, value) -> "FrequencySymbol":
        with mpmath.workdps(DPS + 5):
            return cls(name, mpmath.nstr(mpmath.mpf(value), DPS, strip_zeros=False))


ONE = FrequencySymbol("one", "1")
with mpmath.workdps(DPS + 5):
    SQRT2 = FrequencySymbol.from_mpf("sqrt2", mpmath.sqrt(2))
    PI_SQRT2 = FrequencySymbol.from_mpf("pi_sqrt2", mpmath.pi * mpmath.sqrt(2))


class Frequency:
    """Rational linear combination of frequency symbols.

    >>> Frequency(Fraction(1, 3)) - Frequency(1)
    Frequency('-2/3')
    """

    __slots__ = ("_terms",)

    def __init__(self, coeff=0, symbol: FrequencySymbol = ONE):
        c = Fraction(coeff)
        self._terms: tuple = ((symbol, c),) if c else ()

    @classmethod
    def combo(cls, items: Mapping[FrequencySymbol, object] | Iterable) -> "Frequency":
        if isinstance(items, Mapping):
            items = items.items()
        acc: dict[str, tuple[FrequencySymbol, Fraction]] = {}
        for sym, c in items:
            c = Fraction(c)
            if sym.name in acc:
                old_sym, old = acc[sym.name]
                if old_sym != sym:
                    raise ValueError(f"conflicting values for symbol {sym.name!r}")
                acc[sym.name] = (sym, old + c)
            else:
                acc[sym.name] = (sym, c)
        out = cls.__new__(cls)
        out._terms = tuple((s, c) for _, (s, c) in sorted(acc.items()) if c)
        return out

    # -- structure -----------------------------------------------------
    @property
    def terms(self) -> tuple:
        return self._terms

    @property
    def symbols(self) -> frozenset:
        return frozenset(s for s, _ in self._terms)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_simple(self) -> bool:
        """True for zero or single-symbol frequencies."""
        return len(self._terms) <= 1

    @property
    def coeff(self) -> Fraction:
        if not self.is_simple:
            raise ValueError(f"{self} is a multi-symbol combination")
        return self._terms[0][1] if self._terms else Fraction(0)

    @property
    def symbol(self) -> FrequencySymbol:
        if not self.is_simple:
            raise ValueError(f"{self} is a multi-symbol combination")
        return self._terms[0][0] if self._terms else ONE

    # -- values --------------------------------------------------------
    @property
    def mp(self) -> mpmath.mpf:
        with mpmath.workdps(DPS):
            total = mpmath.mpf(0)
            for s, c in self._terms:
                total += mpmath.mpf(c.numerator) / c.denominator * s.mp
            return +total

    def __float__(self) -> float:
        return float(self.mp)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Frequency):
            return NotImplemented
        return Frequency.combo(self._terms + other._terms)

    def __neg__(self):
        return Frequency.combo((s, -c) for s, c in self._terms)

    def __sub__(self, other):
        if not isinstance(other, Frequency):
            return NotImplemented
        return self + (-other)

    def __mul__(self, r):
        r = Fraction(r)
        return Frequency.combo((s, c * r) for s, c in self._terms)

    __rmul__ = __mul__

    def __truediv__(self, r):
        return self * (1 / Fraction(r))

    def ratio(self, other: "Frequency") -> Fraction | None:
        """Rational ``r`` with ``self == r * other``, or None.

        ``other`` must be nonzero.
        """
        if other.is_zero:
            raise ZeroDivisionError("ratio to the zero frequency")
        if self.is_zero:
            return Fraction(0)
        mine = dict(((s.name, s), c) for s, c in self._terms)
        theirs = dict(((s.name, s), c) for s, c in other._terms)
        if mine.keys() != theirs.keys():
            return None
        keys = list(mine)
        r = mine[keys[0]] / theirs[keys[0]]
        if all(mine[k] == r * theirs[k] for k in keys[1:]):
            return r
        return None

    # -- identity ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Frequency):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(self._terms)

    def sort_key(self):
        return (float(self), str(self))

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for s, c in self._terms:
            mag = abs(c)
            if s == ONE:
                body = str(mag)
            elif mag == 1:
                body = s.name
            else:
                body = f"{mag}*{s.name}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"Frequency({str(self)!r})"

    _TERM = re.compile(
        r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*(?:\*\s*([A-Za-z_]\w*))?|([A-Za-z_]\w*))\s*"
    )

    @classmethod
    def parse(cls, text: str, symbols: Mapping[str, FrequencySymbol] | None = None) -> "Frequency":
        """Inverse of ``str``; bare rationals refer to :data:`ONE`."""
        table = {"one": ONE}
        table.update(symbols or {})
        text = text.strip()
        if text == "0":
            return cls()
        items = []
        pos = 0
        while pos < len(text):
            m = cls._TERM.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse frequency {text!r}")
            sign, num, sym_a, sym_b = m.groups()
            if pos and sign is None:
                raise ValueError(f"missing operator in {text!r}")
            coeff = Fraction(num) if num else Fraction(1)
            name = sym_a or sym_b or "one"
            if name not in table:
                raise ValueError(f"unknown symbol {name!r}")
            items.append((table[name], -coeff if sign == "-" else coeff))
            pos = m.end()
        return cls.combo(items)


# -- rational number theory -------------------------------------------

def rational_gcd(values: Iterable[Fraction]) -> Fraction:
    """Largest positive rational dividing every input to an integer.

    Zeros are skipped; ``gcd(p1/q1, p2/q2) = gcd(p1, p2) / lcm(q1, q2)``.
    """
    vals = [Fraction(v) for v in values if v]
    if not vals:
        raise ValueError("gcd of an empty (or all-zero) set")
    num = reduce(math.gcd, (abs(v.numerator) for v in vals))
    den = reduce(math.lcm, (v.denominator for v in vals))
    return Fraction(num, den)


def rational_lcm(values: Iterable[Fraction]) -> Fraction:
    """Smallest positive rational that is an integer multiple of every input."""
    vals = [Fraction(v) for v in values if v]
    if not vals:
        raise ValueError("lcm of an empty (or all-zero) set")
    num = reduce(math.lcm, (abs(v.numerator) for v in vals))
    den = reduce(math.gcd, (v.denominator for v in vals))
    return Fraction(num, den)


def two_adic_valuation(r: Fraction) -> int:
    """Exponent of 2 in the reduced rational ``r`` (``r != 0``)."""
    r = Fraction(r)
    if not r:
        raise ValueError("2-adic valuation of zero")

    def v2(n: int) -> int:
        n = abs(n)
        return (n & -n).bit_length() - 1

    return v2(r.numerator) - v2(r.denominator)


def common_unit(freqs: Iterable[Frequency]) -> tuple[Frequency, list[Fraction]] | None:
    """Common positive unit ``theta`` of a set of frequencies.

    Returns ``(theta, ratios)`` with ``f == ratios[i] * theta`` for every input
    (zero frequencies get ratio 0), the ratios being integers with gcd 1, or
    None if the nonzero inputs are not pairwise rational multiples of each
    other.  Also None when every input is zero.
    """
    freqs = list(freqs)
    nonzero = [f for f in freqs if not f.is_zero]
    if not nonzero:
        return None
    base = nonzero[0]
    ratios = []
    for f in freqs:
        r = f.ratio(base)
        if r is None:
            return None
        ratios.append(r)
    g = rational_gcd(ratios)
    theta = base * g
    if theta.mp < 0:
        theta, g = -theta, -g
    return theta, [r / g for r in ratios]
