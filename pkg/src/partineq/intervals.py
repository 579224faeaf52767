"""Directed-rounding enclosures on top of ``mpmath.iv``.

A :class:`RealInterval` is a frozen snapshot of an mpmath interval together
with the working precision it was computed at.  Comparisons against exact
integers or rationals go through exact rational endpoints, never through
floats.
"""
from __future__ import annotations

import math
from contextlib import contextmanager
from functools import cached_property
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, Context, Decimal
from fractions import Fraction
from typing import Callable, Iterator, Optional, Union

import mpmath
from mpmath import iv
from mpmath import libmp

from .errors import PrecisionExhausted

START_BITS = 64
DEFAULT_CAP_BITS = 4096

Exact = Union[int, Fraction]


@contextmanager
def working_precision(bits: int) -> Iterator[None]:
    """Temporarily set the precision of the shared ``mpmath.iv`` context."""
    saved = iv.prec
    iv.prec = bits
    try:
        yield
    finally:
        iv.prec = saved


def precision_ladder(start: int = START_BITS, cap: int = DEFAULT_CAP_BITS) -> Iterator[int]:
    bits = start
    while bits <= cap:
        yield bits
        bits *= 2


def _raw_to_exact(raw) -> Union[Fraction, float]:
    if raw == libmp.finf:
        return math.inf
    if raw == libmp.fninf:
        return -math.inf
    if raw == libmp.fnan:
        raise ValueError("NaN interval endpoint")
    p, q = libmp.to_rational(raw)
    return Fraction(int(p), int(q))


@dataclass(frozen=True)
class RealInterval:
    """Closed interval [lo, hi] guaranteed to contain a real quantity."""

    lo: mpmath.mpf
    hi: mpmath.mpf
    precision_bits: int

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def from_iv(cls, x, bits: Optional[int] = None) -> RealInterval:
        if not isinstance(x, iv.mpf):
            x = iv.mpf(x)
        a, b = x._mpi_
        return cls(mpmath.mp.make_mpf(a), mpmath.mp.make_mpf(b), bits or iv.prec)

    @classmethod
    def point(cls, value: Exact, bits: int = START_BITS) -> RealInterval:
        with working_precision(bits):
            if isinstance(value, Fraction):
                return cls.from_iv(iv.mpf(value.numerator) / value.denominator, bits)
            return cls.from_iv(iv.mpf(value), bits)

    # exact views ------------------------------------------------------

    @cached_property
    def lo_exact(self) -> Union[Fraction, float]:
        return _raw_to_exact(self.lo._mpf_)

    @cached_property
    def hi_exact(self) -> Union[Fraction, float]:
        return _raw_to_exact(self.hi._mpf_)

    def lo_float(self) -> float:
        return libmp.to_float(self.lo._mpf_, rnd="f")

    def hi_float(self) -> float:
        return libmp.to_float(self.hi._mpf_, rnd="c")

    def to_iv(self):
        return iv.mpf((self.lo, self.hi))

    # comparisons ------------------------------------------------------

    def compare(self, value: Exact) -> int:
        """+1 if the interval lies strictly above ``value``, -1 if strictly
        below, 0 if ``value`` is not excluded."""
        if self.lo_exact > value:
            return 1
        if self.hi_exact < value:
            return -1
        return 0

    def contains(self, value: Exact) -> bool:
        return self.lo_exact <= value <= self.hi_exact

    def contains_interval(self, other: RealInterval) -> bool:
        return self.lo_exact <= other.lo_exact and other.hi_exact <= self.hi_exact

    def certainly_lt(self, other: RealInterval) -> Optional[bool]:
        """True/False when the comparison is settled, None when the intervals overlap."""
        if self.hi_exact < other.lo_exact:
            return True
        if self.lo_exact >= other.hi_exact:
            return False
        return None

    @property
    def width(self) -> Union[Fraction, float]:
        return self.hi_exact - self.lo_exact

    # formatting -------------------------------------------------------

    def decimal_bounds(self, digits: int = 25) -> tuple[str, str]:
        """Decimal strings rounded outward to ``digits`` significant digits."""
        return (_to_decimal(self.lo_exact, digits, ROUND_FLOOR),
                _to_decimal(self.hi_exact, digits, ROUND_CEILING))

    def as_dict(self, digits: int = 25) -> dict:
        lo, hi = self.decimal_bounds(digits)
        return {"lo": lo, "hi": hi, "precision_bits": self.precision_bits, "rounding": "outward"}

    def __str__(self) -> str:
        lo, hi = self.decimal_bounds(20)
        return f"[{lo}, {hi}]"


def _to_decimal(x: Union[Fraction, float], digits: int, rounding: str) -> str:
    if isinstance(x, float):
        return "inf" if x > 0 else "-inf"
    ctx = Context(prec=digits, rounding=rounding)
    return str(ctx.divide(Decimal(x.numerator), Decimal(x.denominator)))


def enclose(fn: Callable[[int], object], n: int, bits: int = START_BITS) -> RealInterval:
    """Evaluate an interval expression ``fn(n)`` at ``bits`` of precision."""
    with working_precision(bits):
        return RealInterval.from_iv(fn(n), bits)


def escalate(
    decide: Callable[[int], Optional[bool]],
    start: int = START_BITS,
    cap: int = DEFAULT_CAP_BITS,
) -> tuple[Optional[bool], int]:
    """Run ``decide(bits)`` on a doubling precision ladder until it returns a
    bool.  Returns ``(None, cap)`` when nothing settles."""
    last = start
    for bits in precision_ladder(start, cap):
        last = bits
        out = decide(bits)
        if out is not None:
            return out, bits
    return None, last


def decide_or_raise(
    decide: Callable[[int], Optional[bool]],
    start: int = START_BITS,
    cap: int = DEFAULT_CAP_BITS,
) -> bool:
    out, bits = escalate(decide, start, cap)
    if out is None:
        raise PrecisionExhausted(f"comparison unresolved at {bits} bits")
    return out
