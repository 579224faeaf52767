"""Analytic envelopes c1(n) e^{f(n)} < F(n) < c2(n) e^{f(n)} and their certification.

All transcendental quantities are enclosed with ``mpmath.iv``; an exact
sequence value is compared against interval endpoints as an exact rational.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import ROUND_CEILING, ROUND_FLOOR
from fractions import Fraction
from typing import Optional

import mpmath
from mpmath import iv

from .errors import DomainError, InvalidSpec
from .expr import IndexMap
from .intervals import (
    DEFAULT_CAP_BITS,
    START_BITS,
    RealInterval,
    _to_decimal,
    escalate,
    working_precision,
)
from .seq_core import SequenceSpec, values
from .verdict import Status, Verdict, big

__all__ = [
    "BoundEnvelope",
    "CertificationReport",
    "WrightParams",
    "MahlerParams",
    "LEHMER",
    "CHEN",
    "lehmer_envelope",
    "chen_mu",
    "chen_envelope",
    "binomial_bracket",
    "wright_envelope",
    "mahler_envelope",
    "certify_envelope",
    "envelope_contains",
    "calibrate_wright",
    "calibrate_mahler",
    "find_envelope_window",
    "mahler_log_ratio",
    "wright_envelope_def",
    "mahler_envelope_def",
    "DEFAULT_WRIGHT",
]


@dataclass
class BoundEnvelope:
    """Evaluable (f, c1, c2) together with the index N0 where the bounds start to hold."""

    label: str
    f: IndexMap
    c1: IndexMap
    c2: IndexMap
    N0: int = 1
    meta: dict = field(default_factory=dict)

    @classmethod
    def from_exprs(cls, label: str, f: str, c1: str, c2: str, N0: int = 1,
                   params: Optional[dict] = None, **meta) -> BoundEnvelope:
        params = dict(params or {})
        return cls(
            label,
            IndexMap.from_expr(f, params, label=f"{label}.f"),
            IndexMap.from_expr(c1, params, label=f"{label}.c1"),
            IndexMap.from_expr(c2, params, label=f"{label}.c2"),
            N0,
            meta={"f": f, "c1": c1, "c2": c2, "params": params, **meta},
        )

    def bounds(self, n: int, bits: int = START_BITS) -> tuple[RealInterval, RealInterval]:
        """(lower, upper) enclosures of c1(n) e^{f(n)} and c2(n) e^{f(n)}."""
        if n < 1:
            raise DomainError(f"envelopes are defined for n >= 1, got {n}")
        with working_precision(bits):
            ef = iv.exp(self.f(n))
            lower = RealInterval.from_iv(self.c1(n) * ef, bits)
            upper = RealInterval.from_iv(self.c2(n) * ef, bits)
        return lower, upper


class CertificationReport(Verdict):
    """Verdict of :func:`certify_envelope`; witnesses are the failing indices."""

    @property
    def first_failure(self) -> Optional[int]:
        return self.witnesses[0]["n"] if self.witnesses else None

    @property
    def failing_indices(self) -> list[int]:
        return [w["n"] for w in self.witnesses]


# ---------------------------------------------------------------------------
# concrete envelopes
# ---------------------------------------------------------------------------

_MU = "(pi/6*sqrt(24*n - 1))"

LEHMER = BoundEnvelope.from_exprs(
    "lehmer",
    f=_MU,
    c1="sqrt(3)/(12*n)*(1 - 1/sqrt(n))",
    c2="sqrt(3)/(12*n)*(1 + 1/sqrt(n))",
    N0=1,
)

CHEN = BoundEnvelope.from_exprs(
    "chen",
    f=_MU,
    c1=f"sqrt(12)/(24*n - 1)*(1 - 1/{_MU} - 1/{_MU}**3)",
    c2=f"sqrt(12)/(24*n - 1)*(1 - 1/{_MU} + 1/{_MU}**3)",
    N0=37,
)

_MU_MAP = IndexMap.from_expr(_MU, label="mu")


def lehmer_envelope(n: int, bits: int = START_BITS) -> tuple[RealInterval, RealInterval]:
    return LEHMER.bounds(n, bits)


def chen_mu(n: int, bits: int = START_BITS) -> RealInterval:
    """Enclosure of pi/6 * sqrt(24n - 1)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return _MU_MAP.at(n, bits)


def chen_envelope(n: int, bits: int = START_BITS) -> tuple[RealInterval, RealInterval]:
    return CHEN.bounds(n, bits)


def binomial_bracket(j: int, n: int, bits: int = START_BITS) -> tuple[RealInterval, RealInterval]:
    """Enclosures of the truncated binomial expansions bracketing sqrt(n + j)."""
    if abs(j) >= n:
        raise DomainError(f"need |j| < n, got j={j}, n={n}")
    with working_precision(bits):
        x = iv.mpf(n)
        jj = iv.mpf(j)
        core = iv.sqrt(x) + jj / (2 * iv.sqrt(x)) - jj**2 / (8 * x * iv.sqrt(x))
        tail = 2 * iv.mpf(abs(j)) ** 3 / (x**2 * iv.sqrt(x))
        return RealInterval.from_iv(core - tail, bits), RealInterval.from_iv(core + tail, bits)


# ---------------------------------------------------------------------------
# plane partitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WrightParams:
    """Constants for alpha n^{-25/36} (1 -+ beta/sqrt(n)) e^{gamma n^{2/3}}.

    Stored as decimal strings; the envelope that gets certified is the one
    with exactly these decimals.
    """

    alpha: str
    beta: str
    gamma: str
    N: int

    def as_params(self) -> dict[str, str]:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma}


# Calibrated with calibrate_wright(N_cal=2000); pinned in the tests.
DEFAULT_WRIGHT = WrightParams(
    alpha="0.2315168134488983705604",
    beta="0.43",
    gamma="2.009445660877013753065",
    N=1,
)


def wright_envelope_def(params: WrightParams = DEFAULT_WRIGHT) -> BoundEnvelope:
    return BoundEnvelope.from_exprs(
        "wright",
        f="gamma*n**(2/3)",
        c1="alpha*n**(-25/36)*(1 - beta/sqrt(n))",
        c2="alpha*n**(-25/36)*(1 + beta/sqrt(n))",
        N0=params.N,
        params=params.as_params(),
    )


def wright_envelope(params: WrightParams, n: int, bits: int = START_BITS) -> tuple[RealInterval, RealInterval]:
    if n < params.N:
        raise DomainError(f"Wright envelope starts at N={params.N}, got n={n}")
    return wright_envelope_def(params).bounds(n, bits)


def _wright_constants(digits: int = 22) -> tuple[str, str]:
    """Leading constants of Wright's asymptotic for pp(n) as decimal strings."""
    with mpmath.workdps(digits + 15):
        z3 = mpmath.zeta(3)
        gamma = 3 * (z3 / 4) ** (mpmath.mpf(1) / 3)
        alpha = (z3 ** (mpmath.mpf(7) / 36) * mpmath.mpf(2) ** (mpmath.mpf(25) / 36)
                 * mpmath.exp(mpmath.zeta(-1, derivative=1)) / mpmath.sqrt(12 * mpmath.pi))
        return mpmath.nstr(alpha, digits), mpmath.nstr(gamma, digits)


def calibrate_wright(N_cal: int = 2000, N: int = 1, beta_step: str = "0.01",
                     bits: int = 128) -> tuple[WrightParams, dict]:
    """Pick the Wright constants and the least beta (on a ``beta_step`` grid)
    that make the envelope hold on [N, N_cal].

    alpha and gamma are the closed-form leading constants; the relative error
    of alpha e^{gamma n^{2/3}} n^{-25/36} against exact pp(n) decides beta.
    Returns the parameters and a diagnostics dict.
    """
    alpha, gamma = _wright_constants()
    probe = wright_envelope_def(WrightParams(alpha, "0", gamma, N))
    pp = values(SequenceSpec.plane(), N_cal)
    worst = Fraction(0)
    worst_at = N
    for n in range(N, N_cal + 1):
        mid, _ = probe.bounds(n, bits)
        # |pp/main - 1| * sqrt(n), bounded above using the interval endpoints
        with working_precision(bits):
            main = mid.to_iv()
            dev = abs(iv.mpf(pp[n]) / main - 1) * iv.sqrt(n)
        dev_hi = RealInterval.from_iv(dev, bits).hi_exact
        if dev_hi > worst:
            worst, worst_at = dev_hi, n
    step = Fraction(beta_step)
    k = worst // step + 1
    beta = k * step
    params = WrightParams(alpha, _fraction_str(beta), gamma, N)
    mid, _ = probe.bounds(N_cal, bits)
    with working_precision(bits):
        ratio = RealInterval.from_iv(iv.mpf(pp[N_cal]) / mid.to_iv(), bits)
    diag = {
        "max_scaled_deviation": _to_decimal(worst, 12, ROUND_CEILING),
        "max_scaled_deviation_at": worst_at,
        "ratio_at_N_cal": ratio.decimal_bounds(15),
        "N_cal": N_cal,
    }
    return params, diag


def _fraction_str(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    d = x.denominator
    for q in (2, 5):
        while d % q == 0:
            d //= q
    if d != 1:
        return f"{x.numerator}/{x.denominator}"
    # terminating decimal: exact with enough digits
    text = _to_decimal(x, 60, ROUND_FLOOR)
    return text.rstrip("0").rstrip(".") if "." in text else text


# ---------------------------------------------------------------------------
# m-ary partitions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MahlerParams:
    """Constant forms c1, c2 around e^{(log n)^2 / (2 log m)}."""

    m: int
    c1: str = "1/2"
    c2: str = "2"

    def __post_init__(self) -> None:
        if self.m < 2:
            raise InvalidSpec(f"m must be >= 2, got {self.m}")
        if Fraction(self.c1) > Fraction(self.c2):
            raise InvalidSpec("c1 must not exceed c2")


def mahler_envelope_def(params: MahlerParams, N0: int = 1) -> BoundEnvelope:
    return BoundEnvelope.from_exprs(
        f"mahler-{params.m}",
        f="log(n)**2/(2*log(m))",
        c1=params.c1,
        c2=params.c2,
        N0=N0,
        params={"m": str(params.m)},
    )


def mahler_envelope(params: MahlerParams, n: int, bits: int = START_BITS) -> tuple[RealInterval, RealInterval]:
    return mahler_envelope_def(params).bounds(n, bits)


def calibrate_mahler(m: int, n_lo: int, n_hi: int, digits: int = 6,
                     bits: int = 128) -> MahlerParams:
    """Constant c1 < b_m(n) e^{-f(n)} < c2 on [n_lo, n_hi].

    The measured extreme ratios are widened by one unit in the last of
    ``digits`` significant digits, then rounded outward.
    """
    if n_lo < 1 or n_hi < n_lo:
        raise DomainError(f"bad calibration window [{n_lo}, {n_hi}]")
    b = values(SequenceSpec.mary(m), n_hi)
    f = IndexMap.from_expr("log(n)**2/(2*log(m))", {"m": str(m)})
    lo = hi = None
    for n in range(n_lo, n_hi + 1):
        with working_precision(bits):
            r = RealInterval.from_iv(iv.mpf(b[n]) / iv.exp(f(n)), bits)
        lo = r.lo_exact if lo is None else min(lo, r.lo_exact)
        hi = r.hi_exact if hi is None else max(hi, r.hi_exact)
    slack = Fraction(1, 10**digits)
    c1 = _to_decimal(lo * (1 - slack), digits, ROUND_FLOOR)
    c2 = _to_decimal(hi * (1 + slack), digits, ROUND_CEILING)
    return MahlerParams(m, c1, c2)


def mahler_log_ratio(m: int, n: int, bits: int = 128) -> RealInterval:
    """log b_m(n) / ((log n)^2 / (2 log m)); tends to 1, slowly."""
    if n < 2:
        raise DomainError("ratio needs n >= 2")
    bm = values(SequenceSpec.mary(m), n)[n]
    with working_precision(bits):
        val = iv.log(iv.mpf(bm)) / (iv.log(iv.mpf(n)) ** 2 / (2 * iv.log(iv.mpf(m))))
        return RealInterval.from_iv(val, bits)


# ---------------------------------------------------------------------------
# certification
# ---------------------------------------------------------------------------


def envelope_contains(env: BoundEnvelope, n: int, value: int,
                      start: int = START_BITS, cap: int = DEFAULT_CAP_BITS) -> tuple[Optional[bool], Optional[bool], int]:
    """Decide lower(n) < value and value < upper(n).

    Each side is True/False when settled and None when the precision cap was
    reached first.  The third item is the highest precision used.
    """

    def lower_ok(bits: int) -> Optional[bool]:
        lo, _ = env.bounds(n, bits)
        c = lo.compare(value)
        return True if c < 0 else (False if lo.lo_exact >= value else None)

    def upper_ok(bits: int) -> Optional[bool]:
        _, up = env.bounds(n, bits)
        c = up.compare(value)
        return True if c > 0 else (False if up.hi_exact <= value else None)

    lo_res, b1 = escalate(lower_ok, start, cap)
    up_res, b2 = escalate(upper_ok, start, cap)
    return lo_res, up_res, max(b1, b2)


def certify_envelope(env: BoundEnvelope, seq: SequenceSpec, n_lo: int, n_hi: int,
                     start: int = START_BITS, cap: int = DEFAULT_CAP_BITS) -> CertificationReport:
    """Check lower(n) < F(n) < upper(n) for every n in [n_lo, n_hi].

    Failures become witnesses; indices where the precision cap was reached are
    reported as inconclusive and never counted as pass or fail.
    """
    if n_lo < 1 or n_hi < n_lo:
        raise DomainError(f"bad certification range [{n_lo}, {n_hi}]")
    vals = values(seq, n_hi)
    witnesses, unresolved = [], []
    max_bits = start
    for n in range(n_lo, n_hi + 1):
        lo_ok, up_ok, used = envelope_contains(env, n, vals[n], start, cap)
        max_bits = max(max_bits, used)
        if lo_ok is False or up_ok is False:
            lower, upper = env.bounds(n, used)
            side = "lower" if lo_ok is False else "upper"
            if lo_ok is False and up_ok is False:
                side = "both"
            witnesses.append({
                "n": n, "side": side, "value": big(vals[n]),
                "lower": lower.as_dict(), "upper": upper.as_dict(),
            })
        elif lo_ok is None or up_ok is None:
            unresolved.append({"n": n, "precision_bits": used})
    if witnesses:
        status = Status.REFUTED
    elif unresolved:
        status = Status.INCONCLUSIVE
    else:
        status = Status.VERIFIED
    return CertificationReport(
        name=f"envelope:{env.label}",
        status=status,
        horizon=(n_lo, n_hi),
        witnesses=witnesses,
        inconclusive=unresolved,
        details={"sequence": seq.selector, "max_precision_bits": max_bits},
    )


def find_envelope_window(env: BoundEnvelope, seq: SequenceSpec, n_max: int,
                         start: int = START_BITS, cap: int = DEFAULT_CAP_BITS) -> Optional[int]:
    """Least N such that the envelope holds on all of [N, n_max]; None if it fails at n_max."""
    vals = values(seq, n_max)
    n = n_max
    while n >= 1:
        lo_ok, up_ok, _ = envelope_contains(env, n, vals[n], start, cap)
        if not (lo_ok and up_ok):
            break
        n -= 1
    return n + 1 if n + 1 <= n_max else None
