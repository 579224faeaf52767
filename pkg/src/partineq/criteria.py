"""Executable forms of the general Bessenrodt-Ono and log-concavity criteria.

The analytic conditions are checked with interval arithmetic on explicit
finite horizons; every conclusion about the sequence itself is checked with
exact integers.  Nothing here claims validity beyond the horizon that was
actually scanned.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional

import numpy as np
from mpmath import iv

from .envelopes import BoundEnvelope, certify_envelope
from .errors import DomainError, InvalidSpec
from .expr import IndexMap
from .intervals import DEFAULT_CAP_BITS, START_BITS, RealInterval, escalate, working_precision
from .seq_core import SequenceSpec, values
from .verdict import Status, Verdict, big

__all__ = [
    "BOCriterionInputs",
    "LCCriterionInputs",
    "ProbeStatus",
    "ProbeReport",
    "check_bo_condition1",
    "check_bo_condition2",
    "check_bo_condition3",
    "run_bo_criterion",
    "check_lc_condition1",
    "check_lc_condition2",
    "check_side_inequality",
    "run_lc_criterion",
    "check_ratio_descent",
    "check_prop42",
    "check_thm43",
    "limsup_probe",
]

MAX_WITNESSES = 200


@dataclass
class BOCriterionInputs:
    """Envelope plus the auxiliary maps g, h and candidate thresholds.

    A threshold of ``None`` means "no candidate, discover it".
    """

    env: BoundEnvelope
    g: IndexMap
    h: IndexMap
    N1: Optional[int] = 1
    N2: Optional[int] = 1
    N3: Optional[int] = 1
    label: str = "bo"
    meta: dict = field(default_factory=dict)


@dataclass
class LCCriterionInputs:
    """Envelope, the map h and candidate thresholds for the log-concavity criterion.

    ``side`` optionally carries a named sufficient inequality lhs(n) >= rhs(n)
    (e.g. the closing estimate of a hand proof) with its own candidate start.
    """

    env: BoundEnvelope
    h: IndexMap
    N1: Optional[int] = 2
    N2: Optional[int] = 2
    side: Optional[tuple[str, IndexMap, IndexMap, Optional[int]]] = None
    label: str = "lc"
    meta: dict = field(default_factory=dict)


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _sign_decide(diff: RealInterval) -> Optional[bool]:
    """Non-strict ``diff >= 0``: True, False, or None while unresolved."""
    if diff.lo_exact >= 0:
        return True
    if diff.hi_exact < 0:
        return False
    return None


def _float_bounds(m: IndexMap, idx: range) -> tuple[np.ndarray, np.ndarray]:
    n = max(idx) + 1
    lo = np.full(n, -np.inf)
    hi = np.full(n, np.inf)
    for k in idx:
        r = m.at(k, START_BITS)
        lo[k] = r.lo_float()
        hi[k] = r.hi_float()
    return lo, hi


_dn = lambda x: np.nextafter(x, -np.inf)  # noqa: E731
_up = lambda x: np.nextafter(x, np.inf)  # noqa: E731


def _threshold(blocking: list[int], first: int, last: int) -> Optional[int]:
    """Least T in [first, last] with no blocking index >= T, or None."""
    t = max(blocking) + 1 if blocking else first
    return t if t <= last else None


def _condition_verdict(name: str, candidate: Optional[int], search_from: int, horizon: int,
                       failures: list[dict], unresolved: list[dict], key: str,
                       index_of: Callable[[dict], int]) -> Verdict:
    blocking = [index_of(w) for w in failures] + [index_of(u) for u in unresolved]
    found = _threshold(blocking, search_from, horizon)
    start = candidate if candidate is not None else found
    relevant_fail = [w for w in failures if start is not None and index_of(w) >= start]
    relevant_unres = [u for u in unresolved if start is not None and index_of(u) >= start]
    if start is None:
        status = Status.REFUTED if failures else Status.INCONCLUSIVE
        relevant_fail = failures
        relevant_unres = unresolved
    elif relevant_fail:
        status = Status.REFUTED
    elif relevant_unres:
        status = Status.INCONCLUSIVE
    else:
        status = Status.VERIFIED
    return Verdict(
        name=name,
        status=status,
        horizon=(start if start is not None else search_from, horizon),
        witnesses=relevant_fail[:MAX_WITNESSES],
        thresholds={key: found},
        inconclusive=relevant_unres[:MAX_WITNESSES],
        details={
            "candidate": candidate,
            "searched_from": search_from,
            "witness_count": len(relevant_fail),
            "failures_below_candidate": sorted({index_of(w) for w in failures} - {index_of(w) for w in relevant_fail})[:MAX_WITNESSES],
        },
    )


def _check_indexwise(name: str, key: str, decide_at: Callable[[int, int], Optional[bool]],
                     candidate: Optional[int], search_from: int, horizon: int,
                     start: int, cap: int) -> Verdict:
    failures, unresolved = [], []
    for n in range(search_from, horizon + 1):
        out, bits = escalate(lambda b: decide_at(n, b), start, cap)
        if out is False:
            failures.append({"n": n, "precision_bits": bits})
        elif out is None:
            unresolved.append({"n": n, "precision_bits": bits})
    return _condition_verdict(name, candidate, search_from, horizon, failures,
                              unresolved, key, lambda w: w["n"])


def _pairs_check(name: str, key: str, lo_hi: Callable[[int, np.ndarray], tuple[np.ndarray, np.ndarray]],
                 decide_pair: Callable[[int, int, int], Optional[bool]],
                 candidate: Optional[int], search_from: int, horizon: int,
                 start: int, cap: int) -> Verdict:
    """Check a pair condition for search_from <= b <= a <= horizon.

    ``lo_hi(b, a_array)`` returns float bounds on the margin (>= 0 means the
    condition holds) computed with outward-nudged float arithmetic; pairs it
    cannot settle are handed to ``decide_pair`` on the precision ladder.
    """
    failures, unresolved = [], []
    for b in range(search_from, horizon + 1):
        a = np.arange(b, horizon + 1)
        lo, hi = lo_hi(b, a)
        with np.errstate(invalid="ignore"):
            settled = (lo >= 0) | (hi < 0)
        for aa in a[hi < 0].tolist():
            # conclusive failure; confirm on the ladder for an exact witness record
            out, bits = escalate(lambda p: decide_pair(int(aa), b, p), start, cap)
            if out is False:
                failures.append({"a": int(aa), "b": b, "precision_bits": bits})
            elif out is None:
                unresolved.append({"a": int(aa), "b": b, "precision_bits": bits})
        for aa in a[~settled].tolist():
            out, bits = escalate(lambda p: decide_pair(int(aa), b, p), start, cap)
            if out is False:
                failures.append({"a": int(aa), "b": b, "precision_bits": bits})
            elif out is None:
                unresolved.append({"a": int(aa), "b": b, "precision_bits": bits})
    return _condition_verdict(name, candidate, search_from, horizon, failures,
                              unresolved, key, lambda w: w["b"])


# ---------------------------------------------------------------------------
# Bessenrodt-Ono criterion
# ---------------------------------------------------------------------------


def check_bo_condition1(inputs: BOCriterionInputs, horizon: int, search_from: int = 1,
                        start: int = START_BITS, cap: int = DEFAULT_CAP_BITS) -> Verdict:
    """f(a) + f(b) - f(a+b) >= g(b) for all b <= a <= horizon, b from ``search_from``."""
    if inputs.N1 is not None and horizon < inputs.N1:
        raise DomainError(f"horizon {horizon} below N1={inputs.N1}")
    f, g = inputs.env.f, inputs.g
    fl, fh = _float_bounds(f, range(search_from, 2 * horizon + 1))
    gl, gh = _float_bounds(g, range(search_from, horizon + 1))

    def lo_hi(b, a):
        lo = _dn(_dn(_dn(fl[a] + fl[b]) - fh[a + b]) - gh[b])
        hi = _up(_up(_up(fh[a] + fh[b]) - fl[a + b]) - gl[b])
        return lo, hi

    def decide(a, b, bits):
        fa, fb, fab, gb = f.at(a, bits), f.at(b, bits), f.at(a + b, bits), g.at(b, bits)
        lo = fa.lo_exact + fb.lo_exact - fab.hi_exact - gb.hi_exact
        hi = fa.hi_exact + fb.hi_exact - fab.lo_exact - gb.lo_exact
        return True if lo >= 0 else (False if hi < 0 else None)

    return _pairs_check("bo-condition-1", "N1", lo_hi, decide, inputs.N1, search_from, horizon, start, cap)


def check_bo_condition2(inputs: BOCriterionInputs, horizon: int, search_from: int = 1,
                        start: int = START_BITS, cap: int = DEFAULT_CAP_BITS) -> Verdict:
    """c2(a+b) / c1(a) <= h(b) for all b <= a <= horizon."""
    if inputs.N2 is not None and horizon < inputs.N2:
        raise DomainError(f"horizon {horizon} below N2={inputs.N2}")
    c1, c2, h = inputs.env.c1, inputs.env.c2, inputs.h
    c1l, c1h = _float_bounds(c1, range(search_from, horizon + 1))
    c2l, c2h = _float_bounds(c2, range(search_from, 2 * horizon + 1))
    hl, hh = _float_bounds(h, range(search_from, horizon + 1))

    def lo_hi(b, a):
        with np.errstate(divide="ignore", invalid="ignore"):
            ok = (c1l[a] > 0) & (c2l[a + b] >= 0)
            r_hi = np.where(ok, _up(c2h[a + b] / c1l[a]), np.inf)
            r_lo = np.where(ok, _dn(c2l[a + b] / c1h[a]), -np.inf)
            lo = _dn(hl[b] - r_hi)
            hi = _up(hh[b] - r_lo)
        # non-positive c1 is never settled here; the ladder decides
        hi = np.where(ok, hi, np.inf)
        lo = np.where(ok, lo, -np.inf)
        return lo, hi

    def decide(a, b, bits):
        den = c1.at(a, bits)
        if den.hi_exact <= 0:
            return False  # ratio undefined or negative-infinite scaling: condition fails
        if den.lo_exact <= 0:
            return None
        num, hb = c2.at(a + b, bits), h.at(b, bits)
        if num.lo_exact < 0:
            return None
        if num.hi_exact / den.lo_exact <= hb.lo_exact:
            return True
        if num.lo_exact / den.hi_exact > hb.hi_exact:
            return False
        return None

    return _pairs_check("bo-condition-2", "N2", lo_hi, decide, inputs.N2, search_from, horizon, start, cap)


def check_bo_condition3(inputs: BOCriterionInputs, horizon: int, search_from: int = 1,
                        start: int = START_BITS, cap: int = DEFAULT_CAP_BITS) -> Verdict:
    """g(n) >= log h(n) - log c1(n) for n up to ``horizon``.

    The verdict covers [N3, horizon]; ``thresholds['N3']`` is the least index
    from which no failure occurs up to the horizon.
    """
    if inputs.N3 is not None and horizon < inputs.N3:
        raise DomainError(f"horizon {horizon} below N3={inputs.N3}")
    g, h, c1 = inputs.g, inputs.h, inputs.env.c1

    def decide(n, bits):
        cc = c1.at(n, bits)
        hv = h.at(n, bits)
        if cc.hi_exact <= 0 or hv.hi_exact <= 0:
            return False
        if cc.lo_exact <= 0 or hv.lo_exact <= 0:
            return None
        with working_precision(bits):
            d = g.at(n, bits).to_iv() - iv.log(hv.to_iv()) + iv.log(cc.to_iv())
            return _sign_decide(RealInterval.from_iv(d, bits))

    return _check_indexwise("bo-condition-3", "N3", decide, inputs.N3, search_from, horizon, start, cap)


def _positive_on(m: IndexMap, lo: int, hi: int, what: str) -> None:
    for n in range(lo, hi + 1):
        out, _ = escalate(lambda b: True if m.at(n, b).lo_exact > 0 else (False if m.at(n, b).hi_exact <= 0 else None))
        if not out:
            raise InvalidSpec(f"{what} is not certifiably positive at n={n}")


def _bo_pairs_exact(vals: list[int], lo: int, hi: int) -> list[dict]:
    """Exact F(a)F(b) > F(a+b) for lo <= b <= a <= hi; returns violations."""
    bad = []
    for a in range(lo, hi + 1):
        fa = vals[a]
        for b in range(lo, a + 1):
            lhs = fa * vals[b]
            rhs = vals[a + b]
            if lhs <= rhs:
                bad.append({"a": a, "b": b, "lhs": big(lhs), "rhs": big(rhs), "margin": big(lhs - rhs)})
    return bad


def run_bo_criterion(inputs: BOCriterionInputs, seq: SequenceSpec, horizon: int,
                     start: int = START_BITS, cap: int = DEFAULT_CAP_BITS) -> Verdict:
    """Conditions 1-3, envelope certification, then the exact conclusion.

    Each condition is scanned from index 1 so that its least clean threshold
    is discovered.  The combined threshold is the maximum of the discovered
    thresholds (and the envelope start); the exact check of F(a)F(b) > F(a+b)
    then runs on every pair T <= b <= a <= horizon.
    """
    for name in ("N1", "N2", "N3"):
        v = getattr(inputs, name)
        if v is not None and (v < 1 or v > horizon):
            raise DomainError(f"{name}={v} outside [1, {horizon}]")
    g_from = max(x for x in (inputs.N1, inputs.N3, 1) if x is not None)
    _positive_on(inputs.g, g_from, horizon, "g")
    _positive_on(inputs.h, inputs.N2 or 1, horizon, "h")

    c1 = check_bo_condition1(inputs, horizon, 1, start, cap)
    c2 = check_bo_condition2(inputs, horizon, 1, start, cap)
    c3 = check_bo_condition3(inputs, horizon, 1, start, cap)
    env_from = max(1, inputs.env.N0)
    cert = certify_envelope(inputs.env, seq, env_from, 2 * horizon, start, cap)
    env_block = [w["n"] for w in cert.witnesses] + [u["n"] for u in cert.inconclusive]
    n0_found = _threshold(env_block, env_from, 2 * horizon)

    found = {"N0": n0_found, "N1": c1.thresholds["N1"], "N2": c2.thresholds["N2"], "N3": c3.thresholds["N3"]}
    checks = [cert, c1, c2, c3]
    if any(v is None for v in found.values()) or max(found.values()) > horizon:
        missing = [k for k, v in found.items() if v is None or v > horizon]
        status = Status.REFUTED if any(c.status is Status.REFUTED for c in checks) else Status.INCONCLUSIVE
        return Verdict(
            name=f"bo-criterion:{inputs.label}",
            status=status,
            horizon=(1, horizon),
            thresholds={**found, "combined": None},
            checks=checks,
            details={"sequence": seq.selector, "unsettled_thresholds": missing},
        )

    T = max(found.values())
    vals = values(seq, 2 * horizon)
    bad = _bo_pairs_exact(vals, T, horizon)
    conclusion = Verdict(
        name="bo-conclusion",
        status=Status.REFUTED if bad else Status.VERIFIED,
        horizon=(T, horizon),
        witnesses=bad[:MAX_WITNESSES],
        details={"witness_count": len(bad), "region": f"{T} <= b <= a <= {horizon}"},
    )
    checks.append(conclusion)
    return Verdict(
        name=f"bo-criterion:{inputs.label}",
        status=conclusion.status,
        horizon=(T, horizon),
        witnesses=conclusion.witnesses,
        thresholds={**found, "combined": T},
        checks=checks,
        details={
            "sequence": seq.selector,
            "candidates": {"N0": inputs.env.N0, "N1": inputs.N1, "N2": inputs.N2, "N3": inputs.N3},
        },
    )


# ---------------------------------------------------------------------------
# log-concavity criterion
# ---------------------------------------------------------------------------


def check_lc_condition1(inputs: LCCriterionInputs, horizon: int, search_from: int = 2,
                        start: int = START_BITS, cap: int = DEFAULT_CAP_BITS) -> Verdict:
    """h(n) <= 2 f(n) - f(n-1) - f(n+1)."""
    f, h = inputs.env.f, inputs.h

    def decide(n, bits):
        with working_precision(bits):
            d = 2 * f.at(n, bits).to_iv() - f.at(n - 1, bits).to_iv() - f.at(n + 1, bits).to_iv() - h.at(n, bits).to_iv()
            return _sign_decide(RealInterval.from_iv(d, bits))

    return _check_indexwise("lc-condition-1", "N1", decide, inputs.N1, max(2, search_from), horizon, start, cap)


def check_lc_condition2(inputs: LCCriterionInputs, horizon: int, search_from: int = 2,
                        start: int = START_BITS, cap: int = DEFAULT_CAP_BITS) -> Verdict:
    """c2(n+1) c2(n-1) / c1(n)^2 <= e^{h(n)}."""
    c1, c2, h = inputs.env.c1, inputs.env.c2, inputs.h

    def decide(n, bits):
        den = c1.at(n, bits)
        if den.hi_exact <= 0:
            return False  # c1 must be positive
        if den.lo_exact <= 0:
            return None
        with working_precision(bits):
            d = iv.exp(h.at(n, bits).to_iv()) - c2.at(n + 1, bits).to_iv() * c2.at(n - 1, bits).to_iv() / den.to_iv() ** 2
            return _sign_decide(RealInterval.from_iv(d, bits))

    return _check_indexwise("lc-condition-2", "N2", decide, inputs.N2, max(2, search_from), horizon, start, cap)


def check_side_inequality(name: str, lhs: IndexMap, rhs: IndexMap, candidate: Optional[int],
                          horizon: int, search_from: int = 1,
                          start: int = START_BITS, cap: int = DEFAULT_CAP_BITS) -> Verdict:
    """lhs(n) >= rhs(n), with threshold discovery."""

    def decide(n, bits):
        with working_precision(bits):
            d = lhs.at(n, bits).to_iv() - rhs.at(n, bits).to_iv()
            return _sign_decide(RealInterval.from_iv(d, bits))

    return _check_indexwise(name, name, decide, candidate, search_from, horizon, start, cap)


def _lc_exact(vals: list[int], lo: int, hi: int) -> list[dict]:
    bad = []
    for n in range(lo, hi + 1):
        lhs = vals[n] * vals[n]
        rhs = vals[n - 1] * vals[n + 1]
        if lhs <= rhs:
            bad.append({"n": n, "lhs": big(lhs), "rhs": big(rhs), "margin": big(lhs - rhs)})
    return bad


def run_lc_criterion(inputs: LCCriterionInputs, seq: SequenceSpec, horizon: int,
                     start: int = START_BITS, cap: int = DEFAULT_CAP_BITS) -> Verdict:
    """Both conditions, the optional side inequality, envelope certification,
    then exact log-concavity on the combined range.

    The exact check is also run over the whole initial segment so the report
    carries the least index from which F(n)^2 > F(n-1)F(n+1) holds.
    """
    lo_n = max(x for x in (inputs.N1, inputs.N2, 2) if x is not None)
    if horizon < lo_n + 1:
        raise DomainError(f"horizon {horizon} too small for thresholds starting at {lo_n}")
    _positive_on(inputs.h, lo_n, horizon, "h")

    c1 = check_lc_condition1(inputs, horizon, 2, start, cap)
    c2 = check_lc_condition2(inputs, horizon, 2, start, cap)
    checks = []
    env_from = max(1, inputs.env.N0)
    cert = certify_envelope(inputs.env, seq, env_from, horizon + 1, start, cap)
    checks += [cert, c1, c2]
    thresholds: dict[str, Optional[int]] = {}
    if inputs.side is not None:
        sname, lhs, rhs, scand = inputs.side
        side = check_side_inequality(sname, lhs, rhs, scand, horizon, 2, start, cap)
        checks.append(side)
        thresholds[sname] = side.thresholds[sname]

    env_block = [w["n"] for w in cert.witnesses] + [u["n"] for u in cert.inconclusive]
    n0 = _threshold(env_block, env_from, horizon + 1)
    thresholds.update({"N0": n0, "N1": c1.thresholds["N1"], "N2": c2.thresholds["N2"]})

    vals = values(seq, horizon + 1)
    first = max(1, seq.domain_start + 1)
    all_bad = _lc_exact(vals, first, horizon)
    exact_from = _threshold([w["n"] for w in all_bad], first, horizon)
    thresholds["exact_lc_from"] = exact_from

    core = [thresholds["N0"], thresholds["N1"], thresholds["N2"]]
    if any(v is None for v in core):
        status = Status.REFUTED if any(c.status is Status.REFUTED for c in checks) else Status.INCONCLUSIVE
        thresholds["combined"] = None
        return Verdict(f"lc-criterion:{inputs.label}", status, (2, horizon), thresholds=thresholds,
                       checks=checks, details={"sequence": seq.selector})

    # the bound for F(n-1) needs n - 1 >= N0
    T = max(core[0] + 1, core[1], core[2])
    thresholds["combined"] = T
    bad = [w for w in all_bad if w["n"] >= T]
    conclusion = Verdict(
        name="lc-conclusion",
        status=Status.REFUTED if bad else Status.VERIFIED,
        horizon=(T, horizon),
        witnesses=bad,
    )
    initial = Verdict(
        name="lc-exact-initial-segment",
        status=Status.VERIFIED if exact_from is not None else Status.REFUTED,
        horizon=(exact_from if exact_from is not None else first, horizon),
        witnesses=[] if exact_from is not None else all_bad[-1:],
        thresholds={"exact_lc_from": exact_from},
        details={"violations_below": [w["n"] for w in all_bad]},
    )
    checks += [conclusion, initial]
    return Verdict(
        name=f"lc-criterion:{inputs.label}",
        status=conclusion.status,
        horizon=(T, horizon),
        witnesses=conclusion.witnesses,
        thresholds=thresholds,
        checks=checks,
        details={"sequence": seq.selector,
                 "candidates": {"N0": inputs.env.N0, "N1": inputs.N1, "N2": inputs.N2}},
    )


# ---------------------------------------------------------------------------
# log-concavity => Bessenrodt-Ono (exact checks)
# ---------------------------------------------------------------------------


def check_ratio_descent(seq: SequenceSpec, n0: int, horizon: int) -> Verdict:
    """f(n)/f(n-1) > f(n+1)/f(n) for n0 < n <= horizon, compared as exact rationals."""
    if horizon <= n0 + 1:
        raise DomainError(f"need horizon > n0 + 1, got n0={n0}, horizon={horizon}")
    vals = values(seq, horizon + 1)
    bad = []
    for n in range(n0 + 1, horizon + 1):
        prev, cur, nxt = vals[n - 1], vals[n], vals[n + 1]
        if prev <= 0 or cur <= 0:
            raise DomainError(f"{seq}: ratio undefined at n={n} (non-positive value)")
        left = Fraction(cur, prev)
        right = Fraction(nxt, cur)
        if not left > right:
            bad.append({"n": n, "left": f"{left.numerator}/{left.denominator}",
                        "right": f"{right.numerator}/{right.denominator}"})
    return Verdict(
        name="ratio-descent",
        status=Status.REFUTED if bad else Status.VERIFIED,
        horizon=(n0 + 1, horizon),
        witnesses=bad,
        details={"sequence": seq.selector},
    )


def check_prop42(seq: SequenceSpec, n0: int, horizon: int) -> Verdict:
    """Hypotheses f(n) f(n0) > f(n + n0) (n0 <= n <= horizon) and log-concavity
    past n0; conclusion f(a) f(b) > f(a+b) for n0 <= b <= a <= horizon - n0."""
    if horizon < 2 * n0:
        raise DomainError(f"need horizon >= 2*n0, got n0={n0}, horizon={horizon}")
    # the conclusion reaches a + b = 2*(horizon - n0)
    vals = values(seq, max(horizon + n0 + 1, 2 * (horizon - n0)))
    fn0 = vals[n0]
    hyp_bad = []
    for n in range(n0, horizon + 1):
        lhs, rhs = vals[n] * fn0, vals[n + n0]
        if lhs <= rhs:
            hyp_bad.append({"n": n, "lhs": big(lhs), "rhs": big(rhs), "margin": big(lhs - rhs)})
    hyp = Verdict("prop42-hypothesis-shift", Status.REFUTED if hyp_bad else Status.VERIFIED,
                  (n0, horizon), witnesses=hyp_bad)
    lc_bad = _lc_exact(vals, n0 + 1, horizon)
    lc = Verdict("prop42-hypothesis-logconcave", Status.REFUTED if lc_bad else Status.VERIFIED,
                 (n0 + 1, horizon), witnesses=lc_bad)
    concl_bad = _bo_pairs_exact(vals, n0, horizon - n0)
    concl = Verdict("prop42-conclusion", Status.REFUTED if concl_bad else Status.VERIFIED,
                    (n0, horizon - n0), witnesses=concl_bad[:MAX_WITNESSES],
                    details={"witness_count": len(concl_bad)})
    hyp_ok = hyp.ok and lc.ok
    if hyp_ok and not concl.ok:
        status = Status.REFUTED  # hypotheses true but conclusion false: an implementation bug
    elif hyp_ok:
        status = Status.VERIFIED
    else:
        status = Status.REFUTED
    return Verdict(
        name="prop42",
        status=status,
        horizon=(n0, horizon),
        checks=[hyp, lc, concl],
        details={"sequence": seq.selector, "n0": n0, "f(n0)": big(fn0),
                 "hypothesis_holds": hyp_ok, "conclusion_holds": concl.ok},
    )


def check_thm43(seq: SequenceSpec, horizon: int) -> Verdict:
    """f(0) >= 1 and strict log-concavity on [1, horizon]; conclusion
    f(a) f(b) > f(a+b) for 1 <= b <= a with a + b <= horizon."""
    if horizon < 2:
        raise DomainError("horizon must be >= 2")
    vals = values(seq, horizon + 1)
    f0 = vals[0]
    base = Verdict("thm43-hypothesis-f0",
                   Status.VERIFIED if f0 >= 1 else Status.REFUTED, (0, 0),
                   witnesses=[] if f0 >= 1 else [{"n": 0, "value": big(f0)}])
    lc_bad = _lc_exact(vals, 1, horizon)
    lc = Verdict("thm43-hypothesis-logconcave", Status.REFUTED if lc_bad else Status.VERIFIED,
                 (1, horizon), witnesses=lc_bad)
    concl_bad = []
    for s in range(2, horizon + 1):
        fs = vals[s]
        for b in range(1, s // 2 + 1):
            a = s - b
            lhs = vals[a] * vals[b]
            if lhs <= fs:
                concl_bad.append({"a": a, "b": b, "lhs": big(lhs), "rhs": big(fs), "margin": big(lhs - fs)})
    concl = Verdict("thm43-conclusion", Status.REFUTED if concl_bad else Status.VERIFIED,
                    (1, horizon), witnesses=concl_bad[:MAX_WITNESSES],
                    details={"witness_count": len(concl_bad), "region": f"1 <= b <= a, a + b <= {horizon}"})
    hyp_ok = base.ok and lc.ok
    status = Status.VERIFIED if hyp_ok and concl.ok else Status.REFUTED
    return Verdict(
        name="thm43",
        status=status,
        horizon=(1, horizon),
        checks=[base, lc, concl],
        details={"sequence": seq.selector, "hypothesis_holds": hyp_ok, "conclusion_holds": concl.ok},
    )


class ProbeStatus(str, Enum):
    PLAUSIBLE = "Plausible"
    VIOLATED_ON_WINDOW = "Violated-on-window"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class ProbeReport:
    """Finite-horizon evidence about limsup f(n + n0)/f(n) < f(n0).

    This is a probe, not a decision procedure: the limsup is never computed.
    """

    sequence: str
    n0: int
    horizon: int
    f_n0: int
    window: tuple[int, int]
    trailing_max: Fraction
    previous_max: Fraction
    last_ratio: Fraction
    status: ProbeStatus
    note: str = "finite probe over a trailing window; not a decision of the limsup"

    def to_dict(self) -> dict:
        def q(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            "name": "limsup-probe",
            "sequence": self.sequence,
            "n0": self.n0,
            "horizon": self.horizon,
            "f_n0": big(self.f_n0),
            "window": list(self.window),
            "trailing_max": q(self.trailing_max),
            "trailing_max_approx": f"{float(self.trailing_max):.12g}",
            "previous_max": q(self.previous_max),
            "last_ratio": q(self.last_ratio),
            "status": self.status.value,
            "note": self.note,
        }


def limsup_probe(seq: SequenceSpec, n0: int, horizon: int, trailing: float = 0.25) -> ProbeReport:
    """Exact ratios f(n + n0)/f(n) for n0 < n <= horizon, summarised over the
    trailing ``trailing`` fraction of the range and the window before it."""
    if horizon <= 2 * n0:
        raise DomainError(f"need horizon > 2*n0, got n0={n0}, horizon={horizon}")
    if not 0 < trailing <= 0.5:
        raise InvalidSpec("trailing fraction must be in (0, 0.5]")
    vals = values(seq, horizon + n0)
    idx = list(range(n0 + 1, horizon + 1))
    ratios = []
    for n in idx:
        if vals[n] <= 0:
            raise DomainError(f"{seq}: non-positive value at n={n}")
        ratios.append(Fraction(vals[n + n0], vals[n]))
    w = max(1, math.ceil(len(idx) * trailing))
    tail = ratios[-w:]
    prev = ratios[-2 * w:-w] or tail
    tmax, pmax = max(tail), max(prev)
    fn0 = vals[n0]
    if min(tail) >= fn0:
        status = ProbeStatus.VIOLATED_ON_WINDOW
    elif tmax < fn0 and tmax <= pmax:
        status = ProbeStatus.PLAUSIBLE
    else:
        status = ProbeStatus.INCONCLUSIVE
    return ProbeReport(seq.selector, n0, horizon, fn0, (idx[-w], idx[-1]), tmax, pmax, ratios[-1], status)
