"""Exact scanners, threshold finders and the Fibonacci identity audits.

Everything about a sequence itself is decided with Python integers; the only
interval arithmetic here is for the golden-ratio terms in the Fibonacci
audits.  The BO scanner deliberately shares no code with the criteria module
so the two can be cross-checked.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Sequence

from mpmath import iv

from .errors import InvalidSpec
from .intervals import DEFAULT_CAP_BITS, START_BITS, RealInterval, escalate, working_precision
from .seq_core import SequenceSpec, values
from .verdict import Status, Verdict, big

__all__ = [
    "ViolationKind",
    "ViolationRecord",
    "ScanReport",
    "scan_bo",
    "scan_logconcavity",
    "cassini_audit",
    "golden_bounds_audit",
    "bo_gap_audit_q",
    "find_min_bo_threshold",
]

CSV_HEADER = ("kind", "indices", "lhs", "rhs", "margin")


class ViolationKind(str, Enum):
    BO = "BO"
    LOG_CONCAVITY = "LogConcavity"


@dataclass(frozen=True)
class ViolationRecord:
    """A failure of F(a)F(b) > F(a+b) (indices (a, b), b <= a) or of
    F(n)^2 > F(n-1)F(n+1) (indices (n,))."""

    kind: ViolationKind
    indices: tuple[int, ...]
    lhs: int
    rhs: int

    def __post_init__(self) -> None:
        if self.lhs > self.rhs:
            raise ValueError(f"{self.kind.value} at {self.indices}: strict inequality holds, not a violation")

    @property
    def margin(self) -> int:
        return self.lhs - self.rhs

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "indices": list(self.indices),
            "lhs": big(self.lhs),
            "rhs": big(self.rhs),
            "margin": big(self.margin),
        }

    @classmethod
    def from_dict(cls, d: dict) -> ViolationRecord:
        return cls(ViolationKind(d["kind"]), tuple(d["indices"]), int(d["lhs"]), int(d["rhs"]))


@dataclass
class ScanReport:
    spec: SequenceSpec
    region: str
    violations: list[ViolationRecord]
    min_clean_threshold: Optional[int]
    details: dict = field(default_factory=dict)

    @property
    def name(self) -> str:
        kind = "bo" if self.details.get("scan") == "bo" else "lc"
        return f"scan-{kind}:{self.spec.selector}"

    def violation_set(self) -> set[tuple[int, ...]]:
        return {v.indices for v in self.violations}

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "sequence": self.spec.selector,
            "region": self.region,
            "min_clean_threshold": self.min_clean_threshold,
            "violation_count": len(self.violations),
            "violations": [v.to_dict() for v in self.violations],
            "details": dict(self.details),
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for v in self.violations:
            w.writerow((v.kind.value, ";".join(map(str, v.indices)), v.lhs, v.rhs, v.margin))
        return buf.getvalue()


# ---------------------------------------------------------------------------
# scanners
# ---------------------------------------------------------------------------


def _bo_block(vals: Sequence[int], a_min: int, s_lo: int, s_hi: int) -> list[tuple[int, int, int, int]]:
    out = []
    for s in range(s_lo, s_hi + 1):
        fs = vals[s]
        for b in range(a_min, s // 2 + 1):
            lhs = vals[s - b] * vals[b]
            if lhs <= fs:
                out.append((s - b, b, lhs, fs))
    return out


def _lc_block(vals: Sequence[int], lo: int, hi: int) -> list[tuple[int, int, int]]:
    out = []
    for n in range(lo, hi + 1):
        lhs = vals[n] * vals[n]
        rhs = vals[n - 1] * vals[n + 1]
        if lhs <= rhs:
            out.append((n, lhs, rhs))
    return out


def _blocks(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, hi - lo + 1))
    step = -(-(hi - lo + 1) // parts)
    return [(s, min(hi, s + step - 1)) for s in range(lo, hi + 1, step)]


def _run_blocks(fn, vals, lead: tuple, lo: int, hi: int, threads: int) -> list:
    """Apply ``fn(vals, *lead, s, e)`` over index blocks and concatenate in order."""
    if hi < lo:
        return []
    if threads <= 1:
        return fn(vals, *lead, lo, hi)
    # more blocks than workers so that uneven block costs still balance
    blocks = _blocks(lo, hi, 4 * threads)
    with ProcessPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(fn, vals, *lead, s, e) for s, e in blocks]
        out = []
        for f in futures:
            out.extend(f.result())
    return out


def scan_bo(seq: SequenceSpec, a_min: int, sum_max: int, threads: int = 1) -> ScanReport:
    """Every pair a_min <= b <= a with a + b <= sum_max where F(a)F(b) > F(a+b) fails.

    Violations are ordered by a + b, then b.  The clean threshold T is the
    least index with no violation having b >= T; it is absent when
    violations reach the largest b the region contains.
    """
    if a_min < 1:
        raise InvalidSpec("a_min must be positive")
    if sum_max < 2 * a_min:
        raise InvalidSpec(f"sum_max must be >= 2*a_min = {2 * a_min}")
    vals = values(seq, sum_max)
    raw = _run_blocks(_bo_block, vals, (a_min,), 2 * a_min, sum_max, threads)
    recs = [ViolationRecord(ViolationKind.BO, (a, b), lhs, rhs) for a, b, lhs, rhs in raw]
    b_max = sum_max // 2
    t = max((r.indices[1] for r in recs), default=a_min - 1) + 1
    t = max(t, a_min)
    return ScanReport(
        spec=seq,
        region=f"{a_min} <= b <= a, a + b <= {sum_max}",
        violations=recs,
        min_clean_threshold=t if t <= b_max else None,
        details={"scan": "bo", "a_min": a_min, "sum_max": sum_max,
                 "pairs_checked": _pair_count(a_min, sum_max)},
    )


def _pair_count(a_min: int, sum_max: int) -> int:
    return sum(s // 2 - a_min + 1 for s in range(2 * a_min, sum_max + 1))


def scan_logconcavity(seq: SequenceSpec, n_min: int, n_max: int, threads: int = 1) -> ScanReport:
    """Every n in [n_min, n_max] where F(n)^2 > F(n-1)F(n+1) fails."""
    if n_min < seq.domain_start + 1:
        raise InvalidSpec(f"n_min must be >= {seq.domain_start + 1} for {seq}")
    if n_max < n_min:
        raise InvalidSpec("n_max must be >= n_min")
    vals = values(seq, n_max + 1)
    raw = _run_blocks(_lc_block, vals, (), n_min, n_max, threads)
    recs = [ViolationRecord(ViolationKind.LOG_CONCAVITY, (n,), lhs, rhs) for n, lhs, rhs in raw]
    t = max((r.indices[0] for r in recs), default=n_min - 1) + 1
    margins = [vals[n] * vals[n] - vals[n - 1] * vals[n + 1] for n in range(n_min, n_max + 1)]
    return ScanReport(
        spec=seq,
        region=f"{n_min} <= n <= {n_max}",
        violations=recs,
        min_clean_threshold=t if t <= n_max else None,
        details={"scan": "lc", "n_min": n_min, "n_max": n_max,
                 "margin_min": big(min(margins)), "margin_max": big(max(margins))},
    )


def find_min_bo_threshold(seq: SequenceSpec, horizon: int, threads: int = 1) -> Optional[int]:
    """Least T with no BO violation for T <= b <= a, a + b <= horizon; None if
    violations persist to the boundary of the region."""
    if horizon < 4:
        raise InvalidSpec("horizon must be >= 4")
    start = max(1, seq.domain_start)
    return scan_bo(seq, start, horizon, threads).min_clean_threshold


# ---------------------------------------------------------------------------
# Fibonacci audits (q(n) = F_{2n})
# ---------------------------------------------------------------------------

_Q = SequenceSpec.fib_even()


def cassini_audit(n_max: int) -> Verdict:
    """q(n)^2 - q(n+1)q(n-1) == 1 exactly for 1 <= n <= n_max."""
    if n_max < 2:
        raise InvalidSpec("n_max must be >= 2")
    q = values(_Q, n_max + 1)
    bad = []
    for n in range(1, n_max + 1):
        m = q[n] * q[n] - q[n + 1] * q[n - 1]
        if m != 1:
            bad.append({"n": n, "margin": big(m)})
    return Verdict("cassini", Status.REFUTED if bad else Status.VERIFIED, (1, n_max),
                   witnesses=bad, details={"identity": "q(n)^2 - q(n+1)q(n-1) = 1"})


def _phi_pow(k: int):
    """Interval enclosure of phi^k at the current iv precision."""
    phi = (1 + iv.sqrt(5)) / 2
    return phi ** k


def golden_bounds_audit(n_max: int, start: int = START_BITS, cap: int = DEFAULT_CAP_BITS) -> Verdict:
    """phi^{2n}/sqrt(5) - 1 < q(n) < phi^{2n}/sqrt(5) for 1 <= n <= n_max.

    The two sides differ from q(n) by about phi^{-2n}, so the precision
    needed grows linearly in n; the ladder takes care of it.
    """
    if n_max < 1:
        raise InvalidSpec("n_max must be >= 1")
    q = values(_Q, n_max)
    bad, unresolved = [], []
    for n in range(1, n_max + 1):
        qn = q[n]

        def decide(bits: int) -> Optional[bool]:
            with working_precision(bits):
                x = RealInterval.from_iv(_phi_pow(2 * n) / iv.sqrt(5), bits)
            if x.lo_exact > qn and x.hi_exact < qn + 1:
                return True
            if x.hi_exact <= qn or x.lo_exact >= qn + 1:
                return False
            return None

        out, bits = escalate(decide, start, cap)
        if out is False:
            bad.append({"n": n, "q": big(qn), "precision_bits": bits})
        elif out is None:
            unresolved.append({"n": n, "precision_bits": bits})
    status = Status.REFUTED if bad else (Status.INCONCLUSIVE if unresolved else Status.VERIFIED)
    return Verdict("golden-bounds", status, (1, n_max), witnesses=bad, inconclusive=unresolved,
                   details={"bounds": "phi^(2n)/sqrt(5) - 1 < q(n) < phi^(2n)/sqrt(5)"})


def bo_gap_audit_q(sum_max: int, start: int = START_BITS, cap: int = DEFAULT_CAP_BITS) -> Verdict:
    """For 1 <= b <= a with 3 <= a + b <= sum_max, the gap d = q(a+b) - q(a)q(b)
    is positive and exceeds (sqrt(5) - 1)/5 * phi^{2(a+b)} - 1.

    Verified means the BO inequality fails at every such pair.
    """
    if sum_max < 3:
        raise InvalidSpec("sum_max must be >= 3")
    q = values(_Q, sum_max)
    bad, unresolved = [], []
    pairs = 0
    for s in range(3, sum_max + 1):
        bound: dict[int, RealInterval] = {}

        def bound_at(bits: int) -> RealInterval:
            if bits not in bound:
                with working_precision(bits):
                    x = (iv.sqrt(5) - 1) / 5 * _phi_pow(2 * s) - 1
                    bound[bits] = RealInterval.from_iv(x, bits)
            return bound[bits]

        for b in range(1, s // 2 + 1):
            a = s - b
            pairs += 1
            d = q[s] - q[a] * q[b]
            if d <= 0:
                bad.append({"a": a, "b": b, "gap": big(d), "failed": "gap > 0"})
                continue

            def decide(bits: int) -> Optional[bool]:
                lb = bound_at(bits)
                if lb.hi_exact < d:
                    return True
                if lb.lo_exact >= d:
                    return False
                return None

            out, bits = escalate(decide, start, cap)
            if out is False:
                bad.append({"a": a, "b": b, "gap": big(d), "failed": "gap > lower bound",
                            "precision_bits": bits})
            elif out is None:
                unresolved.append({"a": a, "b": b, "precision_bits": bits})
    status = Status.REFUTED if bad else (Status.INCONCLUSIVE if unresolved else Status.VERIFIED)
    return Verdict("bo-gap-q", status, (3, sum_max), witnesses=bad, inconclusive=unresolved,
                   details={"pairs_checked": pairs, "bo_fails_everywhere": status is Status.VERIFIED})
