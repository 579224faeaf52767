"""Exact partition-type sequences.

Every sequence is described by an immutable :class:`SequenceSpec` and
evaluated through a dense, append-only prefix cache.  Values are plain
Python integers and are never approximated.

Supported kinds:

* ``euler``        p(n), via the pentagonal-number recurrence
* ``restricted``   p_A(n) for a finite part set A
* ``plane``        pp(n), two independent algorithms that must agree
* ``mary``         b_m(n), partitions into powers of m
* ``fib-even``     q(n) = F_{2n}
* ``shift``        n -> inner(n + j)
* ``const``        the constant sequence c (handy as a probe baseline)
"""
from __future__ import annotations

import io
import struct
import threading
from dataclasses import dataclass
from enum import Enum
from math import comb
from typing import BinaryIO, Iterable, Sequence

import numpy as np

from .errors import DomainError, InternalInconsistency, InvalidSpec

__all__ = [
    "Kind",
    "SequenceSpec",
    "MemoTable",
    "evaluate",
    "values",
    "euler_p",
    "restricted_p",
    "plane_p",
    "plane_p_product_dp",
    "plane_p_divisor_recurrence",
    "mary_p",
    "fib_even",
    "extended_p",
    "max_partition_product",
    "save_prefix",
    "load_prefix",
]


class Kind(str, Enum):
    EULER = "euler"
    RESTRICTED = "restricted"
    PLANE = "plane"
    MARY = "mary"
    FIB_EVEN = "fib-even"
    SHIFTED = "shift"
    CONSTANT = "const"


@dataclass(frozen=True)
class SequenceSpec:
    """Named exact sequence.

    Use the classmethod constructors (``SequenceSpec.euler()``,
    ``SequenceSpec.mary(2)``, ...) or :meth:`parse` with a selector string
    such as ``"restricted:1,2,5"`` or ``"shift:26:euler"``.
    """

    kind: Kind
    parts: tuple[int, ...] = ()
    m: int = 0
    inner: SequenceSpec | None = None
    shift: int = 0
    constant: int = 0

    def __post_init__(self) -> None:
        kind = self.kind
        if kind is Kind.RESTRICTED:
            ps = self.parts
            if not ps:
                raise InvalidSpec("restricted part set must be non-empty")
            if any(not isinstance(a, int) or a < 1 for a in ps):
                raise InvalidSpec(f"parts must be positive integers, got {ps!r}")
            if any(x >= y for x, y in zip(ps, ps[1:])):
                raise InvalidSpec(f"parts must be strictly increasing, got {ps!r}")
        elif kind is Kind.MARY:
            if not isinstance(self.m, int) or self.m < 2:
                raise InvalidSpec(f"m-ary base must be >= 2, got {self.m!r}")
        elif kind is Kind.SHIFTED:
            if self.inner is None:
                raise InvalidSpec("shifted view needs an inner sequence")
            if not isinstance(self.shift, int) or self.shift < 0:
                raise InvalidSpec(f"shift must be a non-negative integer, got {self.shift!r}")
        elif kind is Kind.CONSTANT:
            if not isinstance(self.constant, int) or self.constant < 0:
                raise InvalidSpec("constant sequence needs a non-negative integer")

    # constructors -----------------------------------------------------

    @classmethod
    def euler(cls) -> SequenceSpec:
        return cls(Kind.EULER)

    @classmethod
    def restricted(cls, parts: Iterable[int]) -> SequenceSpec:
        ps = tuple(parts)
        if len(set(ps)) != len(ps):
            raise InvalidSpec(f"parts must be distinct, got {ps!r}")
        return cls(Kind.RESTRICTED, parts=tuple(sorted(ps)))

    @classmethod
    def plane(cls) -> SequenceSpec:
        return cls(Kind.PLANE)

    @classmethod
    def mary(cls, m: int) -> SequenceSpec:
        return cls(Kind.MARY, m=m)

    @classmethod
    def fib_even(cls) -> SequenceSpec:
        return cls(Kind.FIB_EVEN)

    @classmethod
    def shifted(cls, inner: SequenceSpec, j: int) -> SequenceSpec:
        return cls(Kind.SHIFTED, inner=inner, shift=j)

    @classmethod
    def constant_seq(cls, c: int) -> SequenceSpec:
        return cls(Kind.CONSTANT, constant=c)

    @classmethod
    def parse(cls, selector: str) -> SequenceSpec:
        """Parse ``euler | restricted:A | plane | mary:m | fib-even | shift:j:inner | const:c``."""
        s = selector.strip()
        head, _, rest = s.partition(":")
        try:
            if head == "euler" and not rest:
                return cls.euler()
            if head == "plane" and not rest:
                return cls.plane()
            if head == "fib-even" and not rest:
                return cls.fib_even()
            if head == "restricted":
                return cls.restricted(int(x) for x in rest.replace("{", "").replace("}", "").split(","))
            if head == "mary":
                return cls.mary(int(rest))
            if head == "const":
                return cls.constant_seq(int(rest))
            if head == "shift":
                j, _, inner = rest.partition(":")
                return cls.shifted(cls.parse(inner), int(j))
        except ValueError as exc:
            if isinstance(exc, InvalidSpec):
                raise
            raise InvalidSpec(f"cannot parse sequence selector {selector!r}") from exc
        raise InvalidSpec(f"unknown sequence selector {selector!r}")

    # introspection ----------------------------------------------------

    @property
    def selector(self) -> str:
        k = self.kind
        if k is Kind.RESTRICTED:
            return "restricted:" + ",".join(map(str, self.parts))
        if k is Kind.MARY:
            return f"mary:{self.m}"
        if k is Kind.SHIFTED:
            return f"shift:{self.shift}:{self.inner.selector}"
        if k is Kind.CONSTANT:
            return f"const:{self.constant}"
        return k.value

    @property
    def domain_start(self) -> int:
        """First index used by positivity-dependent scans.

        q(0) = F_0 = 0, so the even-Fibonacci sequence starts at 1.
        """
        if self.kind is Kind.FIB_EVEN:
            return 1
        if self.kind is Kind.SHIFTED:
            return max(0, self.inner.domain_start - self.shift)
        return 0

    def __str__(self) -> str:
        return self.selector

    def __call__(self, n: int) -> int:
        return evaluate(self, n)

    def values(self, n_max: int) -> list[int]:
        return values(self, n_max)


# ---------------------------------------------------------------------------
# prefix fillers
# ---------------------------------------------------------------------------


def _extend_euler(p: list[int], n_max: int) -> None:
    for n in range(len(p), n_max + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            g2 = g1 + k
            term = p[n - g1]
            if g2 <= n:
                term += p[n - g2]
            if k & 1:
                total += term
            else:
                total -= term
            k += 1
        p.append(total)


def _restricted_dp(parts: Sequence[int], n_max: int) -> list[int]:
    a = [0] * (n_max + 1)
    a[0] = 1
    for part in parts:
        for j in range(part, n_max + 1):
            a[j] += a[j - part]
    return a


def _sigma2_table(n_max: int) -> list[int]:
    s = [0] * (n_max + 1)
    for d in range(1, n_max + 1):
        dd = d * d
        for k in range(d, n_max + 1, d):
            s[k] += dd
    return s


def plane_p_divisor_recurrence(n_max: int) -> list[int]:
    """pp(0..n_max) from n*pp(n) = sum_{k=1}^{n} sigma_2(k) pp(n-k)."""
    s2 = _sigma2_table(n_max)
    pp = [1]
    for n in range(1, n_max + 1):
        acc = 0
        for k in range(1, n + 1):
            acc += s2[k] * pp[n - k]
        q, r = divmod(acc, n)
        if r:
            raise InternalInconsistency(f"divisor recurrence not exact at n={n}")
        pp.append(q)
    return pp


def plane_p_product_dp(n_max: int) -> list[int]:
    """pp(0..n_max) by multiplying out prod_k (1 - x^k)^(-k) coefficientwise.

    (1 - x^k)^(-k) = sum_i C(k-1+i, i) x^(k i); each factor is applied as a
    handful of shifted adds on an object array.
    """
    acc = np.zeros(n_max + 1, dtype=object)
    acc[0] = 1
    for k in range(1, n_max + 1):
        new = acc.copy()
        for i in range(1, n_max // k + 1):
            shift = k * i
            new[shift:] += comb(k - 1 + i, i) * acc[: n_max + 1 - shift]
        acc = new
    return [int(x) for x in acc]


class MemoTable:
    """Dense, append-only cache of one sequence's prefix."""

    def __init__(self, spec: SequenceSpec):
        self.spec = spec
        self.prefix: list[int] = []
        self._lock = threading.Lock()

    @property
    def filled_up_to(self) -> int:
        return len(self.prefix) - 1

    def ensure(self, n: int) -> list[int]:
        if n >= len(self.prefix):
            with self._lock:
                if n >= len(self.prefix):
                    self._fill(n)
        return self.prefix

    def _append(self, new_values: Sequence[int]) -> None:
        old = len(self.prefix)
        for i in range(old):
            if new_values[i] != self.prefix[i]:
                raise InternalInconsistency(
                    f"{self.spec}: cached value at {i} changed on refill"
                )
        self.prefix.extend(new_values[old:])

    def _fill(self, n: int) -> None:
        spec = self.spec
        kind = spec.kind
        if kind is Kind.EULER:
            if not self.prefix:
                self.prefix.append(1)
            _extend_euler(self.prefix, n)
        elif kind is Kind.RESTRICTED:
            target = max(n, 2 * len(self.prefix))
            self._append(_restricted_dp(spec.parts, target))
        elif kind is Kind.PLANE:
            target = max(n, 2 * len(self.prefix))
            by_recurrence = plane_p_divisor_recurrence(target)
            by_product = plane_p_product_dp(target)
            if by_recurrence != by_product:
                bad = next(i for i, (x, y) in enumerate(zip(by_recurrence, by_product)) if x != y)
                raise InternalInconsistency(f"plane partition algorithms disagree at n={bad}")
            self._append(by_recurrence)
        elif kind is Kind.MARY:
            b = self.prefix
            m = spec.m
            if not b:
                b.append(1)
            for k in range(len(b), n + 1):
                if k % m:
                    b.append(b[k - 1])
                else:
                    b.append(b[k - 1] + b[k // m])
        elif kind is Kind.FIB_EVEN:
            q = self.prefix
            if not q:
                q.extend((0, 1))
            for k in range(len(q), n + 1):
                q.append(3 * q[k - 1] - q[k - 2])
        elif kind is Kind.CONSTANT:
            self.prefix.extend([spec.constant] * (n + 1 - len(self.prefix)))
        else:  # pragma: no cover - shifted views never own a table
            raise InvalidSpec(f"no table for {spec}")


_TABLES: dict[SequenceSpec, MemoTable] = {}
_TABLES_LOCK = threading.Lock()


def _table(spec: SequenceSpec) -> MemoTable:
    t = _TABLES.get(spec)
    if t is None:
        with _TABLES_LOCK:
            t = _TABLES.setdefault(spec, MemoTable(spec))
    return t


def _base(spec: SequenceSpec) -> tuple[SequenceSpec, int]:
    offset = 0
    while spec.kind is Kind.SHIFTED:
        offset += spec.shift
        spec = spec.inner
    return spec, offset


def evaluate(spec: SequenceSpec, n: int) -> int:
    """Exact value of ``spec`` at ``n``; fills and memoizes the prefix [0..n]."""
    if not isinstance(n, int) or n < 0:
        raise DomainError(f"index must be a non-negative integer, got {n!r}")
    base, offset = _base(spec)
    return _table(base).ensure(n + offset)[n + offset]


def values(spec: SequenceSpec, n_max: int) -> list[int]:
    """Copy of the exact prefix [spec(0), ..., spec(n_max)]."""
    if n_max < 0:
        raise DomainError(f"n_max must be non-negative, got {n_max}")
    base, offset = _base(spec)
    prefix = _table(base).ensure(n_max + offset)
    return prefix[offset : n_max + offset + 1]


# ---------------------------------------------------------------------------
# direct entry points
# ---------------------------------------------------------------------------


def euler_p(n: int) -> int:
    return evaluate(SequenceSpec.euler(), n)


def restricted_p(parts: Iterable[int], n: int) -> int:
    return evaluate(SequenceSpec.restricted(parts), n)


def plane_p(n: int) -> int:
    return evaluate(SequenceSpec.plane(), n)


def mary_p(m: int, n: int) -> int:
    return evaluate(SequenceSpec.mary(m), n)


def fib_even(n: int) -> int:
    return evaluate(SequenceSpec.fib_even(), n)


def extended_p(parts: Iterable[int]) -> int:
    """p(lambda) = product of p(lambda_i); the empty partition gives 1."""
    out = 1
    for part in parts:
        if not isinstance(part, int) or part < 1:
            raise InvalidSpec(f"partition parts must be positive integers, got {part!r}")
        out *= euler_p(part)
    return out


def max_partition_product(n: int) -> int:
    """max p(lambda) over all partitions lambda of n."""
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"n must be a positive integer, got {n!r}")
    p = values(SequenceSpec.euler(), n)
    best = [0, 1]
    for k in range(2, n + 1):
        top = p[k]
        for j in range(1, k // 2 + 1):
            cand = best[j] * best[k - j]
            if cand > top:
                top = cand
        best.append(top)
    return best[n]


# ---------------------------------------------------------------------------
# binary prefix serialization
# ---------------------------------------------------------------------------

_MAGIC = b"PNQS"
_VERSION = 1


def save_prefix(fh: BinaryIO | str, spec: SequenceSpec, prefix: Sequence[int]) -> None:
    """Write a prefix as: magic, version, selector, count, then length-prefixed
    little-endian magnitudes."""
    if isinstance(fh, str):
        with open(fh, "wb") as f:
            save_prefix(f, spec, prefix)
        return
    desc = spec.selector.encode("utf-8")
    fh.write(_MAGIC)
    fh.write(struct.pack("<BH", _VERSION, len(desc)))
    fh.write(desc)
    fh.write(struct.pack("<Q", len(prefix)))
    for v in prefix:
        if v < 0:
            raise InvalidSpec("only non-negative values can be serialized")
        raw = v.to_bytes((v.bit_length() + 7) // 8, "little")
        fh.write(struct.pack("<I", len(raw)))
        fh.write(raw)


def load_prefix(fh: BinaryIO | str | bytes) -> tuple[SequenceSpec, list[int]]:
    if isinstance(fh, str):
        with open(fh, "rb") as f:
            return load_prefix(f)
    if isinstance(fh, bytes):
        fh = io.BytesIO(fh)

    def take(k: int) -> bytes:
        chunk = fh.read(k)
        if len(chunk) != k:
            raise InvalidSpec("truncated prefix file")
        return chunk

    if take(4) != _MAGIC:
        raise InvalidSpec("not a sequence prefix file")
    version, dlen = struct.unpack("<BH", take(3))
    if version != _VERSION:
        raise InvalidSpec(f"unsupported prefix file version {version}")
    spec = SequenceSpec.parse(take(dlen).decode("utf-8"))
    (count,) = struct.unpack("<Q", take(8))
    out = []
    for _ in range(count):
        (length,) = struct.unpack("<I", take(4))
        out.append(int.from_bytes(take(length), "little"))
    return spec, out
