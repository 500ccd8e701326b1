"""Exact edit-distance computations: ground truth and leaf oracles.

Symbols are unsigned integer code points; helpers accept ``str``/``bytes``
for convenience and normalize them. All functions here are pure and safe
to call from multiple threads.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

Symbol = int

YES = "YES"
NO = "NO"
GAP = "GAP"


class _Exceeds:
    """Sentinel returned by the banded gap solver when the distance exceeds the threshold."""

    __slots__ = ()

    def __repr__(self) -> str:  # pragma: no cover - cosmetic
        return "EXCEEDS"


EXCEEDS = _Exceeds()


def symbols(s: Union[str, bytes, Iterable[int], "View"]) -> list[int]:
    """Normalize text/bytes/int iterables into a list of symbol code points."""
    if isinstance(s, View):
        return s.fetch()
    if isinstance(s, str):
        return [ord(c) for c in s]
    if isinstance(s, (bytes, bytearray)):
        return list(s)
    out = list(s)
    for v in out:
        if not isinstance(v, int) or v < 0:
            raise ValueError(f"symbols must be nonnegative ints, got {v!r}")
    return out


@dataclass(frozen=True)
class View:
    """A (source, start, length) window into a symbol sequence.

    The source may be a plain sequence or a metered string (anything with
    ``read``/``read_range``); reads through a metered source are charged.
    Sub-views compose: ``v.sub(a, l).sub(b, m) == v.sub(a + b, m)``.
    """

    source: object
    start: int
    length: int

    def __post_init__(self):
        if self.start < 0 or self.length < 0:
            raise ValueError("view start/length must be nonnegative")
        if self.start + self.length > len(self.source):  # type: ignore[arg-type]
            raise ValueError("view exceeds source bounds")

    def __len__(self) -> int:
        return self.length

    def sub(self, start: int, length: int) -> "View":
        if start < 0 or length < 0 or start + length > self.length:
            raise ValueError("sub-view out of bounds")
        return View(self.source, self.start + start, length)

    def read(self, i: int) -> int:
        if not 0 <= i < self.length:
            raise IndexError(f"view read at {i}, length {self.length}")
        src = self.source
        if hasattr(src, "read"):
            return src.read(self.start + i)
        return src[self.start + i]

    def read_many(self, positions: Sequence[int]) -> list[int]:
        src = self.source
        base = self.start
        for p in positions:
            if not 0 <= p < self.length:
                raise IndexError(f"view read at {p}, length {self.length}")
        if hasattr(src, "read_many"):
            return src.read_many([base + p for p in positions])
        return [src[base + p] for p in positions]

    def fetch(self, start: int = 0, length: int | None = None) -> list[int]:
        """Materialize a sub-range as a list (charged if the source is metered)."""
        if length is None:
            length = self.length - start
        if start < 0 or length < 0 or start + length > self.length:
            raise ValueError("fetch out of bounds")
        src = self.source
        if hasattr(src, "read_range"):
            return src.read_range(self.start + start, length)
        return list(src[self.start + start : self.start + start + length])


def as_view(s) -> View:
    if isinstance(s, View):
        return s
    if isinstance(s, (str, bytes, bytearray)):
        data = symbols(s)
        return View(data, 0, len(data))
    return View(s, 0, len(s))


def _coerce(s) -> Sequence[int]:
    """Raw symbol sequence for local computation (no metering indirection)."""
    if isinstance(s, View):
        return s.fetch()
    if isinstance(s, str):
        return [ord(c) for c in s]
    if isinstance(s, (bytes, bytearray)):
        return list(s)
    return s


@dataclass(frozen=True)
class GapInstance:
    """A gap decision instance: YES means ED <= beta, NO means ED > alpha."""

    x: View
    y: View
    alpha: int
    beta: int

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError("gap instance needs equal-length strings")
        if not self.alpha >= self.beta >= 0:
            raise ValueError(f"need alpha >= beta >= 0, got {self.alpha}, {self.beta}")

    @property
    def n(self) -> int:
        return len(self.x)


@dataclass(frozen=True)
class ShiftedInstance:
    """A shifted gap instance: YES means ED_beta <= gamma, NO means ED > 3*alpha."""

    x: View
    y: View
    alpha: int
    beta: int
    gamma: int

    def __post_init__(self):
        if len(self.x) != len(self.y):
            raise ValueError("shifted instance needs equal-length strings")
        if not self.alpha >= self.beta >= self.gamma >= 0:
            raise ValueError(
                f"need alpha >= beta >= gamma >= 0, got "
                f"{self.alpha}, {self.beta}, {self.gamma}"
            )

    @property
    def n(self) -> int:
        return len(self.x)


# ---------------------------------------------------------------------------
# Exact edit distance (textbook dynamic program)
# ---------------------------------------------------------------------------

_NUMPY_CUTOFF = 4096  # below this many cells the plain loop wins


def _ed_rows_py(x: Sequence[int], y: Sequence[int]) -> int:
    n, m = len(x), len(y)
    prev = list(range(m + 1))
    for i in range(1, n + 1):
        xi = x[i - 1]
        cur = [i] + [0] * m
        left = i
        prow = prev
        for j in range(1, m + 1):
            c = prow[j - 1] if xi == y[j - 1] else prow[j - 1] + 1
            up = prow[j] + 1
            if up < c:
                c = up
            left += 1
            if left < c:
                c = left
            cur[j] = c
            left = c
        prev = cur
    return prev[m]


def _ed_rows_np(x: Sequence[int], y: Sequence[int]) -> int:
    ya = np.asarray(y, dtype=np.int64)
    m = len(ya)
    prev = np.arange(m + 1, dtype=np.int64)
    idx = np.arange(m + 1, dtype=np.int64)
    w = np.empty(m + 1, dtype=np.int64)
    for i, xi in enumerate(x, start=1):
        t = np.minimum(prev[1:] + 1, prev[:-1] + (ya != xi))
        w[0] = i
        np.subtract(t, idx[1:], out=w[1:])
        prev = np.minimum.accumulate(w) + idx
    return int(prev[m])


def ed_exact(x, y) -> int:
    """Minimum number of insertions, deletions, and substitutions turning x into y."""
    x = _coerce(x)
    y = _coerce(y)
    if len(x) == 0:
        return len(y)
    if len(y) == 0:
        return len(x)
    if len(x) * len(y) < _NUMPY_CUTOFF:
        return _ed_rows_py(x, y)
    return _ed_rows_np(x, y)


def ed_lower_bound(x, y) -> int:
    """A cheap certified lower bound on ed_exact (length gap and bag distance)."""
    x = _coerce(x)
    y = _coerce(y)
    diff = Counter(x)
    diff.subtract(Counter(y))
    surplus = sum(v for v in diff.values() if v > 0)
    deficit = -sum(v for v in diff.values() if v < 0)
    return max(abs(len(x) - len(y)), surplus, deficit)


# ---------------------------------------------------------------------------
# Banded gap solver (k-differences diagonal waves)
# ---------------------------------------------------------------------------


def _lcp(x: Sequence[int], y: Sequence[int], i: int, j: int, limit: int) -> int:
    """Length of the longest common prefix of x[i:] and y[j:], capped at limit."""
    k = 0
    step = 64
    while k + step <= limit and x[i + k : i + k + step] == y[j + k : j + k + step]:
        k += step
    while k < limit and x[i + k] == y[j + k]:
        k += 1
    return k


def gap_ed_banded(x, y, beta: int):
    """ed_exact(x, y) when it is <= beta, else the EXCEEDS sentinel.

    Diagonal-wave algorithm: O(n + beta^2) waves plus match-run extension.
    """
    if beta < 0:
        raise ValueError("beta must be >= 0")
    x = _coerce(x)
    y = _coerce(y)
    n, m = len(x), len(y)
    if n > m:
        x, y, n, m = y, x, m, n
    dd = m - n  # target diagonal
    if dd > beta:
        return EXCEEDS
    if beta == 0:
        return 0 if list(x) == list(y) else EXCEEDS
    if n == 0:
        return m if m <= beta else EXCEEDS

    NEG = -(n + 2)
    off = beta + 1  # array offset so diagonal d sits at d + off
    size = 2 * beta + 3
    prev = [NEG] * size
    cur = [NEG] * size

    i0 = _lcp(x, y, 0, 0, n)
    if dd == 0 and i0 >= n:
        return 0
    cur[off] = i0
    prev, cur = cur, prev

    for e in range(1, beta + 1):
        slack = beta - e
        lo = max(-e, dd - slack, -n)
        hi = min(e, dd + slack, m)
        if lo > hi:
            return EXCEEDS
        for d in range(lo, hi + 1):
            k = d + off
            best = prev[k] + 1  # substitution
            v = prev[k + 1] + 1  # deletion from x
            if v > best:
                best = v
            v = prev[k - 1]  # insertion into x (row unchanged)
            if v > best:
                best = v
            if best < 0:
                cur[k] = NEG
                continue
            cap = m - d
            if cap > n:
                cap = n
            if best > cap:
                best = cap
            if best < cap:
                best += _lcp(x, y, best, best + d, cap - best)
            cur[k] = best
        if cur[dd + off] >= n:
            return e
        prev, cur = cur, prev
        for k in range(len(cur)):
            cur[k] = NEG
    return EXCEEDS


# ---------------------------------------------------------------------------
# Shifted edit distance (ground truth)
# ---------------------------------------------------------------------------


def shifted_ed_exact(x, y, beta: int) -> int:
    """min over shifts Delta <= beta of the edit distance between truncated strings.

    For each Delta both directions are tried: drop Delta leading symbols of
    one string and Delta trailing symbols of the other. Cost is one banded
    DP per shift; this is a ground-truth oracle, not a tester.
    """
    if beta < 0:
        raise ValueError("beta must be >= 0")
    x = _coerce(x)
    y = _coerce(y)
    lx, ly = len(x), len(y)
    cap = min(lx, ly, beta)

    if lx == ly:
        # distance 0 is only possible at equal truncated lengths; cheap scan
        for d in range(cap + 1):
            if x[d:] == y[: ly - d] or x[: lx - d] == y[d:]:
                return 0

    best = ed_exact(x, y)
    for d in range(1, cap + 1):
        if best == 0:
            break
        for a, b in ((x[d:], y[: ly - d]), (x[: lx - d], y[d:])):
            if best == 0:
                break
            r = gap_ed_banded(a, b, best - 1)
            if r is not EXCEEDS:
                best = r
    return best


# ---------------------------------------------------------------------------
# Ground-truth gap adjudicator
# ---------------------------------------------------------------------------


def ed_solve_gap(inst: GapInstance) -> str:
    """True classification of a gap instance: YES, NO, or GAP.

    Output-sensitive: a banded pass at beta settles YES, a certified lower
    bound settles most NO cases, and only genuinely in-between instances pay
    for a banded pass at alpha.
    """
    x = _coerce(inst.x)
    y = _coerce(inst.y)
    d = gap_ed_banded(x, y, inst.beta)
    if d is not EXCEEDS:
        return YES
    if ed_lower_bound(x, y) > inst.alpha:
        return NO
    d = gap_ed_banded(x, y, inst.alpha)
    return NO if d is EXCEEDS else GAP
