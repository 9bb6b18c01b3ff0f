"""Sliding-window erasure channel model.

A pattern is admissible for (W, B, N) when every window of W consecutive
slots sees either at most N erasures at arbitrary positions or one
contiguous burst of at most B erasures.  Burst and sparse windows may
coexist in one stream; the predicate is evaluated per window.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence


class ChannelError(ValueError):
    pass


class BudgetError(ChannelError):
    """Raised when exhaustive enumeration would exceed its budget."""


class _Erased:
    """Singleton marker standing in for an erased symbol or packet."""

    def __repr__(self):
        return "ERASED"

    def __bool__(self):
        return False


ERASED = _Erased()

_ENUM_MAX_N = 16
_ENUM_MAX_SPARSE = 4


@dataclass(frozen=True)
class ErasurePattern:
    horizon: int
    erased: tuple[int, ...]

    def __post_init__(self):
        prev = -1
        for e in self.erased:
            if not (0 <= e < self.horizon):
                raise ChannelError(f"erased index {e} outside [0, {self.horizon})")
            if e <= prev:
                raise ChannelError("erased indices must be strictly increasing")
            prev = e

    @classmethod
    def make(cls, horizon: int, erased) -> "ErasurePattern":
        return cls(horizon, tuple(sorted(set(erased))))

    @classmethod
    def from_text(cls, horizon: int, text: str) -> "ErasurePattern":
        text = text.strip()
        idx = [int(p) for p in text.split(",")] if text else []
        return cls.make(horizon, idx)

    def to_text(self) -> str:
        return ",".join(str(e) for e in self.erased)

    def is_burst(self) -> bool:
        e = self.erased
        return len(e) >= 1 and e[-1] - e[0] == len(e) - 1


def _window_ok(window_hits: Sequence[int], B: int, N: int) -> bool:
    if len(window_hits) <= N:
        return True
    run = window_hits[-1] - window_hits[0] == len(window_hits) - 1
    return run and len(window_hits) <= B


def is_admissible(p: ErasurePattern, W: int, B: int, N: int) -> bool:
    if W < 1:
        raise ChannelError("window must be >= 1")
    erased = p.erased
    for start in range(p.horizon - W + 1):
        hits = [e for e in erased if start <= e < start + W]
        if not _window_ok(hits, B, N):
            return False
    if p.horizon < W:
        # Degenerate horizon shorter than the window: treat the whole
        # horizon as one (partial) window.
        return _window_ok(list(erased), B, N)
    return True


def enumerate_block_patterns(n: int, W: int, B: int, N: int) -> list[ErasurePattern]:
    """All admissible sparse subsets of size <= N plus all bursts of length <= B.

    Deterministic order: sparse subsets by size then lexicographic index
    tuple, followed by longer bursts by (length, start); duplicates (short
    bursts are also sparse subsets) appear once.
    """
    if n > _ENUM_MAX_N or N > _ENUM_MAX_SPARSE:
        raise BudgetError(
            f"exhaustive enumeration limited to n <= {_ENUM_MAX_N}, N <= {_ENUM_MAX_SPARSE}; "
            f"got n = {n}, N = {N}")
    out: list[ErasurePattern] = []
    seen: set[tuple[int, ...]] = set()
    for size in range(N + 1):
        for combo in combinations(range(n), size):
            p = ErasurePattern(n, combo)
            if is_admissible(p, W, B, N) and combo not in seen:
                seen.add(combo)
                out.append(p)
    for length in range(N + 1, B + 1):
        for start in range(n - length + 1):
            combo = tuple(range(start, start + length))
            p = ErasurePattern(n, combo)
            if is_admissible(p, W, B, N) and combo not in seen:
                seen.add(combo)
                out.append(p)
    return out


def sample_stream_pattern(length: int, W: int, B: int, N: int, seed: int) -> ErasurePattern:
    """Seeded admissible pattern over a long horizon.

    Alternates burst events (length <= B) and sparse events (<= N erasures
    inside one window) separated by at least W - 1 clean guard slots, so no
    window ever sees two events.  The result is re-checked before return.
    """
    if length < W:
        raise ChannelError(f"stream length {length} must be >= window W={W}")
    rng = random.Random(seed)
    erased: list[int] = []
    t = rng.randrange(0, W)
    while t < length:
        if rng.random() < 0.5:
            run = rng.randint(1, B)
            run = min(run, length - t)
            erased.extend(range(t, t + run))
            event_end = t + run
        else:
            count = rng.randint(1, N)
            span = min(W, length - t)
            slots = sorted(rng.sample(range(t, t + span), min(count, span)))
            erased.extend(slots)
            event_end = slots[-1] + 1
        t = event_end + (W - 1) + rng.randrange(0, W)
    p = ErasurePattern(length, tuple(erased))
    if not is_admissible(p, W, B, N):
        raise ChannelError("internal error: sampled pattern failed admissibility")
    return p


def apply(x: Sequence, p: ErasurePattern) -> list:
    """Replace erased slots with the ERASED mark."""
    if len(x) != p.horizon:
        raise ChannelError(f"stream length {len(x)} != pattern horizon {p.horizon}")
    hit = set(p.erased)
    return [ERASED if t in hit else v for t, v in enumerate(x)]
