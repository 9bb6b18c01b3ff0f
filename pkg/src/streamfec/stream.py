"""Diagonal interleaving of the block code into a convolutional packet code.

Channel packet row j at time t carries codeword symbol j of the block
codeword whose diagonal starts at t - j: the diagonal starting at d encodes
the source symbols (s_d[0], s_{d+1}[1], ..., s_{d+k-1}[k-1]).  Systematic
rows therefore carry s_t[j] verbatim; parity rows mix the previous n - 1
source packets, giving an (n, k, n-1) convolutional code.  Whole-packet
erasures at stream level induce, on each diagonal, exactly the same shape
of erasure (bursts stay bursts, sparse stays sparse), so every diagonal is
decoded independently by the block decoders with delay T_eff.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional, Sequence

from .channel import ERASED, ErasurePattern, apply, sample_stream_pattern
from .construction import GeneratorSet
from .decoder import oracle_plan, _deadline


class StreamError(ValueError):
    pass


class StreamEncoder:
    """Stateful convolutional encoder with n - 1 packets of memory."""

    def __init__(self, g: GeneratorSet):
        self.g = g
        d = g.derived
        zero_packet = [g.field().zero] * d.k
        # history[0] is the packet at time t - (n-1), history[-1] at t - 1
        self.history: deque = deque([zero_packet] * (d.n - 1), maxlen=d.n - 1)
        self.time = 0

    def push(self, symbols: Sequence, t: Optional[int] = None) -> list:
        """Encode the source packet for the current slot; packets must arrive in order."""
        d = self.g.derived
        if t is not None and t != self.time:
            raise StreamError(f"out-of-order packet: expected t={self.time}, got t={t}")
        if len(symbols) != d.k:
            raise StreamError(f"expected {d.k} source symbols, got {len(symbols)}")
        ext = self.g.field()
        s_now = [ext(v) for v in symbols]
        out = list(s_now)
        # row j >= k mixes s_{t-j+i}[i]; history index for time t - u is -u
        past = list(self.history) + [s_now]  # time t-(n-1) .. t
        for j in range(d.k, d.n):
            acc = ext.zero
            col = j - d.k
            for i in range(d.k):
                pe = self.g.P[i, col]
                if pe:
                    src = past[d.n - 1 - j + i]  # packet at time t - j + i
                    acc = acc + src[i] * pe
            out.append(acc)
        self.history.append(s_now)
        self.time += 1
        return out


def stream_encode(s: Sequence, state: StreamEncoder, g: GeneratorSet) -> list:
    """Functional wrapper over :class:`StreamEncoder` for one packet."""
    if state.g is not g:
        raise StreamError("encoder state belongs to a different generator set")
    return state.push(s)


def encode_stream(packets: Sequence[Sequence], g: GeneratorSet, flush: bool = True) -> list:
    """Encode a finite stream; with flush, append n - 1 virtual zero packets
    so every started diagonal completes."""
    enc = StreamEncoder(g)
    out = [enc.push(p) for p in packets]
    if flush:
        d = g.derived
        zero_packet = [g.field().zero] * d.k
        for _ in range(d.n - 1):
            out.append(enc.push(zero_packet))
    return out


@dataclass(frozen=True)
class StreamReport:
    packets: int
    erased_slots: int
    latencies: tuple  # per source packet: max symbol latency, or None on failure
    failures: tuple[int, ...]  # source packet indices that missed recovery

    @property
    def max_latency(self) -> int:
        vals = [v for v in self.latencies if v is not None]
        return max(vals) if vals else 0

    def recovered(self) -> int:
        return self.packets - len(self.failures)

    def to_json_obj(self) -> dict:
        return {
            "packets": self.packets,
            "erased": self.erased_slots,
            "recovered": self.recovered(),
            "max_latency": self.max_latency,
            "failures": list(self.failures),
        }


def _diagonal_erasures(erased: set[int], d: int, n: int) -> frozenset[int]:
    return frozenset(e - d for e in erased if d <= e < d + n)


def stream_decode(received: Sequence, g: GeneratorSet,
                  num_source: Optional[int] = None,
                  values: bool = True) -> tuple[Optional[list], StreamReport]:
    """Decode a received channel stream diagonal by diagonal.

    ``received`` holds one channel packet (n symbols) or ERASED per slot.
    ``num_source`` is the number of real source packets (default: horizon
    minus the n - 1 flush slots).  With ``values=False`` only the recovery
    plan is evaluated (which positions resolve by which time), skipping the
    per-symbol arithmetic; the latency report is identical.
    """
    dd = g.derived
    n, k, T_eff = dd.n, dd.k, dd.T_eff
    horizon = len(received)
    if num_source is None:
        num_source = horizon - (n - 1)
    if num_source < 0 or num_source + n - 1 > horizon:
        raise StreamError("stream too short for the requested source packet count")
    erased = {t for t, p in enumerate(received) if p is ERASED}

    ext = g.field()
    packets = [[None] * k for _ in range(num_source)] if values else None
    sym_latency = [[None] * k for _ in range(num_source)]

    # Diagonals starting before t = 0 carry virtual zero symbols in their
    # early systematic positions (cold start); they are treated as received.
    for d in range(-(k - 1), num_source):
        pat = _diagonal_erasures(erased, d, n)
        plan = oracle_plan(g, pat)
        for j in range(k):
            t_src = d + j  # s_{d+j}[j] lives on this diagonal
            if not (0 <= t_src < num_source):
                continue
            hit = plan.get(j)
            if hit is None or hit[0] > _deadline(j, T_eff, n):
                continue
            rt, steps = hit
            sym_latency[t_src][j] = rt - j
            if values:
                acc = ext.zero
                for pos, coeff in steps:
                    if d + pos >= 0:
                        acc = acc + coeff * received[d + pos][pos]
                packets[t_src][j] = acc

    failures = []
    lat = []
    for t in range(num_source):
        if any(v is None for v in sym_latency[t]):
            failures.append(t)
            lat.append(None)
        else:
            lat.append(max(sym_latency[t]))
    report = StreamReport(packets=num_source,
                          erased_slots=sum(1 for e in erased if e < horizon),
                          latencies=tuple(lat), failures=tuple(failures))
    return packets, report


def delay_check(report: StreamReport, T_eff: Optional[int] = None) -> bool:
    """True iff every packet was recovered within the delay budget."""
    if report.failures:
        return False
    if T_eff is None:
        return True
    return report.max_latency <= T_eff


def simulate(g: GeneratorSet, length: int, seed: int,
             values: bool = True, rng_source=None) -> tuple[StreamReport, ErasurePattern]:
    """One seeded end-to-end run: sample pattern, encode, erase, decode.

    With ``values=True`` the decoded packets are checked against the sent
    ones symbol for symbol; with ``values=False`` the run is plan-only.
    """
    import random

    d = g.derived
    pat = sample_stream_pattern(length + d.n - 1, d.W, d.B, d.N, seed)
    if values:
        rng = rng_source or random.Random(seed ^ 0x5EED)
        ext = g.field()
        src = [[ext.random_element(rng) for _ in range(d.k)] for _ in range(length)]
        sent = encode_stream(src, g)
        received = apply(sent, pat)
        decoded, report = stream_decode(received, g, num_source=length)
        for t in range(length):
            if t in report.failures:
                continue
            if decoded[t] != src[t]:
                raise StreamError(f"value mismatch at packet {t}")
    else:
        received = [ERASED if t in set(pat.erased) else () for t in range(length + d.n - 1)]
        _, report = stream_decode(received, g, num_source=length, values=False)
    return report, pat


# ---------------------------------------------------------------------------
# Text trace format: one line per slot, "t: sym sym ...", erased slots
# rendered as "t: ERASED".  Symbols use the field element wire form.
# ---------------------------------------------------------------------------

def format_trace(stream: Sequence) -> str:
    lines = []
    for t, p in enumerate(stream):
        if p is ERASED:
            lines.append(f"{t}: ERASED")
        else:
            lines.append(f"{t}: " + " ".join(v.to_text() for v in p))
    return "\n".join(lines) + "\n"


def parse_trace(text: str, field) -> list:
    out = []
    for line in text.strip().splitlines():
        head, _, body = line.partition(":")
        body = body.strip()
        if body == "ERASED":
            out.append(ERASED)
        else:
            out.append([field.from_text(tok) for tok in body.split()])
    return out
