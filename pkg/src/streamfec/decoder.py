"""Deadline-constrained erasure decoding for one code block.

Two decoders over the same generator set:

* ``oracle_decode`` is the ground truth.  It replays the causal reveal of
  codeword positions and reports, for every source symbol, the earliest
  time at which Gaussian elimination pins the symbol uniquely.  The
  elimination result is cached per erasure pattern as a recovery plan
  (positions and coefficients), so repeated decodes of the same pattern
  cost one linear combination per symbol.

* ``decode_arbitrary`` / ``decode_burst`` form the structured decoder.
  It mirrors the algebra the code was designed around: recover the outer
  symbols (first delta and last k - B) through the rank-metric subsystem,
  cancelling unknown middle symbols by a base-field null-out, then peel
  each middle sub-block with its Cauchy parity.  Any rank deficiency on an
  admissible pattern is a bug, reported as StructuralFailureError.

Both report per-symbol recovery times against the per-symbol deadline
min(i + T_eff, n - 1).
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .gf import FieldElement
from .matrix import Mat, NoSolution, Underdetermined
from .channel import ERASED, ErasurePattern
from .construction import DerivedParams, GeneratorSet


class DecoderError(ValueError):
    pass


class StructuralFailureError(DecoderError):
    """Rank deficiency on an admissible pattern; indicates a construction bug."""


@dataclass(frozen=True)
class SymbolReport:
    index: int
    status: str  # "recovered" | "failed"
    value: Optional[FieldElement]
    recovery_time: Optional[int]
    deadline: int

    def to_json_obj(self) -> dict:
        obj = {"index": self.index, "status": self.status,
               "recovery_time": self.recovery_time, "deadline": self.deadline}
        if self.value is not None:
            obj["value"] = self.value.to_text()
        return obj


@dataclass(frozen=True)
class DecodeReport:
    symbols: tuple[SymbolReport, ...]

    def ok(self) -> bool:
        return all(s.status == "recovered" for s in self.symbols)

    def values(self) -> list:
        return [s.value for s in self.symbols]

    def to_json_obj(self) -> dict:
        return {"symbols": [s.to_json_obj() for s in self.symbols]}


@dataclass(frozen=True)
class DecodeCase:
    kind: str  # "arbitrary" | "burst"
    l: int


def _deadline(i: int, T_eff: int, n: int) -> int:
    return min(i + T_eff, n - 1)


# ---------------------------------------------------------------------------
# Oracle decoder
# ---------------------------------------------------------------------------

def _erased_positions(y) -> frozenset[int]:
    return frozenset(t for t, v in enumerate(y) if v is ERASED)


def oracle_plan(g: GeneratorSet, erased: frozenset[int]) -> dict:
    """Recovery plan for an erasure pattern: i -> (time, ((pos, coeff), ...)).

    The plan depends only on the pattern, not on the symbol values: symbol i
    is a fixed linear combination of the received positions, valid for every
    source block by linearity.  Cached on the generator set.
    """
    key = ("oracle", erased)
    cached = g._plan_cache.get(key)
    if cached is not None:
        return cached

    d = g.derived
    k, n = d.k, d.n
    ext = g.field()
    cols = g.G.transpose().rows  # column t of G as a length-k list

    # pivots: pivot row -> (vector over k, combination over received positions)
    pivots: dict[int, tuple[list, dict]] = {}
    unresolved = set(range(k))
    plan: dict[int, tuple[int, tuple]] = {}

    def reduce(vec: list, combo: dict) -> tuple[list, dict]:
        for r, (pv, pc) in pivots.items():
            c = vec[r]
            if c:
                vec = [a - c * b for a, b in zip(vec, pv)]
                for pos, coeff in pc.items():
                    combo[pos] = combo.get(pos, ext.zero) - c * coeff
        return vec, combo

    for t in range(n):
        if t in erased:
            continue
        vec, combo = reduce(list(cols[t]), {t: ext.one})
        r0 = next((r for r in range(k) if vec[r]), None)
        if r0 is None:
            continue
        inv = vec[r0].inverse()
        vec = [v * inv for v in vec]
        combo = {pos: c * inv for pos, c in combo.items()}
        # keep existing pivots reduced against the new one
        for r, (pv, pc) in pivots.items():
            c = pv[r0]
            if c:
                pivots[r] = ([a - c * b for a, b in zip(pv, vec)],
                             {pos: pc.get(pos, ext.zero) - c * combo.get(pos, ext.zero)
                              for pos in set(pc) | set(combo)})
        pivots[r0] = (vec, combo)

        for i in sorted(unresolved):
            evec = [ext.one if r == i else ext.zero for r in range(k)]
            rvec, rcombo = reduce(evec, {})
            if not any(rvec):
                steps = tuple(sorted((pos, -c) for pos, c in rcombo.items() if c))
                plan[i] = (t, steps)
        unresolved -= plan.keys()
        if not unresolved:
            break

    g._plan_cache[key] = plan
    return plan


def oracle_decode(g: GeneratorSet, y, T_eff: Optional[int] = None) -> DecodeReport:
    """Earliest-time elimination decode of one received block."""
    d = g.derived
    if T_eff is None:
        T_eff = d.T_eff
    if len(y) != d.n:
        raise DecoderError(f"expected {d.n} received symbols, got {len(y)}")
    erased = _erased_positions(y)
    plan = oracle_plan(g, erased)
    out = []
    for i in range(d.k):
        dl = _deadline(i, T_eff, d.n)
        hit = plan.get(i)
        if hit is None or hit[0] > dl:
            out.append(SymbolReport(i, "failed", None, hit[0] if hit else None, dl))
            continue
        t, steps = hit
        val = g.field().zero
        for pos, coeff in steps:
            val = val + coeff * y[pos]
        out.append(SymbolReport(i, "recovered", val, t, dl))
    return DecodeReport(tuple(out))


# ---------------------------------------------------------------------------
# Pattern classification
# ---------------------------------------------------------------------------

def classify_pattern(p: ErasurePattern, d: DerivedParams) -> DecodeCase:
    """Route a block erasure pattern and compute its case parameter.

    Burst means one contiguous run of length in (N, B]; contiguous runs of
    length <= N and all other patterns of at most N erasures are arbitrary.
    For arbitrary patterns l counts erasures among the middle source
    positions [delta, B); for bursts l is the start offset of the run
    within its sub-block.
    """
    if p.horizon != d.n:
        raise DecoderError(f"pattern horizon {p.horizon} != block length {d.n}")
    e = p.erased
    if p.is_burst() and d.N < len(e) <= d.B:
        i0 = e[0]
        l = (i0 - d.delta) % d.N if d.delta <= i0 < d.B else 0
        return DecodeCase("burst", l)
    if len(e) <= d.N:
        l = sum(1 for i in e if d.delta <= i < d.B)
        return DecodeCase("arbitrary", l)
    raise DecoderError(f"pattern {e} is not admissible for one block of ({d.B},{d.N})")


# ---------------------------------------------------------------------------
# Structured decoder
# ---------------------------------------------------------------------------

def _middle_block(d: DerivedParams, i: int) -> int:
    return (i - d.delta) // d.N


def _mrd_solve(g: GeneratorSet, y, vals: dict, targets: set[int],
               parity_cols: list[int], interference: list[int]) -> tuple[dict, int]:
    """Solve the rank-metric subsystem for the outer source symbols.

    vals holds every already-known source value; targets are the unknown
    outer indices (subset of [0,delta) + [B,k)); parity_cols are block
    parity column indices (within [0,B)) whose positions were received;
    interference lists unknown middle rows to null out.  Returns recovered
    values for the targets and the largest codeword position used.
    """
    d = g.derived
    k, B, N, delta = d.k, d.B, d.N, d.delta
    ext = g.field()
    base = d.base_field()
    i0_list = list(range(delta)) + list(range(B, k))
    k_mrd = len(i0_list)

    gab_parity = g.mrd.parity()  # rows follow i0_list order, B columns

    sel: list[int] = []          # column indices into mrd.gen_sys
    rhs: list[FieldElement] = []
    tmat_rows_cols: list[list] = [[] for _ in interference]
    used_positions: list[int] = []

    for pos_in_i0, i in enumerate(i0_list):
        if i in vals:
            sel.append(pos_in_i0)
            rhs.append(vals[i])
            for row in tmat_rows_cols:
                row.append(base.zero)
            used_positions.append(i)

    for c in parity_cols:
        v = y[k + c]
        # known middles move to the right-hand side; outer symbols stay in
        # the system (their identity pseudo-columns pin them)
        for i in range(delta, B):
            if i in vals and g.P[i, c]:
                v = v - vals[i] * g.P[i, c]
        if c >= N:
            # Outside the shared band the block parity ignores the first
            # delta rows while the rank-metric parity does not; shift the
            # known top contributions across so the column matches.
            for i in range(delta):
                if i not in vals:
                    raise StructuralFailureError(
                        "top outer symbol unknown while using a late parity column")
                v = v + vals[i] * gab_parity[i, c]
        sel.append(k_mrd + c)
        rhs.append(v)
        for row, mi in zip(tmat_rows_cols, interference):
            pe = g.P[mi, c]
            if pe and not pe.is_base():
                raise StructuralFailureError("interference entry outside the base field")
            row.append(base(pe.coeffs[0]))
        used_positions.append(k + c)

    that = Mat(base, tmat_rows_cols, len(sel))
    m_kernel = that.right_kernel_basis()
    if not (that @ m_kernel).is_zero():
        raise StructuralFailureError("null-out failed: interference not cancelled")

    a = g.mrd.gen_sys.select_columns(sel)
    am = a @ m_kernel
    rhs_m = Mat(ext, [rhs], len(sel)) @ m_kernel
    u = am.solve_left(rhs_m.rows[0])
    if u is NoSolution or u is Underdetermined:
        raise StructuralFailureError(f"outer solve degenerate: {u!r}")
    recovered = {i: u[pos] for pos, i in enumerate(i0_list) if i in targets}
    return recovered, max(used_positions)


def _cauchy_solve(g: GeneratorSet, y, vals: dict, block: int,
                  unknowns: list[int]) -> tuple[dict, int]:
    """Solve one middle sub-block through its Cauchy parity columns."""
    d = g.derived
    k, N, delta = d.k, d.N, d.delta
    ext = g.field()
    col_lo = delta + block * N
    avail = [c for c in range(col_lo, col_lo + N) if y[k + c] is not ERASED]
    if len(avail) < len(unknowns):
        raise StructuralFailureError("not enough parity columns for sub-block solve")
    rows = []
    rhs = []
    for c in avail:
        v = y[k + c]
        for i in range(k):
            if i in vals and g.P[i, c]:
                v = v - vals[i] * g.P[i, c]
        rhs.append(v)
    a = Mat(ext, [[g.P[u, c] for c in avail] for u in unknowns], len(avail))
    x = a.solve_left(rhs)
    if x is NoSolution or x is Underdetermined:
        raise StructuralFailureError(f"sub-block solve degenerate: {x!r}")
    return {u: x[pos] for pos, u in enumerate(unknowns)}, k + avail[-1]


def _base_report(g: GeneratorSet, y, vals: dict, times: dict) -> DecodeReport:
    d = g.derived
    out = []
    for i in range(d.k):
        dl = _deadline(i, d.T_eff, d.n)
        if i in vals:
            out.append(SymbolReport(i, "recovered", vals[i], times[i], dl))
        else:
            out.append(SymbolReport(i, "failed", None, None, dl))
    return DecodeReport(tuple(out))


def decode_structured(g: GeneratorSet, y, case: Optional[DecodeCase] = None) -> DecodeReport:
    """Dispatch to the burst or arbitrary pipeline based on the pattern."""
    d = g.derived
    if len(y) != d.n:
        raise DecoderError(f"expected {d.n} received symbols, got {len(y)}")
    if case is None:
        p = ErasurePattern(d.n, tuple(sorted(_erased_positions(y))))
        case = classify_pattern(p, d)
    if case.kind == "burst":
        return decode_burst(g, y, case)
    return decode_arbitrary(g, y, case)


def decode_arbitrary(g: GeneratorSet, y, case: DecodeCase) -> DecodeReport:
    """Recover from at most N erasures anywhere in the block.

    Stage 1 solves the outer symbols through the first N parity columns,
    nulling out unknown middle rows; stage 2 peels each affected sub-block
    with its own Cauchy columns, by which time every outer symbol is known.
    """
    d = g.derived
    k, B, N, delta = d.k, d.B, d.N, d.delta
    erased = _erased_positions(y)
    vals = {i: y[i] for i in range(k) if i not in erased}
    times = {i: i for i in vals}

    u_outer = sorted(i for i in erased if i < delta or B <= i < k)
    u_mid = sorted(i for i in erased if delta <= i < B)

    if u_outer:
        parity_cols = [c for c in range(N) if (k + c) not in erased]
        rec, t = _mrd_solve(g, y, vals, set(u_outer), parity_cols, u_mid)
        vals.update(rec)
        for i in rec:
            times[i] = t

    now = 0
    for block in sorted({_middle_block(d, i) for i in u_mid}):
        unknowns = [i for i in u_mid if _middle_block(d, i) == block]
        rec, t = _cauchy_solve(g, y, vals, block, unknowns)
        now = max(now, t)
        vals.update(rec)
        for i in rec:
            times[i] = now
    return _base_report(g, y, vals, times)


def decode_burst(g: GeneratorSet, y, case: DecodeCase) -> DecodeReport:
    """Recover from one contiguous burst of length in (N, B].

    Step 1: a burst entering the first delta positions is cancelled through
    the first delta parity columns, where the middle rows have no support;
    this recovers every erased outer symbol at once.  Step 2: sub-blocks
    are peeled in ascending order; at the first affected sub-block any
    still-unknown outer symbols are solved jointly through the rank-metric
    subsystem (using all parity columns up to that sub-block's deadline),
    after which the sub-block falls to its Cauchy columns.  Step 3: outer
    symbols erased by a burst that touched no middle sub-block are solved
    from the full parity span.
    """
    d = g.derived
    k, B, N, delta = d.k, d.B, d.N, d.delta
    erased = _erased_positions(y)
    vals = {i: y[i] for i in range(k) if i not in erased}
    times = {i: i for i in vals}

    u_outer = set(i for i in erased if i < delta or B <= i < k)
    u_mid = sorted(i for i in erased if delta <= i < B)

    now = 0
    if any(i < delta for i in erased):
        parity_cols = [c for c in range(delta) if (k + c) not in erased]
        rec, t = _mrd_solve(g, y, vals, u_outer, parity_cols, u_mid)
        vals.update(rec)
        now = max(now, t)
        for i in rec:
            times[i] = t
        u_outer.clear()

    for block in sorted({_middle_block(d, i) for i in u_mid}):
        if u_outer:
            hi = delta + (block + 1) * N
            parity_cols = [c for c in range(hi) if (k + c) not in erased]
            pending = [i for i in u_mid if i not in vals]
            rec, t = _mrd_solve(g, y, vals, u_outer, parity_cols, pending)
            vals.update(rec)
            now = max(now, t)
            for i in rec:
                times[i] = now
            u_outer.clear()
        unknowns = [i for i in u_mid if _middle_block(d, i) == block and i not in vals]
        if unknowns:
            rec, t = _cauchy_solve(g, y, vals, block, unknowns)
            now = max(now, t)
            vals.update(rec)
            for i in rec:
                times[i] = now

    if u_outer:
        parity_cols = [c for c in range(B) if (k + c) not in erased]
        rec, t = _mrd_solve(g, y, vals, u_outer, parity_cols, [])
        vals.update(rec)
        now = max(now, t)
        for i in rec:
            times[i] = now
    return _base_report(g, y, vals, times)


def deadline_table(d: DerivedParams) -> dict:
    """Guaranteed recovery times per source index, for each pattern family.

    Outer symbols: T_eff under arbitrary erasures; under bursts the first
    delta symbols are done by k + delta and the last k - B by B + T_eff - N.
    Middle sub-block j symbols: T_eff + delta + j*N in both families.
    """
    arb = []
    burst = []
    for i in range(d.k):
        if i < d.delta:
            arb.append(d.T_eff)
            burst.append(d.k + d.delta)
        elif i < d.B:
            j = _middle_block(d, i)
            t = d.T_eff + d.delta + j * d.N
            arb.append(t)
            burst.append(t)
        else:
            arb.append(d.T_eff)
            burst.append(d.B + d.T_eff - d.N)
    return {"arbitrary": arb, "burst": burst}
