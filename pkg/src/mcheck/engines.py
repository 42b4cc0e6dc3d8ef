"""Unrolling-based engines: bounded model checking and k-induction.

Both engines grow a single incremental solver instead of re-encoding per
depth.  BMC checks a window of new frames per solve using a fresh selector
variable, so "bad somewhere in frames [lo, hi]" is one query.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, List, Optional

from .aiger import WitnessTrace
from .logic import lit_neg
from .satcore import Solver, SolverStats
from .transys import TranSys, Unroller
from .verdicts import KInductionCert, Verdict, safe, unknown, unsafe


@dataclass
class UnrollStats:
    depth: int = 0
    solver_calls: int = 0
    solver: Optional[SolverStats] = None


def _sync_vars(s: Solver, un: Unroller) -> None:
    if s.num_vars < un.num_vars:
        s.new_vars(un.num_vars - s.num_vars)


def _extract_trace(s: Solver, un: Unroller, ts: TranSys, depth: int) -> WitnessTrace:
    init_bits: List[Optional[int]] = []
    for lv in ts.latch_vars[: ts.num_real_latches]:
        val = s.model_value(un.lit_at(2 * lv, 0) >> 1)
        if val is None:
            iv = ts.init_value.get(lv)
            init_bits.append(iv if iv is not None else 0)
        else:
            init_bits.append(int(val))
    frames: List[List[Optional[int]]] = []
    for t in range(depth + 1):
        frames.append([
            int(s.model_value(un.lit_at(2 * iv, t) >> 1, default=False))
            for iv in ts.input_vars])
    return WitnessTrace(ts.bad_index, init_bits, frames)


def bmc(
    ts: TranSys,
    max_depth: int = 100,
    step: int = 1,
    cancel: Optional[Callable[[], bool]] = None,
) -> Verdict:
    """Search for a counterexample of length ≤ max_depth, `step` frames per
    incremental query."""
    if step < 1:
        raise ValueError("step must be >= 1")
    stats = UnrollStats()
    un = Unroller(ts)
    s = Solver()

    def grow_to(depth: int) -> None:
        while un.depth < depth:
            new = un.add_frame()
            _sync_vars(s, un)
            for cl in new:
                s.add_clause(cl)
            for cl in un.constraint_units(un.depth):
                s.add_clause(cl)
            if un.depth == 0:
                for cl in un.init_units():
                    s.add_clause(cl)

    lo = 0
    while lo <= max_depth:
        if cancel is not None and cancel():
            stats.solver = s.stats
            return unknown("cancelled", stats=stats)
        hi = min(lo + step - 1, max_depth)
        grow_to(hi)
        sel = s.new_var()
        un.num_vars = max(un.num_vars, s.num_vars)  # keep frame vars disjoint
        s.add_clause([2 * sel + 1] + [un.bad_at(d) for d in range(lo, hi + 1)])
        stats.solver_calls += 1
        res = s.solve(assumptions=[2 * sel], cancel_check=cancel)
        if res is None:
            stats.solver = s.stats
            return unknown("cancelled", stats=stats)
        if res:
            depth = next(d for d in range(lo, hi + 1)
                         if s.model_value(un.bad_at(d) >> 1, default=False)
                         != bool(un.bad_at(d) & 1))
            stats.depth = depth
            stats.solver = s.stats
            return unsafe(_extract_trace(s, un, ts, depth), stats=stats)
        s.add_clause((2 * sel + 1,))  # retire the window selector
        stats.depth = hi
        lo = hi + 1
    stats.solver = s.stats
    return unknown("no counterexample up to depth %d" % max_depth, stats=stats)


def _add_simple_path(s: Solver, un: Unroller, ts: TranSys, new_frame: int) -> None:
    """State-difference clauses between `new_frame` and each earlier frame."""
    latches = ts.latch_vars[: ts.num_real_latches]
    if not latches:
        return
    for i in range(new_frame):
        lits = []
        for lv in latches:
            a = un.lit_at(2 * lv, i)
            b = un.lit_at(2 * lv, new_frame)
            d = s.new_var()
            un.num_vars = max(un.num_vars, s.num_vars)
            # d → (a xor b)
            s.add_clause((2 * d + 1, a, b))
            s.add_clause((2 * d + 1, a ^ 1, b ^ 1))
            lits.append(2 * d)
        s.add_clause(lits)


def kind(
    ts: TranSys,
    max_k: int = 50,
    simple_path: bool = False,
    simple_path_max_k: int = 10,
    cancel: Optional[Callable[[], bool]] = None,
) -> Verdict:
    """K-induction: for ascending k, a BMC base case to depth k plus an
    inductive step over an init-free k+1-frame unrolling (¬bad assumed at
    frames 0..k-1, bad asserted at frame k)."""
    stats = UnrollStats()

    # base-case solver (with init)
    ub = Unroller(ts)
    sb = Solver()
    # step-case solver (no init)
    us = Unroller(ts)
    ss = Solver()

    def grow(un: Unroller, s: Solver, with_init: bool, depth: int,
             distinct: bool) -> None:
        while un.depth < depth:
            new = un.add_frame()
            _sync_vars(s, un)
            for cl in new:
                s.add_clause(cl)
            for cl in un.constraint_units(un.depth):
                s.add_clause(cl)
            if with_init and un.depth == 0:
                for cl in un.init_units():
                    s.add_clause(cl)
            if distinct and un.depth >= 1:
                _add_simple_path(s, un, ts, un.depth)

    # simple-path constraints grow quadratically; with the flag on, the
    # whole search is capped rather than silently dropping the constraints
    # (the emitted certificate must match what was solved)
    effective_max = min(max_k, simple_path_max_k) if simple_path else max_k
    for k in range(0, effective_max + 1):
        if cancel is not None and cancel():
            break
        # base: no counterexample at depth k
        grow(ub, sb, True, k, False)
        stats.solver_calls += 1
        res = sb.solve(assumptions=[ub.bad_at(k)], cancel_check=cancel)
        if res is None:
            break
        if res:
            stats.depth = k
            stats.solver = sb.stats
            return unsafe(_extract_trace(sb, ub, ts, k), stats=stats)

        if k == 0:
            continue
        # step: ¬bad at 0..k-1 (permanent units, monotone in k) ⊢ ¬bad at k
        grow(us, ss, False, k, simple_path)
        ss.add_clause((lit_neg(us.bad_at(k - 1)),))
        stats.solver_calls += 1
        res = ss.solve(assumptions=[us.bad_at(k)], cancel_check=cancel)
        if res is None:
            break
        if res is False:
            stats.depth = k
            stats.solver = ss.stats
            cert = KInductionCert(k, simple_path=simple_path)
            return safe(cert, stats=stats)
    stats.solver = sb.stats
    return unknown("not k-inductive up to k=%d" % effective_max, stats=stats)
