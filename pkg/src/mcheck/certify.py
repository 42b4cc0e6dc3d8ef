"""Independent verification of results: witness replay, inductive-invariant
certificate checking, and the text file formats for both.

The checks here deliberately avoid the engines' incremental solvers: each
certificate condition gets a fresh solver instance, and witness replay uses
plain gate evaluation on the original and-inverter graph.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .aiger import Aig, WitnessTrace, eval_nodes
from .logic import Clause, lit_neg, lit_var, negate
from .satcore import Solver
from .transys import TranSys, Unroller
from .verdicts import InvariantCert, KInductionCert


class FormatError(Exception):
    """Malformed witness or certificate file."""


# ---------------------------------------------------------------------------
# Witness replay


def verify_witness(aig: Aig, trace: WitnessTrace) -> Tuple[bool, str]:
    """Replay `trace` on `aig`: the selected bad must hold at the final
    step and every constraint must hold at every step (including the final
    one).  Don't-care bits are driven as 0."""
    if not 0 <= trace.bad_index < len(aig.bads):
        return False, "bad index %d out of range" % trace.bad_index
    if len(trace.init_state) != len(aig.latches):
        return False, "init state has %d bits, model has %d latches" % (
            len(trace.init_state), len(aig.latches))
    if not trace.input_frames:
        return False, "witness has no frames"

    state = {}
    for j, lt in enumerate(aig.latches):
        bit = trace.init_state[j]
        if bit is None:
            bit = lt.init if lt.init is not None else 0
        elif lt.init is not None and bit != lt.init:
            return False, "init bit %d contradicts latch %d reset value" % (bit, j)
        state[lt.var] = int(bit)

    bad_ref = aig.bads[trace.bad_index]
    last = len(trace.input_frames) - 1
    for t, frame in enumerate(trace.input_frames):
        if len(frame) != len(aig.inputs):
            return False, "frame %d has %d bits, model has %d inputs" % (
                t, len(frame), len(aig.inputs))
        inputs = {v: int(b) if b is not None else 0
                  for v, b in zip(aig.inputs, frame)}
        vals = eval_nodes(aig, state, inputs)

        def ref_val(ref: int) -> int:
            return vals[ref >> 1] ^ (ref & 1)

        for ci, cref in enumerate(aig.constraints):
            if ref_val(cref) != 1:
                return False, "constraint %d violated at step %d" % (ci, t)
        if t == last:
            if ref_val(bad_ref) != 1:
                return False, "bad b%d not reached at final step %d" % (
                    trace.bad_index, t)
        else:
            state = {lt.var: ref_val(lt.next) for lt in aig.latches}
    return True, "ok"


# ---------------------------------------------------------------------------
# Certificate checking


def _base_solver(ts: TranSys) -> Solver:
    s = Solver()
    s.new_vars(ts.num_vars)
    for cl in ts.clauses:
        s.add_clause(cl)
    return s


def verify_certificate(ts: TranSys, cert, k_max_guard: int = 64) -> Tuple[bool, str]:
    """Check a Safe certificate against the transition system.

    For an invariant certificate, Inv = certificate clauses ∧ ¬bad must
    satisfy: (1) init ⇒ Inv; (2) Inv ∧ constraints ∧ T ⇒ Inv′ (next-step
    inputs unconstrained); (3) Inv ⇒ ¬bad.  For a k-induction record, the
    base and step cases are re-solved from scratch.
    """
    if isinstance(cert, InvariantCert):
        return _verify_invariant(ts, cert.clauses)
    if isinstance(cert, KInductionCert):
        if not 0 < cert.k <= k_max_guard:
            return False, "implausible induction depth %d" % cert.k
        return _verify_kinduction(ts, cert.k, cert.simple_path)
    return False, "unknown certificate type %r" % (type(cert).__name__,)


def _verify_invariant(ts: TranSys, clauses: Sequence[Clause]) -> Tuple[bool, str]:
    # (1) init ⇒ Inv: init ∧ ¬c satisfiable for no clause c of Inv ∪ {¬bad}
    s1 = _base_solver(ts)
    for l in ts.init_lits:
        s1.add_clause((l,))
    for idx, c in enumerate(list(clauses) + [(lit_neg(ts.bad),)]):
        if s1.solve(assumptions=sorted(negate(c))) is not False:
            if idx < len(clauses):
                return False, "init violates invariant clause %d" % idx
            return False, "initial state satisfies bad"

    # (2) Inv ∧ constraints ∧ T ⇒ Inv′, next-step inputs fresh
    un = Unroller(ts)
    un.add_frame()
    un.add_frame()
    s2 = Solver()
    s2.new_vars(un.num_vars)
    for cl in un.clauses:
        s2.add_clause(cl)
    for cl in un.constraint_units(0):
        s2.add_clause(cl)
    for c in clauses:
        s2.add_clause(tuple(un.lit_at(l, 0) for l in c))
    s2.add_clause((lit_neg(un.bad_at(0)),))
    for idx, c in enumerate(clauses):
        neg = sorted(un.lit_at(lit_neg(l), 1) for l in c)
        if s2.solve(assumptions=neg) is not False:
            return False, "invariant clause %d not inductive" % idx
    if s2.solve(assumptions=[un.bad_at(1)]) is not False:
        return False, "invariant admits a transition into bad"

    # (3) Inv ⇒ ¬bad (holds by construction; checked anyway)
    s3 = _base_solver(ts)
    for c in clauses:
        s3.add_clause(c)
    s3.add_clause((lit_neg(ts.bad),))
    if s3.solve(assumptions=[ts.bad]) is not False:
        return False, "invariant intersects bad"
    return True, "ok"


def _simple_path_clauses(un: Unroller, ts: TranSys, k: int) -> List[Clause]:
    """Pairwise state-difference constraints over frames 0..k."""
    out: List[Clause] = []
    extra = un.num_vars
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            lits = []
            for lv in ts.latch_vars[: ts.num_real_latches]:
                a = un.lit_at(2 * lv, i)
                b = un.lit_at(2 * lv, j)
                d = extra
                extra += 1
                # d → (a xor b)
                out.append(tuple(sorted((2 * d + 1, a, b))))
                out.append(tuple(sorted((2 * d + 1, a ^ 1, b ^ 1))))
                lits.append(2 * d)
            if lits:
                out.append(tuple(sorted(lits)))
    un.num_vars = extra
    return out


def _verify_kinduction(ts: TranSys, k: int, simple_path: bool) -> Tuple[bool, str]:
    # base: no reachable bad at depths 0..k
    un = Unroller(ts)
    for _ in range(k + 1):
        un.add_frame()
    sb = Solver()
    sb.new_vars(un.num_vars)
    for cl in un.clauses:
        sb.add_clause(cl)
    for d in range(k + 1):
        for cl in un.constraint_units(d):
            sb.add_clause(cl)
    for cl in un.init_units():
        sb.add_clause(cl)
    for d in range(k + 1):
        if sb.solve(assumptions=[un.bad_at(d)]) is not False:
            return False, "base case fails at depth %d" % d

    # step: k+1 frames, no init, ¬bad at 0..k-1 entails ¬bad at k
    un2 = Unroller(ts)
    for _ in range(k + 1):
        un2.add_frame()
    ss = Solver()
    extra_clauses: List[Clause] = []
    if simple_path:
        extra_clauses = _simple_path_clauses(un2, ts, k)
    ss.new_vars(un2.num_vars)
    for cl in un2.clauses:
        ss.add_clause(cl)
    for d in range(k + 1):
        for cl in un2.constraint_units(d):
            ss.add_clause(cl)
    for cl in extra_clauses:
        ss.add_clause(cl)
    for d in range(k):
        ss.add_clause((lit_neg(un2.bad_at(d)),))
    if ss.solve(assumptions=[un2.bad_at(k)]) is not False:
        return False, "inductive step fails at k=%d" % k
    return True, "ok"


# ---------------------------------------------------------------------------
# File formats


def _render_bit(b: Optional[int]) -> str:
    return "x" if b is None else str(int(b))


def format_witness(trace: WitnessTrace) -> str:
    """Counterexample text: verdict, property, init bits, one input vector
    per frame, terminated by a lone dot."""
    lines = ["1", "b%d" % trace.bad_index,
             "".join(_render_bit(b) for b in trace.init_state)]
    for frame in trace.input_frames:
        lines.append("".join(_render_bit(b) for b in frame))
    lines.append(".")
    return "\n".join(lines) + "\n"


def _parse_bits(line: str, lineno: int) -> List[Optional[int]]:
    out: List[Optional[int]] = []
    for ch in line:
        if ch == "0":
            out.append(0)
        elif ch == "1":
            out.append(1)
        elif ch in "xX":
            out.append(None)
        else:
            raise FormatError("line %d: bad bit character %r" % (lineno, ch))
    return out


def parse_witness(text: str) -> WitnessTrace:
    lines = text.splitlines()
    body: List[Tuple[int, str]] = []
    for no, raw in enumerate(lines, start=1):
        if raw.lstrip().startswith("#"):
            continue
        body.append((no, raw.strip()))
    while body and body[-1][1] == "":
        body.pop()
    if len(body) < 4:
        raise FormatError("witness too short")
    if body[0][1] != "1":
        raise FormatError("line %d: expected verdict line '1'" % body[0][0])
    if not body[1][1].startswith("b"):
        raise FormatError("line %d: expected property line 'b<i>'" % body[1][0])
    try:
        bad_index = int(body[1][1][1:])
    except ValueError:
        raise FormatError("line %d: bad property index" % body[1][0])
    init_state = _parse_bits(body[2][1], body[2][0])
    if body[-1][1] != ".":
        raise FormatError("witness not terminated by '.'")
    frames = [_parse_bits(t, no) for no, t in body[3:-1]]
    if not frames:
        raise FormatError("witness has no input frames")
    return WitnessTrace(bad_index, init_state, frames)


def format_certificate(cert: InvariantCert, ts: TranSys) -> str:
    """Invariant as DIMACS-style clauses over 1-based latch indices."""
    index = {lv: j + 1 for j, lv in enumerate(ts.latch_vars[: ts.num_real_latches])}
    lines = ["inv %d %d" % (len(cert.clauses), ts.num_real_latches)]
    for c in cert.clauses:
        toks = []
        for l in c:
            v = lit_var(l)
            if v not in index:
                raise ValueError(
                    "invariant references internal signal x%d; the clause "
                    "file format covers latch variables only" % v)
            toks.append(str(-index[v] if l & 1 else index[v]))
        lines.append(" ".join(toks + ["0"]))
    return "\n".join(lines) + "\n"


def parse_certificate(text: str, ts: TranSys) -> InvariantCert:
    lines = [l.strip() for l in text.splitlines()
             if l.strip() and not l.lstrip().startswith("#")]
    if not lines or not lines[0].startswith("inv"):
        raise FormatError("missing 'inv' header")
    parts = lines[0].split()
    if len(parts) != 3:
        raise FormatError("malformed 'inv' header")
    try:
        n_clauses, n_latches = int(parts[1]), int(parts[2])
    except ValueError:
        raise FormatError("malformed 'inv' header")
    if n_latches != ts.num_real_latches:
        raise FormatError("certificate latch count %d, model has %d" % (
            n_latches, ts.num_real_latches))
    if len(lines) - 1 != n_clauses:
        raise FormatError("expected %d clauses, found %d" % (
            n_clauses, len(lines) - 1))
    latches = ts.latch_vars[: ts.num_real_latches]
    clauses: List[Clause] = []
    for no, line in enumerate(lines[1:], start=2):
        toks = line.split()
        if not toks or toks[-1] != "0":
            raise FormatError("line %d: clause not 0-terminated" % no)
        lits = []
        for t in toks[:-1]:
            try:
                n = int(t)
            except ValueError:
                raise FormatError("line %d: bad literal %r" % (no, t))
            if n == 0 or abs(n) > n_latches:
                raise FormatError("line %d: latch index %d out of range" % (no, n))
            lits.append(2 * latches[abs(n) - 1] + (1 if n < 0 else 0))
        clauses.append(tuple(sorted(lits)))
    return InvariantCert(clauses)
