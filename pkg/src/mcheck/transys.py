"""CNF transition-system representation built from an and-inverter graph.

Variable layout: CNF var i corresponds to AIG node i (var 0 is the reserved
constant, asserted true by a unit clause), followed by one primed var per
latch and any auxiliary definition vars.  The effective bad literal folds
the invariant constraints in, so a "bad" state always satisfies the
constraints at the step where the bad is observed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

from .aiger import Aig, coi as aig_coi, eval_nodes
from .logic import TRUE_LIT, FALSE_LIT, Clause, Lit, lit_neg, lit_var, mklit


def ref_to_lit(ref: int) -> Lit:
    """AIGER node ref to CNF literal; constant refs flip onto var 0."""
    return ref ^ 1 if ref < 2 else ref


@dataclass
class TranSys:
    num_vars: int
    latch_vars: List[int]
    input_vars: List[int]
    next_map: Dict[int, int]
    init_lits: Tuple[Lit, ...]  # cube over latches; uninitialized bits absent
    bad: Lit  # effective bad: raw bad AND all active constraints
    bad_raw: Lit
    constraints: List[Lit]
    clauses: List[Clause]
    dep: Dict[int, Tuple[int, ...]]
    init_value: Dict[int, Optional[int]]  # 3-valued node valuation at init
    num_real_latches: int = 0
    source: Optional[Aig] = None
    bad_index: int = 0

    def __post_init__(self) -> None:
        if self.num_real_latches == 0:
            self.num_real_latches = len(self.latch_vars)
        self.prev_map = {p: v for v, p in self.next_map.items()}

    def prime(self, lit: Lit) -> Lit:
        return (self.next_map[lit >> 1] << 1) | (lit & 1)

    def unprime(self, lit: Lit) -> Lit:
        return (self.prev_map[lit >> 1] << 1) | (lit & 1)

    def prime_cube(self, lits: Sequence[Lit]) -> Tuple[Lit, ...]:
        return tuple(sorted(self.prime(l) for l in lits))

    def coi_vars(self, roots: Iterable[int]) -> Set[int]:
        """Transitive support closure of `roots` in the dependency graph."""
        stack = list(roots)
        seen: Set[int] = set()
        dep = self.dep
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            for w in dep.get(v, ()):
                if w not in seen:
                    stack.append(w)
        return seen

    def cube_intersects_init(self, cube: Sequence[Lit]) -> bool:
        """Syntactic check; True is conservative (may over-report overlap)."""
        for l in cube:
            val = self.init_value.get(l >> 1)
            if val is not None and val == (l & 1):
                return False  # literal false at init
        return True

    def dump_dimacs(self) -> str:
        lines = ["c transition relation (vars shifted by +1)"]
        lines.append("c latches: " + " ".join(str(v) for v in self.latch_vars))
        lines.append("c inputs: " + " ".join(str(v) for v in self.input_vars))
        lines.append("c primed: " + " ".join(
            str(self.next_map[v]) for v in self.latch_vars))
        lines.append("c bad: %d constraints: %s" % (
            self.bad, " ".join(str(c) for c in self.constraints)))
        lines.append("p cnf %d %d" % (self.num_vars, len(self.clauses)))
        for cl in self.clauses:
            lines.append(" ".join(
                str(-(l >> 1) - 1 if l & 1 else (l >> 1) + 1) for l in cl) + " 0")
        return "\n".join(lines) + "\n"


def _init_valuation(aig: Aig) -> Dict[int, Optional[int]]:
    """3-valued node values in the initial state (inputs unknown)."""
    vals: Dict[int, Optional[int]] = {0: 0}
    for v in aig.inputs:
        vals[v] = None
    for lt in aig.latches:
        vals[lt.var] = lt.init

    def ref_val(ref: int) -> Optional[int]:
        v = vals.get(ref >> 1)
        return None if v is None else v ^ (ref & 1)

    for g in sorted(aig.ands, key=lambda g: g.var):
        a, b = ref_val(g.rhs0), ref_val(g.rhs1)
        if a == 0 or b == 0:
            vals[g.var] = 0
        elif a == 1 and b == 1:
            vals[g.var] = 1
        else:
            vals[g.var] = None
    return vals


def encode(
    aig: Aig,
    bad_index: int = 0,
    active_constraints: Optional[Sequence[int]] = None,
) -> TranSys:
    """Tseitin-encode the transition relation for one bad property.

    `active_constraints` selects a subset of constraint indices (all by
    default); the localization-abstraction loop re-encodes with fewer.
    """
    if not aig.bads:
        raise ValueError("model has no bad properties")
    if not 0 <= bad_index < len(aig.bads):
        raise ValueError("bad index %d out of range" % bad_index)
    if active_constraints is None:
        active_constraints = range(len(aig.constraints))
    cst_refs = [aig.constraints[i] for i in active_constraints]

    clauses: List[Clause] = [(TRUE_LIT,)]
    dep: Dict[int, Tuple[int, ...]] = {}

    for g in sorted(aig.ands, key=lambda g: g.var):
        go = mklit(g.var)
        a = ref_to_lit(g.rhs0)
        b = ref_to_lit(g.rhs1)
        clauses.append((lit_neg(go), a) if lit_neg(go) < a else (a, lit_neg(go)))
        clauses.append((lit_neg(go), b) if lit_neg(go) < b else (b, lit_neg(go)))
        clauses.append(tuple(sorted((go, lit_neg(a), lit_neg(b)))))
        dep[g.var] = (g.rhs0 >> 1, g.rhs1 >> 1)

    num_vars = aig.max_var + 1
    latch_vars = [lt.var for lt in aig.latches]
    next_map: Dict[int, int] = {}
    init_lits: List[Lit] = []
    for lt in aig.latches:
        p = num_vars
        num_vars += 1
        next_map[lt.var] = p
        n = ref_to_lit(lt.next)
        clauses.append(tuple(sorted((mklit(p), lit_neg(n)))))
        clauses.append(tuple(sorted((mklit(p, True), n))))
        dep[p] = (n >> 1,)
        if lt.init is not None:
            init_lits.append(mklit(lt.var, lt.init == 0))

    bad_raw = ref_to_lit(aig.bads[bad_index])
    cst_lits = [ref_to_lit(r) for r in cst_refs]
    if cst_lits:
        be = num_vars
        num_vars += 1
        conj = [bad_raw] + cst_lits
        for l in conj:
            clauses.append(tuple(sorted((mklit(be, True), l))))
        clauses.append(tuple(sorted([mklit(be)] + [lit_neg(l) for l in conj])))
        dep[be] = tuple(sorted({l >> 1 for l in conj}))
        bad = mklit(be)
    else:
        bad = bad_raw

    ts = TranSys(
        num_vars=num_vars,
        latch_vars=latch_vars,
        input_vars=list(aig.inputs),
        next_map=next_map,
        init_lits=tuple(sorted(init_lits)),
        bad=bad,
        bad_raw=bad_raw,
        constraints=cst_lits,
        clauses=[c for c in clauses if c],
        dep=dep,
        init_value=_init_valuation(aig),
        source=aig,
        bad_index=bad_index,
    )
    return ts


# ---------------------------------------------------------------------------
# CNF simplification


def simplify_cnf(ts: TranSys, probe: bool = True, probe_limit: int = 2000) -> TranSys:
    """Unit propagation, satisfied-clause removal and limited failed-literal
    probing.  Latch/input/primed/bad/constraint vars stay frozen."""
    frozen = set(ts.latch_vars) | set(ts.input_vars) | set(ts.next_map.values())
    frozen.add(ts.bad >> 1)
    frozen.add(ts.bad_raw >> 1)
    frozen.update(l >> 1 for l in ts.constraints)
    frozen.add(0)

    clauses = [list(c) for c in ts.clauses]
    value: Dict[int, int] = {}

    def assign(lit: Lit) -> bool:
        v, pol = lit >> 1, 1 - (lit & 1)
        if v in value:
            return value[v] == pol
        value[v] = pol
        return True

    changed = True
    while changed:
        changed = False
        out = []
        for cl in clauses:
            new = []
            sat = False
            for l in cl:
                v = value.get(l >> 1)
                if v is None:
                    new.append(l)
                elif v == 1 - (l & 1):
                    sat = True
                    break
            if sat:
                changed = True
                continue
            if not new:
                # transition relation is never unsatisfiable outright
                raise AssertionError("contradiction during CNF simplification")
            if len(new) == 1:
                if not assign(new[0]):
                    raise AssertionError("contradiction during CNF simplification")
                changed = True
            out.append(new)
        clauses = out

    if probe and ts.num_vars <= probe_limit:
        clauses = _probe(clauses, ts.num_vars, frozen, value)

    # re-emit: units for fixed vars, then remaining clauses (deduplicated)
    final: List[Clause] = []
    seen: Set[Tuple[int, ...]] = set()
    for v in sorted(value):
        final.append((mklit(v, value[v] == 0),))
    for cl in clauses:
        t = tuple(sorted(set(cl)))
        if len(t) == 1 and (t[0] >> 1) in value:
            continue
        if t not in seen:
            seen.add(t)
            final.append(t)

    return TranSys(
        num_vars=ts.num_vars,
        latch_vars=list(ts.latch_vars),
        input_vars=list(ts.input_vars),
        next_map=dict(ts.next_map),
        init_lits=ts.init_lits,
        bad=ts.bad,
        bad_raw=ts.bad_raw,
        constraints=list(ts.constraints),
        clauses=final,
        dep=dict(ts.dep),
        init_value=dict(ts.init_value),
        num_real_latches=ts.num_real_latches,
        source=ts.source,
        bad_index=ts.bad_index,
    )


def _probe(clauses, num_vars, frozen, fixed) -> List[List[int]]:
    """Failed-literal probing by plain BCP; derives units on non-frozen vars."""
    watch: Dict[int, List[int]] = {}
    for ci, cl in enumerate(clauses):
        for l in cl:
            watch.setdefault(l >> 1, []).append(ci)

    def bcp(assume: Lit) -> Optional[bool]:
        vals = {v: p for v, p in fixed.items()}
        vals[assume >> 1] = 1 - (assume & 1)
        queue = [assume >> 1]
        touched = set(queue)
        while queue:
            v = queue.pop()
            for ci in watch.get(v, ()):
                unassigned = None
                sat = False
                count = 0
                for l in clauses[ci]:
                    pv = vals.get(l >> 1)
                    if pv is None:
                        unassigned = l
                        count += 1
                    elif pv == 1 - (l & 1):
                        sat = True
                        break
                if sat:
                    continue
                if count == 0:
                    return False  # conflict
                if count == 1 and unassigned is not None:
                    vals[unassigned >> 1] = 1 - (unassigned & 1)
                    queue.append(unassigned >> 1)
        return True

    for v in range(1, num_vars):
        if v in frozen or v in fixed:
            continue
        if v not in watch:
            continue
        for pol in (0, 1):
            lit = mklit(v, pol == 1)
            if bcp(lit) is False:
                fixed[v] = pol  # lit failed, so its negation holds
                break
    return clauses


# ---------------------------------------------------------------------------
# Unrolling


class Unroller:
    """Timed copies of the transition relation sharing latch boundaries.

    Frame k's primed latch vars double as frame k+1's current latch vars.
    Solver var 0 stays the shared constant.
    """

    def __init__(self, ts: TranSys):
        self.ts = ts
        self.frame_maps: List[Dict[int, int]] = []
        self.num_vars = 1
        self.clauses: List[Clause] = []

    @property
    def depth(self) -> int:
        return len(self.frame_maps) - 1

    def add_frame(self) -> List[Clause]:
        """Append one frame; returns the newly created clauses."""
        ts = self.ts
        m: Dict[int, int] = {0: 0}
        if self.frame_maps:
            prev = self.frame_maps[-1]
            for lv in ts.latch_vars:
                m[lv] = prev[ts.next_map[lv]]
        for v in range(1, ts.num_vars):
            if v not in m:
                m[v] = self.num_vars
                self.num_vars += 1
        new: List[Clause] = []
        for cl in ts.clauses:
            new.append(tuple(sorted((m[l >> 1] << 1) | (l & 1) for l in cl)))
        self.frame_maps.append(m)
        self.clauses.extend(new)
        return new

    def lit_at(self, lit: Lit, frame: int) -> Lit:
        m = self.frame_maps[frame]
        return (m[lit >> 1] << 1) | (lit & 1)

    def init_units(self) -> List[Clause]:
        return [(self.lit_at(l, 0),) for l in self.ts.init_lits]

    def constraint_units(self, frame: int) -> List[Clause]:
        return [(self.lit_at(l, frame),) for l in self.ts.constraints]

    def bad_at(self, frame: int) -> Lit:
        return self.lit_at(self.ts.bad, frame)


def unroll(ts: TranSys, depth: int, include_init: bool = True) -> Unroller:
    """Build depth+1 timed frames; constraints asserted at every frame."""
    if depth < 0:
        raise ValueError("depth must be >= 0")
    un = Unroller(ts)
    for k in range(depth + 1):
        un.add_frame()
        un.clauses.extend(un.constraint_units(k))
    if include_init:
        un.clauses.extend(un.init_units())
    return un


# ---------------------------------------------------------------------------
# Internal-signal extension


def default_signal_policy(aig: Aig, cap_fraction: float = 0.10, min_fanout: int = 3):
    """Gates with fanout >= 3 and an input-free cone, capped at 10% of gates."""
    fanout: Dict[int, int] = {}
    for g in aig.ands:
        fanout[g.rhs0 >> 1] = fanout.get(g.rhs0 >> 1, 0) + 1
        fanout[g.rhs1 >> 1] = fanout.get(g.rhs1 >> 1, 0) + 1
    for lt in aig.latches:
        fanout[lt.next >> 1] = fanout.get(lt.next >> 1, 0) + 1
    inputs = set(aig.inputs)
    cap = max(1, int(cap_fraction * len(aig.ands)))
    chosen = []
    for g in sorted(aig.ands, key=lambda g: -fanout.get(g.var, 0)):
        if fanout.get(g.var, 0) < min_fanout:
            continue
        cone = aig_coi(aig, [2 * g.var], through_latches=False)
        if cone & inputs:
            continue
        chosen.append(g.var)
        if len(chosen) >= cap:
            break
    return chosen


def extend_with_internal_signals(
    ts: TranSys,
    aig: Aig,
    policy: Optional[Callable[[Aig], Sequence[int]]] = None,
) -> TranSys:
    """Turn selected internal gates into pseudo-latches.

    Each selected gate keeps its current-step var and gains a primed var
    constrained to the gate's next-step function (the gate cone rebuilt over
    primed latch vars).  Reachability verdicts are unchanged; the state
    vocabulary for lemma learning grows.
    """
    signals = list((policy or default_signal_policy)(aig))
    if not signals:
        return ts

    num_vars = ts.num_vars
    clauses = list(ts.clauses)
    dep = dict(ts.dep)
    next_map = dict(ts.next_map)
    latch_vars = list(ts.latch_vars)
    primed_of: Dict[int, int] = {0: 0}
    for lv in ts.latch_vars[: ts.num_real_latches]:
        primed_of[lv] = ts.next_map[lv]

    def primed_copy(var: int) -> int:
        nonlocal num_vars
        if var in primed_of:
            return primed_of[var]
        g = aig.gate(var)
        if g is None:
            raise ValueError("gate cone contains input %d; bad policy" % var)
        p = num_vars
        num_vars += 1
        primed_of[var] = p
        a = _shift(ref_to_lit(g.rhs0), primed_copy)
        b = _shift(ref_to_lit(g.rhs1), primed_copy)
        go = mklit(p)
        clauses.append(tuple(sorted((lit_neg(go), a))))
        clauses.append(tuple(sorted((lit_neg(go), b))))
        clauses.append(tuple(sorted((go, lit_neg(a), lit_neg(b)))))
        dep[p] = tuple(sorted({a >> 1, b >> 1}))
        return p

    def _shift(lit: Lit, f) -> Lit:
        v = lit >> 1
        if v == 0:
            return lit
        return (f(v) << 1) | (lit & 1)

    for s in signals:
        if s in next_map:
            continue
        next_map[s] = primed_copy(s)
        latch_vars.append(s)

    return TranSys(
        num_vars=num_vars,
        latch_vars=latch_vars,
        input_vars=list(ts.input_vars),
        next_map=next_map,
        init_lits=ts.init_lits,
        bad=ts.bad,
        bad_raw=ts.bad_raw,
        constraints=list(ts.constraints),
        clauses=clauses,
        dep=dep,
        init_value=dict(ts.init_value),
        num_real_latches=ts.num_real_latches,
        source=ts.source,
        bad_index=ts.bad_index,
    )
