"""IC3 engine: delta-encoded frames, proof-obligation queue, predecessor
lifting, MIC generalization (standard / CTG / extended-CTG) with dynamic
strategy escalation, forward propagation, and constraint localization
abstraction.

One-step queries run on a single incremental solver.  A query at frame i
takes the shape F_{i-1} ∧ constraints ∧ ¬c ∧ T ∧ c′: the blocking clause
¬c enters as a temporary clause, the primed cube as assumptions, and the
frames activate through per-level activation literals.  Decisions are
restricted to the cone of influence of the query (closed over lemma
co-occurrence so a partial model always extends to a full one).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Set, Tuple

from .aiger import WitnessTrace, eval_nodes
from .logic import Cube, canonicalize, lit_neg, mklit, negate, subsumes
from .satcore import Solver, SolverStats
from .transys import TranSys, encode, extend_with_internal_signals
from .verdicts import InvariantCert, Verdict, safe, unknown, unsafe

STANDARD = "standard"
CTG = "ctg"
EXCTG = "exctg"
DYNAMIC = "dynamic"

_ORDER = {STANDARD: 0, CTG: 1, EXCTG: 2}


@dataclass
class Ic3Options:
    strategy: str = DYNAMIC  # standard | ctg | exctg | dynamic
    inn: bool = False
    abs_cst: bool = False
    seed: int = 0
    max_frames: int = 20000
    use_domain: bool = True
    verify_mic: bool = False
    debug_check_domain: bool = False
    debug_check_frames: bool = False
    dynamic_t1: int = 1
    dynamic_t2: int = 3
    ctg_depth: int = 1
    ctg_limit: int = 3
    exctg_budget: int = 200


@dataclass
class MicRecord:
    strategy: str
    size_in: int
    size_out: int
    level: int
    verified: Optional[bool] = None


@dataclass
class Ic3Stats:
    frames: int = 0
    lemmas: int = 0
    solver_calls: int = 0
    block_attempts: int = 0
    obligations: int = 0
    ctg_blocks: int = 0
    abstraction_refinements: int = 0
    mic_calls: Dict[str, int] = field(default_factory=dict)
    mic_records: List[MicRecord] = field(default_factory=list)
    solver: Optional[SolverStats] = None


def select_strategy(failed_attempts: int, options: Ic3Options) -> str:
    """Escalation schedule for one obligation cube (monotone in failures)."""
    if options.strategy != DYNAMIC:
        return options.strategy
    if failed_attempts < options.dynamic_t1:
        return STANDARD
    if failed_attempts < options.dynamic_t2:
        return CTG
    return EXCTG


class _Cancelled(Exception):
    pass


class _Obligation:
    __slots__ = ("level", "cube", "depth", "inputs", "succ", "state_bits")

    def __init__(self, level, cube, depth, inputs, succ, state_bits=None):
        self.level = level
        self.cube = cube
        self.depth = depth
        self.inputs = inputs  # input bit vector driving the step FROM this state
        self.succ = succ
        self.state_bits = state_bits  # full latch valuation (cex head only)


class IC3:
    """One IC3 run over a fixed constraint set; see `check` for the CEGAR
    wrapper that re-runs with constraints localized."""

    def __init__(
        self,
        ts: TranSys,
        options: Optional[Ic3Options] = None,
        cancel: Optional[Callable[[], bool]] = None,
    ):
        self.options = options or Ic3Options()
        if self.options.inn and ts.source is not None:
            ts = extend_with_internal_signals(ts, ts.source)
        self.ts = ts
        self.cancel = cancel
        self.stats = Ic3Stats(mic_calls={STANDARD: 0, CTG: 0, EXCTG: 0})

        self.solver = Solver(debug_check_domain=self.options.debug_check_domain)
        self.solver.new_vars(ts.num_vars)
        for cl in ts.clauses:
            self.solver.add_clause(cl)
        for l in ts.constraints:
            self.solver.add_clause((l,))

        self.lift_solver = Solver()
        self.lift_solver.new_vars(ts.num_vars)
        for cl in ts.clauses:
            self.lift_solver.add_clause(cl)

        # frame 0 = init, activated like a lemma set
        self.acts: List[int] = [self.solver.new_var()]
        for l in ts.init_lits:
            self.solver.add_clause((l, 2 * self.acts[0] + 1))
        self.act_inf = self.solver.new_var()
        self.frames: List[Set[Cube]] = [set()]
        self.frames_inf: Set[Cube] = set()
        self.k = 0

        # lemma co-occurrence between state vars, for domain closure
        self._adj: Dict[int, Set[int]] = {}
        self._state_vars = sorted(ts.latch_vars)
        self._fail_counts: Dict[Cube, int] = {}
        self._strategy_floor: Dict[Cube, int] = {}

    # -- plumbing -----------------------------------------------------------

    def _check_cancel(self) -> None:
        if self.cancel is not None and self.cancel():
            raise _Cancelled()

    def _new_frame(self) -> None:
        self.acts.append(self.solver.new_var())
        self.frames.append(set())
        self.k += 1
        self.stats.frames = self.k

    def _frame_assumptions(self, i: int) -> List[int]:
        """Activation literals selecting F_i (all levels >= i, plus F_inf)."""
        out = [2 * self.acts[j] for j in range(i, self.k + 1)]
        out.append(2 * self.act_inf)
        return out

    def _domain(self, seeds) -> Set[int]:
        """COI closure over the dependency graph and lemma co-occurrence."""
        dep = self.ts.dep
        adj = self._adj
        stack = list(seeds)
        seen: Set[int] = set()
        while stack:
            v = stack.pop()
            if v in seen:
                continue
            seen.add(v)
            for w in dep.get(v, ()):
                if w not in seen:
                    stack.append(w)
            for w in adj.get(v, ()):
                if w not in seen:
                    stack.append(w)
        return seen

    def _query_domain(self, cube: Cube) -> Optional[Set[int]]:
        if not self.options.use_domain:
            return None
        seeds = [self.ts.bad >> 1]
        seeds.extend(l >> 1 for l in self.ts.constraints)
        for l in cube:
            seeds.append(l >> 1)
            seeds.append(self.ts.next_map[l >> 1])
        return self._domain(seeds)

    def _model_state_cube(self) -> Cube:
        s = self.solver
        out = []
        for v in self._state_vars:
            val = s.model_value(v)
            if val is not None:
                out.append(2 * v + (0 if val else 1))
        return tuple(out)

    def _model_inputs(self):
        s = self.solver
        bits = []
        lits = []
        for v in self.ts.input_vars:
            val = s.model_value(v)
            bits.append(0 if val is None else int(val))
            lits.append(2 * v + (0 if val else 1))
        return bits, lits

    def _model_latch_bits(self) -> List[Optional[int]]:
        s = self.solver
        out = []
        for lv in self.ts.latch_vars[: self.ts.num_real_latches]:
            val = s.model_value(lv)
            out.append(None if val is None else int(val))
        return out

    # -- queries ------------------------------------------------------------

    def solve_relative(self, cube: Cube, level: int, block_self: bool = True):
        """F_{level-1} ∧ constraints ∧ [¬cube] ∧ T ∧ cube′.

        Returns (False, kept_cube) on unsat (cube literals whose primed
        assumption made it into the core) or (True, None) on sat; the model
        stays readable on the main solver.
        """
        assert level >= 1
        self.stats.solver_calls += 1
        s = self.solver
        if block_self:
            s.add_clause(negate(cube), temporary=True)
        primed = sorted(self.ts.prime(l) for l in cube)
        assume = self._frame_assumptions(level - 1) + primed
        res = s.solve(assume, domain=self._query_domain(cube),
                      cancel_check=self.cancel)
        if res is None:
            raise _Cancelled()
        if res:
            return True, None
        core = set(s.unsat_core())
        kept = tuple(l for l in cube if self.ts.prime(l) in core)
        return False, (kept if kept else cube)

    def lift_predecessor(self, state_cube: Cube, input_lits: Sequence[int],
                         target_primed: Sequence[int]) -> Cube:
        """Shrink a predecessor: keep state literals forcing constraints and
        the target cube after one step, for every completion and any input
        outside the kept core."""
        s = self.lift_solver
        tc = [lit_neg(l) for l in self.ts.constraints]
        tc.extend(lit_neg(l) for l in target_primed)
        s.add_clause(tc, temporary=True)
        res = s.solve(assumptions=list(input_lits) + list(state_cube))
        assert res is False, "lifting query must be unsat"
        core = set(s.unsat_core())
        kept = tuple(l for l in state_cube if l in core)
        return kept if kept else state_cube

    def _find_init_state(self, cube: Cube) -> Optional[List[int]]:
        """Concrete initial state inside `cube`, or None.

        The syntactic overlap check is conservative once pseudo-latches from
        the internal-signal extension show up in cubes, so candidate
        counterexample heads are confirmed by a solver query (init ∧ cube
        under the gate definitions) that also yields the full latch
        valuation for the witness."""
        s = self.lift_solver
        assume = sorted(set(cube) | set(self.ts.init_lits))
        if s.solve(assumptions=assume) is not True:
            return None
        bits = []
        for lv in self.ts.latch_vars[: self.ts.num_real_latches]:
            val = s.model_value(lv, default=False)
            bits.append(int(val))
        return bits

    def _repair_init(self, kept: Cube, full: Cube) -> Cube:
        """Core shrinking may re-introduce an init overlap; restore one
        literal of the original cube that is false in every initial state."""
        if not kept or self.ts.cube_intersects_init(kept):
            if kept and self._find_init_state(kept) is None:
                return kept  # overlap was only syntactic
            iv = self.ts.init_value
            for l in full:
                if iv.get(l >> 1) == (l & 1):  # literal false at init
                    return tuple(sorted(set(kept) | {l}))
            return full  # caller guarantees `full` excludes init semantically
        return kept

    def _is_blocked(self, cube: Cube, level: int) -> bool:
        for d in self.frames_inf:
            if subsumes(d, cube):
                return True
        for j in range(level, self.k + 1):
            for d in self.frames[j]:
                if subsumes(d, cube):
                    return True
        return False

    def add_lemma(self, cube: Cube, level: int) -> None:
        level = min(level, self.k)
        for j in range(1, level + 1):
            self.frames[j] = {d for d in self.frames[j] if not subsumes(cube, d)}
        self.frames[level].add(cube)
        self.solver.add_clause(negate(cube) + (2 * self.acts[level] + 1,))
        self.stats.lemmas += 1
        vars_ = [l >> 1 for l in cube]
        for v in vars_:
            self._adj.setdefault(v, set()).update(w for w in vars_ if w != v)

    def _add_inf_lemma(self, cube: Cube) -> None:
        self.frames_inf.add(cube)
        self.solver.add_clause(negate(cube) + (2 * self.act_inf + 1,))

    # -- generalization -----------------------------------------------------

    def mic(self, cube: Cube, level: int, strategy: str, rec_depth: int = 1,
            budget: Optional[List[int]] = None) -> Cube:
        """Minimal-ish inductive sub-cube; precondition: `cube` is relatively
        inductive at `level` and excludes init."""
        top = rec_depth == 1
        if top:
            self.stats.mic_calls[strategy] = self.stats.mic_calls.get(strategy, 0) + 1
            if budget is None:
                budget = [self.options.exctg_budget if strategy == EXCTG else 0]
        size_in = len(cube)
        bucket = self.solver.vsids.bucket_of
        order = sorted(cube, key=lambda l: (bucket(l >> 1), l >> 1))
        current = set(cube)
        for lit in order:
            if lit not in current or len(current) == 1:
                continue
            cand = tuple(l for l in sorted(current) if l != lit)
            res = self._ctg_down(cand, level, rec_depth, strategy, budget)
            if res is not None:
                current = set(res)
        result = tuple(sorted(current))
        if top:
            rec = MicRecord(strategy, size_in, len(result), level)
            if self.options.verify_mic:
                rec.verified = self._verify_relative_inductive(result, level)
            self.stats.mic_records.append(rec)
        return result

    def _ctg_down(self, cube: Cube, level: int, rec_depth: int,
                  strategy: str, budget: List[int]) -> Optional[Cube]:
        """The `down` loop: recover relative induction of a shrunk candidate,
        blocking or joining counterexamples-to-generalization."""
        opts = self.options
        ctgs = 0
        while True:
            if not cube or self.ts.cube_intersects_init(cube):
                return None
            unsat_or_sat, payload = self.solve_relative(cube, level)
            if unsat_or_sat is False:
                return self._repair_init(payload, cube)

            state = self._model_state_cube()
            allow_ctg = (
                strategy in (CTG, EXCTG)
                and rec_depth <= opts.ctg_depth
                and ctgs < opts.ctg_limit
                and level > 1
            )
            if allow_ctg:
                _, input_lits = self._model_inputs()
                z = self.lift_predecessor(
                    state, input_lits, [self.ts.prime(l) for l in cube])
                if not self.ts.cube_intersects_init(z):
                    r, kept = self.solve_relative(z, level - 1)
                    if r is False:
                        # the CTG is itself blockable: push it as high as it
                        # goes, generalize, and retry the candidate
                        ctgs += 1
                        self.stats.ctg_blocks += 1
                        zk = self._repair_init(kept, z)
                        j = level - 1
                        while j < self.k:
                            r2, kept2 = self.solve_relative(zk, j + 1)
                            if r2 is not False:
                                break
                            zk = self._repair_init(kept2, zk)
                            j += 1
                        g = self.mic(zk, j, strategy, rec_depth + 1, budget)
                        self.add_lemma(g, j)
                        continue
                    if strategy == EXCTG and budget[0] > 0:
                        if self._block_recursive(z, level - 1, budget):
                            ctgs += 1
                            continue
            # join: intersect with the model state and retry
            ctgs = 0
            model = set(state)
            joined = tuple(l for l in cube if l in model)
            if len(joined) == len(cube):
                return None  # model missed no literal we track; give up
            cube = joined

    def _block_recursive(self, cube: Cube, level: int, budget: List[int]) -> bool:
        """Extended-CTG: run a budgeted mini obligation loop to block `cube`
        at `level`, descending into its predecessors."""
        q: List[Tuple[int, Cube]] = [(level, cube)]
        while q:
            if budget[0] <= 0:
                return False
            lvl, c = heapq.heappop(q)
            if lvl <= 0:
                return False
            if self._is_blocked(c, lvl):
                continue
            budget[0] -= 1
            r, payload = self.solve_relative(c, lvl)
            if r is False:
                g = self.mic(self._repair_init(payload, c), lvl, STANDARD,
                             rec_depth=self.options.ctg_depth + 1, budget=budget)
                self.add_lemma(g, lvl)
            else:
                state = self._model_state_cube()
                _, input_lits = self._model_inputs()
                pred = self.lift_predecessor(
                    state, input_lits, [self.ts.prime(l) for l in c])
                if self.ts.cube_intersects_init(pred):
                    return False
                heapq.heappush(q, (lvl - 1, pred))
                heapq.heappush(q, (lvl, c))
        return True

    def _verify_relative_inductive(self, cube: Cube, level: int) -> bool:
        """Fresh-solver re-check that `cube` is relatively inductive and
        excludes init (used by tests and the verify_mic option)."""
        if not cube or self.ts.cube_intersects_init(cube):
            return False
        s = Solver()
        s.new_vars(self.ts.num_vars)
        for cl in self.ts.clauses:
            s.add_clause(cl)
        for l in self.ts.constraints:
            s.add_clause((l,))
        if level - 1 == 0:
            for l in self.ts.init_lits:
                s.add_clause((l,))
        else:
            for d in self.frames_inf:
                s.add_clause(negate(d))
            for j in range(level - 1, self.k + 1):
                for d in self.frames[j]:
                    s.add_clause(negate(d))
        s.add_clause(negate(cube))
        return s.solve(sorted(self.ts.prime(l) for l in cube)) is False

    # -- main loop ----------------------------------------------------------

    def get_bad(self) -> Optional[_Obligation]:
        """Solve F_k ∧ constraints ∧ bad; on sat, return a lifted obligation."""
        self.stats.solver_calls += 1
        s = self.solver
        assume = self._frame_assumptions(self.k) + [self.ts.bad]
        domain = self._domain([self.ts.bad >> 1]) if self.options.use_domain else None
        res = s.solve(assume, domain=domain, cancel_check=self.cancel)
        if res is None:
            raise _Cancelled()
        if not res:
            return None
        state = self._model_state_cube()
        bits, input_lits = self._model_inputs()
        cube = self.lift_predecessor(state, input_lits, [self.ts.bad])
        return _Obligation(self.k, cube, 1, bits, None)

    def rec_block(self, root: _Obligation) -> Optional[WitnessTrace]:
        """Block the obligation or return a counterexample trace."""
        if self.ts.cube_intersects_init(root.cube):
            bits = self._find_init_state(root.cube)
            if bits is not None:
                root.state_bits = bits
                return self._trace(root)
        q: List[Tuple[int, Cube, int, _Obligation]] = []
        counter = 0  # heap tie-breaker; obligations are not comparable
        heapq.heappush(q, (root.level, root.cube, counter, root))
        while q:
            self._check_cancel()
            level, cube, _, ob = heapq.heappop(q)
            self.stats.obligations += 1
            if level == 0:
                return self._trace(ob)
            if self._is_blocked(cube, level):
                if level < self.k:
                    counter += 1
                    heapq.heappush(q, (level + 1, cube, counter, ob))
                continue
            self.stats.block_attempts += 1
            r, payload = self.solve_relative(cube, level)
            if r is False:
                kept = self._repair_init(payload, cube)
                strat = self._strategy_for(cube)
                g = self.mic(kept, level, strat)
                j = level
                while j < self.k:
                    r2, _ = self.solve_relative(g, j + 1)
                    if r2 is not False:
                        break
                    j += 1
                self.add_lemma(g, j)
                if j < self.k:
                    counter += 1
                    heapq.heappush(q, (j + 1, cube, counter, ob))
            else:
                self._fail_counts[cube] = self._fail_counts.get(cube, 0) + 1
                state = self._model_state_cube()
                bits, input_lits = self._model_inputs()
                pred = self.lift_predecessor(
                    state, input_lits, [self.ts.prime(l) for l in cube])
                pred_ob = _Obligation(level - 1, pred, ob.depth + 1, bits, ob)
                if self.ts.cube_intersects_init(pred):
                    init_bits = self._find_init_state(pred)
                    if init_bits is not None:
                        pred_ob.state_bits = init_bits
                        return self._trace(pred_ob)
                counter += 1
                heapq.heappush(q, (level - 1, pred, counter, pred_ob))
                counter += 1
                heapq.heappush(q, (level, cube, counter, ob))
        return None

    def _strategy_for(self, cube: Cube) -> str:
        """Per-cube dynamic escalation; never de-escalates for a cube."""
        strat = select_strategy(self._fail_counts.get(cube, 0), self.options)
        floor = self._strategy_floor.get(cube, 0)
        if _ORDER[strat] < floor:
            strat = [STANDARD, CTG, EXCTG][floor]
        else:
            self._strategy_floor[cube] = _ORDER[strat]
        return strat

    def _trace(self, head: _Obligation) -> WitnessTrace:
        """Assemble the witness from an obligation chain ending at bad."""
        ts = self.ts
        init_bits: List[Optional[int]] = []
        model_bits = head.state_bits or []
        cube_val = {l >> 1: 1 - (l & 1) for l in head.cube}
        for j, lv in enumerate(ts.latch_vars[: ts.num_real_latches]):
            if lv in cube_val:
                init_bits.append(cube_val[lv])
            elif ts.init_value.get(lv) is not None:
                init_bits.append(ts.init_value[lv])
            elif j < len(model_bits) and model_bits[j] is not None:
                init_bits.append(model_bits[j])
            else:
                init_bits.append(0)
        frames: List[List[Optional[int]]] = []
        ob: Optional[_Obligation] = head
        while ob is not None:
            frames.append(list(ob.inputs))
            ob = ob.succ
        return WitnessTrace(ts.bad_index, init_bits, frames)

    def propagate(self) -> Optional[int]:
        """Push lemmas forward; returns the fixpoint level if some frame's
        delta empties out, else None."""
        for i in range(1, self.k):
            for cube in sorted(self.frames[i]):
                if cube not in self.frames[i]:
                    continue  # dropped by subsumption during this pass
                self._check_cancel()
                r, kept = self.solve_relative(cube, i + 1, block_self=False)
                if r is False:
                    self.frames[i].discard(cube)
                    self.add_lemma(self._repair_init(kept, cube), i + 1)
        for i in range(1, self.k):
            if not self.frames[i]:
                return i
        return None

    def _invariant(self, fixpoint: int) -> InvariantCert:
        clauses = [negate(d) for d in sorted(self.frames_inf)]
        for j in range(fixpoint + 1, self.k + 1):
            clauses.extend(negate(d) for d in sorted(self.frames[j]))
        return InvariantCert(clauses)

    def check(self) -> Verdict:
        try:
            self._new_frame()  # k = 1
            # 0-step case: init ∧ constraints ∧ bad
            self.stats.solver_calls += 1
            res = self.solver.solve(
                self._frame_assumptions(0) + [self.ts.bad],
                cancel_check=self.cancel)
            if res is None:
                raise _Cancelled()
            if res:
                bits, _ = self._model_inputs()
                head = _Obligation(0, (), 1, bits, None,
                                   state_bits=self._model_latch_bits())
                return unsafe(self._trace(head), stats=self._final_stats())

            while True:
                self._check_cancel()
                ob = self.get_bad()
                if ob is not None:
                    trace = self.rec_block(ob)
                    if self.options.debug_check_frames:
                        self.debug_check_frames()
                    if trace is not None:
                        return unsafe(trace, stats=self._final_stats())
                else:
                    self._new_frame()
                    fixpoint = self.propagate()
                    if fixpoint is not None:
                        return safe(self._invariant(fixpoint),
                                    stats=self._final_stats())
                    if self.k > self.options.max_frames:
                        return unknown("frame limit %d reached" % self.k,
                                       stats=self._final_stats())
        except _Cancelled:
            return unknown("cancelled", stats=self._final_stats())

    def _final_stats(self) -> Ic3Stats:
        self.stats.solver = self.solver.stats
        return self.stats

    # -- debug invariants ---------------------------------------------------

    def debug_check_frames(self) -> None:
        """Frame sanity: lemmas exclude init and are relatively inductive at
        their level; frames below k exclude bad."""
        for j in range(1, self.k + 1):
            for d in self.frames[j]:
                assert not self.ts.cube_intersects_init(d), \
                    "lemma %r intersects init" % (d,)
                assert self._verify_relative_inductive(d, j), \
                    "lemma %r not inductive at %d" % (d, j)
        for i in range(1, self.k):
            self.stats.solver_calls += 1
            res = self.solver.solve(
                self._frame_assumptions(i) + [self.ts.bad])
            assert res is False, "frame %d intersects bad" % i


def check(
    ts: TranSys,
    options: Optional[Ic3Options] = None,
    cancel: Optional[Callable[[], bool]] = None,
) -> Verdict:
    """Run IC3; with `abs_cst`, localize constraints by counterexample-guided
    refinement (start from none, add back the first one each spurious witness
    violates)."""
    options = options or Ic3Options()
    if not options.abs_cst or ts.source is None or not ts.source.constraints:
        return IC3(ts, options, cancel).check()

    from .certify import verify_witness

    aig = ts.source
    active: List[int] = []
    refinements = 0
    while True:
        ts_abs = encode(aig, bad_index=ts.bad_index, active_constraints=active)
        engine = IC3(ts_abs, options, cancel)
        verdict = engine.check()
        if verdict.stats is not None:
            verdict.stats.abstraction_refinements = refinements
        if not verdict.is_unsafe:
            return verdict
        assert verdict.witness is not None
        ok, _reason = verify_witness(aig, verdict.witness)
        if ok:
            return verdict
        violated = _first_violated_constraint(aig, verdict.witness, active)
        if violated is None:
            # replay failed for a non-constraint reason: engine bug
            raise AssertionError("spurious witness without constraint violation")
        active.append(violated)
        refinements += 1


def _first_violated_constraint(aig, trace: WitnessTrace,
                               active: Sequence[int]) -> Optional[int]:
    """Index of the first inactive constraint the trace violates, scanning
    steps in order and constraints in declaration order."""
    state = {}
    for j, lt in enumerate(aig.latches):
        bit = trace.init_state[j]
        if bit is None:
            bit = lt.init if lt.init is not None else 0
        state[lt.var] = int(bit)
    active_set = set(active)
    for frame in trace.input_frames:
        inputs = {v: int(b) if b is not None else 0
                  for v, b in zip(aig.inputs, frame)}
        vals = eval_nodes(aig, state, inputs)
        for ci, cref in enumerate(aig.constraints):
            if ci in active_set:
                continue
            if vals[cref >> 1] ^ (cref & 1) != 1:
                return ci
        state = {lt.var: vals[lt.next >> 1] ^ (lt.next & 1) for lt in aig.latches}
    return None
