"""Incremental CDCL SAT solver specialized for one-step model-checking
queries: assumptions with unsat cores, temporary clauses that vanish after
each query, a decision domain restricted per query, and a bucketed
constant-time activity heuristic.

Literals use the shared int encoding from :mod:`mcheck.logic`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Set, Tuple

UNDEF = 2  # assigns[] sentinel


class Clause:
    __slots__ = ("lits", "learnt", "temporary", "act")

    def __init__(self, lits: List[int], learnt: bool = False, temporary: bool = False):
        self.lits = lits
        self.learnt = learnt
        self.temporary = temporary
        self.act = 0.0


class BucketVsids:
    """Quantized activity: 16 buckets, O(1) amortized bump/decay/pick.

    Per-var absolute levels plus a moving origin; decay shifts the origin so
    every variable drops one bucket with no per-var work.  Buckets are lazy
    stacks: stale entries are re-filed or dropped when popped.
    """

    NBUCKETS = 16

    def __init__(self) -> None:
        self.level: List[int] = []
        self.present: List[bool] = []
        self.origin = 0
        self.buckets: List[List[int]] = [[] for _ in range(self.NBUCKETS)]

    def new_var(self) -> None:
        v = len(self.level)
        self.level.append(self.origin)
        self.present.append(False)
        self.insert(v)

    def bucket_of(self, v: int) -> int:
        b = self.level[v] - self.origin
        if b < 0:
            return 0
        if b >= self.NBUCKETS:
            return self.NBUCKETS - 1
        return b

    def insert(self, v: int) -> None:
        if not self.present[v]:
            self.present[v] = True
            self.buckets[self.bucket_of(v)].append(v)

    def bump(self, v: int) -> None:
        lev = self.level[v]
        if lev < self.origin:
            lev = self.origin
        top = self.origin + self.NBUCKETS - 1
        lev += 1
        if lev > top:
            lev = top
        self.level[v] = lev
        if self.present[v]:
            self.buckets[self.bucket_of(v)].append(v)

    def decay(self) -> None:
        self.origin += 1

    def pop_max(self, eligible: Callable[[int], bool], parked: List[int]) -> Optional[int]:
        """Pop the best eligible var; ineligible pops go to `parked`."""
        buckets = self.buckets
        for i in range(self.NBUCKETS - 1, -1, -1):
            b = buckets[i]
            while b:
                v = b.pop()
                if not self.present[v]:
                    continue
                cur = self.bucket_of(v)
                if cur != i:
                    buckets[cur].append(v)  # re-file after decay
                    continue
                if eligible(v):
                    self.present[v] = False
                    return v
                self.present[v] = False
                parked.append(v)
        return None


@dataclass
class SolverStats:
    solves: int = 0
    conflicts: int = 0
    decisions: int = 0
    propagations: int = 0
    domain_checks: int = 0
    domain_mismatches: int = 0


class DomainMismatchError(AssertionError):
    """Restricted and full-domain solving disagreed (caller contract broken)."""


class Solver:
    DECAY_INTERVAL = 256
    LUBY_UNIT = 128

    def __init__(self, debug_check_domain: bool = False):
        self.ok = True
        self.assigns: List[int] = []
        self.polarity: List[bool] = []
        self.vlevel: List[int] = []
        self.reason: List[Optional[Clause]] = []
        self.watches: List[List[Clause]] = []
        self.trail: List[int] = []
        self.trail_lim: List[int] = []
        self.qhead = 0
        self.clauses: List[Clause] = []
        self.learnts: List[Clause] = []
        self.vsids = BucketVsids()
        self.stats = SolverStats()
        self.debug_check_domain = debug_check_domain

        self._seen: List[bool] = []
        self._model: List[int] = []
        self._core: Tuple[int, ...] = ()
        self._domain_stamp: List[int] = []
        self._domain_gen = 0
        self._domain_full = True
        self._persistent_domain: Optional[Set[int]] = None
        self._temp_clauses: List[Clause] = []
        self._temp_act: Optional[int] = None
        self._temp_contra = False
        self._parked: List[int] = []
        self._cla_inc = 1.0

    # -- variables ----------------------------------------------------------

    def new_var(self) -> int:
        v = len(self.assigns)
        self.assigns.append(UNDEF)
        self.polarity.append(False)
        self.vlevel.append(0)
        self.reason.append(None)
        self.watches.append([])
        self.watches.append([])
        self._seen.append(False)
        self._domain_stamp.append(-1)
        self.vsids.new_var()
        return v

    def new_vars(self, n: int) -> None:
        for _ in range(n):
            self.new_var()

    @property
    def num_vars(self) -> int:
        return len(self.assigns)

    def decision_level(self) -> int:
        return len(self.trail_lim)

    def value_lit(self, lit: int) -> int:
        a = self.assigns[lit >> 1]
        return a if a == UNDEF else a ^ (lit & 1)

    # -- clause management --------------------------------------------------

    def add_clause(self, lits: Iterable[int], temporary: bool = False) -> None:
        assert self.decision_level() == 0
        if not self.ok:
            return
        out: List[int] = []
        seen: Dict[int, int] = {}
        for l in sorted(lits):
            v = l >> 1
            if v in seen:
                if seen[v] != l:
                    return  # tautology
                continue
            a = self.assigns[v]
            if a != UNDEF:
                if a ^ (l & 1) == 1:
                    return  # satisfied at root
                continue  # root-false literal dropped
            seen[v] = l
            out.append(l)

        if temporary:
            # fresh activation var per query: learned clauses conditioned on
            # an old query's activation literal must never fire again
            if self._temp_act is None:
                self._temp_act = self.new_var()
            out.insert(0, 2 * self._temp_act + 1)
            if len(out) == 1:
                self._temp_contra = True
                return
            c = Clause(out, temporary=True)
            self._temp_clauses.append(c)
            self._attach(c)
            return

        if not out:
            self.ok = False
            return
        if len(out) == 1:
            self._enqueue(out[0], None)
            if self._propagate() is not None:
                self.ok = False
            return
        c = Clause(out)
        self.clauses.append(c)
        self._attach(c)

    def _attach(self, c: Clause) -> None:
        # watches[l] lists the clauses watching literal l; they are visited
        # when l becomes false
        self.watches[c.lits[0]].append(c)
        self.watches[c.lits[1]].append(c)

    def _detach(self, c: Clause) -> None:
        for w in (c.lits[0], c.lits[1]):
            try:
                self.watches[w].remove(c)
            except ValueError:
                pass

    def _clear_temporaries(self) -> None:
        for c in self._temp_clauses:
            self._detach(c)
        self._temp_clauses = []
        self._temp_act = None
        self._temp_contra = False

    # -- domain -------------------------------------------------------------

    def set_domain(self, vars: Iterable[int]) -> None:
        """Restrict decisions of subsequent solves; O(1) clear via generation."""
        self._persistent_domain = set(vars)

    def clear_domain(self) -> None:
        self._persistent_domain = None

    def _activate_domain(self, domain: Optional[Iterable[int]]) -> None:
        if domain is None:
            self._domain_full = True
            return
        self._domain_full = False
        self._domain_gen += 1
        gen = self._domain_gen
        stamp = self._domain_stamp
        for v in domain:
            stamp[v] = gen

    def in_domain(self, v: int) -> bool:
        return self._domain_full or self._domain_stamp[v] == self._domain_gen

    # -- trail --------------------------------------------------------------

    def _enqueue(self, lit: int, reason: Optional[Clause]) -> None:
        v = lit >> 1
        self.assigns[v] = lit & 1 ^ 1
        self.vlevel[v] = self.decision_level()
        self.reason[v] = reason
        self.trail.append(lit)

    def _cancel_until(self, level: int) -> None:
        if self.decision_level() <= level:
            return
        bound = self.trail_lim[level]
        for i in range(len(self.trail) - 1, bound - 1, -1):
            v = self.trail[i] >> 1
            self.polarity[v] = self.assigns[v] == 1
            self.assigns[v] = UNDEF
            self.reason[v] = None
            self.vsids.insert(v)
        del self.trail[bound:]
        del self.trail_lim[level:]
        self.qhead = len(self.trail)

    # -- propagation --------------------------------------------------------

    def _propagate(self) -> Optional[Clause]:
        assigns = self.assigns
        watches = self.watches
        while self.qhead < len(self.trail):
            p = self.trail[self.qhead]
            self.qhead += 1
            self.stats.propagations += 1
            false_lit = p ^ 1
            ws = watches[false_lit]
            i = j = 0
            n = len(ws)
            while i < n:
                c = ws[i]
                i += 1
                lits = c.lits
                if lits[0] == false_lit:
                    lits[0], lits[1] = lits[1], false_lit
                first = lits[0]
                a = assigns[first >> 1]
                if a != UNDEF and a ^ (first & 1) == 1:
                    ws[j] = c
                    j += 1
                    continue
                moved = False
                for k in range(2, len(lits)):
                    lk = lits[k]
                    ak = assigns[lk >> 1]
                    if ak == UNDEF or ak ^ (lk & 1) == 1:
                        lits[1], lits[k] = lk, false_lit
                        watches[lk].append(c)
                        moved = True
                        break
                if moved:
                    continue
                ws[j] = c
                j += 1
                if a != UNDEF:  # first is false: conflict
                    while i < n:
                        ws[j] = ws[i]
                        j += 1
                        i += 1
                    del ws[j:]
                    return c
                self._enqueue(first, c)
            del ws[j:]
        return None

    # -- conflict analysis --------------------------------------------------

    def _analyze(self, confl: Clause) -> Tuple[List[int], int]:
        seen = self._seen
        learnt: List[int] = [0]  # placeholder for asserting literal
        path = 0
        p = -1
        index = len(self.trail)
        cur_level = self.decision_level()
        to_clear: List[int] = []
        while True:
            if confl.learnt:
                self._bump_clause(confl)
            start = 1 if p >= 0 else 0
            for l in confl.lits[start:]:
                v = l >> 1
                if not seen[v] and self.vlevel[v] > 0:
                    seen[v] = True
                    to_clear.append(v)
                    self.vsids.bump(v)
                    if self.vlevel[v] >= cur_level:
                        path += 1
                    else:
                        learnt.append(l)
            while True:
                index -= 1
                p = self.trail[index]
                if seen[p >> 1]:
                    break
            path -= 1
            if path == 0:
                break
            confl = self.reason[p >> 1]  # type: ignore[assignment]
            seen[p >> 1] = False
        learnt[0] = p ^ 1

        # conflict-clause minimization: drop lits implied by the rest
        keep = [learnt[0]]
        for l in learnt[1:]:
            r = self.reason[l >> 1]
            if r is None:
                keep.append(l)
                continue
            if any((x >> 1) != (l >> 1) and not seen[x >> 1] and self.vlevel[x >> 1] > 0
                   for x in r.lits):
                keep.append(l)
        learnt = keep

        for v in to_clear:
            seen[v] = False

        if len(learnt) == 1:
            bt = 0
        else:
            max_i = 1
            for i in range(2, len(learnt)):
                if self.vlevel[learnt[i] >> 1] > self.vlevel[learnt[max_i] >> 1]:
                    max_i = i
            learnt[1], learnt[max_i] = learnt[max_i], learnt[1]
            bt = self.vlevel[learnt[1] >> 1]
        return learnt, bt

    def _analyze_final(self, p: int, n_assumed: int) -> Tuple[int, ...]:
        """Assumption subset responsible for falsifying assumption lit `p`."""
        out = {p}
        if self.decision_level() == 0:
            return tuple(out)
        seen = self._seen
        seen[p >> 1] = True
        to_clear = [p >> 1]
        for i in range(len(self.trail) - 1, self.trail_lim[0] - 1, -1):
            q = self.trail[i]
            v = q >> 1
            if not seen[v]:
                continue
            r = self.reason[v]
            if r is None:
                out.add(q)
            else:
                for l in r.lits:
                    if self.vlevel[l >> 1] > 0:
                        if not seen[l >> 1]:
                            seen[l >> 1] = True
                            to_clear.append(l >> 1)
            seen[v] = False
        for v in to_clear:
            seen[v] = False
        return tuple(sorted(out))

    def _bump_clause(self, c: Clause) -> None:
        c.act += self._cla_inc
        if c.act > 1e20:
            for x in self.learnts:
                x.act *= 1e-20
            self._cla_inc *= 1e-20

    def _reduce_db(self) -> None:
        self.learnts.sort(key=lambda c: c.act)
        keep_from = len(self.learnts) // 2
        removed = []
        kept = []
        for idx, c in enumerate(self.learnts):
            locked = self.reason[c.lits[0] >> 1] is c
            if idx < keep_from and not locked and len(c.lits) > 2:
                self._detach(c)
                removed.append(c)
            else:
                kept.append(c)
        self.learnts = kept

    # -- search -------------------------------------------------------------

    @staticmethod
    def _luby(i: int) -> int:
        k = 1
        while (1 << (k + 1)) - 1 < i + 1:
            k += 1
        while (1 << k) - 1 != i + 1:
            i = i - (1 << (k - 1)) + 1
            k = 1
            while (1 << (k + 1)) - 1 < i + 1:
                k += 1
        return 1 << (k - 1)

    def solve(
        self,
        assumptions: Sequence[int] = (),
        domain: Optional[Iterable[int]] = None,
        cancel_check: Optional[Callable[[], bool]] = None,
    ) -> Optional[bool]:
        """Complete search; True = Sat, False = Unsat, None = cancelled.

        With a restricted domain, decisions stay inside it; the verdict
        matches full-domain solving provided the domain covers the cone of
        influence of the assumptions and temporary clauses (caller's
        obligation, checked when `debug_check_domain` is set).
        """
        self.stats.solves += 1
        try:
            if not self.ok or self._temp_contra:
                self._core = ()
                return False

            assume = list(assumptions)
            if self._temp_clauses:
                assert self._temp_act is not None
                assume.insert(0, 2 * self._temp_act)

            use_domain = domain if domain is not None else self._persistent_domain
            self._activate_domain(use_domain)
            result = self._search(assume, cancel_check)

            if (
                self.debug_check_domain
                and use_domain is not None
                and result is not None
            ):
                self.stats.domain_checks += 1
                model, core = self._model, self._core
                self._cancel_until(0)
                self._activate_domain(None)
                full = self._search(assume, cancel_check)
                if full is not None and full != result:
                    self.stats.domain_mismatches += 1
                    raise DomainMismatchError(
                        "restricted=%r full=%r" % (result, full))
                self._model, self._core = model, core
            return result
        finally:
            self._cancel_until(0)
            self._unpark()
            self._clear_temporaries()

    def _unpark(self) -> None:
        # insert() is a no-op for vars re-filed by _cancel_until
        for v in self._parked:
            self.vsids.insert(v)
        self._parked = []

    def _search(
        self,
        assume: List[int],
        cancel_check: Optional[Callable[[], bool]],
    ) -> Optional[bool]:
        if cancel_check is not None and cancel_check():
            return None
        restarts = 0
        conflicts_until_restart = self._luby(restarts) * self.LUBY_UNIT
        conflict_count = 0
        max_learnts = max(4000, 2 * len(self.clauses))
        temp_act_lit = None if self._temp_act is None else 2 * self._temp_act

        while True:
            confl = self._propagate()
            if confl is not None:
                self.stats.conflicts += 1
                conflict_count += 1
                if self.stats.conflicts % self.DECAY_INTERVAL == 0:
                    self.vsids.decay()
                    if cancel_check is not None and cancel_check():
                        return None
                if self.decision_level() == 0:
                    self._core = ()
                    return False
                learnt, bt = self._analyze(confl)
                self._cancel_until(bt)
                if len(learnt) == 1:
                    self._enqueue(learnt[0], None)
                    # root implication survives the query
                    self.vlevel[learnt[0] >> 1] = 0
                else:
                    c = Clause(learnt, learnt=True)
                    self.learnts.append(c)
                    self._attach(c)
                    self._bump_clause(c)
                    self._enqueue(learnt[0], c)
                self._cla_inc *= 1.0 / 0.999
                continue

            if conflict_count >= conflicts_until_restart:
                if cancel_check is not None and cancel_check():
                    return None
                restarts += 1
                conflict_count = 0
                conflicts_until_restart = self._luby(restarts) * self.LUBY_UNIT
                self._cancel_until(0)
                continue

            if len(self.learnts) > max_learnts:
                self._reduce_db()
                max_learnts = int(max_learnts * 1.3)

            dl = self.decision_level()
            if dl < len(assume):
                p = assume[dl]
                val = self.value_lit(p)
                if val == 1:
                    self.trail_lim.append(len(self.trail))  # dummy level
                    continue
                if val == 0:
                    core = self._analyze_final(p, len(assume))
                    if temp_act_lit is not None:
                        core = tuple(l for l in core if l != temp_act_lit)
                    self._core = core
                    return False
                self.trail_lim.append(len(self.trail))
                self._enqueue(p, None)
                continue

            v = self.vsids.pop_max(self._decision_eligible, self._parked)
            if v is None:
                self._model = list(self.assigns)
                return True
            self.stats.decisions += 1
            self.trail_lim.append(len(self.trail))
            self._enqueue(2 * v + (0 if self.polarity[v] else 1), None)

    def _decision_eligible(self, v: int) -> bool:
        return self.assigns[v] == UNDEF and self.in_domain(v)

    # -- results ------------------------------------------------------------

    def model_value(self, var: int, default: Optional[bool] = None) -> Optional[bool]:
        a = self._model[var] if var < len(self._model) else UNDEF
        if a == UNDEF:
            return default
        return a == 1

    def model_lit(self, var: int, default: bool = False) -> int:
        """Literal of `var` true in the model (default polarity if free)."""
        val = self.model_value(var, default)
        return 2 * var + (0 if val else 1)

    def unsat_core(self) -> Tuple[int, ...]:
        return self._core

    # -- DIMACS (differential-testing interface) ----------------------------

    def to_dimacs(self) -> str:
        lines = ["p cnf %d %d" % (self.num_vars, len(self.clauses) + len(self.trail))]
        for lit in self.trail:
            if self.vlevel[lit >> 1] == 0:
                lines.append("%d 0" % _dimacs(lit))
        for c in self.clauses:
            lines.append(" ".join(str(_dimacs(l)) for l in c.lits) + " 0")
        return "\n".join(lines) + "\n"


def _dimacs(lit: int) -> int:
    v = (lit >> 1) + 1
    return -v if lit & 1 else v


def from_dimacs(text: str) -> Solver:
    s = Solver()
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith(("c", "p", "%")):
            continue
        lits = []
        for tok in line.split():
            n = int(tok)
            if n == 0:
                break
            v = abs(n) - 1
            while s.num_vars <= v:
                s.new_var()
            lits.append(2 * v + (1 if n < 0 else 0))
        s.add_clause(lits)
    return s
