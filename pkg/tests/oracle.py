"""Independent reference implementations used only by the tests.

Nothing here shares code with the package under test beyond the AIG data
structures themselves:

* ``bfs_check`` — explicit-state breadth-first reachability over the full
  state space, evaluated bit-parallel with big-integer truth tables.
* ``cnf_brute_force`` — exhaustive truth-table satisfiability for small CNFs.
* ``ShadowActivity`` — an exact-score mirror of the solver's bucketed
  activity heap, used to audit decision ordering.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from mcheck.aiger import Aig

MAX_TABLE_BITS = 22  # refuse truth tables beyond 2^22 rows


def _var_pattern(bit: int, nbits: int) -> int:
    """Truth-table column for variable `bit`: row i has value (i >> bit) & 1."""
    half = 1 << bit
    pat = ((1 << half) - 1) << half
    width = half * 2
    total = 1 << nbits
    while width < total:
        pat |= pat << width
        width *= 2
    return pat


def _node_tables(aig: Aig, nbits: int, var_bit: Dict[int, int]) -> Dict[int, int]:
    """Truth table (one bit per assignment) for every AIG node."""
    mask = (1 << (1 << nbits)) - 1
    tables: Dict[int, int] = {0: 0}
    for var, bit in var_bit.items():
        tables[var] = _var_pattern(bit, nbits)

    def ref_table(ref: int) -> int:
        t = tables[ref >> 1]
        return t ^ mask if ref & 1 else t

    for g in sorted(aig.ands, key=lambda g: g.var):
        tables[g.var] = ref_table(g.rhs0) & ref_table(g.rhs1)
    return tables


@dataclass
class BfsResult:
    status: str  # "safe" | "unsafe"
    depth: Optional[int]  # minimal counterexample length (bad step index)
    reachable_states: int


def bfs_check(aig: Aig, bad_index: int = 0) -> BfsResult:
    """Exact reachability verdict by explicit breadth-first search.

    Assignment rows pack latch values in the low bits and input values above
    them.  A step is admissible only if every constraint holds under the
    chosen inputs; the bad property counts only on an admissible step, which
    matches the checker's semantics of constraints restricting every frame
    including the failing one.
    """
    nl = len(aig.latches)
    ni = len(aig.inputs)
    nbits = nl + ni
    if nbits > MAX_TABLE_BITS:
        raise ValueError("model too large for the explicit oracle")
    mask = (1 << (1 << nbits)) - 1

    var_bit = {lt.var: j for j, lt in enumerate(aig.latches)}
    var_bit.update({v: nl + j for j, v in enumerate(aig.inputs)})
    tables = _node_tables(aig, nbits, var_bit)

    def ref_table(ref: int) -> int:
        t = tables[ref >> 1]
        return t ^ mask if ref & 1 else t

    cst_ok = mask
    for c in aig.constraints:
        cst_ok &= ref_table(c)
    bad_tab = ref_table(aig.bads[bad_index]) & cst_ok
    nxt = [ref_table(lt.next) for lt in aig.latches]
    nxt_inv = [t ^ mask for t in nxt]

    # Initial state set over the 2^nl state indices; uninitialized latches
    # range over both values (doubling the set along their bit position).
    base = 0
    for j, lt in enumerate(aig.latches):
        if lt.init == 1:
            base |= 1 << j
    init_set = 1 << base
    for j, lt in enumerate(aig.latches):
        if lt.init is None:
            init_set |= init_set << (1 << j)

    def expand(states: int) -> int:
        """Repeat a state set across all input valuations."""
        a = states
        width = 1 << nl
        for _ in range(ni):
            a |= a << width
            width *= 2
        return a

    def image(valid: int) -> int:
        """Successor state set of the admissible assignment set `valid`."""
        out = 0
        stack: List[Tuple[int, int, int]] = [(valid, 0, 0)]
        while stack:
            v, j, s = stack.pop()
            if v == 0:
                continue
            if j == nl:
                out |= 1 << s
                continue
            stack.append((v & nxt[j], j + 1, s | (1 << j)))
            stack.append((v & nxt_inv[j], j + 1, s))
        return out

    reached = init_set
    frontier = init_set
    depth = 0
    while frontier:
        valid = expand(frontier) & cst_ok
        if valid & bad_tab:
            return BfsResult("unsafe", depth, reached.bit_count())
        new = image(valid) & ~reached
        reached |= new
        frontier = new
        depth += 1
    return BfsResult("safe", None, reached.bit_count())


# ---------------------------------------------------------------------------
# CNF truth-table oracle


def cnf_brute_force(num_vars: int, clauses: Sequence[Sequence[int]],
                    assumptions: Sequence[int] = ()) -> Optional[List[int]]:
    """Exhaustive SAT check; literals use the solver's 2*var+neg encoding.

    Returns one satisfying model as a list of literals (one per variable), or
    None if unsatisfiable.
    """
    if num_vars > 20:
        raise ValueError("too many variables for truth-table enumeration")
    mask = (1 << (1 << num_vars)) - 1
    cols = [_var_pattern(v, num_vars) for v in range(num_vars)]

    def lit_table(lit: int) -> int:
        t = cols[lit >> 1]
        return t ^ mask if lit & 1 else t

    sat = mask
    for cl in clauses:
        acc = 0
        for lit in cl:
            acc |= lit_table(lit)
        sat &= acc
        if sat == 0:
            return None
    for lit in assumptions:
        sat &= lit_table(lit)
        if sat == 0:
            return None
    row = (sat & -sat).bit_length() - 1
    return [2 * v + (0 if (row >> v) & 1 else 1) for v in range(num_vars)]


# ---------------------------------------------------------------------------
# Exact-score shadow of the bucketed activity heap


class ShadowActivity:
    """Reference activity tracker with exact saturating levels.

    Mirrors the semantics the bucketed heap is supposed to provide: each
    variable has an integer level, bump raises it by one saturating at
    origin+15, decay raises the origin (so everyone drops one bucket), and a
    pick must come from the highest nonempty bucket of present variables.
    """

    NBUCKETS = 16

    def __init__(self) -> None:
        self.level: List[int] = []
        self.present: List[bool] = []
        self.origin = 0

    def new_var(self) -> None:
        self.level.append(self.origin)
        self.present.append(True)

    def insert(self, v: int) -> None:
        self.present[v] = True

    def bump(self, v: int) -> None:
        lev = max(self.level[v], self.origin) + 1
        self.level[v] = min(lev, self.origin + self.NBUCKETS - 1)

    def decay(self) -> None:
        self.origin += 1

    def bucket_of(self, v: int) -> int:
        return min(max(self.level[v] - self.origin, 0), self.NBUCKETS - 1)

    def best_bucket(self, eligible) -> Optional[int]:
        best = None
        for v in range(len(self.level)):
            if self.present[v] and eligible(v):
                b = self.bucket_of(v)
                if best is None or b > best:
                    best = b
        return best

    def note_pop(self, v: int, taken: bool) -> None:
        """Record that the heap consumed `v` (either decided or parked)."""
        self.present[v] = False
