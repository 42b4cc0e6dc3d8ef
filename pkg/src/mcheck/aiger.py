"""And-inverter graphs: AIGER parsing/serialization, structural
simplification, simulation and cone-of-influence analysis.

Node references use the AIGER literal convention: ``raw = 2*index +
complement``, with raw 0 = constant false and raw 1 = constant true.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple


class AigerError(Exception):
    """Malformed AIGER input; message carries a line or byte offset."""


FALSE_REF = 0
TRUE_REF = 1


def ref_var(ref: int) -> int:
    return ref >> 1


def ref_compl(ref: int) -> bool:
    return bool(ref & 1)


def ref_neg(ref: int) -> int:
    return ref ^ 1


@dataclass(frozen=True)
class Latch:
    var: int
    next: int  # node ref
    init: Optional[int]  # 0, 1, or None for uninitialized


@dataclass(frozen=True)
class AndGate:
    var: int
    rhs0: int  # node ref
    rhs1: int  # node ref


@dataclass
class Aig:
    max_var: int
    inputs: List[int] = field(default_factory=list)  # node indices
    latches: List[Latch] = field(default_factory=list)
    ands: List[AndGate] = field(default_factory=list)
    bads: List[int] = field(default_factory=list)  # node refs
    constraints: List[int] = field(default_factory=list)  # node refs
    bads_from_outputs: bool = False  # parsed via the pre-1.9 O section
    trailer: bytes = b""  # opaque symbol table / comment section

    def __post_init__(self) -> None:
        self._and_map: Dict[int, AndGate] = {a.var: a for a in self.ands}
        self._latch_map: Dict[int, Latch] = {l.var: l for l in self.latches}

    def gate(self, var: int) -> Optional[AndGate]:
        return self._and_map.get(var)

    def latch(self, var: int) -> Optional[Latch]:
        return self._latch_map.get(var)

    def is_input(self, var: int) -> bool:
        return var in self._input_set

    @property
    def _input_set(self) -> Set[int]:
        s = getattr(self, "_input_set_cache", None)
        if s is None:
            s = set(self.inputs)
            object.__setattr__(self, "_input_set_cache", s)
        return s

    def structurally_equal(self, other: "Aig") -> bool:
        return (
            self.max_var == other.max_var
            and self.inputs == other.inputs
            and self.latches == other.latches
            and self.ands == other.ands
            and self.bads == other.bads
            and self.constraints == other.constraints
        )


@dataclass
class WitnessTrace:
    """Concrete counterexample: initial latch values plus per-step inputs.

    ``init_state[j]`` and ``input_frames[t][j]`` hold 0, 1, or None (a
    don't-care, rendered as ``x``).  The bad property is expected at step
    ``len(input_frames) - 1``; frame ``t`` supplies the inputs both for
    evaluating the bad/constraints at step ``t`` and for the transition to
    step ``t + 1``.
    """

    bad_index: int
    init_state: List[Optional[int]]
    input_frames: List[List[Optional[int]]]


# ---------------------------------------------------------------------------
# Parsing


def _parse_header(line: bytes, lineno: int) -> Tuple[str, List[int]]:
    parts = line.split()
    if not parts or parts[0] not in (b"aag", b"aig"):
        raise AigerError("line %d: missing aag/aig header" % lineno)
    try:
        nums = [int(p) for p in parts[1:]]
    except ValueError:
        raise AigerError("line %d: non-numeric header field" % lineno)
    if len(nums) < 5 or len(nums) > 9:
        raise AigerError("line %d: header needs M I L O A [B C J F]" % lineno)
    if any(n < 0 for n in nums):
        raise AigerError("line %d: negative header field" % lineno)
    if len(nums) >= 8 and (nums[7] != 0 or (len(nums) == 9 and nums[8] != 0)):
        raise AigerError("line %d: justice/fairness sections unsupported" % lineno)
    while len(nums) < 7:
        nums.append(0)
    return parts[0].decode(), nums[:7]


def parse_aiger(data: bytes) -> Aig:
    """Parse ASCII ("aag") or binary ("aig") AIGER, format 1.9 headers."""
    if isinstance(data, str):
        data = data.encode()
    nl = data.find(b"\n")
    if nl < 0:
        raise AigerError("line 1: missing newline after header")
    fmt, (m, i, l, o, a, b, c) = _parse_header(data[:nl], 1)
    if fmt == "aag":
        return _parse_ascii(data, nl + 1, m, i, l, o, a, b, c)
    return _parse_binary(data, nl + 1, m, i, l, o, a, b, c)


def _read_lines(data: bytes, pos: int, count: int, lineno: int):
    lines = []
    for _ in range(count):
        nl = data.find(b"\n", pos)
        if nl < 0:
            raise AigerError("line %d: unexpected end of file" % lineno)
        lines.append((data[pos:nl], lineno))
        pos = nl + 1
        lineno += 1
    return lines, pos, lineno


def _int_fields(line: bytes, lineno: int, lo: int, hi: int) -> List[int]:
    try:
        nums = [int(p) for p in line.split()]
    except ValueError:
        raise AigerError("line %d: non-numeric field" % lineno)
    if not (lo <= len(nums) <= hi):
        raise AigerError("line %d: wrong field count" % lineno)
    return nums

def _check_ref(ref: int, max_var: int, lineno: int) -> int:
    if ref < 0 or (ref >> 1) > max_var:
        raise AigerError("line %d: literal %d out of range" % (lineno, ref))
    return ref


def _latch_from_fields(cur: int, nums: List[int], m: int, lineno: int) -> Latch:
    nxt = _check_ref(nums[0], m, lineno)
    init: Optional[int] = 0
    if len(nums) == 2:
        if nums[1] == 0:
            init = 0
        elif nums[1] == 1:
            init = 1
        elif nums[1] == cur:
            init = None
        else:
            raise AigerError("line %d: bad latch reset value %d" % (lineno, nums[1]))
    return Latch(cur >> 1, nxt, init)


def _parse_ascii(data, pos, m, i, l, o, a, b, c) -> Aig:
    lineno = 2
    inputs: List[int] = []
    latches: List[Latch] = []
    outputs: List[int] = []
    bads: List[int] = []
    constraints: List[int] = []
    ands: List[AndGate] = []

    lines, pos, lineno = _read_lines(data, pos, i, lineno)
    for line, ln in lines:
        (lit,) = _int_fields(line, ln, 1, 1)
        _check_ref(lit, m, ln)
        if lit & 1 or lit == 0:
            raise AigerError("line %d: invalid input literal %d" % (ln, lit))
        inputs.append(lit >> 1)

    lines, pos, lineno = _read_lines(data, pos, l, lineno)
    for line, ln in lines:
        nums = _int_fields(line, ln, 2, 3)
        cur = _check_ref(nums[0], m, ln)
        if cur & 1 or cur == 0:
            raise AigerError("line %d: invalid latch literal %d" % (ln, cur))
        latches.append(_latch_from_fields(cur, nums[1:], m, ln))

    for count, dest in ((o, outputs), (b, bads), (c, constraints)):
        lines, pos, lineno = _read_lines(data, pos, count, lineno)
        for line, ln in lines:
            (lit,) = _int_fields(line, ln, 1, 1)
            dest.append(_check_ref(lit, m, ln))

    lines, pos, lineno = _read_lines(data, pos, a, lineno)
    for line, ln in lines:
        lhs, rhs0, rhs1 = _int_fields(line, ln, 3, 3)
        _check_ref(lhs, m, ln)
        _check_ref(rhs0, m, ln)
        _check_ref(rhs1, m, ln)
        if lhs & 1 or lhs == 0:
            raise AigerError("line %d: invalid and-gate literal %d" % (ln, lhs))
        if (rhs0 >> 1) >= (lhs >> 1) or (rhs1 >> 1) >= (lhs >> 1):
            raise AigerError("line %d: and-gate child not smaller than gate" % ln)
        ands.append(AndGate(lhs >> 1, rhs0, rhs1))

    bads_from_outputs = False
    if not bads and outputs:
        bads = outputs
        bads_from_outputs = True
    _check_unique_defs(m, inputs, latches, ands)
    return Aig(m, inputs, latches, ands, bads, constraints,
               bads_from_outputs, data[pos:])


def _decode_delta(data: bytes, pos: int) -> Tuple[int, int]:
    value = 0
    shift = 0
    while True:
        if pos >= len(data):
            raise AigerError("byte %d: truncated binary delta" % pos)
        byte = data[pos]
        pos += 1
        value |= (byte & 0x7F) << shift
        if not byte & 0x80:
            return value, pos
        shift += 7


def _parse_binary(data, pos, m, i, l, o, a, b, c) -> Aig:
    if m != i + l + a:
        raise AigerError("line 1: binary header requires M = I + L + A")
    lineno = 2
    inputs = list(range(1, i + 1))
    latches: List[Latch] = []
    outputs: List[int] = []
    bads: List[int] = []
    constraints: List[int] = []
    ands: List[AndGate] = []

    lines, pos, lineno = _read_lines(data, pos, l, lineno)
    for idx, (line, ln) in enumerate(lines):
        cur = 2 * (i + idx + 1)
        nums = _int_fields(line, ln, 1, 2)
        latches.append(_latch_from_fields(cur, nums, m, ln))

    for count, dest in ((o, outputs), (b, bads), (c, constraints)):
        lines, pos, lineno = _read_lines(data, pos, count, lineno)
        for line, ln in lines:
            (lit,) = _int_fields(line, ln, 1, 1)
            dest.append(_check_ref(lit, m, ln))

    for j in range(a):
        var = i + l + j + 1
        lhs = 2 * var
        delta0, pos = _decode_delta(data, pos)
        delta1, pos = _decode_delta(data, pos)
        rhs0 = lhs - delta0
        rhs1 = rhs0 - delta1
        if delta0 == 0 or rhs1 < 0:
            raise AigerError("byte %d: non-monotone binary delta encoding" % pos)
        ands.append(AndGate(var, rhs0, rhs1))

    bads_from_outputs = False
    if not bads and outputs:
        bads = outputs
        bads_from_outputs = True
    return Aig(m, inputs, latches, ands, bads, constraints,
               bads_from_outputs, data[pos:])


def _check_unique_defs(m, inputs, latches, ands) -> None:
    seen: Set[int] = set()
    for v in inputs:
        if v in seen:
            raise AigerError("duplicate definition of variable %d" % v)
        seen.add(v)
    for lt in latches:
        if lt.var in seen:
            raise AigerError("duplicate definition of variable %d" % lt.var)
        seen.add(lt.var)
    for g in ands:
        if g.var in seen:
            raise AigerError("duplicate definition of variable %d" % g.var)
        seen.add(g.var)


# ---------------------------------------------------------------------------
# Serialization


def _encode_delta(value: int) -> bytes:
    out = bytearray()
    while True:
        byte = value & 0x7F
        value >>= 7
        if value:
            out.append(byte | 0x80)
        else:
            out.append(byte)
            return bytes(out)


def is_canonical(aig: Aig) -> bool:
    """Canonical numbering: inputs 1..I, latches I+1..I+L, gates after."""
    i, l = len(aig.inputs), len(aig.latches)
    if aig.max_var != i + l + len(aig.ands):
        return False
    if aig.inputs != list(range(1, i + 1)):
        return False
    if [lt.var for lt in aig.latches] != list(range(i + 1, i + l + 1)):
        return False
    for j, g in enumerate(aig.ands):
        if g.var != i + l + j + 1:
            return False
        if (g.rhs0 >> 1) >= g.var or g.rhs1 > g.rhs0:
            return False
    return True


def reindex(aig: Aig) -> Aig:
    """Renumber to canonical binary ordering; semantics preserved."""
    mapping: Dict[int, int] = {0: 0}
    nxt = 1
    for v in aig.inputs:
        mapping[v] = nxt
        nxt += 1
    for lt in aig.latches:
        mapping[lt.var] = nxt
        nxt += 1
    for g in sorted(aig.ands, key=lambda g: g.var):
        mapping[g.var] = nxt
        nxt += 1

    def mref(ref: int) -> int:
        return (mapping[ref >> 1] << 1) | (ref & 1)

    ands = []
    for g in sorted(aig.ands, key=lambda g: g.var):
        r0, r1 = mref(g.rhs0), mref(g.rhs1)
        if r0 < r1:
            r0, r1 = r1, r0
        ands.append(AndGate(mapping[g.var], r0, r1))
    latches = [Latch(mapping[lt.var], mref(lt.next), lt.init) for lt in aig.latches]
    return Aig(
        nxt - 1,
        list(range(1, len(aig.inputs) + 1)),
        latches,
        ands,
        [mref(r) for r in aig.bads],
        [mref(r) for r in aig.constraints],
        aig.bads_from_outputs,
        aig.trailer,
    )


def serialize_aiger(aig: Aig, ascii: bool = True) -> bytes:
    out = bytearray()
    o_count, b_count = 0, len(aig.bads)
    if aig.bads_from_outputs:
        o_count, b_count = len(aig.bads), 0
    if ascii:
        header = "aag %d %d %d %d %d" % (
            aig.max_var, len(aig.inputs), len(aig.latches), o_count, len(aig.ands))
        if b_count or aig.constraints:
            header += " %d" % b_count
            if aig.constraints:
                header += " %d" % len(aig.constraints)
        out += header.encode() + b"\n"
        for v in aig.inputs:
            out += b"%d\n" % (2 * v)
        for lt in aig.latches:
            out += _latch_line(lt)
        for ref in aig.bads:
            out += b"%d\n" % ref
        for ref in aig.constraints:
            out += b"%d\n" % ref
        for g in aig.ands:
            out += b"%d %d %d\n" % (2 * g.var, g.rhs0, g.rhs1)
        out += aig.trailer
        return bytes(out)

    if not is_canonical(aig):
        aig = reindex(aig)
        o_count, b_count = 0, len(aig.bads)
        if aig.bads_from_outputs:
            o_count, b_count = len(aig.bads), 0
    header = "aig %d %d %d %d %d" % (
        aig.max_var, len(aig.inputs), len(aig.latches), o_count, len(aig.ands))
    if b_count or aig.constraints:
        header += " %d" % b_count
        if aig.constraints:
            header += " %d" % len(aig.constraints)
    out += header.encode() + b"\n"
    for lt in aig.latches:
        out += _latch_line(lt, binary=True)
    for ref in aig.bads:
        out += b"%d\n" % ref
    for ref in aig.constraints:
        out += b"%d\n" % ref
    for g in aig.ands:
        lhs = 2 * g.var
        out += _encode_delta(lhs - g.rhs0)
        out += _encode_delta(g.rhs0 - g.rhs1)
    out += aig.trailer
    return bytes(out)


def _latch_line(lt: Latch, binary: bool = False) -> bytes:
    # The binary format omits the leading current-state literal (latch
    # numbering is implicit); an uninitialized latch resets to itself.
    cur = 2 * lt.var
    head = b"" if binary else b"%d " % cur
    if lt.init is None:
        return head + b"%d %d\n" % (lt.next, cur)
    if lt.init == 1:
        return head + b"%d 1\n" % lt.next
    return head + b"%d\n" % lt.next


# ---------------------------------------------------------------------------
# Structural simplification


def simplify(aig: Aig) -> Aig:
    """Constant propagation plus structural hashing; semantics preserved."""
    mapping: Dict[int, int] = {0: 0, 1: 1}  # old ref -> new ref
    for v in aig.inputs:
        mapping[2 * v] = 2 * v
        mapping[2 * v + 1] = 2 * v + 1
    for lt in aig.latches:
        mapping[2 * lt.var] = 2 * lt.var
        mapping[2 * lt.var + 1] = 2 * lt.var + 1

    strash: Dict[Tuple[int, int], int] = {}
    new_ands: List[AndGate] = []
    next_var = max([0] + aig.inputs + [lt.var for lt in aig.latches])

    for g in sorted(aig.ands, key=lambda g: g.var):
        a, b = mapping[g.rhs0], mapping[g.rhs1]
        if a < b:
            a, b = b, a
        if b == FALSE_REF or a == ref_neg(b):
            res = FALSE_REF
        elif b == TRUE_REF:
            res = a
        elif a == b:
            res = a
        else:
            key = (a, b)
            res = strash.get(key, -1)
            if res < 0:
                next_var += 1
                res = 2 * next_var
                strash[key] = res
                new_ands.append(AndGate(next_var, a, b))
        mapping[2 * g.var] = res
        mapping[2 * g.var + 1] = ref_neg(res)

    latches = [Latch(lt.var, mapping[lt.next], lt.init) for lt in aig.latches]
    return Aig(
        next_var,
        list(aig.inputs),
        latches,
        new_ands,
        [mapping[r] for r in aig.bads],
        [mapping[r] for r in aig.constraints],
        aig.bads_from_outputs,
        aig.trailer,
    )


# ---------------------------------------------------------------------------
# Cone of influence


def coi(aig: Aig, roots: Iterable[int], through_latches: bool = True) -> Set[int]:
    """Variables transitively supporting `roots` (node refs or vars).

    With `through_latches`, a latch in the cone also pulls in the support of
    its next-state function.
    """
    stack = [r >> 1 for r in roots]
    seen: Set[int] = set()
    while stack:
        v = stack.pop()
        if v == 0 or v in seen:
            continue
        seen.add(v)
        g = aig.gate(v)
        if g is not None:
            stack.append(g.rhs0 >> 1)
            stack.append(g.rhs1 >> 1)
            continue
        lt = aig.latch(v)
        if lt is not None and through_latches:
            stack.append(lt.next >> 1)
    return seen


# ---------------------------------------------------------------------------
# Simulation


def eval_nodes(
    aig: Aig,
    latch_vals: Dict[int, int],
    input_vals: Dict[int, int],
) -> Dict[int, int]:
    """Evaluate every node for one concrete (state, input) valuation."""
    vals: Dict[int, int] = {0: 0}
    vals.update(latch_vals)
    vals.update(input_vals)

    def ref_val(ref: int) -> int:
        return vals[ref >> 1] ^ (ref & 1)

    for g in sorted(aig.ands, key=lambda g: g.var):
        vals[g.var] = ref_val(g.rhs0) & ref_val(g.rhs1)
    return vals


def simulate(
    aig: Aig,
    init_override: Optional[Sequence[Optional[int]]],
    input_frames: Sequence[Sequence[Optional[int]]],
) -> List[Optional[int]]:
    """Replay a stimulus; returns the first step each bad holds (or None).

    Don't-care bits (None) collapse to 0.  Frame ``t`` drives both the bad
    evaluation at step ``t`` and the transition to step ``t + 1``; one final
    all-zero frame is appended so the post-transition state is observed too.
    """
    latch_vals: Dict[int, int] = {}
    for j, lt in enumerate(aig.latches):
        bit = None
        if init_override is not None:
            if len(init_override) != len(aig.latches):
                raise ValueError("init vector length mismatch")
            bit = init_override[j]
        if bit is None:
            bit = lt.init if lt.init is not None else 0
        latch_vals[lt.var] = int(bit)

    first: List[Optional[int]] = [None] * len(aig.bads)
    frames = [list(f) for f in input_frames] + [[0] * len(aig.inputs)]
    for step, frame in enumerate(frames):
        if len(frame) != len(aig.inputs):
            raise ValueError("input frame %d length mismatch" % step)
        input_vals = {
            v: int(bit) if bit is not None else 0
            for v, bit in zip(aig.inputs, frame)
        }
        vals = eval_nodes(aig, latch_vals, input_vals)

        def ref_val(ref: int) -> int:
            return vals[ref >> 1] ^ (ref & 1)

        for bi, ref in enumerate(aig.bads):
            if first[bi] is None and ref_val(ref):
                first[bi] = step
        latch_vals = {lt.var: ref_val(lt.next) for lt in aig.latches}
    return first
