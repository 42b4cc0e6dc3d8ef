import random

import pytest

from mcheck.aiger import (AigerError, coi, eval_nodes, parse_aiger,
                          serialize_aiger, simulate)

from fixtures import CNT2_AAG, SAFE1_AAG, UNSAFE1_AAG, counter_overflow, random_aig


def test_parse_fixed_models(cnt2):
    assert cnt2.max_var == 5
    assert [lt.var for lt in cnt2.latches] == [1, 2]
    assert len(cnt2.ands) == 3
    assert cnt2.bads == [6]


def test_outputs_become_bads():
    # pre-1.9 header: outputs are treated as bad properties
    aig = parse_aiger(b"aag 1 0 1 1 0\n2 2\n2\n")
    assert aig.bads == [2]
    assert aig.bads_from_outputs


def test_uninitialized_and_one_initialized_latches():
    aig = parse_aiger(b"aag 2 0 2 0 0 1\n2 2 2\n4 4 1\n2\n")
    assert aig.latches[0].init is None
    assert aig.latches[1].init == 1


@pytest.mark.parametrize("text", [
    "aag 1 0 1 1 0\n2 2\n",          # declared output line missing
    "aag 1 2 0 0 0 0\n2\n4\n",       # inputs exceed max_var
    "not a header\n",
    "aag 1 0 1 0 0 1\n2 9\n2\n",     # next ref out of range
    "aag 2 0 2 0 0 1\n2 2\n2 4\n2\n",  # duplicate latch definition
])
def test_parse_rejects_malformed(text):
    with pytest.raises(AigerError):
        parse_aiger(text.encode())


def test_ascii_round_trip_byte_identical():
    for text in (SAFE1_AAG, UNSAFE1_AAG, CNT2_AAG):
        aig = parse_aiger(text.encode())
        out = serialize_aiger(aig, ascii=True)
        again = parse_aiger(out)
        assert aig.structurally_equal(again)
        assert serialize_aiger(again, ascii=True) == out


def test_binary_round_trip(rng):
    for _ in range(40):
        aig = random_aig(rng)
        blob = serialize_aiger(aig, ascii=False)
        again = parse_aiger(blob)
        assert aig.structurally_equal(again)
        assert serialize_aiger(again, ascii=False) == blob


def test_ascii_binary_agree(rng):
    for _ in range(20):
        aig = random_aig(rng)
        a = parse_aiger(serialize_aiger(aig, ascii=True))
        b = parse_aiger(serialize_aiger(aig, ascii=False))
        assert a.structurally_equal(b)


def test_trailer_preserved():
    text = SAFE1_AAG + "b0 prop\nc\nhello\n"
    aig = parse_aiger(text.encode())
    assert b"hello" in serialize_aiger(aig, ascii=True)


def test_eval_nodes_matches_hand_truth(cnt2):
    # state (l1, l2) = (1, 1) makes the bad gate (6 = l2 & l1) true
    vals = eval_nodes(cnt2, {1: 1, 2: 1}, {})
    assert vals[3] == 1
    vals0 = eval_nodes(cnt2, {1: 0, 2: 1}, {})
    assert vals0[3] == 0


def test_eval_nodes_random_against_python_eval(rng):
    for _ in range(30):
        aig = random_aig(rng)
        latch_vals = {lt.var: rng.randint(0, 1) for lt in aig.latches}
        input_vals = {v: rng.randint(0, 1) for v in aig.inputs}
        vals = eval_nodes(aig, latch_vals, input_vals)
        for g in aig.ands:
            r0 = vals[g.rhs0 >> 1] ^ (g.rhs0 & 1)
            r1 = vals[g.rhs1 >> 1] ^ (g.rhs1 & 1)
            assert vals[g.var] == (r0 & r1)


def test_simulate_counter_overflow_depth():
    aig = counter_overflow(4)
    frames = [[] for _ in range(20)]
    first = simulate(aig, None, frames)
    assert first == [16]


def test_simulate_toggle(unsafe1):
    assert simulate(unsafe1, None, [[]])[0] == 1  # bad on the appended frame
    assert simulate(unsafe1, None, [])[0] is None  # only step 0 is observed


def test_coi_restricts_to_support(cnt2):
    support = coi(cnt2, cnt2.bads)
    assert {1, 2} <= support
    free = parse_aiger(b"aag 2 1 1 0 0 1\n2\n4 4\n4\n")
    assert 1 not in coi(free, free.bads)  # the input is outside the bad cone
