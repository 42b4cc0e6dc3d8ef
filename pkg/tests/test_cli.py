from mcheck.aiger import parse_aiger
from mcheck.certify import parse_certificate, parse_witness, verify_witness
from mcheck.cli import main
from mcheck.transys import encode
from mcheck.certify import verify_certificate

from fixtures import CNT2_AAG, SAFE1_AAG, UNSAFE1_AAG, mod_counter
from mcheck.aiger import serialize_aiger


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_bytes(text if isinstance(text, bytes) else text.encode())
    return str(p)


def test_safe_verdict_block(tmp_path, capsys):
    path = _write(tmp_path, "m.aag", SAFE1_AAG)
    rc = main([path, "--engine", "ic3"])
    out = capsys.readouterr().out
    assert rc == 20
    assert out == "0\nb0\n.\n"


def test_unsafe_verdict_block(tmp_path, capsys):
    path = _write(tmp_path, "m.aag", CNT2_AAG)
    rc = main([path, "--engine", "bmc"])
    out = capsys.readouterr().out
    assert rc == 10
    lines = out.splitlines()
    assert lines[0] == "1" and lines[1] == "b0" and lines[-1] == "."
    trace = parse_witness(out)
    aig = parse_aiger(CNT2_AAG.encode())
    ok, why = verify_witness(aig, trace)
    assert ok, why


def test_unknown_verdict_block(tmp_path, capsys):
    path = _write(tmp_path, "m.aag", SAFE1_AAG)
    rc = main([path, "--engine", "bmc", "--bmc-max", "5"])
    captured = capsys.readouterr()
    assert rc == 0
    assert captured.out == "2\nb0\n.\n"
    assert "unknown" in captured.err


def test_witness_file_written_and_replayable(tmp_path, capsys):
    path = _write(tmp_path, "m.aag", UNSAFE1_AAG)
    wpath = tmp_path / "cex.txt"
    rc = main([path, "--engine", "portfolio", "--witness", str(wpath)])
    capsys.readouterr()
    assert rc == 10
    trace = parse_witness(wpath.read_text())
    ok, why = verify_witness(parse_aiger(UNSAFE1_AAG.encode()), trace)
    assert ok, why


def test_certificate_file_written_and_verifiable(tmp_path, capsys):
    aig = mod_counter(6, 20, 40)
    path = _write(tmp_path, "m.aag", serialize_aiger(aig))
    cpath = tmp_path / "inv.txt"
    rc = main([path, "--engine", "ic3", "--certificate", str(cpath)])
    capsys.readouterr()
    assert rc == 20
    ts = encode(aig)
    cert = parse_certificate(cpath.read_text(), ts)
    ok, why = verify_certificate(ts, cert)
    assert ok, why


def test_kind_certificate_not_written_as_clauses(tmp_path, capsys):
    path = _write(tmp_path, "m.aag", SAFE1_AAG)
    cpath = tmp_path / "inv.txt"
    rc = main([path, "--engine", "kind", "--certificate", str(cpath)])
    captured = capsys.readouterr()
    assert rc == 20
    assert not cpath.exists()
    assert "k-induction" in captured.err


def test_binary_input_accepted(tmp_path, capsys):
    aig = parse_aiger(CNT2_AAG.encode())
    path = _write(tmp_path, "m.aig", serialize_aiger(aig, ascii=False))
    rc = main([path, "--engine", "ic3", "--dynamic"])
    capsys.readouterr()
    assert rc == 10


def test_verify_flag_accepted(tmp_path, capsys):
    path = _write(tmp_path, "m.aag", CNT2_AAG)
    rc = main([path, "--engine", "ic3", "--verify"])
    capsys.readouterr()
    assert rc == 10


def test_usage_errors(tmp_path, capsys):
    assert main([str(tmp_path / "missing.aag")]) == 2
    bad = _write(tmp_path, "bad.aag", "garbage\n")
    assert main([bad]) == 2
    no_prop = _write(tmp_path, "noprop.aag", "aag 1 0 1 0 0\n2 2\n")
    assert main([no_prop]) == 2
    ok = _write(tmp_path, "m.aag", SAFE1_AAG)
    assert main([ok, "--bad-index", "3"]) == 2
    capsys.readouterr()


def test_time_limit_single_engine(tmp_path, capsys):
    path = _write(tmp_path, "m.aag", SAFE1_AAG)
    rc = main([path, "--engine", "bmc", "--time-limit", "0.0"])
    capsys.readouterr()
    assert rc == 0
