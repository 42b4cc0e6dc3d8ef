"""Command-line entry point.

Exit codes follow the hardware model-checking competition convention:
10 = unsafe (counterexample found), 20 = safe (proof found), 0 = unknown,
2 = usage or input error.  Stdout carries the matching verdict block
("0"/"1", the property line "b<i>", and for unsafe the witness body).
"""

from __future__ import annotations

import argparse
import sys
import time
from typing import List, Optional

from .aiger import AigerError, parse_aiger
from .certify import format_certificate, format_witness
from .orchestrator import (EngineConfig, build_transys, run_config,
                           run_portfolio, verify_verdict)
from .verdicts import InvariantCert, Verdict

EXIT_UNSAFE = 10
EXIT_SAFE = 20
EXIT_UNKNOWN = 0
EXIT_USAGE = 2


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="mcheck",
        description="Bit-level safety model checker for AIGER models "
                    "(IC3, BMC, k-induction, parallel portfolio).")
    p.add_argument("file", help="model file, ASCII (.aag) or binary (.aig)")
    p.add_argument("--engine", choices=["ic3", "bmc", "kind", "portfolio"],
                   default="portfolio")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--ctg", action="store_true",
                   help="IC3: fixed CTG generalization")
    g.add_argument("--exctg", action="store_true",
                   help="IC3: fixed extended-CTG generalization")
    g.add_argument("--dynamic", action="store_true",
                   help="IC3: escalate generalization dynamically (default)")
    g.add_argument("--standard", action="store_true",
                   help="IC3: plain drop-literal generalization")
    p.add_argument("--inn", action="store_true",
                   help="IC3: extend the state with internal signals")
    p.add_argument("--abs-cst", action="store_true",
                   help="IC3: localize invariant constraints by refinement")
    p.add_argument("--bmc-max", type=int, default=1000, metavar="N",
                   help="BMC depth bound (default 1000)")
    p.add_argument("--bmc-step", type=int, default=1, metavar="N",
                   help="BMC frames per incremental query (default 1)")
    p.add_argument("--kind-max", type=int, default=50, metavar="N",
                   help="k-induction depth bound (default 50)")
    p.add_argument("--simple-path", action="store_true",
                   help="k-induction: add state-uniqueness constraints "
                        "(caps the search at k=10)")
    p.add_argument("--workers", type=int, default=4, metavar="N",
                   help="portfolio thread count (default 4)")
    p.add_argument("--time-limit", type=float, default=None, metavar="SECS")
    p.add_argument("--bad-index", type=int, default=0, metavar="I",
                   help="which bad property to check (default 0)")
    p.add_argument("--witness", metavar="PATH",
                   help="write the counterexample witness here when unsafe")
    p.add_argument("--certificate", metavar="PATH",
                   help="write the inductive invariant here when safe")
    p.add_argument("--verify", action="store_true",
                   help="independently re-verify the verdict before reporting")
    p.add_argument("--seed", type=int, default=0, metavar="N")
    return p


def _strategy(args: argparse.Namespace) -> str:
    if args.ctg:
        return "ctg"
    if args.exctg:
        return "exctg"
    if args.standard:
        return "standard"
    return "dynamic"


def _single_config(args: argparse.Namespace) -> EngineConfig:
    if args.engine == "ic3":
        return EngineConfig("ic3", strategy=_strategy(args), inn=args.inn,
                            abs_cst=args.abs_cst, seed=args.seed)
    if args.engine == "bmc":
        return EngineConfig("bmc", bmc_step=args.bmc_step,
                            bmc_max=args.bmc_max, seed=args.seed)
    return EngineConfig("kind", kind_max=args.kind_max,
                        simple_path=args.simple_path, seed=args.seed)


def _report(verdict: Verdict, bad_index: int, args: argparse.Namespace,
            out=None) -> int:
    out = out or sys.stdout
    if verdict.is_unsafe:
        assert verdict.witness is not None
        out.write(format_witness(verdict.witness))
        if args.witness:
            with open(args.witness, "w") as f:
                f.write(format_witness(verdict.witness))
        return EXIT_UNSAFE
    if verdict.is_safe:
        out.write("0\nb%d\n.\n" % bad_index)
        if args.certificate:
            _write_certificate(verdict, args)
        return EXIT_SAFE
    out.write("2\nb%d\n.\n" % bad_index)
    if verdict.reason:
        print("unknown: %s" % verdict.reason, file=sys.stderr)
    return EXIT_UNKNOWN


def _write_certificate(verdict: Verdict, args: argparse.Namespace) -> None:
    cert = verdict.certificate
    if not isinstance(cert, InvariantCert):
        print("certificate not written: proof is a k-induction record, "
              "not a clause invariant", file=sys.stderr)
        return
    aig = getattr(args, "_aig")
    ts = build_transys(aig, args.bad_index, simplify=False)
    try:
        text = format_certificate(cert, ts)
    except ValueError as exc:
        print("certificate not written: %s" % exc, file=sys.stderr)
        return
    with open(args.certificate, "w") as f:
        f.write(text)


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    try:
        with open(args.file, "rb") as f:
            data = f.read()
        aig = parse_aiger(data)
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_USAGE
    except AigerError as exc:
        print("error: %s: %s" % (args.file, exc), file=sys.stderr)
        return EXIT_USAGE

    if not aig.bads:
        print("error: model has no bad property", file=sys.stderr)
        return EXIT_USAGE
    if not 0 <= args.bad_index < len(aig.bads):
        print("error: bad index %d out of range (model has %d)"
              % (args.bad_index, len(aig.bads)), file=sys.stderr)
        return EXIT_USAGE
    args._aig = aig

    if args.engine == "portfolio":
        result = run_portfolio(aig, bad_index=args.bad_index,
                               workers=args.workers,
                               time_limit=args.time_limit)
        return _report(result.verdict, args.bad_index, args)

    cfg = _single_config(args)
    cancel = None
    if args.time_limit is not None:
        deadline = time.monotonic() + args.time_limit
        cancel = lambda: time.monotonic() >= deadline  # noqa: E731
    verdict = run_config(aig, cfg, bad_index=args.bad_index, cancel=cancel)
    if args.verify and verdict.definitive:
        ok, reason = verify_verdict(aig, args.bad_index, verdict)
        if not ok:
            print("verification of %s verdict failed: %s"
                  % (verdict.status, reason), file=sys.stderr)
            return 1
    return _report(verdict, args.bad_index, args)


if __name__ == "__main__":
    sys.exit(main())
