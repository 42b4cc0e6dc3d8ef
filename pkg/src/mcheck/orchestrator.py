"""Engine configuration, single-engine runs, and the parallel portfolio.

The portfolio launches one thread per configuration, takes the first
definitive (safe/unsafe) verdict, re-verifies it against the full model
before reporting, and cancels the rest with a bounded grace period.
"""

from __future__ import annotations

import queue
import threading
import time
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Sequence, Tuple

from .aiger import Aig
from . import engines, ic3
from .certify import verify_certificate, verify_witness
from .ic3 import DYNAMIC, Ic3Options
from .transys import TranSys, encode, simplify_cnf
from .verdicts import Verdict, unknown

GRACE_PERIOD = 2.0  # seconds a cancelled engine may take to wind down


@dataclass
class EngineConfig:
    engine: str = "ic3"  # ic3 | bmc | kind
    strategy: str = DYNAMIC
    inn: bool = False
    abs_cst: bool = False
    bmc_step: int = 1
    bmc_max: int = 1000
    kind_max: int = 50
    simple_path: bool = False
    seed: int = 0

    def __post_init__(self) -> None:
        if self.engine not in ("ic3", "bmc", "kind"):
            raise ValueError("unknown engine %r" % self.engine)
        if self.engine != "ic3" and (self.inn or self.abs_cst):
            raise ValueError("inn/abs-cst are IC3-only flags")

    @property
    def name(self) -> str:
        if self.engine == "ic3":
            parts = ["ic3", self.strategy]
            if self.inn:
                parts.append("inn")
            if self.abs_cst:
                parts.append("abs-cst")
            return "+".join(parts)
        if self.engine == "bmc":
            return "bmc(step=%d)" % self.bmc_step
        return "kind" + ("+simple-path" if self.simple_path else "")


def default_configs(workers: int) -> List[EngineConfig]:
    """Ordered round-robin list, truncated or cyclically extended."""
    base = [
        EngineConfig("ic3", strategy="dynamic"),
        EngineConfig("ic3", strategy="ctg"),
        EngineConfig("ic3", strategy="dynamic", inn=True),
        EngineConfig("ic3", strategy="dynamic", abs_cst=True),
        EngineConfig("bmc", bmc_step=1),
        EngineConfig("bmc", bmc_step=10),
        EngineConfig("kind"),
    ]
    out = []
    for i in range(max(1, workers)):
        cfg = base[i % len(base)]
        if i >= len(base):
            cfg = replace(cfg, seed=i // len(base))
        out.append(cfg)
    return out


def build_transys(aig: Aig, bad_index: int = 0, simplify: bool = True) -> TranSys:
    ts = encode(aig, bad_index=bad_index)
    if simplify:
        ts = simplify_cnf(ts)
    return ts


def run_config(
    aig: Aig,
    config: EngineConfig,
    bad_index: int = 0,
    cancel: Optional[Callable[[], bool]] = None,
) -> Verdict:
    """Run one engine configuration to completion (or cancellation)."""
    ts = build_transys(aig, bad_index)
    if config.engine == "ic3":
        opts = Ic3Options(strategy=config.strategy, inn=config.inn,
                          abs_cst=config.abs_cst, seed=config.seed)
        return ic3.check(ts, opts, cancel)
    if config.engine == "bmc":
        return engines.bmc(ts, max_depth=config.bmc_max, step=config.bmc_step,
                           cancel=cancel)
    return engines.kind(ts, max_k=config.kind_max,
                        simple_path=config.simple_path, cancel=cancel)


def verify_verdict(aig: Aig, bad_index: int, verdict: Verdict) -> Tuple[bool, str]:
    """Independent check of a definitive verdict against the full model."""
    if verdict.is_unsafe:
        assert verdict.witness is not None
        return verify_witness(aig, verdict.witness)
    if verdict.is_safe:
        ts = build_transys(aig, bad_index, simplify=False)
        return verify_certificate(ts, verdict.certificate)
    return True, "ok"


@dataclass
class PortfolioResult:
    verdict: Verdict
    winner: Optional[EngineConfig] = None
    rejected: List[Tuple[EngineConfig, str]] = field(default_factory=list)


def run_portfolio(
    aig: Aig,
    bad_index: int = 0,
    workers: int = 4,
    configs: Optional[Sequence[EngineConfig]] = None,
    time_limit: Optional[float] = None,
    verify: bool = True,
    grace_period: float = GRACE_PERIOD,
) -> PortfolioResult:
    """First definitive verdict wins; losers are cancelled and must wind
    down within `grace_period` seconds."""
    if configs is None:
        configs = default_configs(workers)
    configs = list(configs)[: max(1, workers)]

    stop = threading.Event()
    results: "queue.Queue[Tuple[EngineConfig, Verdict]]" = queue.Queue()

    def worker(cfg: EngineConfig) -> None:
        try:
            v = run_config(aig, cfg, bad_index, cancel=stop.is_set)
        except Exception as exc:  # engine bug: surface as a non-verdict
            v = unknown("engine error: %s" % exc)
        results.put((cfg, v))

    threads = [threading.Thread(target=worker, args=(cfg,), daemon=True)
               for cfg in configs]
    start = time.monotonic()
    for t in threads:
        t.start()

    rejected: List[Tuple[EngineConfig, str]] = []
    winner: Optional[EngineConfig] = None
    verdict: Optional[Verdict] = None
    pending = len(threads)
    while pending:
        timeout = None
        if time_limit is not None:
            timeout = time_limit - (time.monotonic() - start)
            if timeout <= 0:
                break
        try:
            cfg, v = results.get(timeout=timeout)
        except queue.Empty:
            break
        pending -= 1
        if not v.definitive:
            continue
        if verify:
            ok, reason = verify_verdict(aig, bad_index, v)
            if not ok:
                rejected.append((cfg, reason))
                continue
        winner, verdict = cfg, v
        break

    stop.set()
    deadline = time.monotonic() + grace_period
    for t in threads:
        t.join(timeout=max(0.0, deadline - time.monotonic()))

    if verdict is None:
        reason = "no definitive verdict"
        if time_limit is not None and time.monotonic() - start >= time_limit:
            reason = "time limit reached"
        if rejected:
            reason += "; %d verdicts failed verification" % len(rejected)
        return PortfolioResult(unknown(reason), None, rejected)
    return PortfolioResult(verdict, winner, rejected)
