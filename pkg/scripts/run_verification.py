"""Run the brute-force verification suites and write a JSON summary."""

import argparse
import json
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from delpezzo4 import checks


@dataclass
class VerificationConfig:
    suites: list[str] = field(default_factory=lambda: list(checks.SUITES))
    theta_samples: int = 24
    seed: int = 0
    output: Path | None = None


def run(cfg: VerificationConfig) -> dict:
    rows = []
    for name in cfg.suites:
        start = time.perf_counter()
        if name == "theta-uniqueness":
            res = checks.suite_theta_uniqueness(cfg.theta_samples, cfg.seed)
        else:
            res = checks.SUITES[name]()
        row = res.to_json() | {"seconds": round(time.perf_counter() - start, 3)}
        rows.append(row)
        print(f"{'PASS' if res.passed else 'FAIL'} {name:18s} checked={res.checked:<7d} {row['seconds']:.2f}s")
    cfg_json = asdict(cfg) | {"output": str(cfg.output) if cfg.output else None}
    return {"config": cfg_json, "results": rows, "passed": all(r["passed"] for r in rows)}


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--suite", action="append", choices=sorted(checks.SUITES), help="repeatable; default all")
    ap.add_argument("--theta-samples", type=int, default=24)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--output", type=Path)
    a = ap.parse_args()
    cfg = VerificationConfig(a.suite or list(checks.SUITES), a.theta_samples, a.seed, a.output)
    summary = run(cfg)
    if cfg.output:
        cfg.output.write_text(json.dumps(summary, indent=2))
    return 0 if summary["passed"] else 1


if __name__ == "__main__":
    raise SystemExit(main())
