#!/usr/bin/env python3
"""Run every config in configs/ and write one JSON report per config."""
import argparse
import sys
import time
from pathlib import Path

from linsets.harness import load_config, run_sweep

ROOT = Path(__file__).resolve().parents[1]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--configs", type=Path, default=ROOT / "configs")
    ap.add_argument("--out", type=Path, default=ROOT / "results")
    ap.add_argument("--workers", type=int, default=None)
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    failed = 0
    for cfg_path in sorted(args.configs.glob("*.ini")):
        t0 = time.perf_counter()
        rep = run_sweep(load_config(cfg_path, workers=args.workers))
        (args.out / f"{cfg_path.stem}.json").write_text(rep.to_json())
        failed += not rep.ok
        print(f"{cfg_path.stem:16s} cases={rep.cases:6d} failures={rep.failures} "
              f"({time.perf_counter() - t0:.1f} s)")
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
