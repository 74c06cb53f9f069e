"""Run the randomized invariance suites and write the JSON report.

    python scripts/verify_theorems.py [--trials 1000] [--seed 7] [--out report.json]

Same suites as ``flagfold verify-theorems``; this wrapper also records
per-suite wall time so the runtime limits can be eyeballed.
"""

import argparse
import json
import sys
import time

from flagfold.suites import ALL_SUITES, SUITES, RunConfig, corpus


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=7)
    ap.add_argument("--n", type=int, default=12)
    ap.add_argument("--moves", type=int, default=20)
    ap.add_argument("--suite", action="append", choices=ALL_SUITES)
    ap.add_argument("--out")
    args = ap.parse_args()

    cfg = RunConfig(trials=args.trials, seed=args.seed, n=args.n, moves=args.moves,
                    suites=tuple(args.suite or ALL_SUITES))
    graphs = corpus(cfg)
    report = {"config": cfg.to_json(), "suites": {}}
    for name in cfg.suites:
        t0 = time.perf_counter()
        r = SUITES[name](cfg, graphs)
        dt = time.perf_counter() - t0
        report["suites"][name] = {**r.to_json(), "seconds": round(dt, 2)}
        print(f"{'PASS' if r.passed else 'FAIL'} {name:22s} {r.checked:6d} checks  {dt:6.1f}s")
    report["passed"] = all(s["passed"] for s in report["suites"].values())
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(report, fh, indent=2, sort_keys=True)
    return 0 if report["passed"] else 1


if __name__ == "__main__":
    sys.exit(main())
