#!/usr/bin/env python3
"""Sweep the SVM (C, gamma) grid over a seeded dataset and report mean accuracy.

Expects the benchmark layout (images/, gt/, seeds/). Optional: reproduce the
classifier-selection study on your own data.

    python3 scripts/param_sweep.py --dataset DIR --seeds DIR \
        --c-values 1 2 4 8 --gamma-values 1 2 4 8
"""

import argparse
import time

from scis.evalkit import run_benchmark
from scis.oversegment import FhParams
from scis.svm import SvmParams


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dataset", required=True)
    ap.add_argument("--seeds", required=True)
    ap.add_argument("--c-values", nargs="+", type=float, default=[1, 2, 4, 8, 16])
    ap.add_argument("--gamma-values", nargs="+", type=float, default=[1, 2, 4, 8, 16])
    ap.add_argument("--k", type=float, default=24.0)
    ap.add_argument("--min-size", type=int, default=20)
    ap.add_argument("--sigma", type=float, default=0.8)
    args = ap.parse_args()

    fh = FhParams(k=args.k, min_size=args.min_size, smoothing_sigma=args.sigma)
    print("c,gamma,mean_acc,mean_dice,mean_ms,rows")
    for c in args.c_values:
        for gamma in args.gamma_values:
            start = time.perf_counter()
            report = run_benchmark(args.dataset, args.seeds, fh=fh,
                                   svm=SvmParams(c=c, gamma=gamma))
            means = report.means()
            print(f"{c},{gamma},{means['acc']:.3f},{means['dice']:.3f},"
                  f"{means['ms']:.1f},{len(report.rows)}")
            _ = time.perf_counter() - start


if __name__ == "__main__":
    main()
