#!/usr/bin/env python3
"""Compare the two over-segmentation algorithms on a ground-truthed dataset.

Reports, per algorithm: average superpixel count, average time per image,
and the average over-segmentation error (pixels not in their superpixel's
majority ground-truth class).

    python3 scripts/superpixel_study.py --dataset DIR
"""

import argparse
import time
from pathlib import Path

import numpy as np

from scis.oversegment import (
    FhParams,
    SlicParams,
    felzenszwalb_segment,
    oversegmentation_error,
    slic_segment,
)
from scis.raster import load_image, load_label_map


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--dataset", required=True,
                    help="directory with images/ and gt/ subdirectories")
    ap.add_argument("--k", type=float, default=24.0)
    ap.add_argument("--min-size", type=int, default=20)
    ap.add_argument("--sigma", type=float, default=0.8)
    ap.add_argument("--avg-size", type=int, default=100)
    ap.add_argument("--compactness", type=float, default=10.0)
    args = ap.parse_args()

    dataset = Path(args.dataset)
    algos = {
        "felzenszwalb": lambda img: felzenszwalb_segment(
            img, FhParams(k=args.k, min_size=args.min_size, smoothing_sigma=args.sigma)),
        "slic": lambda img: slic_segment(
            img, SlicParams(avg_size=args.avg_size, compactness=args.compactness)),
    }
    stats = {name: {"sp": [], "time": [], "err": []} for name in algos}

    for gt_path in sorted((dataset / "gt").glob("*.png")):
        image_id = gt_path.stem.rsplit("_", 1)[0]
        image_path = dataset / "images" / f"{image_id}.png"
        if not image_path.exists():
            continue
        image = load_image(image_path)
        gt = load_label_map(gt_path)
        if not gt.is_total:
            continue
        for name, run in algos.items():
            start = time.perf_counter()
            sp = run(image)
            elapsed = time.perf_counter() - start
            stats[name]["sp"].append(sp.num_superpixels)
            stats[name]["time"].append(elapsed)
            stats[name]["err"].append(oversegmentation_error(sp, gt))

    print(f"{'algorithm':<14}{'avg sp':>10}{'avg time (s)':>14}{'avg error (%)':>15}")
    for name, s in stats.items():
        if not s["sp"]:
            print(f"{name:<14}{'n/a':>10}")
            continue
        print(f"{name:<14}{np.mean(s['sp']):>10.0f}{np.mean(s['time']):>14.3f}"
              f"{np.mean(s['err']):>15.2f}")


if __name__ == "__main__":
    main()
