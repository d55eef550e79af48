"""Simulable volume by Monte Carlo over several seeds, plus the quadrature value.

Writes a JSON summary; with --out omitted, prints it.
"""

import argparse
import json
import time

import numpy as np

from mixedenv.geometry import TETRAHEDRON_VOLUME, analytic_volume, mc_volume_fraction


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--samples", type=int, default=1_000_000)
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2, 3, 4])
    ap.add_argument("--quad", type=int, default=10_000)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out")
    args = ap.parse_args()

    runs = []
    for seed in args.seeds:
        t0 = time.perf_counter()
        est = mc_volume_fraction(args.samples, seed, workers=args.workers)
        runs.append(
            {
                "seed": seed,
                "fraction": est.fraction,
                "stderr": est.stderr,
                "acceptance": est.acceptance,
                "z_score": (est.fraction - 0.375) / est.stderr,
                "seconds": time.perf_counter() - t0,
            }
        )
    fractions = np.array([r["fraction"] for r in runs])
    t0 = time.perf_counter()
    vol = analytic_volume(args.quad)
    report = {
        "samples": args.samples,
        "runs": runs,
        "mean_fraction": float(fractions.mean()),
        "quadrature_volume": vol,
        "quadrature_fraction": vol / TETRAHEDRON_VOLUME,
        "quadrature_seconds": time.perf_counter() - t0,
    }
    text = json.dumps(report, indent=2)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    print(text)


if __name__ == "__main__":
    main()
