"""Render SVG slices of the simulable region and tabulate shaded fractions.

The table compares the grid fraction with the exact value -|z| ln|z| / (1 - z^2).
"""

import argparse
import math
from pathlib import Path

from mixedenv.cli import render_cross_section_svg
from mixedenv.geometry import cross_section


def exact_fraction(z: float) -> float:
    z = abs(z)
    if z == 0:
        return 0.0
    if z == 1:
        return 1.0  # degenerate slice: the whole diagonal segment
    return -z * math.log(z) / (1 - z * z)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--z", type=float, nargs="+", default=[-0.95, -0.5, -0.05, 0.05, 0.25, 0.5, 0.75, 0.95, 0.99])
    ap.add_argument("--grid", type=int, default=512)
    ap.add_argument("--outdir", default="cross_sections")
    args = ap.parse_args()

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    print(f"{'z0':>7} {'grid fraction':>14} {'exact':>8} {'area':>8}")
    for z in args.z:
        cs = cross_section(z, args.grid)
        (outdir / f"slice_{z:+.2f}.svg").write_text(render_cross_section_svg(cs))
        print(f"{z:7.2f} {cs.fraction:14.4f} {exact_fraction(z):8.4f} {cs.area:8.4f}")


if __name__ == "__main__":
    main()
