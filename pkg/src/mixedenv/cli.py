"""Command-line front end.

Subcommands: ``affine``, ``simulable``, ``volume``, ``cross-section``,
``two-pauli``. Every run is deterministic for fixed flags and seed.

Exit codes: 0 success (or simulable), 1 not simulable, 2 usage error,
3 outside the tetrahedron, 4 I/O error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .channel_map import ChannelParams, analytic_affine, canonical_diagonal, extract_affine, is_zero_shift
from .geometry import (
    TETRAHEDRON_VOLUME,
    CrossSection,
    analytic_volume,
    canonical_sign_representative,
    cross_section,
    epsilons_from_point,
    in_tetrahedron,
    invert_to_angles,
    is_simulable,
    mc_volume_fraction,
    two_pauli_point,
    two_pauli_simulable,
)

EXIT_OK = 0
EXIT_NOT_SIMULABLE = 1
EXIT_USAGE = 2
EXIT_OUTSIDE = 3
EXIT_IO = 4

REFERENCE_FRACTION = 3.0 / 8.0
REFERENCE_VOLUME = 1.0


@dataclass
class RunConfig:
    command: str
    values: dict[str, Any] = field(default_factory=dict)
    seed: int | None = None
    out: str | None = None
    format: str = "text"


def _num(v: float) -> str:
    # repr is the shortest string that round-trips; + 0.0 drops negative zero
    return repr(float(v) + 0.0)


def _vec(v) -> str:
    return "[" + ", ".join(_num(x) for x in np.ravel(v)) + "]"


def _clean(v):
    """Convert numpy values to JSON-ready Python objects."""
    if isinstance(v, np.ndarray):
        return _clean(v.tolist())
    if isinstance(v, (list, tuple)):
        return [_clean(x) for x in v]
    if isinstance(v, dict):
        return {k: _clean(x) for k, x in v.items()}
    if isinstance(v, (np.floating, float)):
        return float(v) + 0.0
    if isinstance(v, (np.integer,)):
        return int(v)
    if isinstance(v, np.bool_):
        return bool(v)
    return v


def _emit(report: dict, lines: list[str], fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(_clean(report), indent=2))
    else:
        print("\n".join(lines))


def _matrix_lines(title: str, m) -> list[str]:
    return [f"{title}:"] + ["  " + _vec(row) for row in np.asarray(m)]


# -- affine -------------------------------------------------------------------


def cmd_affine(cfg: RunConfig) -> int:
    v = cfg.values
    params = ChannelParams.from_values(v["alpha"], v["beta"], v["gamma"], v["xi"], v["eta"], v["lambda_mix"])
    tomo = extract_affine(params)
    closed = analytic_affine(params)
    dev = tomo.max_deviation(closed)
    sd = canonical_diagonal(tomo.m)
    zero = is_zero_shift(params)
    report = {
        "parameters": dict(zip(("alpha", "beta", "gamma", "xi", "eta", "lambda"), params.as_tuple())),
        "m_tomography": tomo.m,
        "c_tomography": tomo.c,
        "m_closed_form": closed.m,
        "c_closed_form": closed.c,
        "max_deviation": dev,
        "signed_diagonal": sd.d,
        "zero_shift": zero,
    }
    p = report["parameters"]
    lines = ["parameters: " + " ".join(f"{k}={_num(x)}" for k, x in p.items())]
    lines += _matrix_lines("M (tomography)", tomo.m)
    lines += [f"C (tomography): {_vec(tomo.c)}"]
    lines += _matrix_lines("M (closed form)", closed.m)
    lines += [f"C (closed form): {_vec(closed.c)}"]
    lines += [f"max deviation: {_num(dev)}"]
    lines += [f"signed diagonal: {_vec(sd.d)}"]
    lines += [f"zero shift: {'yes' if zero else 'no'}"]
    _emit(report, lines, cfg.format)
    return EXIT_OK


# -- simulable ----------------------------------------------------------------


def cmd_simulable(cfg: RunConfig) -> int:
    point = np.array([cfg.values["x"], cfg.values["y"], cfg.values["z"]], dtype=float)
    inside = bool(in_tetrahedron(point))
    eps = epsilons_from_point(point)
    rep = canonical_sign_representative(point)
    sim = bool(is_simulable(point))
    angles = invert_to_angles(point) if sim else None
    if not inside:
        verdict, code = "outside tetrahedron", EXIT_OUTSIDE
    elif sim:
        verdict, code = "simulable", EXIT_OK
    else:
        verdict, code = "not simulable", EXIT_NOT_SIMULABLE
    report = {
        "point": point,
        "in_tetrahedron": inside,
        "epsilons": eps,
        "sign_representative": None if rep is None else list(rep),
        "simulable": sim,
        "angles": None if angles is None else list(angles),
        "verdict": verdict,
    }
    lines = [
        f"point: {_vec(point)}",
        f"in tetrahedron: {'yes' if inside else 'no'}",
        f"epsilons: {_vec(eps)}",
        f"sign representative: {'none' if rep is None else _vec(rep)}",
        f"angles (a, b, c): {'none' if angles is None else _vec(angles)}",
        f"verdict: {verdict}",
    ]
    _emit(report, lines, cfg.format)
    return code


# -- volume -------------------------------------------------------------------


def cmd_volume(cfg: RunConfig) -> int:
    v = cfg.values
    est = mc_volume_fraction(v["samples"], cfg.seed, workers=v["workers"])
    quad = analytic_volume(v["quad"])
    report = {
        "samples": est.n_samples,
        "seed": cfg.seed,
        "mc_fraction": est.fraction,
        "mc_stderr": est.stderr,
        "mc_acceptance": est.acceptance,
        "mc_acceptance_stderr": est.acceptance_stderr,
        "mc_simulable_volume": est.simulable_volume,
        "quadrature_points": v["quad"],
        "quadrature_volume": quad,
        "quadrature_fraction": quad / TETRAHEDRON_VOLUME,
        "tetrahedron_volume": TETRAHEDRON_VOLUME,
        "reference_fraction": REFERENCE_FRACTION,
        "reference_volume": REFERENCE_VOLUME,
    }
    lines = [
        f"samples: {est.n_samples}  seed: {cfg.seed}",
        f"monte carlo fraction: {_num(est.fraction)} +/- {_num(est.stderr)}",
        f"tetrahedron acceptance: {_num(est.acceptance)} +/- {_num(est.acceptance_stderr)} (reference 1/3)",
        f"monte carlo simulable volume: {_num(est.simulable_volume)}",
        f"quadrature volume ({v['quad']} points): {_num(quad)}",
        f"quadrature fraction: {_num(quad / TETRAHEDRON_VOLUME)}",
        f"reference: fraction {_num(REFERENCE_FRACTION)}, volume {_num(REFERENCE_VOLUME)}",
    ]
    _emit(report, lines, cfg.format)
    return EXIT_OK


# -- cross-section ------------------------------------------------------------

SVG_SIZE = 600
SVG_MARGIN = 30
SHADE_COLOR = "#3b6ea5"


def _svg_coord(v: float) -> str:
    return f"{v:.3f}".rstrip("0").rstrip(".")


def render_cross_section_svg(cs: CrossSection) -> str:
    """Fixed 600x600 SVG: slice outline plus the shaded simulable cells.

    Shaded cells are merged into one rectangle per horizontal run.
    """
    span = SVG_SIZE - 2 * SVG_MARGIN
    cell = span / cs.grid_n

    def px(x):
        return SVG_MARGIN + (x + 1.0) / 2.0 * span

    def py(y):
        return SVG_MARGIN + (1.0 - y) / 2.0 * span

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_SIZE}" height="{SVG_SIZE}" '
        f'viewBox="0 0 {SVG_SIZE} {SVG_SIZE}" shape-rendering="crispEdges">',
        f'<rect x="0" y="0" width="{SVG_SIZE}" height="{SVG_SIZE}" fill="#ffffff"/>',
        f'<rect x="{SVG_MARGIN}" y="{SVG_MARGIN}" width="{span}" height="{span}" fill="none" stroke="#cccccc"/>',
        f'<g fill="{SHADE_COLOR}" stroke="none">',
    ]
    for i in range(cs.grid_n):
        row = cs.mask[i]
        top = py(-1.0 + (i + 1) * 2.0 / cs.grid_n)
        j = 0
        while j < cs.grid_n:
            if not row[j]:
                j += 1
                continue
            start = j
            while j < cs.grid_n and row[j]:
                j += 1
            out.append(
                f'<rect x="{_svg_coord(px(-1.0) + start * cell)}" y="{_svg_coord(top)}" '
                f'width="{_svg_coord((j - start) * cell)}" height="{_svg_coord(cell)}"/>'
            )
    out.append("</g>")
    pts = " ".join(f"{_svg_coord(px(x))},{_svg_coord(py(y))}" for x, y in cs.rect)
    out.append(f'<polygon points="{pts}" fill="none" stroke="#000000" stroke-width="2"/>')
    out.append(
        f'<text x="{SVG_MARGIN}" y="{SVG_MARGIN - 10}" font-family="monospace" font-size="14">'
        f"z0 = {_num(cs.z0)}  shaded area = {_num(cs.area)}</text>"
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"


def cmd_cross_section(cfg: RunConfig) -> int:
    v = cfg.values
    cs = cross_section(v["z0"], v["grid"])
    svg = render_cross_section_svg(cs)
    try:
        with open(cfg.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(svg)
    except OSError as exc:
        print(f"error: cannot write {cfg.out}: {exc.strerror}", file=sys.stderr)
        return EXIT_IO
    report = {
        "z0": cs.z0,
        "grid": cs.grid_n,
        "area": cs.area,
        "slice_area": cs.slice_area,
        "fraction": cs.fraction,
        "out": cfg.out,
    }
    lines = [
        f"z0: {_num(cs.z0)}  grid: {cs.grid_n}",
        f"shaded area: {_num(cs.area)}",
        f"slice area: {_num(cs.slice_area)}",
        f"shaded fraction: {_num(cs.fraction)}",
        f"wrote: {cfg.out}",
    ]
    _emit(report, lines, cfg.format)
    return EXIT_OK


# -- two-pauli ----------------------------------------------------------------


def cmd_two_pauli(cfg: RunConfig) -> int:
    steps = cfg.values["steps"]
    kappas = np.linspace(0.0, 1.0, steps)
    rows = []
    for k in kappas:
        rows.append({"kappa": float(k), "point": list(two_pauli_point(k)), "simulable": two_pauli_simulable(k)})
    yes = [r["kappa"] for r in rows if r["simulable"]]
    n_no = len(rows) - len(yes)
    if yes:
        summary = f"simulable at kappa in {{{', '.join(_num(k) for k in yes)}}}; not simulable at the other {n_no} of {len(rows)} grid points"
    else:
        summary = f"not simulable at any of the {len(rows)} grid points"
    # (0, 0, -1) at kappa = 0 is an edge midpoint of the tetrahedron and is reachable
    only_identity = yes == [1.0]
    report = {"steps": steps, "rows": rows, "simulable_kappas": yes, "only_at_identity": only_identity, "summary": summary}
    lines = [
        f"kappa={_num(r['kappa'])} point={_vec(r['point'])} {'simulable' if r['simulable'] else 'not simulable'}"
        for r in rows
    ]
    lines.append(f"summary: {summary}")
    _emit(report, lines, cfg.format)
    return EXIT_OK


# -- parser -------------------------------------------------------------------

COMMANDS = {
    "affine": cmd_affine,
    "simulable": cmd_simulable,
    "volume": cmd_volume,
    "cross-section": cmd_cross_section,
    "two-pauli": cmd_two_pauli,
}


def _finite(text: str) -> float:
    value = float(text)
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"not a finite number: {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mixedenv",
        description="Qubit channels simulated by a one-qubit mixed-state environment.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("affine", parents=[fmt], help="affine Bloch map of one channel")
    for name in ("alpha", "beta", "gamma", "xi", "eta"):
        p.add_argument(f"--{name}", type=_finite, default=0.0, help="radians")
    p.add_argument("--lambda", dest="lambda_mix", type=_finite, default=0.0, help="pure-part weight in [0, 1]")

    p = sub.add_parser("simulable", parents=[fmt], help="check a diagonal Pauli map (x, y, z)")
    p.add_argument("coords", nargs="*", type=_finite, metavar="X Y Z")
    for name in ("x", "y", "z"):
        p.add_argument(f"--{name}", type=_finite, default=None)

    p = sub.add_parser("volume", parents=[fmt], help="simulable volume by Monte Carlo and quadrature")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--quad", type=int, default=10_000, help="quadrature points over z")
    p.add_argument("--workers", type=int, default=1)

    p = sub.add_parser("cross-section", parents=[fmt], help="write an SVG slice at z = z0")
    p.add_argument("--z0", type=_finite, required=True)
    p.add_argument("--grid", type=int, default=256)
    p.add_argument("--out", required=True)

    p = sub.add_parser("two-pauli", parents=[fmt], help="scan the two-Pauli family")
    p.add_argument("--steps", type=int, default=11)
    return parser


def parse_config(argv: list[str] | None = None) -> RunConfig:
    parser = build_parser()
    args = parser.parse_args(argv)
    cfg = RunConfig(command=args.command, format=args.format)
    if args.command == "affine":
        if not 0.0 <= args.lambda_mix <= 1.0:
            parser.error("--lambda must lie in [0, 1]")
        cfg.values = {k: getattr(args, k) for k in ("alpha", "beta", "gamma", "xi", "eta", "lambda_mix")}
    elif args.command == "simulable":
        flags = (args.x, args.y, args.z)
        if args.coords and any(f is not None for f in flags):
            parser.error("give the point either positionally or with --x/--y/--z, not both")
        if args.coords:
            if len(args.coords) != 3:
                parser.error("expected three coordinates X Y Z")
            flags = tuple(args.coords)
        if any(f is None for f in flags):
            parser.error("missing coordinate; pass X Y Z or --x --y --z")
        cfg.values = dict(zip("xyz", flags))
    elif args.command == "volume":
        if args.samples < 1:
            parser.error("--samples must be positive")
        if args.quad < 16:
            parser.error("--quad must be at least 16")
        if args.workers < 1:
            parser.error("--workers must be positive")
        cfg.seed = args.seed
        cfg.values = {"samples": args.samples, "quad": args.quad, "workers": args.workers}
    elif args.command == "cross-section":
        if not -1.0 <= args.z0 <= 1.0:
            parser.error("--z0 must lie in [-1, 1]")
        if args.grid < 1:
            parser.error("--grid must be positive")
        cfg.out = args.out
        cfg.values = {"z0": args.z0, "grid": args.grid}
    elif args.command == "two-pauli":
        if args.steps < 2:
            parser.error("--steps must be at least 2")
        cfg.values = {"steps": args.steps}
    return cfg


def main(argv: list[str] | None = None) -> int:
    cfg = parse_config(argv)
    return COMMANDS[cfg.command](cfg)


if __name__ == "__main__":
    sys.exit(main())
