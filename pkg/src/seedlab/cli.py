"""Command line: ``seedlab render | sweep | journey | analyze``.

Exit codes: 0 success, 1 runtime failure, 2 usage error.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .connectivity import label_components, disconnectivity_rate
from .io import read_records_csv, write_image, write_records_csv
from .raster import DEFAULT_VIEWPORT, Viewport, render
from .sweep import (
    InsufficientDataError,
    SeedPath,
    SweepError,
    SweepReport,
    detect_split,
    journey_presets,
    run_sweep,
    trend_statistic,
)

EXIT_OK, EXIT_RUNTIME, EXIT_USAGE = 0, 1, 2


def complex_arg(text: str) -> complex:
    try:
        re, im = text.split(",")
        return complex(float(re), float(im))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RE,IM, got {text!r}") from None


def size_arg(text: str) -> tuple[int, int]:
    try:
        cols, rows = (int(v) for v in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected COLSxROWS, got {text!r}") from None
    if cols < 1 or rows < 1:
        raise argparse.ArgumentTypeError("size must be positive")
    return cols, rows


def path_arg(text: str) -> tuple[complex, complex]:
    try:
        a, b = text.split(":")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RE,IM:RE,IM, got {text!r}") from None
    return complex_arg(a), complex_arg(b)


def positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # None means "use the default viewport / preset value"
    common.add_argument("--center", type=complex_arg)
    common.add_argument("--width", type=positive_float)
    common.add_argument("--height", type=positive_float)
    common.add_argument("--size", type=size_arg, help="COLSxROWS")
    common.add_argument("--max-iter", type=positive_int)
    common.add_argument("--connectivity", type=int, choices=(4, 8), default=8)
    common.add_argument("--out", type=Path, default=Path("."))
    common.add_argument("--format", choices=("pgm", "png"), default="pgm")
    common.add_argument("--threads", type=positive_int, help="overrides SEEDLAB_THREADS")

    parser = argparse.ArgumentParser(prog="seedlab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("render", parents=[common], help="render one seed")
    p.add_argument("--seed", type=complex_arg, default=0j)

    p = sub.add_parser("sweep", parents=[common], help="sweep the seed along a segment")
    p.add_argument("--path", type=path_arg, required=True, help="RE,IM:RE,IM")
    p.add_argument("--steps", type=int, default=33)

    p = sub.add_parser("journey", parents=[common], help="run a named journey preset")
    p.add_argument("preset")

    p = sub.add_parser("analyze", help="split step and trend of a sweep CSV")
    p.add_argument("csv", type=Path)
    p.add_argument("--count-threshold", type=int, default=2)
    return parser


def viewport_from(args, base: Viewport = DEFAULT_VIEWPORT) -> Viewport:
    cols, rows = args.size or (base.cols, base.rows)
    return Viewport(
        center=base.center if args.center is None else args.center,
        width=args.width or base.width,
        height=args.height or base.height,
        cols=cols,
        rows=rows,
    )


def _header(kind: str, path: SeedPath, vp: Viewport, max_iter: int, conn: int) -> str:
    return (
        f"seedlab {kind} start={path.start.real!r},{path.start.imag!r} "
        f"end={path.end.real!r},{path.end.imag!r} steps={path.steps} "
        f"center={vp.center.real!r},{vp.center.imag!r} width={vp.width!r} height={vp.height!r} "
        f"size={vp.cols}x{vp.rows} max_iter={max_iter} connectivity={conn}"
    )


def _summary(report) -> str:
    split = detect_split(report)
    where = "none" if split is None else f"step {split} seed {report.records[split].seed}"
    try:
        t = trend_statistic(report)
        trend = f"spearman_rho={t.spearman_rho:.4f} first={t.first_value:.6g} last={t.last_value:.6g}"
    except InsufficientDataError as exc:
        trend = f"insufficient data ({exc})"
    return f"split: {where}; trend: {trend}"


def cmd_render(args) -> int:
    vp = viewport_from(args)
    max_iter = args.max_iter or 256
    field = render(args.seed, vp, max_iter, threads=args.threads)
    rec = disconnectivity_rate(label_components(field.mask, args.connectivity), field.seed)
    args.out.mkdir(parents=True, exist_ok=True)
    write_image(field, args.out / f"render.{args.format}", args.format)
    path = SeedPath(args.seed, args.seed, 2)
    write_records_csv(args.out / "record.csv", [rec], _header("render", path, vp, max_iter, args.connectivity))
    print(
        f"seed={rec.seed} member_pixels={rec.member_pixels} component_count={rec.component_count} "
        f"largest_fraction={rec.largest_fraction:.6f} disconnectivity={rec.disconnectivity:.6f} "
        f"empty={str(rec.empty).lower()}"
    )
    return EXIT_OK


def _sweep(args, kind, path, vp, max_iter) -> int:
    args.out.mkdir(parents=True, exist_ok=True)

    def sink(step, field):
        write_image(field, args.out / f"frame_{step:04d}.{args.format}", args.format)

    report = run_sweep(path, vp, max_iter, args.connectivity, frame_sink=sink, threads=args.threads)
    write_records_csv(args.out / "sweep.csv", report.records, _header(kind, path, vp, max_iter, args.connectivity))
    line = _summary(report)
    (args.out / "summary.txt").write_text(line + "\n")
    print(line)
    return EXIT_OK


def cmd_sweep(args) -> int:
    if args.steps < 2:
        raise _Usage("--steps must be >= 2")
    start, end = args.path
    return _sweep(args, "sweep", SeedPath(start, end, args.steps), viewport_from(args), args.max_iter or 256)


def cmd_journey(args) -> int:
    presets = journey_presets()
    if args.preset not in presets:
        raise _Usage(f"unknown preset {args.preset!r}; available: {', '.join(sorted(presets))}")
    j = presets[args.preset]
    return _sweep(args, f"journey {args.preset}", j.path, viewport_from(args, j.viewport), args.max_iter or j.max_iter)


def cmd_analyze(args) -> int:
    records = read_records_csv(args.csv)
    if not records:
        raise _Usage(f"{args.csv} has no data rows")
    path = SeedPath(records[0].seed, records[-1].seed, max(2, len(records)))
    report = SweepReport(path, DEFAULT_VIEWPORT, 1, 8, tuple(records))
    split = detect_split(report, args.count_threshold)
    print(f"split: {'none' if split is None else split}")
    try:
        t = trend_statistic(report)
        print(f"spearman_rho: {t.spearman_rho:.6f}\nfirst_value: {t.first_value!r}\nlast_value: {t.last_value!r}")
    except InsufficientDataError as exc:
        print(f"trend: insufficient data ({exc})")
    return EXIT_OK


class _Usage(Exception):
    pass


COMMANDS = {"render": cmd_render, "sweep": cmd_sweep, "journey": cmd_journey, "analyze": cmd_analyze}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except _Usage as exc:
        print(f"seedlab: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, SweepError, ValueError, MemoryError) as exc:
        print(f"seedlab: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
