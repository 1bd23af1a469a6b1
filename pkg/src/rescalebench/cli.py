"""Command-line benchmark harness.

Options may come from a plain key=value config file, from flags, or both;
flags win. Writes summary.csv, per-image sweep CSVs and sweep SVG plots to
the output directory.
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from pathlib import Path

from .bench import BenchConfig, emit_csv, emit_plot, run_benchmark

logger = logging.getLogger(__name__)

_CONFIG_KEYS = {
    "images", "reduce_factor", "methods", "delta_start", "delta_end",
    "delta_step", "sk_w", "kernel", "out", "seed", "all_images",
}


def parse_config_file(path: str | Path) -> dict:
    """Read ``key = value`` lines ('#' starts a comment) into a dict of the
    same option names the CLI uses."""
    options: dict = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, value = line.partition("=")
        key = key.strip().lower().replace("-", "_")
        if not sep or not key:
            raise ValueError(f"{path}:{lineno}: expected 'key = value', got {raw!r}")
        if key not in _CONFIG_KEYS:
            raise ValueError(f"{path}:{lineno}: unknown option {key!r}")
        options[key] = value.strip()
    return options


def _split_list(value) -> list[str]:
    if isinstance(value, (list, tuple)):
        return [str(v) for v in value]
    return [part for chunk in str(value).split(",") for part in chunk.split() if part]


def _as_bool(value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"expected a boolean, got {value!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rescale-bench",
        description="Reduce images without interpolation, rescale them back by "
        "fuzzy magnification, sampling-Kantorovich operators and bicubic "
        "interpolation, and report PSNR / likelihood-index-S / CPU-time tables.",
    )
    parser.add_argument("--config", help="key=value options file; flags override it")
    parser.add_argument(
        "--images", nargs="+",
        help="image files (PGM/PNG) or synthetic:RxC specs",
    )
    parser.add_argument("--reduce-factor", type=int, help="odd reduction factor R (default 3)")
    parser.add_argument(
        "--methods", help="comma-separated subset of fuzzy,sk,bicubic (default all)"
    )
    parser.add_argument("--delta-start", type=float, help="fuzzy sweep start (default 0)")
    parser.add_argument("--delta-end", type=float, help="fuzzy sweep end (default 1)")
    parser.add_argument("--delta-step", type=float, help="fuzzy sweep step (default 0.01)")
    parser.add_argument("--sk-w", help="comma-separated sampling rates (default 15,20,25)")
    parser.add_argument(
        "--kernel", help="sk kernel spec: jackson[:N[,alpha]] or bspline[:N] "
        "(default jackson:12,1)"
    )
    parser.add_argument("--out", help="output directory (default ./bench-out)")
    parser.add_argument("--seed", type=int, help="seed for synthetic test images")
    parser.add_argument(
        "--all-images", action="store_true", default=None,
        help="disable the default R>=5 policy of skipping unsuitable images",
    )
    parser.add_argument("--no-plots", action="store_true", help="skip SVG output")
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    return parser


def make_config(args: argparse.Namespace) -> BenchConfig:
    options = parse_config_file(args.config) if args.config else {}

    def pick(flag_value, key, default):
        if flag_value is not None:
            return flag_value
        if key in options:
            return options[key]
        return default

    images = pick(args.images, "images", None)
    if not images:
        raise ValueError("no images given: use --images or an 'images =' config line")
    return BenchConfig(
        image_paths=_split_list(images),
        output_dir=Path(pick(args.out, "out", "bench-out")),
        reduce_factor=int(pick(args.reduce_factor, "reduce_factor", 3)),
        delta_start=float(pick(args.delta_start, "delta_start", 0.0)),
        delta_end=float(pick(args.delta_end, "delta_end", 1.0)),
        delta_step=float(pick(args.delta_step, "delta_step", 0.01)),
        sk_w_values=tuple(float(w) for w in _split_list(pick(args.sk_w, "sk_w", "15,20,25"))),
        sk_kernel=str(pick(args.kernel, "kernel", "jackson:12,1")),
        methods=tuple(_split_list(pick(args.methods, "methods", "fuzzy,sk,bicubic"))),
        seed=int(pick(args.seed, "seed", 0)),
        all_images=_as_bool(pick(args.all_images, "all_images", False)),
    )


def _print_summary(records) -> None:
    if not records:
        return
    print(f"{'image':<20} {'method':<8} {'param':<28} {'psnr_db':>10} {'s_index':>9} {'cpu_s':>10}")
    for rec in records:
        psnr_text = "inf" if math.isinf(rec.psnr_db) else f"{rec.psnr_db:.4f}"
        print(
            f"{rec.image:<20} {rec.method:<8} {rec.param_string():<28} "
            f"{psnr_text:>10} {rec.s_index:>9.4f} {rec.cpu_seconds:>10.6f}"
        )


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        config = make_config(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    run = run_benchmark(config)
    written = emit_csv(run.records, run.sweeps, config.output_dir)
    if not args.no_plots:
        for sweep in run.sweeps:
            written.append(emit_plot(sweep, config.output_dir))

    _print_summary(run.records)
    for path in written:
        logger.info("wrote %s", path)
    if run.failures:
        for spec, message in run.failures:
            print(f"failed: {spec}: {message}", file=sys.stderr)
        return 1
    if not run.records:
        print("error: no images were processed", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
