"""Benchmark pipeline: reduce each reference image without interpolation,
rescale it back with every requested method, and score the reconstructions
with PSNR and the likelihood index S.

The fuzzy method is swept over a delta grid (the sweep is reported in full
and summarized at the PSNR-optimal and S-optimal delta separately); the
sampling-Kantorovich method runs once per sampling rate w; bicubic runs
once. CPU time is measured with a process-CPU clock around the rescale
call only, with BLAS thread pools pinned to one thread so the numbers are
comparable across methods.
"""

from __future__ import annotations

import logging
import math
import time
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from threadpoolctl import threadpool_limits

from .bicubic import DEFAULT_A, bicubic_resize
from .fuzzy import FuzzyParams, magnify
from .image import GrayImage, RgbImage, crop_to_multiple, downscale_nearest, rgb_to_gray, synthetic_image
from .image_io import load_image
from .kernels import parse_kernel_spec
from .metrics import MetricRecord, mse, psnr, s_index
from .sk import SkParams, sk_rescale_with_stats

logger = logging.getLogger(__name__)

KNOWN_METHODS = ("fuzzy", "sk", "bicubic")

# default policy for reduction factors >= 5: skip images the factor does not
# suit, i.e. those needing cropping or left smaller than this after reduction
MIN_REDUCED_DIM = 60


@dataclass
class BenchConfig:
    """Everything one benchmark run needs.

    ``image_paths`` entries are files (PGM/PNG) or ``synthetic:RxC`` specs
    rendered deterministically from ``seed``.
    """

    image_paths: list[str]
    output_dir: Path
    reduce_factor: int = 3
    delta_start: float = 0.0
    delta_end: float = 1.0
    delta_step: float = 0.01
    sk_w_values: tuple[float, ...] = (15.0, 20.0, 25.0)
    sk_kernel: str = "jackson:12,1"
    methods: tuple[str, ...] = KNOWN_METHODS
    seed: int = 0
    all_images: bool = False

    def __post_init__(self):
        self.output_dir = Path(self.output_dir)
        if self.reduce_factor < 1 or self.reduce_factor % 2 == 0:
            raise ValueError(
                f"reduce_factor must be an odd positive integer (fuzzy blocks are "
                f"2p+1 wide), got {self.reduce_factor}"
            )
        if self.delta_step <= 0.0:
            raise ValueError(f"delta_step must be positive, got {self.delta_step}")
        if not 0.0 <= self.delta_start <= self.delta_end <= 1.0:
            raise ValueError(
                f"delta range [{self.delta_start}, {self.delta_end}] must lie in [0, 1]"
            )
        unknown = set(self.methods) - set(KNOWN_METHODS)
        if unknown:
            raise ValueError(f"unknown methods {sorted(unknown)}; choose from {KNOWN_METHODS}")
        if not self.methods:
            raise ValueError("at least one method required")
        if any(w < 1.0 for w in self.sk_w_values):
            raise ValueError(f"all sk w values must be >= 1, got {self.sk_w_values}")

    def delta_grid(self) -> np.ndarray:
        count = int(math.floor((self.delta_end - self.delta_start) / self.delta_step + 1e-9)) + 1
        return self.delta_start + np.arange(count) * self.delta_step


@dataclass
class SweepResult:
    """Full fuzzy delta sweep for one image, with the PSNR-optimal and
    S-optimal delta recorded separately (smallest delta wins ties)."""

    image: str
    deltas: np.ndarray
    psnr_values: np.ndarray
    s_values: np.ndarray
    delta_max_psnr: float = field(init=False)
    delta_max_s: float = field(init=False)

    def __post_init__(self):
        if not (len(self.deltas) == len(self.psnr_values) == len(self.s_values)):
            raise ValueError("sweep arrays must have equal length")
        if len(self.deltas) == 0:
            raise ValueError("empty sweep")
        if np.any(np.diff(self.deltas) <= 0.0):
            raise ValueError("delta values must be strictly increasing")
        self.delta_max_psnr = float(self.deltas[int(np.argmax(self.psnr_values))])
        self.delta_max_s = float(self.deltas[int(np.argmax(self.s_values))])


@dataclass
class BenchRun:
    """Outcome of one benchmark invocation."""

    records: list[MetricRecord]
    sweeps: list[SweepResult]
    failures: list[tuple[str, str]]  # (image spec, diagnostic)


def resolve_image(spec: str, seed: int, index: int) -> tuple[str, GrayImage]:
    """Turn one image spec into (identifier, grey image).

    ``synthetic:RxC`` renders a deterministic test image; anything else is
    loaded from disk, collapsing RGB to grey with Rec. 601 weights.
    """
    if spec.startswith("synthetic:"):
        dims = spec[len("synthetic:"):]
        try:
            rows_s, _, cols_s = dims.partition("x")
            rows, cols = int(rows_s), int(cols_s)
        except ValueError:
            raise ValueError(f"bad synthetic spec {spec!r}, expected synthetic:RxC") from None
        return f"synthetic_{rows}x{cols}", synthetic_image(rows, cols, seed=seed + index)
    img = load_image(spec)
    if isinstance(img, RgbImage):
        img = rgb_to_gray(img)
    return Path(spec).stem, img


def _unique_ids(ids: list[str]) -> list[str]:
    seen: dict[str, int] = {}
    out = []
    for raw in ids:
        clean = "".join(c if c.isalnum() or c in "-_" else "_" for c in raw) or "image"
        seen[clean] = seen.get(clean, 0) + 1
        out.append(clean if seen[clean] == 1 else f"{clean}_{seen[clean]}")
    return out


def _suits_reduction(img: GrayImage, factor: int) -> bool:
    """Default policy for large factors: require exact divisibility and a
    usable reduced size."""
    if img.rows % factor or img.cols % factor:
        return False
    return min(img.rows, img.cols) // factor >= MIN_REDUCED_DIM


def _timed(func, *args):
    """(result, process-CPU seconds) with BLAS pools pinned to one thread."""
    with threadpool_limits(limits=1):
        start = time.process_time()
        result = func(*args)
        elapsed = time.process_time() - start
    return result, elapsed


def run_benchmark(config: BenchConfig) -> BenchRun:
    """Run the reduce/rescale/score pipeline for every image and method in
    ``config``. One image failing is logged and skipped; the rest proceed."""
    records: list[MetricRecord] = []
    sweeps: list[SweepResult] = []
    failures: list[tuple[str, str]] = []
    factor = config.reduce_factor
    kernel = parse_kernel_spec(config.sk_kernel) if "sk" in config.methods else None

    loaded: list[tuple[str, str, GrayImage]] = []
    for index, spec in enumerate(config.image_paths):
        try:
            image_id, img = resolve_image(str(spec), config.seed, index)
        except Exception as exc:
            logger.error("skipping %s: %s", spec, exc)
            failures.append((str(spec), str(exc)))
            continue
        loaded.append((str(spec), image_id, img))
    ids = _unique_ids([image_id for _, image_id, _ in loaded])

    for (spec, _, img), image_id in zip(loaded, ids):
        if factor >= 5 and not config.all_images and not _suits_reduction(img, factor):
            logger.info(
                "skipping %s: %dx%d does not suit reduction factor %d "
                "(pass all_images to force)",
                image_id, img.rows, img.cols, factor,
            )
            continue
        try:
            reference = crop_to_multiple(img, factor)
            reduced = downscale_nearest(reference, factor)
            logger.info(
                "%s: reference %dx%d, reduced %dx%d",
                image_id, reference.rows, reference.cols, reduced.rows, reduced.cols,
            )
            if "fuzzy" in config.methods:
                records.extend(_run_fuzzy(config, image_id, reference, reduced, sweeps))
            if "sk" in config.methods:
                records.extend(_run_sk(config, image_id, reference, reduced, kernel))
            if "bicubic" in config.methods:
                records.append(_run_bicubic(image_id, reference, reduced))
        except Exception as exc:
            logger.error("benchmark failed for %s: %s", spec, exc)
            failures.append((spec, str(exc)))
    return BenchRun(records, sweeps, failures)


def _run_fuzzy(config, image_id, reference, reduced, sweeps) -> list[MetricRecord]:
    p = (config.reduce_factor - 1) // 2
    deltas = config.delta_grid()
    psnrs = np.empty(len(deltas))
    ss = np.empty(len(deltas))
    cpu_total = 0.0
    for i, delta in enumerate(deltas):
        magnified, elapsed = _timed(magnify, reduced, FuzzyParams(p, float(delta)))
        cpu_total += elapsed
        psnrs[i] = psnr(reference, magnified)
        ss[i] = s_index(reference, magnified)
    sweep = SweepResult(image_id, deltas, psnrs, ss)
    sweeps.append(sweep)
    cpu_mean = cpu_total / len(deltas)

    out = []
    for target, at in (("psnr", int(np.argmax(psnrs))), ("s", int(np.argmax(ss)))):
        out.append(
            MetricRecord(
                image=image_id,
                method="fuzzy",
                params={"delta": float(deltas[at]), "argmax": target},
                psnr_db=float(psnrs[at]),
                s_index=float(ss[at]),
                cpu_seconds=cpu_mean,
            )
        )
    return out


def _run_sk(config, image_id, reference, reduced, kernel) -> list[MetricRecord]:
    out = []
    for w in config.sk_w_values:
        params = SkParams(w=float(w), kernel=kernel, target_factor=float(config.reduce_factor))
        (rescaled, overshoot), elapsed = _timed(sk_rescale_with_stats, reduced, params)
        if overshoot > 0.0:
            logger.info("%s: sk w=%g pre-clamp overshoot %.3e", image_id, w, overshoot)
        out.append(
            MetricRecord(
                image=image_id,
                method="sk",
                params={"kernel": config.sk_kernel, "w": float(w)},
                psnr_db=psnr(reference, rescaled),
                s_index=s_index(reference, rescaled),
                cpu_seconds=elapsed,
            )
        )
    return out


def _run_bicubic(image_id, reference, reduced) -> MetricRecord:
    rescaled, elapsed = _timed(bicubic_resize, reduced, reference.rows, reference.cols)
    return MetricRecord(
        image=image_id,
        method="bicubic",
        params={"a": DEFAULT_A},
        psnr_db=psnr(reference, rescaled),
        s_index=s_index(reference, rescaled),
        cpu_seconds=elapsed,
    )


def _fmt(value: float) -> str:
    return f"{value:.9g}"


def emit_csv(records: list[MetricRecord], sweeps: list[SweepResult], output_dir) -> list[Path]:
    """Write ``summary.csv`` plus one ``sweep_<image>.csv`` per fuzzy sweep.

    Numbers are printed with 9 significant digits so re-parsing round-trips
    within 1e-9; infinite PSNR serializes as ``inf``.
    """
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    written = []

    summary = output_dir / "summary.csv"
    with open(summary, "w", newline="") as fh:
        fh.write("image,method,param,psnr_db,s_index,cpu_seconds\n")
        for rec in records:
            fh.write(
                f"{rec.image},{rec.method},{rec.param_string()},"
                f"{_fmt(rec.psnr_db)},{_fmt(rec.s_index)},{_fmt(rec.cpu_seconds)}\n"
            )
    written.append(summary)

    for sweep in sweeps:
        path = output_dir / f"sweep_{sweep.image}.csv"
        with open(path, "w", newline="") as fh:
            fh.write("delta,psnr_db,s_index\n")
            for delta, p_val, s_val in zip(sweep.deltas, sweep.psnr_values, sweep.s_values):
                fh.write(f"{_fmt(delta)},{_fmt(p_val)},{_fmt(s_val)}\n")
        written.append(path)
    return written


def _plot_scale(values: np.ndarray) -> tuple[float, float]:
    """Finite display range with padding; degenerate ranges get a unit pad."""
    finite = values[np.isfinite(values)]
    if finite.size == 0:
        return 0.0, 1.0
    lo, hi = float(finite.min()), float(finite.max())
    if hi - lo < 1e-12:
        return lo - 0.5, hi + 0.5
    pad = 0.05 * (hi - lo)
    return lo - pad, hi + pad


def emit_plot(sweep: SweepResult, output_dir) -> Path:
    """Render one fuzzy sweep as a standalone SVG: PSNR against the left
    axis and S against the right axis, with the optimum of each marked."""
    output_dir = Path(output_dir)
    output_dir.mkdir(parents=True, exist_ok=True)
    width, height = 640, 400
    ml, mr, mt, mb = 60, 60, 30, 40
    pw, ph = width - ml - mr, height - mt - mb

    d_lo, d_hi = float(sweep.deltas[0]), float(sweep.deltas[-1])
    d_span = d_hi - d_lo if d_hi > d_lo else 1.0
    p_lo, p_hi = _plot_scale(sweep.psnr_values)
    s_lo, s_hi = _plot_scale(sweep.s_values)

    def x_pix(delta):
        return ml + (delta - d_lo) / d_span * pw

    def y_pix(value, lo, hi):
        v = min(max(value, lo), hi) if math.isfinite(value) else hi
        return mt + (1.0 - (v - lo) / (hi - lo)) * ph

    def polyline(values, lo, hi, color):
        pts = " ".join(
            f"{x_pix(d):.2f},{y_pix(v, lo, hi):.2f}"
            for d, v in zip(sweep.deltas, values)
        )
        return f'<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{pts}"/>'

    i_p = int(np.argmax(sweep.psnr_values))
    i_s = int(np.argmax(sweep.s_values))
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<line x1="{ml}" y1="{mt}" x2="{ml}" y2="{mt + ph}" stroke="black"/>',
        f'<line x1="{ml + pw}" y1="{mt}" x2="{ml + pw}" y2="{mt + ph}" stroke="black"/>',
        f'<line x1="{ml}" y1="{mt + ph}" x2="{ml + pw}" y2="{mt + ph}" stroke="black"/>',
        polyline(sweep.psnr_values, p_lo, p_hi, "#1f77b4"),
        polyline(sweep.s_values, s_lo, s_hi, "#d62728"),
        f'<circle class="max-psnr" cx="{x_pix(sweep.delta_max_psnr):.2f}" '
        f'cy="{y_pix(sweep.psnr_values[i_p], p_lo, p_hi):.2f}" r="4" fill="#1f77b4"/>',
        f'<circle class="max-s" cx="{x_pix(sweep.delta_max_s):.2f}" '
        f'cy="{y_pix(sweep.s_values[i_s], s_lo, s_hi):.2f}" r="4" fill="#d62728"/>',
        f'<text x="{ml}" y="{mt - 10}" font-size="13">{sweep.image}: PSNR (left, blue) '
        f'and S (right, red) vs delta</text>',
        f'<text x="{ml - 5}" y="{mt + ph + 15}" font-size="11" text-anchor="middle">{d_lo:g}</text>',
        f'<text x="{ml + pw}" y="{mt + ph + 15}" font-size="11" text-anchor="middle">{d_hi:g}</text>',
        f'<text x="{ml - 8}" y="{mt + 5}" font-size="11" text-anchor="end">{p_hi:.4g}</text>',
        f'<text x="{ml - 8}" y="{mt + ph}" font-size="11" text-anchor="end">{p_lo:.4g}</text>',
        f'<text x="{ml + pw + 8}" y="{mt + 5}" font-size="11">{s_hi:.4g}</text>',
        f'<text x="{ml + pw + 8}" y="{mt + ph}" font-size="11">{s_lo:.4g}</text>',
        "</svg>",
    ]
    path = output_dir / f"sweep_{sweep.image}.svg"
    path.write_text("\n".join(parts))
    return path
