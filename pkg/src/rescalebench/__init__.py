"""Image rescaling by interval-valued fuzzy magnification,
sampling-Kantorovich operators and bicubic interpolation, with a
PSNR / likelihood-index benchmark harness."""

from .bicubic import bicubic_resize, cubic_kernel
from .bench import BenchConfig, BenchRun, SweepResult, emit_csv, emit_plot, run_benchmark
from .fuzzy import (
    Block,
    FuzzyParams,
    Interval,
    extract_block,
    k_alpha,
    magnify,
    membership_interval,
    oscillation,
)
from .image import (
    GrayImage,
    RgbImage,
    crop_to_multiple,
    downscale_nearest,
    rgb_to_gray,
    synthetic_image,
)
from .image_io import ImageFormatError, load_image, save_image
from .kernels import (
    Kernel1D,
    Kernel2D,
    bspline,
    bspline_kernel,
    jackson_kernel,
    jackson_unnormalized,
    normalization_coefficient,
    parse_kernel_spec,
)
from .metrics import MetricRecord, mse, psnr, s_index
from .sk import SampleGrid, SkParams, cell_averages, sk_rescale, sk_rescale_with_stats

__version__ = "0.1.0"

__all__ = [
    "BenchConfig",
    "BenchRun",
    "Block",
    "FuzzyParams",
    "GrayImage",
    "ImageFormatError",
    "Interval",
    "Kernel1D",
    "Kernel2D",
    "MetricRecord",
    "RgbImage",
    "SampleGrid",
    "SkParams",
    "SweepResult",
    "bicubic_resize",
    "bspline",
    "bspline_kernel",
    "cell_averages",
    "crop_to_multiple",
    "cubic_kernel",
    "downscale_nearest",
    "emit_csv",
    "emit_plot",
    "extract_block",
    "jackson_kernel",
    "jackson_unnormalized",
    "k_alpha",
    "load_image",
    "magnify",
    "membership_interval",
    "mse",
    "normalization_coefficient",
    "oscillation",
    "parse_kernel_spec",
    "psnr",
    "rgb_to_gray",
    "run_benchmark",
    "s_index",
    "save_image",
    "sk_rescale",
    "sk_rescale_with_stats",
    "synthetic_image",
]
