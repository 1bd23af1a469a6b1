"""Image similarity measures: MSE, PSNR and the likelihood index S.

All metrics are computed in double precision on the normalized in-memory
values (peak signal 1), never on re-quantized bytes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .image import GrayImage


def _check_dims(ref: GrayImage, test: GrayImage) -> None:
    if ref.shape != test.shape:
        raise ValueError(f"dimension mismatch: {ref.shape} vs {test.shape}")


def mse(ref: GrayImage, test: GrayImage) -> float:
    """Mean squared pixel difference."""
    _check_dims(ref, test)
    diff = ref.pixels - test.pixels
    return float(np.mean(diff * diff))


def psnr(ref: GrayImage, test: GrayImage) -> float:
    """Peak signal-to-noise ratio 10*log10(1/MSE) in dB, with peak value 1.

    Identical images (MSE = 0) return ``math.inf`` as the
    infinite-similarity marker; it serializes as the CSV field ``inf``.
    """
    err = mse(ref, test)
    if err == 0.0:
        return math.inf
    return 10.0 * math.log10(1.0 / err)


def s_index(ref: GrayImage, test: GrayImage) -> float:
    """Likelihood index: 1 minus the mean absolute pixel difference.

    Lies in [0, 1] for in-range images; 1 means identical.
    """
    _check_dims(ref, test)
    return float(np.mean(1.0 - np.abs(ref.pixels - test.pixels)))


@dataclass(frozen=True)
class MetricRecord:
    """One benchmark summary row."""

    image: str
    method: str
    params: dict = field(default_factory=dict)
    psnr_db: float = 0.0
    s_index: float = 0.0
    cpu_seconds: float = 0.0

    def __post_init__(self):
        if not (0.0 <= self.s_index <= 1.0):
            raise ValueError(f"s_index must be in [0, 1], got {self.s_index}")
        if self.cpu_seconds < 0.0:
            raise ValueError(f"cpu_seconds must be nonnegative, got {self.cpu_seconds}")

    def param_string(self) -> str:
        """Deterministic single-field rendering of the parameter map."""
        return ";".join(f"{k}={_fmt_value(v)}" for k, v in sorted(self.params.items()))


def _fmt_value(v) -> str:
    if isinstance(v, float):
        return f"{v:.9g}"
    return str(v)
