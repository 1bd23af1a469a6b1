"""In-memory image types and the resolution-change plumbing shared by all
rescaling methods.

Images are matrices of normalized luminances: every pixel is a float in
[0, 1], stored row-major as a read-only float64 array. Colour images are
three such planes. All operations are pure; instances are safe to share
across threads.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


def _as_luminance_array(data) -> np.ndarray:
    arr = np.ascontiguousarray(data, dtype=np.float64)
    if arr.ndim != 2 or arr.size == 0:
        raise ValueError(f"expected a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("image contains non-finite values")
    if arr.min() < 0.0 or arr.max() > 1.0:
        raise ValueError(
            f"luminance values outside [0, 1]: min={arr.min()}, max={arr.max()}"
        )
    arr.flags.writeable = False
    return arr


@dataclass(frozen=True, eq=False)
class GrayImage:
    """A greyscale image with luminances in [0, 1].

    ``pixels`` has shape (rows, cols); element (i, j) is the luminance of
    the pixel in row i, column j.
    """

    pixels: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "pixels", _as_luminance_array(self.pixels))

    @property
    def rows(self) -> int:
        return self.pixels.shape[0]

    @property
    def cols(self) -> int:
        return self.pixels.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.pixels.shape

    def __repr__(self):
        return f"GrayImage({self.rows}x{self.cols})"


@dataclass(frozen=True, eq=False)
class RgbImage:
    """A colour image as three luminance planes of identical shape."""

    red: np.ndarray
    green: np.ndarray
    blue: np.ndarray

    def __post_init__(self):
        for name in ("red", "green", "blue"):
            object.__setattr__(self, name, _as_luminance_array(getattr(self, name)))
        if not (self.red.shape == self.green.shape == self.blue.shape):
            raise ValueError("RGB planes must share dimensions")

    @property
    def rows(self) -> int:
        return self.red.shape[0]

    @property
    def cols(self) -> int:
        return self.red.shape[1]

    def planes(self) -> tuple[GrayImage, GrayImage, GrayImage]:
        return (GrayImage(self.red), GrayImage(self.green), GrayImage(self.blue))

    def __repr__(self):
        return f"RgbImage({self.rows}x{self.cols})"


# Rec. 601 luma weights; used when a single grey reference is required.
_LUMA_WEIGHTS = (0.299, 0.587, 0.114)


def rgb_to_gray(img: RgbImage) -> GrayImage:
    """Collapse an RGB image to grey with the Rec. 601 luma weights."""
    wr, wg, wb = _LUMA_WEIGHTS
    grey = wr * img.red + wg * img.green + wb * img.blue
    # the weights sum to 1 but rounding can overshoot by an ulp
    return GrayImage(np.clip(grey, 0.0, 1.0))


def downscale_nearest(img: GrayImage, factor: int) -> GrayImage:
    """Decimate by keeping the centre sample of every ``factor`` x ``factor``
    block (no interpolation).

    Output pixel (i, j) is input pixel (i*factor + factor//2,
    j*factor + factor//2). Requires both dimensions divisible by ``factor``;
    see :func:`crop_to_multiple`.
    """
    r = int(factor)
    if r < 1:
        raise ValueError(f"factor must be a positive integer, got {factor}")
    if img.rows % r or img.cols % r:
        raise ValueError(
            f"image dimensions {img.rows}x{img.cols} not divisible by {r}"
        )
    off = r // 2
    return GrayImage(img.pixels[off::r, off::r])


def crop_to_multiple(img: GrayImage, factor: int) -> GrayImage:
    """Crop (keeping the top-left corner) so both dimensions are the largest
    multiples of ``factor`` not exceeding the originals."""
    r = int(factor)
    if r < 1:
        raise ValueError(f"factor must be a positive integer, got {factor}")
    if img.rows < r or img.cols < r:
        raise ValueError(
            f"image {img.rows}x{img.cols} smaller than factor {r} in some dimension"
        )
    nr = (img.rows // r) * r
    nc = (img.cols // r) * r
    if (nr, nc) == img.shape:
        return img
    return GrayImage(img.pixels[:nr, :nc])


def synthetic_image(rows: int, cols: int, seed: int = 0) -> GrayImage:
    """Deterministic natural-looking test image: a smooth random field plus
    mild texture, normalized to span [0, 1].

    Used by the benchmark CLI for ``synthetic:RxC`` image specs and by the
    test suite; the same (rows, cols, seed) always yields the same image.
    """
    from scipy.ndimage import uniform_filter

    if rows < 1 or cols < 1:
        raise ValueError("synthetic image dimensions must be positive")
    rng = np.random.default_rng(seed)
    field = rng.standard_normal((rows, cols))
    # repeated box blurs give smooth large-scale structure
    size = max(3, 2 * (min(rows, cols) // 12) + 1)
    smooth = field
    for _ in range(3):
        smooth = uniform_filter(smooth, size=size, mode="reflect")
    texture = 0.08 * rng.standard_normal((rows, cols))
    combined = smooth / max(np.abs(smooth).max(), 1e-12) + texture
    lo, hi = combined.min(), combined.max()
    return GrayImage((combined - lo) / (hi - lo))
