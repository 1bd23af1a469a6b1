"""Interval-valued fuzzy image magnification.

Each source pixel q is given a closed membership interval whose width
delta * omega reflects the luminance oscillation omega in its
neighbourhood, then expanded into a (2p+1) x (2p+1) block by collapsing
that interval with the Atanassov operator K_alpha, using the neighbour
values themselves as the collapse parameter. Magnifying an n x m image
yields a (2p+1)n x (2p+1)m image whose block centres preserve the source
pixels exactly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .image import GrayImage


@dataclass(frozen=True)
class Interval:
    """A closed subinterval [lo, hi] of [0, 1]."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (0.0 <= self.lo <= self.hi <= 1.0):
            raise ValueError(f"invalid interval [{self.lo}, {self.hi}]")

    def width(self) -> float:
        return self.hi - self.lo

    def contains(self, value: float) -> bool:
        return self.lo <= value <= self.hi


def k_alpha(x: Interval, alpha: float) -> float:
    """Atanassov operator: the convex combination lo + alpha*(hi - lo).

    K_0 gives the lower endpoint, K_1 the upper; the map is monotone in
    both the interval (componentwise) and alpha.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha must be in [0, 1], got {alpha}")
    return x.lo + alpha * (x.hi - x.lo)


@dataclass(frozen=True)
class FuzzyParams:
    """Magnification parameters: block half-width p and interval scale delta."""

    p: int
    delta: float

    def __post_init__(self):
        if self.p < 0:
            raise ValueError(f"p must be a nonnegative integer, got {self.p}")
        if not 0.0 <= self.delta <= 1.0:
            raise ValueError(f"delta must be in [0, 1], got {self.delta}")

    @property
    def block_size(self) -> int:
        return 2 * self.p + 1


@dataclass(frozen=True, eq=False)
class Block:
    """The (2p+1) x (2p+1) neighbourhood of one pixel.

    Positions that fall outside the source image hold value 0 and are
    flagged invalid; the centre is always valid and equals the source
    pixel.
    """

    half_width: int
    values: np.ndarray
    valid: np.ndarray

    def __post_init__(self):
        size = 2 * self.half_width + 1
        if self.values.shape != (size, size) or self.valid.shape != (size, size):
            raise ValueError(f"block arrays must be {size}x{size}")
        if not self.valid[self.half_width, self.half_width]:
            raise ValueError("block centre must be valid")

    @property
    def center(self) -> float:
        return float(self.values[self.half_width, self.half_width])


def extract_block(img: GrayImage, i: int, j: int, p: int) -> Block:
    """Build the neighbourhood block of pixel (i, j) (0-based indices).

    Off-image positions are zero-filled and marked invalid.
    """
    n, m = img.shape
    if not (0 <= i < n and 0 <= j < m):
        raise IndexError(f"pixel ({i}, {j}) outside {n}x{m} image")
    if p < 0:
        raise ValueError(f"p must be nonnegative, got {p}")
    size = 2 * p + 1
    values = np.zeros((size, size))
    valid = np.zeros((size, size), dtype=bool)
    r0, r1 = max(0, i - p), min(n, i + p + 1)
    c0, c1 = max(0, j - p), min(m, j + p + 1)
    values[r0 - i + p : r1 - i + p, c0 - j + p : c1 - j + p] = img.pixels[r0:r1, c0:c1]
    valid[r0 - i + p : r1 - i + p, c0 - j + p : c1 - j + p] = True
    return Block(p, values, valid)


def oscillation(block: Block) -> float:
    """Max minus min of the block's luminances, ignoring the zero fill at
    invalid positions."""
    vals = block.values[block.valid]
    return float(vals.max() - vals.min())


def membership_interval(q: float, omega: float, delta: float) -> Interval:
    """The membership interval [q(1 - d*w), q(1 - d*w) + d*w] of width
    exactly delta * omega."""
    for name, v in (("q", q), ("omega", omega), ("delta", delta)):
        if not 0.0 <= v <= 1.0:
            raise ValueError(f"{name} must be in [0, 1], got {v}")
    t = delta * omega
    lo = q * (1.0 - t)
    return Interval(lo, lo + t)


def magnify(img: GrayImage, params: FuzzyParams) -> GrayImage:
    """Magnify by the odd factor 2p+1, replacing each pixel with its
    transformed neighbourhood block.

    Every block entry v (zero fill included) maps to
    K_v([q(1-dw), q(1-dw)+dw]) = q + (v - q) * d * w, with w the
    oscillation over the in-image part of the block. The form q + (v-q)*t
    is used instead of the expanded v*t + q*(1-t): it returns the centre
    pixel bit-exactly and cannot leave [0, 1] in IEEE arithmetic.
    """
    n, m = img.shape
    p, delta = params.p, params.delta
    size = params.block_size
    q = img.pixels

    # windowed max/min over valid neighbours only: +/-inf padding drops out
    wmax = sliding_window_view(
        np.pad(q, p, constant_values=-np.inf), (size, size)
    ).max(axis=(2, 3))
    wmin = sliding_window_view(
        np.pad(q, p, constant_values=np.inf), (size, size)
    ).min(axis=(2, 3))
    t = delta * (wmax - wmin)

    blocks = sliding_window_view(np.pad(q, p, constant_values=0.0), (size, size))
    out = q[:, :, None, None] + (blocks - q[:, :, None, None]) * t[:, :, None, None]
    return GrayImage(out.transpose(0, 2, 1, 3).reshape(n * size, m * size))
