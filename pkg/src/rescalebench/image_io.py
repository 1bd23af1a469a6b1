"""Reading and writing 8-bit greyscale / RGB images.

Supported formats: PGM (P2 ASCII and P5 binary, maxval 255) read and
written natively, and 8-bit PNG (greyscale or RGB) through Pillow. The
file extension selects the format. Loading divides by 255 so pixels land
in [0, 1]; saving multiplies by 255 and rounds half-up.
"""

from __future__ import annotations

import os
from pathlib import Path

import numpy as np

from .image import GrayImage, RgbImage


class ImageFormatError(ValueError):
    """Malformed or unsupported image content (bad magic, bit depth > 8, ...)."""


_PGM_EXTENSIONS = {".pgm"}
_PNG_EXTENSIONS = {".png"}


def _tokenize_pgm_header(data: bytes, count: int) -> tuple[list[int], int]:
    """Return the first ``count`` whitespace-separated numeric header tokens
    (comments stripped) and the offset just past the final one."""
    tokens: list[int] = []
    i = 0
    n = len(data)
    while len(tokens) < count:
        while i < n and data[i : i + 1].isspace():
            i += 1
        if i < n and data[i : i + 1] == b"#":
            while i < n and data[i : i + 1] not in (b"\n", b"\r"):
                i += 1
            continue
        start = i
        while i < n and not data[i : i + 1].isspace():
            i += 1
        if start == i:
            raise ImageFormatError("truncated PGM header")
        token = data[start:i]
        if not token.isdigit():
            raise ImageFormatError(f"non-numeric PGM header token {token!r}")
        tokens.append(int(token))
    return tokens, i


def read_pgm(path: str | os.PathLike) -> GrayImage:
    """Read a P2 (ASCII) or P5 (binary) PGM file with maxval 255."""
    data = Path(path).read_bytes()
    magic = data[:2]
    if magic not in (b"P2", b"P5"):
        raise ImageFormatError(f"not a P2/P5 PGM file (magic {magic!r})")
    (cols, rows, maxval), offset = _tokenize_pgm_header(data[2:], 3)
    offset += 2
    if rows < 1 or cols < 1:
        raise ImageFormatError(f"bad PGM dimensions {cols}x{rows}")
    if maxval != 255:
        raise ImageFormatError(f"unsupported PGM maxval {maxval}, expected 255")
    if magic == b"P5":
        # exactly one whitespace byte separates the header from raster data
        offset += 1
        raster = data[offset : offset + rows * cols]
        if len(raster) < rows * cols:
            raise ImageFormatError("truncated PGM raster")
        values = np.frombuffer(raster, dtype=np.uint8).astype(np.float64)
    else:
        fields = data[offset:].split()
        if len(fields) < rows * cols:
            raise ImageFormatError("truncated PGM raster")
        try:
            values = np.array(fields[: rows * cols], dtype=np.float64)
        except ValueError as exc:
            raise ImageFormatError(f"bad P2 sample: {exc}") from None
        if values.min() < 0 or values.max() > 255:
            raise ImageFormatError("P2 sample outside [0, 255]")
    return GrayImage(values.reshape(rows, cols) / 255.0)


def write_pgm(img: GrayImage, path: str | os.PathLike, binary: bool = True) -> None:
    """Write an 8-bit PGM file, binary (P5) by default or ASCII (P2)."""
    quantized = quantize_u8(img.pixels)
    header = f"{'P5' if binary else 'P2'}\n{img.cols} {img.rows}\n255\n"
    with open(path, "wb") as fh:
        fh.write(header.encode("ascii"))
        if binary:
            fh.write(quantized.tobytes())
        else:
            for row in quantized:
                fh.write(" ".join(str(v) for v in row).encode("ascii") + b"\n")


def quantize_u8(pixels: np.ndarray) -> np.ndarray:
    """Map [0, 1] floats to uint8 by scaling to 255 and rounding half-up."""
    return np.clip(np.floor(pixels * 255.0 + 0.5), 0, 255).astype(np.uint8)


def load_image(path: str | os.PathLike) -> GrayImage | RgbImage:
    """Load an 8-bit PGM or PNG image, normalizing samples to [0, 1].

    Greyscale files yield :class:`GrayImage`; RGB PNGs yield
    :class:`RgbImage`. Raises :class:`ImageFormatError` for unsupported
    formats or bit depths and the usual ``OSError`` family for unreadable
    paths.
    """
    path = Path(path)
    ext = path.suffix.lower()
    if ext in _PGM_EXTENSIONS:
        return read_pgm(path)
    if ext in _PNG_EXTENSIONS:
        return _read_png(path)
    raise ImageFormatError(f"unsupported image extension {ext!r} for {path}")


def _read_png(path: Path) -> GrayImage | RgbImage:
    from PIL import Image

    with Image.open(path) as im:
        if im.format != "PNG":
            raise ImageFormatError(f"{path} is not a PNG file (format={im.format})")
        mode = im.mode
        if mode == "L":
            arr = np.asarray(im, dtype=np.float64)
            return GrayImage(arr / 255.0)
        if mode == "RGB":
            arr = np.asarray(im, dtype=np.float64) / 255.0
            return RgbImage(arr[:, :, 0], arr[:, :, 1], arr[:, :, 2])
        # 16-bit ("I;16"), palette ("P"), alpha ("LA"/"RGBA") are out of scope
        raise ImageFormatError(f"unsupported PNG mode {mode!r} in {path}")


def save_image(img: GrayImage, path: str | os.PathLike, binary_pgm: bool = True) -> None:
    """Save a greyscale image as 8-bit PGM or PNG, selected by extension.

    Values are scaled to [0, 255] and rounded half-up. A save/load round
    trip reproduces every pixel within 1/510 (half a quantization step).
    """
    path = Path(path)
    ext = path.suffix.lower()
    if ext in _PGM_EXTENSIONS:
        write_pgm(img, path, binary=binary_pgm)
    elif ext in _PNG_EXTENSIONS:
        from PIL import Image

        Image.fromarray(quantize_u8(img.pixels), mode="L").save(path, format="PNG")
    else:
        raise ImageFormatError(f"unsupported image extension {ext!r} for {path}")
