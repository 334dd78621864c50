"""Binary PGM (P5) reading/writing and synthetic test covers.

Images are 2-D ``uint8`` numpy arrays indexed ``[row, col]``.
"""

from pathlib import Path

import numpy as np

from .prng import splitmix64_stream
from .errors import BadMagic, InvalidImage, MalformedHeader, TrailingData, TruncatedRaster, UnsupportedMaxval

__all__ = [
    "as_gray_image",
    "read_pgm",
    "write_pgm",
    "load_pgm",
    "save_pgm",
    "synth_image",
    "SYNTH_KINDS",
]

SYNTH_KINDS = ("gradient", "noise", "constant")
_WHITESPACE = b" \t\n\r\v\f"


def as_gray_image(img) -> np.ndarray:
    """Validate and convert ``img`` to a 2-D uint8 array (no copy if already one)."""
    if isinstance(img, np.ndarray) and img.dtype == np.uint8:
        arr = img
    else:
        arr = np.asarray(img)
        if arr.size and (not np.issubdtype(arr.dtype, np.integer) or arr.min() < 0 or arr.max() > 255):
            raise InvalidImage("pixel intensities must be integers in [0, 255]")
        arr = arr.astype(np.uint8)
    if arr.ndim != 2:
        raise InvalidImage(f"expected a 2-D grayscale raster, got shape {arr.shape}")
    return arr


def _next_token(data: bytes, pos: int):
    """Return ``(token, end)`` skipping whitespace and ``#`` comments."""
    n = len(data)
    while pos < n:
        ch = data[pos:pos + 1]
        if ch in _WHITESPACE:
            pos += 1
        elif ch == b"#":
            eol = data.find(b"\n", pos)
            pos = n if eol < 0 else eol + 1
        else:
            break
    start = pos
    while pos < n and data[pos:pos + 1] not in _WHITESPACE and data[pos:pos + 1] != b"#":
        pos += 1
    if start == pos:
        raise MalformedHeader("unexpected end of PGM header")
    return data[start:pos], pos


def _header_int(data: bytes, pos: int, what: str):
    token, pos = _next_token(data, pos)
    if not token.isdigit():
        raise MalformedHeader(f"bad {what} field {token!r}")
    return int(token), pos


def read_pgm(data: bytes) -> np.ndarray:
    data = bytes(data)
    if data[:2] != b"P5":
        raise BadMagic(f"expected P5 magic, got {data[:2]!r}")
    pos = 2
    if pos >= len(data) or data[pos:pos + 1] not in _WHITESPACE + b"#":
        raise MalformedHeader("magic number must be followed by whitespace")
    width, pos = _header_int(data, pos, "width")
    height, pos = _header_int(data, pos, "height")
    maxval, pos = _header_int(data, pos, "maxval")
    if width < 1 or height < 1:
        raise MalformedHeader(f"image dimensions must be positive, got {width}x{height}")
    if maxval != 255:
        raise UnsupportedMaxval(f"only maxval 255 is supported, got {maxval}")
    if pos >= len(data) or data[pos:pos + 1] not in _WHITESPACE:
        raise MalformedHeader("maxval must be followed by a single whitespace byte")
    raster = data[pos + 1:]
    expected = width * height
    if len(raster) < expected:
        raise TruncatedRaster(f"raster has {len(raster)} bytes, expected {expected}")
    if len(raster) > expected:
        raise TrailingData(f"{len(raster) - expected} unexpected bytes after the raster")
    return np.frombuffer(raster, dtype=np.uint8).reshape(height, width).copy()


def write_pgm(img) -> bytes:
    img = as_gray_image(img)
    height, width = img.shape
    return b"P5\n%d %d\n255\n" % (width, height) + np.ascontiguousarray(img).tobytes()


def load_pgm(path) -> np.ndarray:
    return read_pgm(Path(path).read_bytes())


def save_pgm(path, img) -> None:
    Path(path).write_bytes(write_pgm(img))


def synth_image(kind: str, n: int, param: int = 0) -> np.ndarray:
    """Deterministic ``n`` x ``n`` synthetic cover.

    ``param`` is the PRNG seed for ``noise`` and the intensity for
    ``constant``; ``gradient`` ignores it.
    """
    if n < 1:
        raise ValueError(f"image side must be >= 1, got {n}")
    if kind == "gradient":
        idx = np.arange(n)
        return ((idx[:, None] + idx[None, :]) % 256).astype(np.uint8)
    if kind == "constant":
        return np.full((n, n), param % 256, dtype=np.uint8)
    if kind == "noise":
        return (splitmix64_stream(param, n * n) >> np.uint64(56)).astype(np.uint8).reshape(n, n)
    raise ValueError(f"unknown synthetic image kind {kind!r}; expected one of {SYNTH_KINDS}")
