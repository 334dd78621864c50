"""M-LSB embedding and extraction, plus the raster-order LSB baseline.

Slots are numbered from 1. Slot ``t <= n*n`` substitutes bit-plane 0 of
the pixel holding value ``t`` in the magic square; slot ``t > n*n``
substitutes bit-plane 1 of the pixel holding ``t - n*n``. An embedding
capacity ``ec`` (bits per pixel, ``0 < ec <= 2``) exposes the first
``floor(ec * n*n)`` slots.

In headered mode slots 1..32 carry the payload bit count as an unsigned
big-endian integer, followed by the cipher bits. Raw mode carries only
the cipher bits and the receiver must know the length.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import floor
from typing import Literal

import numpy as np

from .bitcrypt import as_bits, bytes_to_bits, pbsa_decrypt, pbsa_encrypt
from .errors import (
    CapacityExceeded,
    EcOutOfRange,
    EmptyKey,
    HeaderTooLarge,
    NonSquareImage,
    PlanMismatch,
)
from .image_io import as_gray_image
from .magic_square import build_magic

__all__ = [
    "HEADER_BITS",
    "EmbedPlan",
    "StegoResult",
    "parse_ec",
    "capacity",
    "make_plan",
    "embed",
    "extract",
    "embed_stream",
    "extract_stream",
    "lsb_sequential_embed",
    "lsb_sequential_extract",
    "slot_layout",
]

HEADER_BITS = 32
HeaderMode = Literal["headered", "raw"]
_MODES = ("headered", "raw")


def parse_ec(ec) -> Fraction:
    """Embedding capacity as an exact fraction; floats go through ``str``."""
    try:
        value = Fraction(str(ec)) if isinstance(ec, float) else Fraction(ec)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise EcOutOfRange(f"invalid embedding capacity {ec!r}") from exc
    if not 0 < value <= 2:
        raise EcOutOfRange(f"embedding capacity must be in (0, 2], got {ec}")
    return value


def _total_slots(pixels: int, ec: Fraction) -> int:
    return floor(ec * pixels)


def capacity(n: int, ec, header_mode: HeaderMode = "headered") -> int:
    """Payload bits available on an ``n`` x ``n`` cover."""
    slots = _total_slots(n * n, parse_ec(ec))
    if header_mode == "headered":
        return max(slots - HEADER_BITS, 0)
    return slots


@dataclass(frozen=True)
class EmbedPlan:
    order: int
    ec: Fraction
    total_slots: int
    header_mode: HeaderMode
    payload_bits: int

    @property
    def stream_bits(self) -> int:
        return self.payload_bits + (HEADER_BITS if self.header_mode == "headered" else 0)


@dataclass(frozen=True)
class StegoResult:
    stego: np.ndarray
    changed_pixels: int
    slots_used: int


def make_plan(width: int, height: int, ec=1, header_mode: HeaderMode = "headered", payload_bits: int = 0) -> EmbedPlan:
    if width != height:
        raise NonSquareImage(f"cover must be square, got {width}x{height}")
    if header_mode not in _MODES:
        raise ValueError(f"header_mode must be one of {_MODES}, got {header_mode!r}")
    if payload_bits < 0:
        raise ValueError("payload_bits must be non-negative")
    n = width
    # build_magic rejects n < 3
    build_magic(n)
    ec = parse_ec(ec)
    plan = EmbedPlan(n, ec, _total_slots(n * n, ec), header_mode, payload_bits)
    if plan.stream_bits > plan.total_slots:
        raise CapacityExceeded(plan.total_slots, plan.stream_bits)
    return plan


def slot_layout(traversal: np.ndarray, count: int):
    """Split the first ``count`` slots into (plane-0 pixels, plane-1 pixels)."""
    pixels = traversal.size
    return traversal[:min(count, pixels)], traversal[:max(count - pixels, 0)]


def _write_slots(cover: np.ndarray, traversal: np.ndarray, bits: np.ndarray) -> np.ndarray:
    flat = cover.ravel().copy()
    plane0, plane1 = slot_layout(traversal, bits.size)
    flat[plane0] = (flat[plane0] & 0xFE) | bits[:plane0.size]
    flat[plane1] = (flat[plane1] & 0xFD) | (bits[plane0.size:] << 1)
    return flat.reshape(cover.shape)


def _read_slots(stego: np.ndarray, traversal: np.ndarray, count: int) -> np.ndarray:
    flat = stego.ravel()
    plane0, plane1 = slot_layout(traversal, count)
    return np.concatenate([flat[plane0] & 1, (flat[plane1] >> 1) & 1]).astype(np.uint8)


def _check_plan(img: np.ndarray, plan: EmbedPlan) -> None:
    h, w = img.shape
    if w != h:
        raise NonSquareImage(f"image must be square, got {w}x{h}")
    if w != plan.order:
        raise PlanMismatch(f"plan is for order {plan.order}, image is {w}x{h}")


def embed_stream(cover, bits, plan: EmbedPlan) -> StegoResult:
    """Write an already-prepared bit stream into the magic-order slots.

    No encryption or header is added. ``plan.header_mode`` is ignored and
    the stream must fit ``plan.total_slots``.
    """
    cover = as_gray_image(cover)
    _check_plan(cover, plan)
    bits = as_bits(bits)
    if bits.size > plan.total_slots:
        raise CapacityExceeded(plan.total_slots, bits.size)
    stego = _write_slots(cover, build_magic(plan.order).traversal, bits)
    return StegoResult(stego, int(np.count_nonzero(stego != cover)), int(bits.size))


def extract_stream(stego, plan: EmbedPlan, count: int) -> np.ndarray:
    """Read ``count`` raw slot bits in magic order."""
    stego = as_gray_image(stego)
    _check_plan(stego, plan)
    if count > plan.total_slots:
        raise CapacityExceeded(plan.total_slots, count)
    return _read_slots(stego, build_magic(plan.order).traversal, count)


def _header(payload_bits: int) -> np.ndarray:
    return bytes_to_bits(payload_bits.to_bytes(4, "big"))


def embed(cover, message: bytes, key: bytes, plan: EmbedPlan) -> StegoResult:
    message = bytes(message)
    if 8 * len(message) != plan.payload_bits:
        raise PlanMismatch(f"plan expects {plan.payload_bits} payload bits, message has {8 * len(message)}")
    cipher = pbsa_encrypt(message, key)
    if plan.header_mode == "headered":
        cipher = np.concatenate([_header(cipher.size), cipher])
    return embed_stream(cover, cipher, plan)


def extract(stego, key: bytes, plan: EmbedPlan) -> bytes:
    if not bytes(key):
        raise EmptyKey("secret key must contain at least one byte")
    stego = as_gray_image(stego)
    _check_plan(stego, plan)
    traversal = build_magic(plan.order).traversal
    if plan.header_mode == "raw":
        if plan.payload_bits > plan.total_slots:
            raise CapacityExceeded(plan.total_slots, plan.payload_bits)
        return pbsa_decrypt(_read_slots(stego, traversal, plan.payload_bits), key)
    if plan.total_slots < HEADER_BITS:
        raise CapacityExceeded(plan.total_slots, HEADER_BITS)
    stream_head = _read_slots(stego, traversal, HEADER_BITS)
    declared = int.from_bytes(np.packbits(stream_head).tobytes(), "big")
    room = plan.total_slots - HEADER_BITS
    if declared > room:
        raise HeaderTooLarge(
            f"header declares {declared} payload bits but only {room} fit; wrong key, plan or cover?"
        )
    stream = _read_slots(stego, traversal, HEADER_BITS + declared)
    return pbsa_decrypt(stream[HEADER_BITS:], key)


def _raster_traversal(img: np.ndarray) -> np.ndarray:
    return np.arange(img.size)


def lsb_sequential_embed(cover, bits, ec=1) -> np.ndarray:
    """Raster-order LSB substitution baseline sharing the M-LSB plane layering."""
    cover = as_gray_image(cover)
    bits = as_bits(bits)
    total = _total_slots(cover.size, parse_ec(ec))
    if bits.size > total:
        raise CapacityExceeded(total, bits.size)
    return _write_slots(cover, _raster_traversal(cover), bits)


def lsb_sequential_extract(stego, count: int, ec=1) -> np.ndarray:
    stego = as_gray_image(stego)
    total = _total_slots(stego.size, parse_ec(ec))
    if count > total:
        raise CapacityExceeded(total, count)
    return _read_slots(stego, _raster_traversal(stego), count)
