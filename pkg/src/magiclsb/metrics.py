"""MSE and PSNR between a cover and a stego image."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .image_io import as_gray_image

__all__ = ["PsnrReport", "squared_error_sum", "mse", "psnr", "C_MAX"]

C_MAX = 255


def squared_error_sum(a, b) -> int:
    """Exact integer sum of squared pixel differences."""
    a = as_gray_image(a)
    b = as_gray_image(b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"image shapes differ: {a.shape} vs {b.shape}")
    diff = a.astype(np.int64) - b.astype(np.int64)
    return int(np.dot(diff.ravel(), diff.ravel()))


def mse(a, b) -> float:
    a = as_gray_image(a)
    return squared_error_sum(a, b) / a.size


@dataclass(frozen=True)
class PsnrReport:
    mse: float
    psnr_db: float
    c_max: int = C_MAX

    @property
    def infinite(self) -> bool:
        return math.isinf(self.psnr_db)

    def __str__(self) -> str:
        value = "inf" if self.infinite else f"{self.psnr_db:.4f} dB"
        return f"MSE={self.mse:.6g} PSNR={value}"


def psnr(a, b) -> PsnrReport:
    """PSNR in dB; identical images report ``math.inf`` (``report.infinite``)."""
    err = mse(a, b)
    if err == 0:
        return PsnrReport(0.0, math.inf)
    return PsnrReport(err, 10 * math.log10(C_MAX ** 2 / err))
