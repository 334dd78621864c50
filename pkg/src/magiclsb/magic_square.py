"""Deterministic magic squares used as the M-LSB pixel traversal.

Positions reported by :func:`position_of` are 1-indexed ``(row, col)``
pairs. Internally the inverse is kept as a flat 0-indexed raster index per
value, which is what the embedder consumes.
"""

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import OrderTooSmall, ValueOutOfRange

__all__ = [
    "MagicSquare",
    "MagicReport",
    "build_magic",
    "validate_magic",
    "position_of",
    "magic_constant",
]


def magic_constant(n: int) -> int:
    return n * (n * n + 1) // 2


@dataclass(frozen=True, eq=False)
class MagicSquare:
    grid: np.ndarray
    # flat raster index of value v stored at traversal[v - 1]
    traversal: np.ndarray = field(repr=False)

    @property
    def order(self) -> int:
        return self.grid.shape[0]

    @classmethod
    def from_grid(cls, grid) -> "MagicSquare":
        grid = np.array(grid, dtype=np.int64)
        n = grid.shape[0]
        if grid.ndim != 2 or grid.shape[1] != n:
            raise ValueError("magic square grid must be n x n")
        flat = grid.ravel()
        if not np.array_equal(np.sort(flat), np.arange(1, n * n + 1)):
            raise ValueError("grid is not a permutation of 1..n^2")
        traversal = np.empty(n * n, dtype=np.int64)
        traversal[flat - 1] = np.arange(n * n)
        grid.setflags(write=False)
        traversal.setflags(write=False)
        return cls(grid, traversal)

    def position_of(self, value: int) -> tuple:
        return position_of(self, value)

    def rows(self) -> list:
        return self.grid.tolist()


def _siamese(n: int) -> np.ndarray:
    grid = np.zeros((n, n), dtype=np.int64)
    i, j = 0, n // 2
    for v in range(1, n * n + 1):
        grid[i, j] = v
        ni, nj = (i - 1) % n, (j + 1) % n
        if grid[ni, nj]:
            ni, nj = (i + 1) % n, j
        i, j = ni, nj
    return grid


def _doubly_even(n: int) -> np.ndarray:
    grid = np.arange(1, n * n + 1, dtype=np.int64).reshape(n, n)
    r = np.arange(n)[:, None] % 4
    c = np.arange(n)[None, :] % 4
    on_diagonal = (r == c) | (r + c == 3)
    return np.where(on_diagonal, n * n + 1 - grid, grid)


# 2x2 fill offsets (added to 4*(v-1)) for Conway's L, U and X cells
_LUX = {
    "L": np.array([[4, 1], [2, 3]]),
    "U": np.array([[1, 4], [2, 3]]),
    "X": np.array([[1, 4], [3, 2]]),
}


def _lux(n: int) -> np.ndarray:
    m = (n - 2) // 4
    k = 2 * m + 1
    small = _siamese(k)
    letters = [["L"] * k for _ in range(m + 1)] + [["U"] * k] + [["X"] * k for _ in range(m - 1)]
    # the centre U trades places with the L directly above it
    letters[m][m], letters[m + 1][m] = "U", "L"
    grid = np.zeros((n, n), dtype=np.int64)
    for i in range(k):
        for j in range(k):
            grid[2 * i:2 * i + 2, 2 * j:2 * j + 2] = 4 * (small[i, j] - 1) + _LUX[letters[i][j]]
    return grid


@lru_cache(maxsize=64)
def build_magic(n: int) -> MagicSquare:
    """Build the order-``n`` magic square.

    Odd orders use the Siamese (de la Loubere) walk, orders divisible by 4
    complement the diagonals of each 4x4 block, and the remaining even
    orders use Conway's LUX method.
    """
    n = int(n)
    if n < 3:
        raise OrderTooSmall(f"magic squares need order >= 3, got {n}")
    if n % 2:
        grid = _siamese(n)
    elif n % 4 == 0:
        grid = _doubly_even(n)
    else:
        grid = _lux(n)
    return MagicSquare.from_grid(grid)


@dataclass(frozen=True)
class MagicReport:
    order: int
    constant: int
    permutation: bool
    rows: bool
    columns: bool
    diagonals: bool

    @property
    def passed(self) -> bool:
        return self.permutation and self.rows and self.columns and self.diagonals

    def __bool__(self) -> bool:
        return self.passed


def validate_magic(square) -> MagicReport:
    """Check every magic-square invariant; malformed input just fails."""
    grid = square.grid if isinstance(square, MagicSquare) else square
    try:
        grid = np.asarray(grid, dtype=np.int64)
    except (TypeError, ValueError):
        return MagicReport(0, 0, False, False, False, False)
    if grid.ndim != 2 or grid.shape[0] != grid.shape[1] or grid.shape[0] == 0:
        n = grid.shape[0] if grid.ndim else 0
        return MagicReport(n, magic_constant(n), False, False, False, False)
    n = grid.shape[0]
    target = magic_constant(n)
    return MagicReport(
        order=n,
        constant=target,
        permutation=bool(np.array_equal(np.sort(grid.ravel()), np.arange(1, n * n + 1))),
        rows=bool((grid.sum(axis=1) == target).all()),
        columns=bool((grid.sum(axis=0) == target).all()),
        diagonals=bool(np.trace(grid) == target and np.trace(grid[:, ::-1]) == target),
    )


def position_of(square: MagicSquare, value: int) -> tuple:
    n = square.order
    if not 1 <= value <= n * n:
        raise ValueOutOfRange(f"value {value} outside 1..{n * n}")
    row, col = divmod(int(square.traversal[value - 1]), n)
    return row + 1, col + 1
