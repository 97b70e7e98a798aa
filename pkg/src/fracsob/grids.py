"""Uniform periodic 1-D grids and real-valued fields for the spectral solver."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GridError

__all__ = ["Grid", "Field"]


@dataclass(frozen=True)
class Grid:
    """Periodic box [-L, L) sampled at M equispaced points (M a power of two).

    Grid frequencies are the discrete set xi_j = j/(2L), j = -M/2 .. M/2-1.
    """

    half_width: float
    points: int

    def __post_init__(self):
        if not self.half_width > 0:
            raise GridError(f"half_width must be positive, got {self.half_width}")
        M = self.points
        if M < 2 or (M & (M - 1)) != 0:
            raise GridError(f"points must be a power of two >= 2, got {M}")

    @property
    def spacing(self) -> float:
        return 2.0 * self.half_width / self.points

    @property
    def x(self) -> np.ndarray:
        return -self.half_width + self.spacing * np.arange(self.points)

    @property
    def frequencies(self) -> np.ndarray:
        return np.fft.fftfreq(self.points, d=self.spacing)

    def multiplier(self, s: float) -> np.ndarray:
        """|2 pi xi|^(2s) on the grid frequencies."""
        return np.abs(2.0 * np.pi * self.frequencies) ** (2.0 * s)


@dataclass
class Field:
    """Real samples of a function on a Grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != (self.grid.points,):
            raise GridError(
                f"field shape {v.shape} does not match grid with {self.grid.points} points")
        if not np.all(np.isfinite(v)):
            raise GridError("field contains non-finite entries")
        self.values = v

    @staticmethod
    def from_function(grid: Grid, fn) -> "Field":
        return Field(grid, np.asarray(fn(grid.x), dtype=float))

    def same_grid(self, other: "Field") -> None:
        if self.grid != other.grid:
            raise GridError("fields live on different grids")

    def l2_norm_sq(self) -> float:
        return self.grid.spacing * float(np.sum(self.values ** 2))

    def lq_norm(self, q: float) -> float:
        return float((self.grid.spacing * np.sum(np.abs(self.values) ** q)) ** (1.0 / q))

    def integral(self) -> float:
        return self.grid.spacing * float(np.sum(self.values))
