"""Uniform one-dimensional grids."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GridSpec:
    """Closed interval ``[x_min, x_max]`` sampled at ``n_points`` equispaced nodes."""

    x_min: float
    x_max: float
    n_points: int

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError(f"grid needs x_min < x_max, got {self.x_min} >= {self.x_max}")
        if int(self.n_points) != self.n_points or self.n_points < 16:
            raise ValueError(f"grid needs at least 16 points, got {self.n_points}")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def refined(self, factor: int = 2) -> "GridSpec":
        """Same interval with the spacing divided by ``factor``."""
        return GridSpec(self.x_min, self.x_max, (self.n_points - 1) * factor + 1)

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse ``"xmin:xmax:n"``."""
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"grid must look like xmin:xmax:n, got {text!r}")
        return cls(float(parts[0]), float(parts[1]), int(parts[2]))
