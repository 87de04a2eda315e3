"""Raster containers: greyscale input images and per-pixel result maps."""

from __future__ import annotations

import numpy as np

__all__ = ["GridImage", "ScalarMap"]


def _value_array(values, expected, what: str) -> np.ndarray:
    arr = np.asarray(values, dtype=np.int64).ravel()
    if arr.shape[0] != expected:
        raise ValueError(f"{what}: expected {expected} values, got {arr.shape[0]}")
    return arr


class GridImage:
    """2D raster of nonnegative integer intensities.

    Values are stored row-major with the origin at the top-left corner.
    ``maxval`` declares the bit depth (255 for 8-bit, 65535 for 16-bit);
    when omitted it is inferred from the data.
    """

    __slots__ = ("width", "height", "values", "maxval")

    def __init__(self, width: int, height: int, values, maxval: int | None = None):
        width = int(width)
        height = int(height)
        if width <= 0 or height <= 0:
            raise ValueError("image dimensions must be positive")
        arr = _value_array(values, width * height, "GridImage")
        if arr.size and arr.min() < 0:
            raise ValueError("intensities must be nonnegative")
        if maxval is None:
            maxval = 255 if (arr.size == 0 or arr.max() <= 255) else 65535
        maxval = int(maxval)
        if maxval not in (255, 65535):
            raise ValueError("maxval must be 255 (8-bit) or 65535 (16-bit)")
        if arr.size and arr.max() > maxval:
            raise ValueError("intensity exceeds declared bit depth")
        arr.flags.writeable = False
        self.width = width
        self.height = height
        self.values = arr
        self.maxval = maxval

    @classmethod
    def from_array(cls, arr2d, maxval: int | None = None) -> "GridImage":
        a = np.asarray(arr2d)
        if a.ndim != 2:
            raise ValueError("expected a 2D array")
        return cls(a.shape[1], a.shape[0], a, maxval)

    @property
    def pixel_count(self) -> int:
        return self.width * self.height

    def as_array(self) -> np.ndarray:
        """Values as a read-only (height, width) array."""
        return self.values.reshape(self.height, self.width)

    def at(self, x: int, y: int) -> int:
        return int(self.values[y * self.width + x])

    def __eq__(self, other) -> bool:
        if not isinstance(other, GridImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and bool(np.array_equal(self.values, other.values))
        )

    def __repr__(self) -> str:
        return f"GridImage({self.width}x{self.height}, maxval={self.maxval})"


class ScalarMap:
    """Per-pixel map of nonnegative integers with the dimensions of its source image."""

    __slots__ = ("width", "height", "values")

    def __init__(self, width: int, height: int, values):
        width = int(width)
        height = int(height)
        if width <= 0 or height <= 0:
            raise ValueError("map dimensions must be positive")
        arr = _value_array(values, width * height, "ScalarMap")
        if arr.size and arr.min() < 0:
            raise ValueError("map values must be nonnegative")
        arr.flags.writeable = False
        self.width = width
        self.height = height
        self.values = arr

    @classmethod
    def from_array(cls, arr2d) -> "ScalarMap":
        a = np.asarray(arr2d)
        if a.ndim != 2:
            raise ValueError("expected a 2D array")
        return cls(a.shape[1], a.shape[0], a)

    def as_array(self) -> np.ndarray:
        return self.values.reshape(self.height, self.width)

    def at(self, x: int, y: int) -> int:
        return int(self.values[y * self.width + x])

    def __eq__(self, other) -> bool:
        if not isinstance(other, ScalarMap):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and bool(np.array_equal(self.values, other.values))
        )

    def __repr__(self) -> str:
        return f"ScalarMap({self.width}x{self.height})"
