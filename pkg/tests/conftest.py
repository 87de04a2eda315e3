from pathlib import Path

import numpy as np
import pytest

from hierseg import GridImage, read_image

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def fixture_path(name: str) -> str:
    return str(FIXTURES / name)


def load_grid(name: str) -> GridImage:
    return read_image(fixture_path(name))


def random_image(seed: int, width: int = 16, height: int = 16, top: int = 256) -> GridImage:
    rng = np.random.default_rng(seed)
    return GridImage(width, height, rng.integers(0, top, width * height), maxval=255 if top <= 256 else 65535)


@pytest.fixture
def isolation_image() -> GridImage:
    return load_grid("grid_isolation.pgm")


@pytest.fixture
def ramp_image() -> GridImage:
    return load_grid("grid_ramp.pgm")
