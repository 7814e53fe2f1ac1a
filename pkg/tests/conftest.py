import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from scis.raster import RasterImage


@pytest.fixture
def halves_image():
    """50x50, left half black, right half white."""
    px = np.zeros((50, 50, 3), dtype=np.uint8)
    px[:, 25:] = 255
    return RasterImage(px)


@pytest.fixture
def three_region_image():
    """60x60 with three flat vertical color bands."""
    px = np.zeros((60, 60, 3), dtype=np.uint8)
    px[:, 20:40] = (0, 200, 0)
    px[:, 40:] = (200, 0, 0)
    return RasterImage(px)


def three_region_gt():
    gt = np.ones((60, 60), dtype=np.int32)
    gt[:, 20:40] = 2
    gt[:, 40:] = 3
    return gt
