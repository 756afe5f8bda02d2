import numpy as np
import pytest

from ltft.atoms import ConstantTransition, LTFTParams
from ltft.frame_filter import LTFTFrame


def default_params(rate: float) -> LTFTParams:
    """House default: tau in [3, 8], transitions at 5% and 40% of the rate."""
    return LTFTParams(3.0, 8.0, ConstantTransition(0.05 * rate, 0.4 * rate))


@pytest.fixture(scope="session")
def frame_256() -> LTFTFrame:
    return LTFTFrame.build(default_params(256.0), 256.0, n_grid=1025)


@pytest.fixture(scope="session")
def frame_512() -> LTFTFrame:
    return LTFTFrame.build(default_params(512.0), 512.0, n_grid=1025)
