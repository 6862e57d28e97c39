import numpy as np
import pytest

from ncft.maps import MapKind

SU2_MAPS = [MapKind.SYMMETRIC, MapKind.DUFLO, MapKind.FLM]
U1_MAPS = [MapKind.U1_STANDARD, MapKind.U1_SINE]
ALL_MAPS = SU2_MAPS + U1_MAPS


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
