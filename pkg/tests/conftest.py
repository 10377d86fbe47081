import numpy as np
import pytest


def rel_err(a, b) -> float:
    return abs(complex(a) - complex(b)) / max(abs(complex(b)), 1e-300)


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(20240611))
