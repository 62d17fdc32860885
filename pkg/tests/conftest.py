import random
from pathlib import Path

import numpy as np
import pytest

from patternkit.core import FiniteColoring, coloring_from_function

FIXTURES = Path(__file__).parent / "fixtures"


@pytest.fixture
def fixtures() -> Path:
    return FIXTURES


def random_coloring(rng: random.Random, window: int) -> FiniteColoring:
    m = np.zeros((window, window), dtype=np.uint8)
    for x in range(window):
        for y in range(x + 1, window):
            m[x, y] = m[y, x] = rng.randint(0, 1)
    return FiniteColoring(window, m)


@pytest.fixture
def fig_coloring() -> FiniteColoring:
    """Window-3 coloring with f(0,1)=0, f(0,2)=1, f(1,2)=0."""
    values = {(0, 1): 0, (0, 2): 1, (1, 2): 0}
    return coloring_from_function(3, lambda x, y: values[(x, y)])
