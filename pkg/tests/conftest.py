import numpy as np
import pytest

from triconic.geom import Point2, Triangle


@pytest.fixture
def t345():
    """Right triangle with legs 3, 4 (right angle at C): a=4, b=3, c=5."""
    return Triangle(Point2(0.0, 3.0), Point2(4.0, 0.0), Point2(0.0, 0.0))


@pytest.fixture
def t456():
    """Scalene triangle with sides a=6, b=5, c=4."""
    return Triangle(
        Point2(2.25, 3.3071891388307382), Point2(0.0, 0.0), Point2(6.0, 0.0)
    )


@pytest.fixture
def t_generic():
    return Triangle(Point2(0.1, 0.2), Point2(1.3, 0.15), Point2(0.5, 1.1))


@pytest.fixture
def equilateral():
    """Side-1 equilateral on the x-axis."""
    import math

    return Triangle(
        Point2(-0.5, 0.0), Point2(0.5, 0.0), Point2(0.0, math.sqrt(3.0) / 2.0)
    )


@pytest.fixture
def rng():
    return np.random.default_rng(42)
