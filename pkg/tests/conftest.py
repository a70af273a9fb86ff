import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from seqcm.groebner import Ideal
from seqcm.poly import BigradedRing


@pytest.fixture
def R22():
    """QQ[x1, x2, y1, y2], the workhorse ring."""
    return BigradedRing(2, 2)


@pytest.fixture
def segre_quadric(R22):
    """x1*y1 + x2*y2: the rank-two bilinear hypersurface."""
    return R22.x(1) * R22.y(1) + R22.x(2) * R22.y(2)


@pytest.fixture
def two_planes_ideal(R22):
    """(x1, y1) ∩ (x2, y2): two disjoint coordinate planes (a Stanley ring)."""
    x1, x2, y1, y2 = R22.x(1), R22.x(2), R22.y(1), R22.y(2)
    return Ideal(R22, (x1 * x2, x1 * y2, x2 * y1, y1 * y2))
