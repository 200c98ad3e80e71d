import pytest

from isoresidual.core import parse_stratum


@pytest.fixture
def stratum():
    """Build a stratum from its comma-separated signed string."""
    return parse_stratum
