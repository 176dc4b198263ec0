import pytest

from rdostream.channel import ChannelParams, calibrate_channel, paper_geometry


@pytest.fixture(scope="session")
def calibrated():
    """(geometry, params) with the drop midpoint solved for a 40% mean."""
    geometry = paper_geometry()
    params = calibrate_channel(geometry, ChannelParams(),
                               target_mean_drop=0.40, tol=0.005)
    return geometry, params
