import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from rdostream.channel import (RSSI_INVALID, CalibrationError, ChannelParams,
                               CircularPath, Rssi, calibrate_channel,
                               drop_probability, inter_node_distance,
                               mean_drop_rate, paper_geometry, path_loss_db,
                               position_at, rssi_at, rx_power_dbm)

P = ChannelParams()


def test_path_loss_formula():
    # independent evaluation of the log-distance law
    assert path_loss_db(380.0, P) == pytest.approx(
        40.0 + 10.0 * 3.7 * math.log10(380.0), abs=1e-12)
    assert path_loss_db(380.0, P) == pytest.approx(135.45199307482198)


def test_path_loss_clamps_below_reference_distance():
    assert path_loss_db(0.5, P) == 40.0
    assert path_loss_db(1.0, P) == 40.0


@given(st.floats(1.0, 1e4), st.floats(1.0, 1e4))
def test_path_loss_monotone_in_distance(d1, d2):
    lo, hi = sorted((d1, d2))
    assert path_loss_db(lo, P) <= path_loss_db(hi, P)


def test_drop_probability_is_half_at_midpoint():
    # distance whose rx power equals the midpoint
    d = P.d0 * 10.0 ** ((P.tx_power_dbm - P.ref_loss_db
                         - P.drop_midpoint_dbm) / (10.0 * P.alpha))
    assert drop_probability(d, P) == pytest.approx(0.5, abs=1e-9)


def test_drop_probability_interferer_combination():
    p_ch = drop_probability(380.0, P)
    combined = drop_probability(380.0, P, interferer_active=True)
    assert combined == pytest.approx(1.0 - (1.0 - p_ch) * 0.9, abs=1e-12)


@given(st.floats(1.0, 2000.0))
def test_drop_probability_in_unit_interval(d):
    assert 0.0 <= drop_probability(d, P) <= 1.0
    assert drop_probability(d, P) <= drop_probability(d, P, True)


def test_rssi_linear_quantization():
    # rx power at the scale ends maps to 0 / 127
    def d_for(prx):
        return P.d0 * 10.0 ** ((P.tx_power_dbm - P.ref_loss_db - prx)
                               / (10.0 * P.alpha))
    assert rssi_at(d_for(-119.0), P).value == 0
    assert rssi_at(d_for(-109.0), P).value == 127
    assert rssi_at(d_for(-114.0), P).value == 64  # 63.5 rounds half-even
    assert rssi_at(380.0, P).value == 45          # frozen regression


def test_rssi_clamped_outside_scale():
    assert rssi_at(5000.0, P).value == 0
    assert rssi_at(1.0, P).value == 127


def test_rssi_invalid_marker():
    r = Rssi(RSSI_INVALID)
    assert not r.valid
    with pytest.raises(ValueError):
        Rssi(129)


def test_circular_path_geometry():
    a, b = paper_geometry()
    assert a.period == pytest.approx(60.0)
    xs = np.linspace(0.0, 60.0, 2401)
    d = np.array([inter_node_distance(a, b, t) for t in xs])
    assert d.min() == pytest.approx(300.0, abs=1e-6)
    assert d.max() == pytest.approx(460.0, abs=1e-6)
    # opposite phases: at t=0 both nodes sit on the inner side
    assert position_at(a, 0.0) == pytest.approx((40.0, 0.0))
    assert position_at(b, 0.0) == pytest.approx((340.0, 0.0))


def test_circular_path_validation():
    with pytest.raises(ValueError):
        CircularPath((0.0, 0.0), radius=0.0)


def test_mean_drop_rate_matches_dense_average():
    a, b = paper_geometry()
    got = mean_drop_rate(a, b, P, interferer_active=True)
    # independent average over a fine explicit grid
    ts = np.linspace(0.0, 60.0, 20000, endpoint=False)
    ps = [drop_probability(inter_node_distance(a, b, t), P, True) for t in ts]
    assert got == pytest.approx(float(np.mean(ps)), abs=1e-4)


def test_calibration_hits_target(calibrated):
    (a, b), params = calibrated
    achieved = mean_drop_rate(a, b, params, interferer_active=True)
    assert abs(achieved - 0.40) <= 0.005


def test_calibration_deterministic():
    geometry = paper_geometry()
    p1 = calibrate_channel(geometry, ChannelParams(), 0.40)
    p2 = calibrate_channel(geometry, ChannelParams(), 0.40)
    assert p1.drop_midpoint_dbm == p2.drop_midpoint_dbm


def test_calibration_unreachable_target():
    # interference floor of 0.1 makes very low targets impossible
    with pytest.raises(CalibrationError):
        calibrate_channel(paper_geometry(), ChannelParams(), 0.05)


def test_channel_params_validation():
    with pytest.raises(ValueError):
        ChannelParams(alpha=0.0)
    with pytest.raises(ValueError):
        ChannelParams(rssi_min_dbm=-100.0, rssi_max_dbm=-110.0)
    with pytest.raises(ValueError):
        ChannelParams(interference_collision_prob=1.5)
