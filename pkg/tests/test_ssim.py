import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from rdostream.media import synth_frame
from rdostream.ssim import SsimParams, avg_ssim, select_extremes, ssim


def brute_force_ssim(x, y, p=SsimParams()):
    """Reference implementation: explicit loop over stride-1 windows."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    w = p.window
    c1 = (p.k1 * p.dynamic_range) ** 2
    c2 = (p.k2 * p.dynamic_range) ** 2
    vals = []
    for i in range(x.shape[0] - w + 1):
        for j in range(x.shape[1] - w + 1):
            wx = x[i:i + w, j:j + w]
            wy = y[i:i + w, j:j + w]
            mx, my = wx.mean(), wy.mean()
            vx = (wx * wx).mean() - mx * mx
            vy = (wy * wy).mean() - my * my
            cov = (wx * wy).mean() - mx * my
            num = (2 * mx * my + c1) * (2 * cov + c2)
            den = (mx * mx + my * my + c1) * (vx + vy + c2)
            vals.append(num / den)
    return float(np.mean(vals))


def test_matches_brute_force_on_random_pairs():
    rng = np.random.default_rng(7)
    for _ in range(10):
        x = rng.uniform(0.0, 255.0, size=(16, 16))
        y = rng.uniform(0.0, 255.0, size=(16, 16))
        assert ssim(x, y) == pytest.approx(brute_force_ssim(x, y), abs=1e-9)


def test_self_similarity_is_exactly_one():
    rng = np.random.default_rng(11)
    x = rng.uniform(0.0, 255.0, size=(32, 24))
    assert ssim(x, x) == 1.0
    g = synth_frame(5, 3)
    assert ssim(g, g) == 1.0


def test_constant_black_vs_white():
    p = SsimParams()
    c1 = (p.k1 * p.dynamic_range) ** 2
    x = np.zeros((16, 16))
    y = np.full((16, 16), 255.0)
    assert ssim(x, y, p) == pytest.approx(c1 / (255.0 ** 2 + c1), abs=1e-12)


def test_symmetry_and_range():
    rng = np.random.default_rng(3)
    x = rng.uniform(0.0, 255.0, size=(20, 20))
    y = rng.uniform(0.0, 255.0, size=(20, 20))
    assert ssim(x, y) == pytest.approx(ssim(y, x), abs=1e-12)
    assert -1.0 <= ssim(x, y) <= 1.0


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 31), st.floats(0.0, 30.0))
def test_noise_monotonically_reduces_score(seed, amplitude):
    rng = np.random.default_rng(seed)
    x = np.asarray(synth_frame(1, 0).samples)
    noisy = np.clip(x + rng.normal(0.0, 1.0, x.shape) * amplitude, 0, 255)
    s = ssim(x, noisy)
    assert s <= 1.0
    if amplitude > 5.0:
        assert s < 1.0


def test_shape_and_window_validation():
    with pytest.raises(ValueError):
        ssim(np.zeros((8, 8)), np.zeros((9, 8)))
    with pytest.raises(ValueError):
        ssim(np.zeros((4, 4)), np.zeros((4, 4)), SsimParams(window=8))
    with pytest.raises(ValueError):
        SsimParams(window=0)
    with pytest.raises(ValueError):
        SsimParams(k1=0.0)


def test_avg_ssim():
    rng = np.random.default_rng(9)
    pairs = [(rng.uniform(0, 255, (12, 12)), rng.uniform(0, 255, (12, 12)))
             for _ in range(4)]
    expect = np.mean([ssim(a, b) for a, b in pairs])
    assert avg_ssim(pairs) == pytest.approx(float(expect), abs=1e-12)
    with pytest.raises(ValueError):
        avg_ssim([])


def test_select_extremes():
    scores = [0.5, 0.9, 0.1, 0.7, 0.3]
    assert select_extremes(scores, best=1, worst=1) == [1, 2]
    # fewer scores than requested: everything once
    assert sorted(select_extremes(scores, best=10, worst=10)) == [0, 1, 2, 3, 4]
    picked = select_extremes(list(np.linspace(0, 1, 40)), best=10, worst=10)
    assert len(picked) == 20
    assert picked == sorted(picked)
