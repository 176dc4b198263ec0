"""Structural similarity with square uniform windows.

Window statistics use population moments over all stride-1 windows; the map
is averaged into a single score in [-1, 1].  Integral images keep the
windowed sums exact enough that ssim(x, x) evaluates to exactly 1.0 (both
sides of the ratio are the same floating-point expression).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .media import ImageGrid


@dataclass(frozen=True)
class SsimParams:
    window: int = 8
    k1: float = 0.01
    k2: float = 0.03
    dynamic_range: float = 255.0

    def __post_init__(self) -> None:
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if self.k1 <= 0.0 or self.k2 <= 0.0:
            raise ValueError("stabilization constants must be positive")


def _as_array(img: ImageGrid | np.ndarray) -> np.ndarray:
    if isinstance(img, ImageGrid):
        return img.samples
    return np.asarray(img, dtype=np.float64)


def _window_sums(a: np.ndarray, w: int) -> np.ndarray:
    """Sum of a over every w-by-w window at stride 1."""
    ii = np.zeros((a.shape[0] + 1, a.shape[1] + 1))
    np.cumsum(np.cumsum(a, axis=0), axis=1, out=ii[1:, 1:])
    return (ii[w:, w:] - ii[:-w, w:] - ii[w:, :-w] + ii[:-w, :-w])


def ssim(x: ImageGrid | np.ndarray, y: ImageGrid | np.ndarray,
         p: SsimParams = SsimParams()) -> float:
    ax, ay = _as_array(x), _as_array(y)
    if ax.shape != ay.shape:
        raise ValueError(f"image shapes differ: {ax.shape} vs {ay.shape}")
    w = p.window
    if w > min(ax.shape):
        raise ValueError("window larger than image")
    n = float(w * w)
    c1 = (p.k1 * p.dynamic_range) ** 2
    c2 = (p.k2 * p.dynamic_range) ** 2

    mu_x = _window_sums(ax, w) / n
    mu_y = _window_sums(ay, w) / n
    var_x = _window_sums(ax * ax, w) / n - mu_x * mu_x
    var_y = _window_sums(ay * ay, w) / n - mu_y * mu_y
    cov = _window_sums(ax * ay, w) / n - mu_x * mu_y

    num = (2.0 * mu_x * mu_y + c1) * (2.0 * cov + c2)
    den = (mu_x * mu_x + mu_y * mu_y + c1) * (var_x + var_y + c2)
    return float(np.mean(num / den))


def avg_ssim(pairs: list[tuple[ImageGrid | np.ndarray, ImageGrid | np.ndarray]],
             p: SsimParams = SsimParams()) -> float:
    """Arithmetic mean of per-pair SSIM scores."""
    if not pairs:
        raise ValueError("empty selection")
    return float(np.mean([ssim(a, b, p) for a, b in pairs]))


def select_extremes(scores: list[float], best: int = 10,
                    worst: int = 10) -> list[int]:
    """Indices of the ``best`` highest and ``worst`` lowest scores.

    Automated stand-in for manual frame picking; with fewer scores than
    requested, every index is selected once.
    """
    order = sorted(range(len(scores)), key=lambda i: (scores[i], i))
    if len(scores) <= best + worst:
        return order
    chosen = order[:worst] + order[-best:]
    return sorted(chosen)
