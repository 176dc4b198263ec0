"""Circular mobility, log-distance path loss, drop probability and RSSI.

Two nodes move on fixed circles; their time-varying separation drives a
log-distance path loss model.  Packet loss follows a logistic law in the
received power, optionally combined with an independent collision
probability while an interfering third node is transmitting.  The RSSI
mapping quantizes received power linearly onto the 0..127 integer scale
with 128 reserved for an invalid reading.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

RSSI_INVALID = 128


class CalibrationError(RuntimeError):
    """Raised when no drop-midpoint setting reaches the target drop rate."""


@dataclass(frozen=True)
class CircularPath:
    center: tuple[float, float]
    radius: float
    angular_speed: float = 2.0 * math.pi / 60.0  # one revolution per minute
    phase0: float = 0.0

    def __post_init__(self) -> None:
        if self.radius <= 0.0:
            raise ValueError("radius must be positive")
        if not math.isfinite(self.angular_speed):
            raise ValueError("angular_speed must be finite")

    @property
    def period(self) -> float:
        if self.angular_speed == 0.0:
            return math.inf
        return 2.0 * math.pi / abs(self.angular_speed)


@dataclass(frozen=True)
class ChannelParams:
    alpha: float = 3.7
    ref_loss_db: float = 40.0
    d0: float = 1.0
    tx_power_dbm: float = 20.0
    drop_midpoint_dbm: float = -116.0
    drop_steepness: float = 1.0  # per dB
    interference_collision_prob: float = 0.1
    rssi_min_dbm: float = -119.0
    rssi_max_dbm: float = -109.0

    def __post_init__(self) -> None:
        if self.alpha <= 0.0:
            raise ValueError("path loss exponent must be positive")
        if self.drop_steepness <= 0.0:
            raise ValueError("drop_steepness must be positive")
        if self.rssi_min_dbm >= self.rssi_max_dbm:
            raise ValueError("rssi_min_dbm must be below rssi_max_dbm")
        if not 0.0 <= self.interference_collision_prob <= 1.0:
            raise ValueError("interference_collision_prob must be in [0, 1]")


@dataclass(frozen=True)
class Rssi:
    """Integer signal strength 0..127; 128 marks an invalid reading."""

    value: int

    def __post_init__(self) -> None:
        if not 0 <= self.value <= RSSI_INVALID:
            raise ValueError("RSSI value out of range")

    @property
    def valid(self) -> bool:
        return self.value != RSSI_INVALID


@dataclass(frozen=True)
class Beacon:
    emit_time: float
    rssi: Rssi
    source_node: int = 0


def position_at(path: CircularPath, t: float) -> tuple[float, float]:
    theta = path.phase0 + path.angular_speed * t
    return (path.center[0] + path.radius * math.cos(theta),
            path.center[1] + path.radius * math.sin(theta))


def inter_node_distance(pa: CircularPath, pb: CircularPath, t: float) -> float:
    xa, ya = position_at(pa, t)
    xb, yb = position_at(pb, t)
    return math.hypot(xa - xb, ya - yb)


def path_loss_db(d: float, p: ChannelParams) -> float:
    """Log-distance path loss; distances below d0 clamp to the reference loss."""
    if d <= p.d0:
        return p.ref_loss_db
    return p.ref_loss_db + 10.0 * p.alpha * math.log10(d / p.d0)


def rx_power_dbm(d: float, p: ChannelParams) -> float:
    return p.tx_power_dbm - path_loss_db(d, p)


def drop_probability(d: float, p: ChannelParams,
                     interferer_active: bool = False) -> float:
    """Per-packet loss: logistic in received power, plus collision loss."""
    x = p.drop_steepness * (p.drop_midpoint_dbm - rx_power_dbm(d, p))
    p_ch = 1.0 / (1.0 + math.exp(-x))
    if not interferer_active:
        return p_ch
    return 1.0 - (1.0 - p_ch) * (1.0 - p.interference_collision_prob)


def rssi_at(d: float, p: ChannelParams) -> Rssi:
    prx = rx_power_dbm(d, p)
    if not math.isfinite(prx):
        return Rssi(RSSI_INVALID)
    frac = (prx - p.rssi_min_dbm) / (p.rssi_max_dbm - p.rssi_min_dbm)
    value = int(round(127.0 * frac))  # round-half-even, frozen as regression
    return Rssi(min(127, max(0, value)))


def _distance_samples(pa: CircularPath, pb: CircularPath,
                      samples: int) -> np.ndarray:
    period = max(pa.period, pb.period)
    if not math.isfinite(period):
        period = 60.0
    ts = np.linspace(0.0, period, samples, endpoint=False)
    axs = pa.center[0] + pa.radius * np.cos(pa.phase0 + pa.angular_speed * ts)
    ays = pa.center[1] + pa.radius * np.sin(pa.phase0 + pa.angular_speed * ts)
    bxs = pb.center[0] + pb.radius * np.cos(pb.phase0 + pb.angular_speed * ts)
    bys = pb.center[1] + pb.radius * np.sin(pb.phase0 + pb.angular_speed * ts)
    return np.hypot(axs - bxs, ays - bys)


def mean_drop_rate(pa: CircularPath, pb: CircularPath, p: ChannelParams,
                   interferer_active: bool = True,
                   samples: int = 4096) -> float:
    """Time-averaged drop probability over one full mobility period."""
    d = _distance_samples(pa, pb, samples)
    prx = p.tx_power_dbm - np.where(
        d <= p.d0, p.ref_loss_db,
        p.ref_loss_db + 10.0 * p.alpha * np.log10(np.maximum(d, p.d0) / p.d0))
    p_ch = 1.0 / (1.0 + np.exp(-p.drop_steepness * (p.drop_midpoint_dbm - prx)))
    if interferer_active:
        p_ch = 1.0 - (1.0 - p_ch) * (1.0 - p.interference_collision_prob)
    return float(p_ch.mean())


def calibrate_channel(geometry: tuple[CircularPath, CircularPath],
                      p: ChannelParams, target_mean_drop: float,
                      tol: float = 0.005,
                      interferer_active: bool = True,
                      midpoint_bounds: tuple[float, float] = (-200.0, 50.0),
                      max_iter: int = 200) -> ChannelParams:
    """Bisection on drop_midpoint_dbm to hit a target time-averaged drop rate.

    The achieved mean is evaluated on a deterministic uniform time grid over
    one mobility period, so calibration is bit-reproducible.
    """
    if not 0.0 < target_mean_drop < 1.0:
        raise ValueError("target must be in (0, 1)")
    pa, pb = geometry
    lo, hi = midpoint_bounds

    def achieved(mid: float) -> float:
        return mean_drop_rate(pa, pb, replace(p, drop_midpoint_dbm=mid),
                              interferer_active)

    f_lo, f_hi = achieved(lo), achieved(hi)
    if target_mean_drop < f_lo - tol or target_mean_drop > f_hi + tol:
        raise CalibrationError(
            f"target {target_mean_drop} unreachable: achievable range "
            f"[{f_lo:.4f}, {f_hi:.4f}] with midpoint in {midpoint_bounds}")
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        f_mid = achieved(mid)
        if abs(f_mid - target_mean_drop) <= 0.5 * tol:
            return replace(p, drop_midpoint_dbm=mid)
        if f_mid < target_mean_drop:
            lo = mid
        else:
            hi = mid
    mid = 0.5 * (lo + hi)
    if abs(achieved(mid) - target_mean_drop) <= tol:
        return replace(p, drop_midpoint_dbm=mid)
    raise CalibrationError("bisection failed to converge")


def paper_geometry(separation: float = 380.0, radius: float = 40.0,
                   angular_speed: float = 2.0 * math.pi / 60.0,
                   ) -> tuple[CircularPath, CircularPath]:
    """Two circles with opposite phases; separation sweeps the full range."""
    a = CircularPath((0.0, 0.0), radius, angular_speed, phase0=0.0)
    b = CircularPath((separation, 0.0), radius, angular_speed, phase0=math.pi)
    return a, b
