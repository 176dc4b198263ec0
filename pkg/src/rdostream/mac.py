"""Simplified 802.11-style MAC: bounded-retry acked send, one-shot unacked
send, and periodic beacons carrying RSSI.

Loss draws are injected as uniforms so callers control the random stream;
attempt ``i`` of a packet always consumes the uniform at index ``i``, which
keeps channel realizations identical across transmitter policies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable

from .channel import Beacon, Rssi


class MacOutcome(Enum):
    DELIVERED = "delivered"
    DROPPED = "dropped"


@dataclass(frozen=True)
class MacConfig:
    max_retries: int = 3  # attempts per acked burst
    tx_duration: float = 0.002
    ack_duration: float = 0.0005
    beacon_interval: float = 0.1

    def __post_init__(self) -> None:
        if self.max_retries < 1:
            raise ValueError("max_retries must be >= 1")
        if min(self.tx_duration, self.ack_duration, self.beacon_interval) <= 0:
            raise ValueError("durations must be positive")


@dataclass(frozen=True)
class MacResult:
    outcome: MacOutcome
    attempts: int
    completion_time: float

    @property
    def delivered(self) -> bool:
        return self.outcome is MacOutcome.DELIVERED


def transmit_acked(t: float, drop_prob: float, cfg: MacConfig,
                   draw: Callable[[int], float],
                   first_attempt_index: int = 0) -> MacResult:
    """Acked burst: Bernoulli attempts until success or max_retries.

    ``draw(i)`` supplies the uniform for attempt index ``i``; the index base
    lets application-level retries continue the same per-packet stream.
    ACKs themselves are treated as lossless.
    """
    attempts = 0
    delivered = False
    for i in range(cfg.max_retries):
        attempts += 1
        if draw(first_attempt_index + i) >= drop_prob:
            delivered = True
            break
    completion = t + attempts * (cfg.tx_duration + cfg.ack_duration)
    outcome = MacOutcome.DELIVERED if delivered else MacOutcome.DROPPED
    return MacResult(outcome, attempts, completion)


def transmit_unacked(t: float, drop_prob: float, cfg: MacConfig,
                     draw: Callable[[int], float],
                     attempt_index: int = 0) -> MacResult:
    """Single unacknowledged attempt; the sender never learns the outcome."""
    delivered = draw(attempt_index) >= drop_prob
    outcome = MacOutcome.DELIVERED if delivered else MacOutcome.DROPPED
    return MacResult(outcome, 1, t + cfg.tx_duration)


def next_beacon_time(t: float, cfg: MacConfig) -> float:
    """First beacon instant strictly after ``t`` (beacons at k * interval)."""
    k = math.floor(t / cfg.beacon_interval + 1e-9) + 1
    return k * cfg.beacon_interval


def next_beacon(t: float, cfg: MacConfig,
                rssi_fn: Callable[[float], Rssi],
                source_node: int = 0) -> Beacon:
    """Beacon delivery is lossless; RSSI is sampled at the emission instant."""
    emit = next_beacon_time(t, cfg)
    return Beacon(emit_time=emit, rssi=rssi_fn(emit), source_node=source_node)
