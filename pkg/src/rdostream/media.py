"""Prioritized frames, packets, GOF streams and synthetic frame content.

A video stream is organized in groups of frames (GOFs).  Each GOF holds one
independent frame (priority F1), a fixed number of predicted frames (F2) and
a fixed number of bidirectional frames (F3).  Frames are split into packets
that are the unit of transmission; packet IDs are globally contiguous so a
receiver can locate any packet in the stream by its ID alone.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from enum import Enum, IntEnum

import numpy as np
from scipy import ndimage


class FramePriority(IntEnum):
    """Frame priority classes; lower value = higher priority (F1 > F2 > F3)."""

    F1 = 1  # i frames
    F2 = 2  # p frames
    F3 = 3  # b frames


class CodecFamily(Enum):
    MPEG2_LIKE = "mpeg2"
    MJPEG_SMOKE_LIKE = "mjpeg-smoke"


@dataclass(frozen=True)
class GofConfig:
    """Static GOF layout: frame counts and packet counts per priority class."""

    frames_per_priority: tuple[int, int, int] = (1, 2, 6)
    packets_per_frame: tuple[int, int, int] = (50, 20, 10)
    gof_period: float = 1.8
    frame_rate: float = 5.0

    def __post_init__(self) -> None:
        n1, n2, n3 = self.frames_per_priority
        if n1 < 1 or n2 < 0 or n3 < 0:
            raise ValueError("need at least one F1 frame and nonnegative counts")
        if any(k < 0 for k in self.packets_per_frame):
            raise ValueError("packet counts must be nonnegative")
        if self.gof_period <= 0 or self.frame_rate <= 0:
            raise ValueError("gof_period and frame_rate must be positive")

    @property
    def frames_per_gof(self) -> int:
        return sum(self.frames_per_priority)

    @property
    def packets_per_gof(self) -> int:
        return sum(n * k for n, k in
                   zip(self.frames_per_priority, self.packets_per_frame))


@dataclass(frozen=True)
class Frame:
    frame_id: int
    priority: FramePriority
    gof_index: int
    packet_ids: range
    deadline: float
    creation_time: float
    duration: float = 0.0  # playout seconds this frame covers

    def __post_init__(self) -> None:
        if len(self.packet_ids) == 0:
            raise ValueError("frame must own at least one packet")


@dataclass(frozen=True)
class Packet:
    packet_id: int
    frame_id: int
    priority: FramePriority
    size: int
    creation_time: float


@dataclass(frozen=True)
class EncoderProfile:
    """Abstract encoder parameterization.

    ``frames_per_priority`` / ``packets_per_frame`` pin the synthetic stream
    layout; ``quality`` models lossy intra coding (100 = transparent) and
    ``bitrate_cap`` scales packet payload sizes rather than packet counts.
    """

    name: str
    gof_len: int
    frame_rate: float
    codec_family: CodecFamily
    frames_per_priority: tuple[int, int, int]
    packets_per_frame: tuple[int, int, int]
    bitrate_cap: float | None = None  # bits/s, None = unlimited
    quality: float = 100.0
    delta_per_key: int = 1

    def __post_init__(self) -> None:
        if self.gof_len < 1:
            raise ValueError("gof_len must be >= 1")
        if not 0.0 < self.quality <= 100.0:
            raise ValueError("quality must be in (0, 100]")
        if self.delta_per_key < 1:
            raise ValueError("delta_per_key must be >= 1")
        if sum(self.frames_per_priority) != self.gof_len:
            raise ValueError("frames_per_priority must sum to gof_len")

    @property
    def gof_period(self) -> float:
        return self.gof_len / self.frame_rate

    def gof_config(self) -> GofConfig:
        return GofConfig(self.frames_per_priority, self.packets_per_frame,
                         self.gof_period, self.frame_rate)

    def payload_bytes(self, default: int = 1000) -> int:
        """Payload size per packet, scaled down when a bitrate cap applies."""
        if self.bitrate_cap is None:
            return default
        pkt_rate = self.gof_config().packets_per_gof / self.gof_period
        capped = int(self.bitrate_cap / (8.0 * pkt_rate))
        return max(1, min(default, capped))


@dataclass
class ImageGrid:
    """Single-channel luminance image; samples in [0, 255]."""

    samples: np.ndarray

    def __post_init__(self) -> None:
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 2 or self.samples.size == 0:
            raise ValueError("samples must be a nonempty 2-D grid")
        if self.samples.min() < 0.0 or self.samples.max() > 255.0:
            raise ValueError("samples must lie in [0, 255]")

    @property
    def height(self) -> int:
        return self.samples.shape[0]

    @property
    def width(self) -> int:
        return self.samples.shape[1]


def build_gof_stream(config: GofConfig, gof_count: int,
                     start_time: float = 0.0) -> list[Frame]:
    """Generate ``gof_count`` GOFs of frames with contiguous packet IDs.

    Within each GOF frames appear in priority order (the F1 frame first).
    GOF ``g`` expires at ``start_time + (g + 1) * gof_period``.
    """
    if gof_count < 1:
        raise ValueError("gof_count must be >= 1")
    frames: list[Frame] = []
    pid = 0
    fid = 0
    frame_gap = 1.0 / config.frame_rate
    for g in range(gof_count):
        gof_start = start_time + g * config.gof_period
        deadline = start_time + (g + 1) * config.gof_period
        slot = 0
        for prio, n, k in zip(FramePriority, config.frames_per_priority,
                              config.packets_per_frame):
            for _ in range(n):
                frames.append(Frame(
                    frame_id=fid,
                    priority=prio,
                    gof_index=g,
                    packet_ids=range(pid, pid + k),
                    deadline=deadline,
                    creation_time=gof_start + slot * frame_gap,
                    duration=frame_gap,
                ))
                fid += 1
                pid += k
                slot += 1
    return frames


def packetize(frame: Frame, payload_bytes_per_packet: int = 1000) -> list[Packet]:
    if payload_bytes_per_packet <= 0:
        raise ValueError("payload size must be positive")
    return [Packet(pid, frame.frame_id, frame.priority,
                   payload_bytes_per_packet, frame.creation_time)
            for pid in frame.packet_ids]


# Synthetic content: two static coarse lattices drawn from the seed are
# blended with a per-frame phase, then bilinearly upsampled.  Adjacent frames
# share the lattices so consecutive images differ only by the small phase
# drift (temporal coherence).
_LATTICE_CELL = 16
_PHASE_STEP = 0.05


@functools.lru_cache(maxsize=8)
def _lattices(seed: int, width: int, height: int) -> tuple[np.ndarray, np.ndarray]:
    rng = np.random.default_rng(np.random.SeedSequence([seed & 0xFFFFFFFF, width, height]))
    ch = max(2, height // _LATTICE_CELL + 2)
    cw = max(2, width // _LATTICE_CELL + 2)
    a = rng.uniform(-1.0, 1.0, size=(ch, cw))
    b = rng.uniform(-1.0, 1.0, size=(ch, cw))
    return a, b


@functools.lru_cache(maxsize=4096)
def _synth_cached(seed: int, frame_id: int, width: int, height: int) -> ImageGrid:
    a, b = _lattices(seed, width, height)
    theta = _PHASE_STEP * frame_id
    coarse = np.cos(theta) * a + np.sin(theta) * b
    zoom = (height / coarse.shape[0], width / coarse.shape[1])
    fine = ndimage.zoom(coarse, zoom, order=1, mode="nearest",
                        grid_mode=True)[:height, :width]
    samples = np.clip(127.5 * (1.0 + fine / np.sqrt(2.0)), 0.0, 255.0)
    samples.setflags(write=False)
    return ImageGrid(samples)


def synth_frame(seed: int, frame_id: int, width: int = 160,
                height: int = 120) -> ImageGrid:
    """Deterministic, temporally coherent synthetic luminance frame."""
    if width <= 0 or height <= 0:
        raise ValueError("dimensions must be positive")
    return _synth_cached(int(seed), int(frame_id), int(width), int(height))


def quantize_grid(grid: ImageGrid, quality: float) -> ImageGrid:
    """Model lossy intra coding: uniform luminance quantization.

    quality 100 is transparent; lower quality coarsens the step size
    (quality 80 -> step 8, quality 30 -> step 28).
    """
    if not 0.0 < quality <= 100.0:
        raise ValueError("quality must be in (0, 100]")
    step = max(1, round((100.0 - quality) * 0.4))
    if step == 1:
        return ImageGrid(grid.samples.copy())
    q = np.clip(np.round(grid.samples / step) * step, 0.0, 255.0)
    return ImageGrid(q)


def packet_band(index: int, packet_count: int, height: int) -> tuple[int, int]:
    """Row band [lo, hi) of the image owned by packet ``index`` of a frame."""
    lo = index * height // packet_count
    hi = (index + 1) * height // packet_count
    return lo, hi


def reconstruct_frame(received_packet_ids: set[int], frame: Frame,
                      source: ImageGrid,
                      prev_displayed: ImageGrid | None,
                      codec_family: CodecFamily) -> ImageGrid | None:
    """Receiver-side frame reconstruction from a partial packet set.

    Full reception yields an exact copy.  With losses, an MPEG2-like decoder
    conceals missing packet bands from the previously displayed frame (or
    mid-gray when there is none); an MJPEG/SMOKE-like decoder drops the frame
    entirely.  Returns None for a dropped frame.
    """
    ids = set(received_packet_ids)
    if not ids <= set(frame.packet_ids):
        raise ValueError(
            f"packet ids {sorted(ids - set(frame.packet_ids))} outside "
            f"frame {frame.frame_id} range")
    if not ids:
        return None
    k = len(frame.packet_ids)
    if len(ids) == k:
        return ImageGrid(source.samples.copy())
    if codec_family is CodecFamily.MJPEG_SMOKE_LIKE:
        return None
    out = np.full_like(source.samples, 128.0)
    if prev_displayed is not None:
        out[:, :] = prev_displayed.samples
    first_pid = frame.packet_ids.start
    for i in range(k):
        if first_pid + i in ids:
            lo, hi = packet_band(i, k, source.height)
            out[lo:hi, :] = source.samples[lo:hi, :]
    return ImageGrid(out)
