"""Receiver-side accounting and distortion measures.

The receiver keeps the running per-frame counter of successfully received
packets (reset at every frame boundary), marks frames complete when every
packet arrives before the owning GOF deadline, and aggregates per-GOF
reception records.  Distortion is reported as the multiplicative per-GOF
measure, its sum over the run, the displayed-duration ratio, and an average
SSIM over selected frames.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .media import Frame, FramePriority, GofConfig, Packet


@dataclass(frozen=True)
class GofReceptionRecord:
    gof_index: int
    n_f1: int = 0
    n_f2: int = 0
    n_f3: int = 0
    total_frames: tuple[int, int, int] = (0, 0, 0)

    @property
    def frames_received(self) -> int:
        return self.n_f1 + self.n_f2 + self.n_f3

    @property
    def frames_lost(self) -> int:
        return sum(self.total_frames) - self.frames_received


def max_distortion(config: GofConfig) -> int:
    """Distortion ceiling: the reduction a fully received GOF achieves."""
    n1, n2, n3 = config.frames_per_priority
    return n1 * (1 + n2 * (1 + n3))


def d_m(record: GofReceptionRecord, d0: float) -> float:
    """Per-GOF multiplicative distortion.

    Received lower-priority frames only count when higher-priority frames
    of the same GOF made it through.
    """
    value = d0 - record.n_f1 * (1 + record.n_f2 * (1 + record.n_f3))
    if not 0.0 <= value <= d0:
        raise ValueError(
            f"d0={d0} too small for record {record}: got {value}; "
            "set d0 >= n1*(1+n2*(1+n3)) at configuration time")
    return value


def d_M(records: list[GofReceptionRecord], d0: float) -> float:
    return sum(d_m(r, d0) for r in records)


def temporal_ratio(displayed_duration: float, source_duration: float) -> float:
    """Fraction of the reference playout duration shown at the receiver."""
    if source_duration <= 0.0:
        raise ValueError("source duration must be positive")
    return min(1.0, displayed_duration / source_duration)


@dataclass
class _FrameSlot:
    frame: Frame
    received: set[int] = field(default_factory=set)
    complete_in_time: bool = False


@dataclass
class ReceiverState:
    """Sequential reassembly state over a known frame registry."""

    frames: dict[int, _FrameSlot]
    counter: int = 0
    current_frame_id: int = -1
    counter_trace: list[tuple[float, int]] = field(default_factory=list)

    @classmethod
    def for_frames(cls, frames: list[Frame]) -> "ReceiverState":
        return cls(frames={f.frame_id: _FrameSlot(f) for f in frames})

    def add_frame(self, frame: Frame) -> None:
        self.frames[frame.frame_id] = _FrameSlot(frame)

    def slot(self, frame_id: int) -> _FrameSlot:
        try:
            return self.frames[frame_id]
        except KeyError:
            raise ValueError(f"packet references unknown frame {frame_id}")

    def ingest(self, packet: Packet, arrival_time: float) -> None:
        """Account one arriving packet; late packets are discarded."""
        slot = self.slot(packet.frame_id)
        if packet.frame_id != self.current_frame_id:
            self.counter = 0
            self.current_frame_id = packet.frame_id
        if arrival_time > slot.frame.deadline:
            return
        if packet.packet_id in slot.received:
            return
        slot.received.add(packet.packet_id)
        self.counter += 1
        self.counter_trace.append((arrival_time, self.counter))
        if len(slot.received) == len(slot.frame.packet_ids):
            slot.complete_in_time = True

    def received_set(self, frame_id: int) -> set[int]:
        return set(self.slot(frame_id).received)

    def gof_records(self) -> list[GofReceptionRecord]:
        """Per-GOF counts of fully received frames by priority class."""
        by_gof: dict[int, list[_FrameSlot]] = {}
        for slot in self.frames.values():
            by_gof.setdefault(slot.frame.gof_index, []).append(slot)
        records = []
        for g in sorted(by_gof):
            got = [0, 0, 0]
            total = [0, 0, 0]
            for slot in by_gof[g]:
                idx = slot.frame.priority - FramePriority.F1
                total[idx] += 1
                if slot.complete_in_time:
                    got[idx] += 1
            records.append(GofReceptionRecord(g, got[0], got[1], got[2],
                                              tuple(total)))
        return records


@dataclass
class DistortionReport:
    d_M: float
    per_gof_d_m: list[float]
    temporal_ratio: float
    avg_ssim: float | None
    packet_drop_rate_by_priority: tuple[float, float, float]
    frames_lost_per_gof: list[int] = field(default_factory=list)
    f1_frame_completion_rate: float = 0.0
    displayed_frames: int = 0
    source_frames: int = 0
