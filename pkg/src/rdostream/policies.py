"""Transmission policies: the two naive baselines, the ack-driven
priority policy, and the beacon-driven encoder-switching controller.

All policies are sequential state machines emitting one action per step;
the event loop owns time and the MAC, and feeds acknowledged results back
into the next step.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from enum import Enum

from .channel import RSSI_INVALID, Beacon
from .media import (CodecFamily, EncoderProfile, Frame, FramePriority,
                    GofConfig, Packet, build_gof_stream, packetize)


class Policy(str, Enum):
    NO_ACK = "no-ack"
    ACK = "ack"
    LCRDO_ACK = "lcrdo-ack"
    LCRDO_BEACON = "lcrdo-beacon"
    LCRDO_ADAPTIVE_MPEG2 = "lcrdo-adaptive-mpeg2"
    LCRDO_ADAPTIVE_MJPEG = "lcrdo-adaptive-mjpeg"


FIXED_STREAM_POLICIES = (Policy.NO_ACK, Policy.ACK, Policy.LCRDO_ACK)
BEACON_POLICIES = (Policy.LCRDO_BEACON, Policy.LCRDO_ADAPTIVE_MPEG2,
                   Policy.LCRDO_ADAPTIVE_MJPEG)


class ActionKind(Enum):
    SEND_ACKED = "send-acked"
    SEND_UNACKED = "send-unacked"
    ADVANCE_GOF = "advance-gof"
    SWITCH_ENCODER = "switch-encoder"
    IDLE = "idle"


@dataclass(frozen=True)
class TxAction:
    kind: ActionKind
    packet: Packet | None = None
    encoder: int | None = None
    reason: str = ""


IDLE_FRAME_ADVANCE = "frame-advance"   # internal transition, no airtime
IDLE_GOF_COMPLETE = "gof-complete"     # wait for the GOF deadline
IDLE_EXHAUSTED = "exhausted"           # terminal


class GofStreamContext:
    """Frame/packet boundaries of a generated GOF stream."""

    def __init__(self, config: GofConfig, gof_count: int,
                 payload_bytes: int = 1000, start_time: float = 0.0):
        self.config = config
        self.gof_count = gof_count
        self.start_time = start_time
        self.frames = build_gof_stream(config, gof_count, start_time)
        self.packets: list[Packet] = []
        for f in self.frames:
            self.packets.extend(packetize(f, payload_bytes))
        self.frames_by_id = {f.frame_id: f for f in self.frames}

    def packet(self, packet_id: int) -> Packet:
        return self.packets[packet_id]

    def frame_of(self, packet_id: int) -> Frame:
        return self.frames_by_id[self.packets[packet_id].frame_id]

    def final_f1_pkt(self, gof_index: int) -> int:
        per_gof = self.config.packets_per_gof
        n1, k1 = self.config.frames_per_priority[0], self.config.packets_per_frame[0]
        return gof_index * per_gof + n1 * k1 - 1

    def final_gof_pkt(self, gof_index: int) -> int:
        return (gof_index + 1) * self.config.packets_per_gof - 1

    def gof_deadline(self, gof_index: int) -> float:
        return self.start_time + (gof_index + 1) * self.config.gof_period

    def exhausted(self, gof_index: int) -> bool:
        return gof_index >= self.gof_count


@dataclass(frozen=True)
class LcrdoAckState:
    id_frame: int
    id_pkt: int
    t_gof_timestamp: float
    gof_period: float
    id_final_f1_pkt: int
    id_final_gof_pkt: int
    gof_index: int = 0
    awaiting_ack: bool = False

    @classmethod
    def initial(cls, stream: GofStreamContext) -> "LcrdoAckState":
        return cls(id_frame=1, id_pkt=0,
                   t_gof_timestamp=stream.gof_deadline(0),
                   gof_period=stream.config.gof_period,
                   id_final_f1_pkt=stream.final_f1_pkt(0),
                   id_final_gof_pkt=stream.final_gof_pkt(0))


def step_lcrdo_ack(state: LcrdoAckState, t: float, stream: GofStreamContext,
                   last_delivered: bool | None = None,
                   ) -> tuple[TxAction, LcrdoAckState]:
    """One iteration of the ack-driven priority policy.

    F1 packets are sent acknowledged and advance only on delivery; F2/F3
    packets are sent once, unacknowledged.  When the current GOF timestamp
    expires, the remainder of the GOF is abandoned and the next GOF starts.
    """
    if state.awaiting_ack:
        # feedback for the previously emitted acked send
        if last_delivered:
            state = replace(state, id_pkt=state.id_pkt + 1, awaiting_ack=False)
        else:
            state = replace(state, awaiting_ack=False)

    if stream.exhausted(state.gof_index):
        return TxAction(ActionKind.IDLE, reason=IDLE_EXHAUSTED), state

    if t < state.t_gof_timestamp:
        if state.id_frame == 1:
            if state.id_pkt > state.id_final_f1_pkt:
                # switch to next frame
                state = replace(state, id_frame=state.id_frame + 1)
                return TxAction(ActionKind.IDLE, reason=IDLE_FRAME_ADVANCE), state
            state = replace(state, awaiting_ack=True)
            return (TxAction(ActionKind.SEND_ACKED,
                             packet=stream.packet(state.id_pkt)), state)
        if state.id_pkt <= state.id_final_gof_pkt:
            action = TxAction(ActionKind.SEND_UNACKED,
                              packet=stream.packet(state.id_pkt))
            state = replace(state, id_pkt=state.id_pkt + 1)
            return action, state
        return TxAction(ActionKind.IDLE, reason=IDLE_GOF_COMPLETE), state

    # start new GOF interval
    next_gof = state.gof_index + 1
    new_first = state.id_final_gof_pkt + 1
    if stream.exhausted(next_gof):
        state = replace(state, gof_index=next_gof)
        return TxAction(ActionKind.IDLE, reason=IDLE_EXHAUSTED), state
    state = replace(
        state,
        t_gof_timestamp=state.t_gof_timestamp + state.gof_period,
        id_frame=1,
        id_pkt=new_first,
        id_final_f1_pkt=stream.final_f1_pkt(next_gof),
        id_final_gof_pkt=stream.final_gof_pkt(next_gof),
        gof_index=next_gof,
        awaiting_ack=False,
    )
    return TxAction(ActionKind.ADVANCE_GOF), state


@dataclass
class StreamCursor:
    """Sequential position in a GOF stream for the naive baselines."""

    stream: GofStreamContext
    pos: int = 0
    skipped: list[int] = field(default_factory=list)
    awaiting_ack: bool = False

    @property
    def exhausted(self) -> bool:
        return self.pos >= len(self.stream.packets)


def step_no_ack(cursor: StreamCursor, t: float) -> TxAction:
    """One-shot sends in stream order; stale packets are skipped at source."""
    while not cursor.exhausted:
        pkt = cursor.stream.packets[cursor.pos]
        if cursor.stream.frame_of(pkt.packet_id).deadline <= t:
            cursor.skipped.append(pkt.packet_id)
            cursor.pos += 1
            continue
        cursor.pos += 1
        return TxAction(ActionKind.SEND_UNACKED, packet=pkt)
    return TxAction(ActionKind.IDLE, reason=IDLE_EXHAUSTED)


def step_ack(cursor: StreamCursor, t: float,
             last_delivered: bool | None = None) -> TxAction:
    """Acked sends with unbounded application retries; never skips packets,
    so queueing delay accumulates when the channel cannot keep up."""
    if cursor.awaiting_ack:
        cursor.awaiting_ack = False
        if last_delivered:
            cursor.pos += 1
    if cursor.exhausted:
        return TxAction(ActionKind.IDLE, reason=IDLE_EXHAUSTED)
    cursor.awaiting_ack = True
    return TxAction(ActionKind.SEND_ACKED, packet=cursor.stream.packets[cursor.pos])


@dataclass
class HysteresisController:
    """Two-threshold encoder selector; strict inequalities, so readings on
    the thresholds and the invalid marker cause no action."""

    x1: int = 30
    x2: int = 50
    active_encoder: int = 1

    def __post_init__(self) -> None:
        if not self.x1 < self.x2:
            raise ValueError("need x1 < x2")
        if self.active_encoder not in (1, 2):
            raise ValueError("active_encoder must be 1 or 2")


@dataclass
class TxQueues:
    queue1: deque = field(default_factory=deque)
    queue2: deque = field(default_factory=deque)

    def queue(self, encoder: int) -> deque:
        return self.queue1 if encoder == 1 else self.queue2

    def clear_all(self) -> list[Packet]:
        dropped = list(self.queue1) + list(self.queue2)
        self.queue1.clear()
        self.queue2.clear()
        return dropped


def on_beacon(controller: HysteresisController, queues: TxQueues,
              beacon: Beacon) -> TxAction:
    """Hysteresis switching on beacon RSSI; both queues are flushed at every
    switch so no residual pre-switch packet is ever transmitted."""
    r = beacon.rssi.value
    if r == RSSI_INVALID:
        return TxAction(ActionKind.IDLE, reason="invalid-rssi")
    if r < controller.x1 and controller.active_encoder != 2:
        queues.clear_all()
        controller.active_encoder = 2
        return TxAction(ActionKind.SWITCH_ENCODER, encoder=2)
    if r > controller.x2 and controller.active_encoder != 1:
        queues.clear_all()
        controller.active_encoder = 1
        return TxAction(ActionKind.SWITCH_ENCODER, encoder=1)
    return TxAction(ActionKind.IDLE, reason="in-band")


def encoder_pair_for(policy: Policy) -> tuple[EncoderProfile, EncoderProfile]:
    """(high mode, degraded mode) encoder pair for a beacon-driven policy.

    Packet counts per frame are synthetic sizing choices; they set the
    relative airtime load of each mode.
    """
    if policy is Policy.LCRDO_BEACON:
        return (
            EncoderProfile("mpeg2-gof5-25fps", gof_len=5, frame_rate=25.0,
                           codec_family=CodecFamily.MPEG2_LIKE,
                           frames_per_priority=(1, 2, 2),
                           packets_per_frame=(10, 2, 1)),
            EncoderProfile("mpeg2-gof1-5fps", gof_len=1, frame_rate=5.0,
                           codec_family=CodecFamily.MPEG2_LIKE,
                           frames_per_priority=(1, 0, 0),
                           packets_per_frame=(13, 0, 0)),
        )
    if policy is Policy.LCRDO_ADAPTIVE_MPEG2:
        return (
            EncoderProfile("mpeg2-unlimited", gof_len=5, frame_rate=25.0,
                           codec_family=CodecFamily.MPEG2_LIKE,
                           frames_per_priority=(1, 2, 2),
                           packets_per_frame=(10, 2, 1)),
            EncoderProfile("mpeg2-100kbps", gof_len=5, frame_rate=25.0,
                           codec_family=CodecFamily.MPEG2_LIKE,
                           frames_per_priority=(1, 2, 2),
                           packets_per_frame=(8, 2, 1),
                           bitrate_cap=100_000.0),
        )
    if policy is Policy.LCRDO_ADAPTIVE_MJPEG:
        return (
            EncoderProfile("mjpeg-smoke-q80", gof_len=8, frame_rate=10.0,
                           codec_family=CodecFamily.MJPEG_SMOKE_LIKE,
                           frames_per_priority=(1, 7, 0),
                           packets_per_frame=(24, 6, 0),
                           quality=80.0, delta_per_key=8),
            EncoderProfile("mjpeg-smoke-q30", gof_len=8, frame_rate=10.0,
                           codec_family=CodecFamily.MJPEG_SMOKE_LIKE,
                           frames_per_priority=(1, 7, 0),
                           packets_per_frame=(20, 5, 0),
                           quality=30.0, delta_per_key=8),
        )
    raise ValueError(f"policy {policy.value} has no encoder pair")
