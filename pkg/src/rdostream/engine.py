"""Deterministic discrete-event simulation loop, experiment harness, export.

All randomness is derived from counter-style keyed hashes of the run seed,
so the Bernoulli draw consumed by attempt ``i`` of a given stream packet is
identical no matter which transmitter policy is running (paired-comparison
fairness) and re-running a config reproduces byte-identical outputs.
"""

from __future__ import annotations

import csv
import heapq
import io
import json
import math
from collections import defaultdict
from dataclasses import dataclass, field, replace
from enum import IntEnum

from . import channel as ch
from .channel import ChannelParams, CircularPath, calibrate_channel, mean_drop_rate
from .mac import MacConfig, next_beacon_time, transmit_acked, transmit_unacked
from .media import (CodecFamily, EncoderProfile, Frame, FramePriority,
                    GofConfig, Packet, ImageGrid, quantize_grid,
                    reconstruct_frame, synth_frame)
from .policies import (ActionKind, BEACON_POLICIES, GofStreamContext,
                       HysteresisController, IDLE_EXHAUSTED,
                       IDLE_FRAME_ADVANCE, IDLE_GOF_COMPLETE, LcrdoAckState,
                       Policy, StreamCursor, TxQueues, encoder_pair_for,
                       on_beacon, step_ack, step_lcrdo_ack, step_no_ack)
from .receiver import (DistortionReport, ReceiverState, d_M, d_m,
                       max_distortion, temporal_ratio)
from .ssim import SsimParams, avg_ssim, select_extremes, ssim

_M64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def _mix64(z: int) -> int:
    z = (z + _GOLDEN) & _M64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _M64
    return (z ^ (z >> 31)) & _M64


def keyed_uniform(*keys: int) -> float:
    """Deterministic uniform in [0, 1) from an integer key tuple."""
    h = 0x243F6A8885A308D3
    for k in keys:
        h = _mix64(h ^ (int(k) & _M64))
    return (h >> 11) * (1.0 / (1 << 53))


class EventKind(IntEnum):
    """Tie-break rank for simultaneous events (lower fires first)."""

    TX_STEP = 0
    MAC_COMPLETE = 1
    BEACON_ARRIVAL = 2
    FRAME_GEN = 3
    GOF_DEADLINE = 4
    SIM_END = 5


@dataclass(frozen=True)
class Event:
    time: float
    kind: EventKind
    payload: object = None


class EventQueue:
    """Min-heap of events ordered by (time, kind rank, insertion order)."""

    def __init__(self) -> None:
        self._heap: list[tuple[float, int, int, Event]] = []
        self._seq = 0
        self._last_time = -math.inf

    def push(self, event: Event) -> None:
        heapq.heappush(self._heap, (event.time, int(event.kind),
                                    self._seq, event))
        self._seq += 1

    def pop(self) -> Event:
        _, _, _, event = heapq.heappop(self._heap)
        if event.time < self._last_time:
            raise RuntimeError("event processed out of time order")
        self._last_time = event.time
        return event

    def __bool__(self) -> bool:
        return bool(self._heap)


class ConfigError(ValueError):
    """Invalid simulation configuration."""


def _default_topology() -> tuple[CircularPath, ...]:
    a, b = ch.paper_geometry()
    interferer = CircularPath((190.0, 0.0), 40.0)
    return (a, b, interferer)


@dataclass
class SimConfig:
    seed: int = 1
    policy: Policy = Policy.NO_ACK
    topology: tuple[CircularPath, ...] = field(default_factory=_default_topology)
    channel: ChannelParams = field(default_factory=ChannelParams)
    mac: MacConfig = field(default_factory=MacConfig)
    gof: GofConfig = field(default_factory=GofConfig)
    packet_budget: int | None = 3500
    duration: float | None = None
    loss_mode: str = "iid"  # "iid" or "position"
    iid_drop_rate: float | None = None
    calibrate_target: float | None = 0.40
    calibrate_tol: float = 0.005
    payload_bytes: int = 1000
    encoder_pair: tuple[EncoderProfile, EncoderProfile] | None = None
    fixed_encoder: int | None = None  # pin the beacon engine to one encoder
    hysteresis_x1: int = 30
    hysteresis_x2: int = 50
    frame_width: int = 160
    frame_height: int = 120
    content_rate: float = 25.0  # synthetic scene sampling rate
    ssim: SsimParams = field(default_factory=SsimParams)
    evaluate_ssim: bool = True
    select_best: int = 10
    select_worst: int = 10

    def __post_init__(self) -> None:
        self.policy = Policy(self.policy)
        self.topology = tuple(self.topology)
        if len(self.topology) not in (2, 3):
            raise ConfigError("topology needs 2 or 3 node paths")
        if self.loss_mode not in ("iid", "position"):
            raise ConfigError("loss_mode must be 'iid' or 'position'")
        if self.fixed_encoder not in (None, 1, 2):
            raise ConfigError("fixed_encoder must be None, 1 or 2")

    @property
    def interferer_active(self) -> bool:
        return len(self.topology) == 3


@dataclass
class TraceRow:
    packet_id: int
    frame_id: int
    priority: int
    attempts: int
    delivered: bool
    arrival_time: float | None


@dataclass
class SwitchEvent:
    time: float
    to_encoder: int
    rssi: int
    cleared_packets: int


@dataclass
class RunResult:
    seed: int
    policy: str
    distortion: DistortionReport
    trace: list[TraceRow]
    switch_events: list[SwitchEvent]
    channel_params: ChannelParams
    counter_trace: list[tuple[float, int]]
    sim_time: float


def resolved_channel(config: SimConfig) -> ChannelParams:
    """Channel params after optional inline calibration."""
    if config.calibrate_target is None:
        return config.channel
    pa, pb = config.topology[0], config.topology[1]
    return calibrate_channel((pa, pb), config.channel,
                             config.calibrate_target, config.calibrate_tol,
                             interferer_active=config.interferer_active)


def _drop_prob_fn(config: SimConfig, params: ChannelParams):
    pa, pb = config.topology[0], config.topology[1]
    interferer = config.interferer_active
    if config.loss_mode == "iid":
        rate = config.iid_drop_rate
        if rate is None:
            rate = mean_drop_rate(pa, pb, params, interferer)
        return lambda t: rate
    return lambda t: ch.drop_probability(
        ch.inter_node_distance(pa, pb, t), params, interferer)


def run(config: SimConfig) -> RunResult:
    """Execute one simulation; a pure function of the config."""
    params = resolved_channel(config)
    qfn = _drop_prob_fn(config, params)
    if config.policy in BEACON_POLICIES:
        return _run_beacon(config, params, qfn)
    return _run_fixed_stream(config, params, qfn)


# --------------------------------------------------------------------------
# fixed-stream policies (no-ack / ack / lcrdo-ack)
# --------------------------------------------------------------------------

def _run_fixed_stream(config: SimConfig, params: ChannelParams, qfn) -> RunResult:
    gofcfg = config.gof
    per_gof = gofcfg.packets_per_gof
    if config.packet_budget is not None:
        budget = config.packet_budget
        gof_count = max(1, math.ceil(budget / per_gof))
    else:
        dur = config.duration or 24 * gofcfg.gof_period
        gof_count = max(1, math.ceil(dur / gofcfg.gof_period))
        budget = gof_count * per_gof
    stream = GofStreamContext(gofcfg, gof_count, config.payload_bytes)
    budget = min(budget, len(stream.packets))
    recv = ReceiverState.for_frames(stream.frames)
    attempts: dict[int, int] = defaultdict(int)
    delivered_flag: dict[int, bool] = {}
    arrival: dict[int, float] = {}
    seed = config.seed
    mac = config.mac

    def draw_for(pid: int):
        return lambda i: keyed_uniform(seed, 0, pid, i)

    t = 0.0
    policy = config.policy
    if policy is Policy.NO_ACK:
        cursor = StreamCursor(stream)
        while True:
            action = step_no_ack(cursor, t)
            if action.kind is ActionKind.IDLE:
                break
            pkt = action.packet
            if pkt.packet_id >= budget:
                break
            res = transmit_unacked(t, qfn(t), mac, draw_for(pkt.packet_id),
                                   attempt_index=attempts[pkt.packet_id])
            attempts[pkt.packet_id] += 1
            delivered_flag[pkt.packet_id] = res.delivered
            if res.delivered:
                arrival[pkt.packet_id] = res.completion_time
                recv.ingest(pkt, res.completion_time)
            t = res.completion_time
    elif policy is Policy.ACK:
        cursor = StreamCursor(stream)
        last: bool | None = None
        while True:
            action = step_ack(cursor, t, last)
            if action.kind is ActionKind.IDLE:
                break
            pkt = action.packet
            if pkt.packet_id >= budget:
                break
            res = transmit_acked(t, qfn(t), mac, draw_for(pkt.packet_id),
                                 first_attempt_index=attempts[pkt.packet_id])
            attempts[pkt.packet_id] += res.attempts
            last = res.delivered
            if res.delivered:
                delivered_flag[pkt.packet_id] = True
                arrival[pkt.packet_id] = res.completion_time
                recv.ingest(pkt, res.completion_time)
            else:
                delivered_flag.setdefault(pkt.packet_id, False)
            t = res.completion_time
    elif policy is Policy.LCRDO_ACK:
        state = LcrdoAckState.initial(stream)
        last = None
        while True:
            action, state = step_lcrdo_ack(state, t, stream, last)
            last = None
            kind = action.kind
            if kind is ActionKind.SEND_ACKED:
                pkt = action.packet
                if pkt.packet_id >= budget:
                    break
                res = transmit_acked(t, qfn(t), mac, draw_for(pkt.packet_id),
                                     first_attempt_index=attempts[pkt.packet_id])
                attempts[pkt.packet_id] += res.attempts
                last = res.delivered
                if res.delivered:
                    delivered_flag[pkt.packet_id] = True
                    arrival[pkt.packet_id] = res.completion_time
                    recv.ingest(pkt, res.completion_time)
                else:
                    delivered_flag.setdefault(pkt.packet_id, False)
                t = res.completion_time
            elif kind is ActionKind.SEND_UNACKED:
                pkt = action.packet
                if pkt.packet_id >= budget:
                    break
                res = transmit_unacked(t, qfn(t), mac, draw_for(pkt.packet_id),
                                       attempt_index=attempts[pkt.packet_id])
                attempts[pkt.packet_id] += 1
                delivered_flag[pkt.packet_id] = res.delivered
                if res.delivered:
                    arrival[pkt.packet_id] = res.completion_time
                    recv.ingest(pkt, res.completion_time)
                t = res.completion_time
            elif kind is ActionKind.ADVANCE_GOF:
                continue
            elif kind is ActionKind.IDLE:
                if action.reason == IDLE_FRAME_ADVANCE:
                    continue
                if action.reason == IDLE_GOF_COMPLETE:
                    t = state.t_gof_timestamp
                    continue
                break  # exhausted
    else:  # pragma: no cover - guarded by run()
        raise ConfigError(f"not a fixed-stream policy: {policy}")

    trace = []
    for pkt in stream.packets[:budget]:
        trace.append(TraceRow(pkt.packet_id, pkt.frame_id, int(pkt.priority),
                              attempts.get(pkt.packet_id, 0),
                              delivered_flag.get(pkt.packet_id, False),
                              arrival.get(pkt.packet_id)))

    report = _build_report(config, recv, stream.frames,
                           CodecFamily.MPEG2_LIKE, stream.packets[:budget],
                           source_duration=gof_count * gofcfg.gof_period,
                           quality_of=lambda frame: 100.0)
    return RunResult(config.seed, config.policy.value, report, trace, [],
                     params, recv.counter_trace, t)


# --------------------------------------------------------------------------
# beacon-driven policies (encoder switching over queued live streams)
# --------------------------------------------------------------------------

@dataclass
class _QueuedPacket:
    packet: Packet
    frame: Frame
    encoder: int
    frame_seq: int      # per-encoder frame index (stable across cases)
    index_in_frame: int


class _EncoderFeed:
    """Live frame generator for one encoder pipeline."""

    def __init__(self, profile: EncoderProfile, encoder_index: int):
        self.profile = profile
        self.encoder_index = encoder_index
        self.gofcfg = profile.gof_config()
        self.next_seq = 0
        # slot -> (priority, packet count) in priority order within a GOF
        self.slots: list[tuple[FramePriority, int]] = []
        for prio, n, k in zip(FramePriority, self.gofcfg.frames_per_priority,
                              self.gofcfg.packets_per_frame):
            self.slots.extend([(prio, k)] * n)

    @property
    def frame_gap(self) -> float:
        return 1.0 / self.profile.frame_rate

    def next_time(self) -> float:
        return self.next_seq * self.frame_gap

    def emit(self, frame_id: int) -> tuple[Frame, int, int]:
        """Next frame metadata: (frame, local gof index, frame_seq)."""
        seq = self.next_seq
        self.next_seq += 1
        gof_local = seq // self.profile.gof_len
        slot = seq % self.profile.gof_len
        prio, k = self.slots[slot]
        deadline = (gof_local + 1) * self.gofcfg.gof_period
        frame = Frame(frame_id=frame_id, priority=prio, gof_index=-1,
                      packet_ids=range(0, k), deadline=deadline,
                      creation_time=seq * self.frame_gap,
                      duration=self.frame_gap)
        return frame, gof_local, seq


def _run_beacon(config: SimConfig, params: ChannelParams, qfn) -> RunResult:
    profiles = config.encoder_pair or encoder_pair_for(config.policy)
    duration = config.duration or 180.0
    adaptive = config.fixed_encoder is None
    controller = HysteresisController(config.hysteresis_x1,
                                      config.hysteresis_x2,
                                      active_encoder=config.fixed_encoder or 1)
    queues = TxQueues()
    recv = ReceiverState(frames={})
    feeds = {1: _EncoderFeed(profiles[0], 1), 2: _EncoderFeed(profiles[1], 2)}
    pa, pb = config.topology[0], config.topology[1]
    mac = config.mac
    seed = config.seed

    events = EventQueue()
    frames_meta: dict[int, tuple[Frame, EncoderProfile]] = {}
    gof_key_to_index: dict[tuple[int, int], int] = {}
    trace_rows: list[TraceRow] = []
    switch_events: list[SwitchEvent] = []
    busy = False
    next_frame_id = 0
    next_packet_id = 0
    generated_packets: list[Packet] = []

    def global_gof(encoder: int, gof_local: int) -> int:
        key = (encoder, gof_local)
        if key not in gof_key_to_index:
            gof_key_to_index[key] = len(gof_key_to_index)
        return gof_key_to_index[key]

    for e in (1, 2):
        events.push(Event(0.0, EventKind.FRAME_GEN, e))
    events.push(Event(next_beacon_time(0.0, mac), EventKind.BEACON_ARRIVAL, None))
    events.push(Event(duration, EventKind.SIM_END, None))

    def kick(t: float) -> None:
        nonlocal busy
        if not busy:
            busy = True
            events.push(Event(t, EventKind.TX_STEP, None))

    def generate(t: float, e: int) -> None:
        nonlocal next_frame_id, next_packet_id
        feed = feeds[e]
        frame, gof_local, seq = feed.emit(next_frame_id)
        if controller.active_encoder == e:
            gof_index = global_gof(e, gof_local)
            k = len(frame.packet_ids)
            frame = Frame(frame.frame_id, frame.priority, gof_index,
                          range(next_packet_id, next_packet_id + k),
                          frame.deadline, frame.creation_time, frame.duration)
            next_frame_id += 1
            next_packet_id += k
            frames_meta[frame.frame_id] = (frame, feed.profile)
            recv.add_frame(frame)
            payload = feed.profile.payload_bytes(config.payload_bytes)
            for j, pid in enumerate(frame.packet_ids):
                pkt = Packet(pid, frame.frame_id, frame.priority, payload,
                             frame.creation_time)
                generated_packets.append(pkt)
                queues.queue(e).append(_QueuedPacket(pkt, frame, e, seq, j))
            kick(t)
        nxt = feed.next_time()
        if nxt < duration:
            events.push(Event(nxt, EventKind.FRAME_GEN, e))

    running = True
    t = 0.0
    while events and running:
        ev = events.pop()
        t = ev.time
        if ev.kind is EventKind.SIM_END:
            running = False
        elif ev.kind is EventKind.FRAME_GEN:
            generate(t, ev.payload)
        elif ev.kind is EventKind.BEACON_ARRIVAL:
            if adaptive:
                d = ch.inter_node_distance(pa, pb, t)
                beacon = ch.Beacon(t, ch.rssi_at(d, params))
                cleared = len(queues.queue1) + len(queues.queue2)
                action = on_beacon(controller, queues, beacon)
                if action.kind is ActionKind.SWITCH_ENCODER:
                    switch_events.append(SwitchEvent(
                        t, controller.active_encoder, beacon.rssi.value,
                        cleared))
            nxt = next_beacon_time(t, mac)
            if nxt < duration:
                events.push(Event(nxt, EventKind.BEACON_ARRIVAL, None))
        elif ev.kind in (EventKind.TX_STEP, EventKind.MAC_COMPLETE):
            queue = queues.queue(controller.active_encoder)
            if not queue:
                busy = False
                continue
            qp = queue.popleft()
            q = qfn(t)
            res = transmit_acked(
                t, q, mac,
                lambda i, qp=qp: keyed_uniform(seed, qp.encoder, qp.frame_seq,
                                               qp.index_in_frame, i))
            trace_rows.append(TraceRow(
                qp.packet.packet_id, qp.frame.frame_id,
                int(qp.packet.priority), res.attempts, res.delivered,
                res.completion_time if res.delivered else None))
            if res.delivered:
                recv.ingest(qp.packet, res.completion_time)
            events.push(Event(res.completion_time, EventKind.MAC_COMPLETE,
                              None))

    # queue remnants and cleared packets never reached the MAC
    traced = {row.packet_id for row in trace_rows}
    for pkt in generated_packets:
        if pkt.packet_id not in traced:
            trace_rows.append(TraceRow(pkt.packet_id, pkt.frame_id,
                                       int(pkt.priority), 0, False, None))
    trace_rows.sort(key=lambda r: r.packet_id)

    frames = [frames_meta[fid][0] for fid in sorted(frames_meta)]
    codec = profiles[0].codec_family
    report = _build_report(
        config, recv, frames, codec, generated_packets,
        source_duration=duration,
        quality_of=lambda frame: frames_meta[frame.frame_id][1].quality)
    return RunResult(config.seed, config.policy.value, report, trace_rows,
                     switch_events, params, recv.counter_trace, t)


# --------------------------------------------------------------------------
# report assembly
# --------------------------------------------------------------------------

def _displayed_flags(frames: list[Frame], recv: ReceiverState,
                     codec: CodecFamily) -> dict[int, bool]:
    """Display rule per frame: MJPEG-like decoders show only complete frames;
    MPEG2-like decoders conceal partial frames from any in-time packet.
    Dependent frames need their GOF's F1 frame on screen."""
    flags: dict[int, bool] = {}
    f1_ok: dict[int, bool] = {}
    for frame in sorted(frames, key=lambda f: f.creation_time):
        slot = recv.slot(frame.frame_id)
        if codec is CodecFamily.MJPEG_SMOKE_LIKE:
            got = slot.complete_in_time
        else:
            got = len(slot.received) > 0
        if frame.priority is FramePriority.F1:
            flags[frame.frame_id] = got
            f1_ok[frame.gof_index] = got
        else:
            flags[frame.frame_id] = got and f1_ok.get(frame.gof_index, False)
    return flags


def _build_report(config: SimConfig, recv: ReceiverState, frames: list[Frame],
                  codec: CodecFamily, offered_packets: list[Packet],
                  source_duration: float, quality_of) -> DistortionReport:
    records = recv.gof_records()
    if records:
        d0 = float(max(
            r.total_frames[0] * (1 + r.total_frames[1] * (1 + r.total_frames[2]))
            for r in records))
        d0 = max(d0, 1.0)
        per_gof = [d_m(r, d0) for r in records]
    else:
        per_gof = []
    frames_lost = [r.frames_lost for r in records]

    delivered_by_prio = [0, 0, 0]
    offered_by_prio = [0, 0, 0]
    for pkt in offered_packets:
        idx = int(pkt.priority) - 1
        offered_by_prio[idx] += 1
        if pkt.packet_id in recv.slot(pkt.frame_id).received:
            delivered_by_prio[idx] += 1
    drop_rates = tuple(
        1.0 - delivered_by_prio[i] / offered_by_prio[i]
        if offered_by_prio[i] else 0.0
        for i in range(3))

    offered_pids = {p.packet_id for p in offered_packets}
    f1_frames = [f for f in frames if f.priority is FramePriority.F1
                 and set(f.packet_ids) <= offered_pids]
    f1_complete = sum(1 for f in f1_frames
                      if recv.slot(f.frame_id).complete_in_time)
    f1_rate = f1_complete / len(f1_frames) if f1_frames else 0.0

    flags = _displayed_flags(frames, recv, codec)
    displayed = [f for f in frames if flags[f.frame_id]]
    shown_duration = sum(f.duration for f in displayed)
    t_ratio = temporal_ratio(shown_duration, source_duration)

    score = None
    if config.evaluate_ssim:
        score = _avg_ssim_over_run(config, recv, frames, flags, codec,
                                   quality_of)

    return DistortionReport(
        d_M=float(sum(per_gof)),
        per_gof_d_m=per_gof,
        temporal_ratio=t_ratio,
        avg_ssim=score,
        packet_drop_rate_by_priority=drop_rates,
        frames_lost_per_gof=frames_lost,
        f1_frame_completion_rate=f1_rate,
        displayed_frames=len(displayed),
        source_frames=len(frames),
    )


def _avg_ssim_over_run(config: SimConfig, recv: ReceiverState,
                       frames: list[Frame], flags: dict[int, bool],
                       codec: CodecFamily, quality_of) -> float | None:
    """Score every displayed frame against the pristine scene, then average
    the selected best/worst extremes."""
    w, h = config.frame_width, config.frame_height
    scores: list[float] = []
    prev: ImageGrid | None = None
    for frame in sorted(frames, key=lambda f: f.creation_time):
        if not flags[frame.frame_id]:
            continue
        content_idx = int(round(frame.creation_time * config.content_rate))
        pristine = synth_frame(config.seed, content_idx, w, h)
        quality = quality_of(frame)
        slot = recv.slot(frame.frame_id)
        complete = slot.complete_in_time
        if complete and quality >= 100.0:
            scores.append(1.0)
            prev = pristine
            continue
        encoded = quantize_grid(pristine, quality)
        recon = reconstruct_frame(set(slot.received), frame, encoded, prev,
                                  codec)
        if recon is None:
            continue
        scores.append(ssim(recon, pristine, config.ssim))
        prev = recon
    if not scores:
        return None
    chosen = select_extremes(scores, config.select_best, config.select_worst)
    return float(sum(scores[i] for i in chosen) / len(chosen))


# --------------------------------------------------------------------------
# comparison harness and export
# --------------------------------------------------------------------------

@dataclass
class ComparisonRow:
    label: str
    policy: str
    seed: int
    d_M: float
    temporal_ratio: float
    avg_ssim: float | None
    drop_rates: tuple[float, float, float]


@dataclass
class ComparisonReport:
    rows: list[ComparisonRow]
    results: dict[str, RunResult] = field(default_factory=dict)

    def row(self, label: str) -> ComparisonRow:
        for r in self.rows:
            if r.label == label:
                return r
        raise KeyError(label)


def compare_transmitters(base: SimConfig,
                         policies: list[Policy | str],
                         keep_results: bool = True) -> ComparisonReport:
    """Run several policies on identical channel realizations."""
    if len(policies) < 1:
        raise ConfigError("need at least one policy")
    rows = []
    results = {}
    for p in policies:
        policy = Policy(p)
        cfg = replace(base, policy=policy)
        result = run(cfg)
        rep = result.distortion
        rows.append(ComparisonRow(policy.value, policy.value, base.seed,
                                  rep.d_M, rep.temporal_ratio, rep.avg_ssim,
                                  rep.packet_drop_rate_by_priority))
        if keep_results:
            results[policy.value] = result
    return ComparisonReport(rows, results)


def _f(x) -> object:
    if isinstance(x, float):
        return round(x, 12)
    return x


def result_to_dict(result: RunResult) -> dict:
    rep = result.distortion
    return {
        "schema_version": 1,
        "seed": result.seed,
        "policy": result.policy,
        "sim_time": _f(result.sim_time),
        "channel_params": {
            "alpha": _f(result.channel_params.alpha),
            "ref_loss_db": _f(result.channel_params.ref_loss_db),
            "d0": _f(result.channel_params.d0),
            "tx_power_dbm": _f(result.channel_params.tx_power_dbm),
            "drop_midpoint_dbm": _f(result.channel_params.drop_midpoint_dbm),
            "drop_steepness": _f(result.channel_params.drop_steepness),
            "interference_collision_prob":
                _f(result.channel_params.interference_collision_prob),
            "rssi_min_dbm": _f(result.channel_params.rssi_min_dbm),
            "rssi_max_dbm": _f(result.channel_params.rssi_max_dbm),
        },
        "distortion": {
            "d_M": _f(rep.d_M),
            "per_gof_d_m": [_f(v) for v in rep.per_gof_d_m],
            "temporal_ratio": _f(rep.temporal_ratio),
            "avg_ssim": _f(rep.avg_ssim) if rep.avg_ssim is not None else None,
            "packet_drop_rate_by_priority":
                [_f(v) for v in rep.packet_drop_rate_by_priority],
            "frames_lost_per_gof": rep.frames_lost_per_gof,
            "f1_frame_completion_rate": _f(rep.f1_frame_completion_rate),
            "displayed_frames": rep.displayed_frames,
            "source_frames": rep.source_frames,
        },
        "switch_events": [
            {"time": _f(s.time), "to_encoder": s.to_encoder,
             "rssi": s.rssi, "cleared_packets": s.cleared_packets}
            for s in result.switch_events],
        "packets_attempted": len(result.trace),
    }


def export_json(result: RunResult) -> bytes:
    return (json.dumps(result_to_dict(result), indent=2, sort_keys=False)
            + "\n").encode()


def export_trace_csv(result: RunResult) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["packet_id", "frame_id", "priority", "attempts",
                "delivered", "arrival_time"])
    for row in result.trace:
        w.writerow([row.packet_id, row.frame_id, row.priority, row.attempts,
                    int(row.delivered),
                    "" if row.arrival_time is None else repr(row.arrival_time)])
    return buf.getvalue().encode()


def export_summary_csv(result: RunResult) -> bytes:
    rep = result.distortion
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row", "gof_index", "d_m", "frames_lost"])
    for g, (dm, lost) in enumerate(zip(rep.per_gof_d_m,
                                       rep.frames_lost_per_gof)):
        w.writerow(["gof", g, repr(dm), lost])
    w.writerow(["summary", "", repr(rep.d_M), sum(rep.frames_lost_per_gof)])
    return buf.getvalue().encode()


def export_plotdata_csv(result: RunResult) -> bytes:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["time", "counter"])
    for t, c in result.counter_trace:
        w.writerow([repr(t), c])
    return buf.getvalue().encode()


def export(result: RunResult, format: str) -> bytes:
    if format == "json":
        return export_json(result)
    if format == "csv":
        return export_trace_csv(result)
    raise ConfigError(f"unknown export format: {format}")
