"""Config file round-tripping (JSON with sections mirroring module types)."""

from __future__ import annotations

import json
from dataclasses import asdict

from .channel import ChannelParams, CircularPath
from .engine import SimConfig
from .mac import MacConfig
from .media import CodecFamily, EncoderProfile, GofConfig
from .policies import Policy
from .ssim import SsimParams


def _profile_to_dict(p: EncoderProfile) -> dict:
    d = asdict(p)
    d["codec_family"] = p.codec_family.value
    return d


def _profile_from_dict(d: dict) -> EncoderProfile:
    d = dict(d)
    d["codec_family"] = CodecFamily(d["codec_family"])
    d["frames_per_priority"] = tuple(d["frames_per_priority"])
    d["packets_per_frame"] = tuple(d["packets_per_frame"])
    return EncoderProfile(**d)


def config_to_dict(cfg: SimConfig) -> dict:
    return {
        "seed": cfg.seed,
        "policy": cfg.policy.value,
        "topology": [
            {"center": list(p.center), "radius": p.radius,
             "angular_speed": p.angular_speed, "phase0": p.phase0}
            for p in cfg.topology],
        "channel": asdict(cfg.channel),
        "mac": asdict(cfg.mac),
        "gof": {
            "frames_per_priority": list(cfg.gof.frames_per_priority),
            "packets_per_frame": list(cfg.gof.packets_per_frame),
            "gof_period": cfg.gof.gof_period,
            "frame_rate": cfg.gof.frame_rate,
        },
        "packet_budget": cfg.packet_budget,
        "duration": cfg.duration,
        "loss_mode": cfg.loss_mode,
        "iid_drop_rate": cfg.iid_drop_rate,
        "calibrate_target": cfg.calibrate_target,
        "calibrate_tol": cfg.calibrate_tol,
        "payload_bytes": cfg.payload_bytes,
        "encoder_pair": ([_profile_to_dict(p) for p in cfg.encoder_pair]
                         if cfg.encoder_pair else None),
        "fixed_encoder": cfg.fixed_encoder,
        "hysteresis_x1": cfg.hysteresis_x1,
        "hysteresis_x2": cfg.hysteresis_x2,
        "frame_width": cfg.frame_width,
        "frame_height": cfg.frame_height,
        "content_rate": cfg.content_rate,
        "ssim": asdict(cfg.ssim),
        "evaluate_ssim": cfg.evaluate_ssim,
        "select_best": cfg.select_best,
        "select_worst": cfg.select_worst,
    }


def config_from_dict(d: dict) -> SimConfig:
    pair = d.get("encoder_pair")
    return SimConfig(
        seed=d.get("seed", 1),
        policy=Policy(d.get("policy", "no-ack")),
        topology=tuple(
            CircularPath(tuple(p["center"]), p["radius"],
                         p.get("angular_speed", CircularPath((0, 0), 1).angular_speed),
                         p.get("phase0", 0.0))
            for p in d["topology"]) if "topology" in d else SimConfig().topology,
        channel=ChannelParams(**d["channel"]) if "channel" in d else ChannelParams(),
        mac=MacConfig(**d["mac"]) if "mac" in d else MacConfig(),
        gof=GofConfig(
            tuple(d["gof"]["frames_per_priority"]),
            tuple(d["gof"]["packets_per_frame"]),
            d["gof"]["gof_period"], d["gof"]["frame_rate"],
        ) if "gof" in d else GofConfig(),
        packet_budget=d.get("packet_budget", 3500),
        duration=d.get("duration"),
        loss_mode=d.get("loss_mode", "iid"),
        iid_drop_rate=d.get("iid_drop_rate"),
        calibrate_target=d.get("calibrate_target", 0.40),
        calibrate_tol=d.get("calibrate_tol", 0.005),
        payload_bytes=d.get("payload_bytes", 1000),
        encoder_pair=(tuple(_profile_from_dict(p) for p in pair)
                      if pair else None),
        fixed_encoder=d.get("fixed_encoder"),
        hysteresis_x1=d.get("hysteresis_x1", 30),
        hysteresis_x2=d.get("hysteresis_x2", 50),
        frame_width=d.get("frame_width", 160),
        frame_height=d.get("frame_height", 120),
        content_rate=d.get("content_rate", 25.0),
        ssim=SsimParams(**d["ssim"]) if "ssim" in d else SsimParams(),
        evaluate_ssim=d.get("evaluate_ssim", True),
        select_best=d.get("select_best", 10),
        select_worst=d.get("select_worst", 10),
    )


def config_to_json(cfg: SimConfig) -> str:
    return json.dumps(config_to_dict(cfg), indent=2) + "\n"


def config_from_json(text: str) -> SimConfig:
    return config_from_dict(json.loads(text))
