"""Canned experiment configurations.

``sim40``: the three fixed-stream transmitters on a channel calibrated to a
40% mean packet drop rate, 3500-packet budget, i.i.d. per-packet loss.  MAC
airtimes are sized so the always-acknowledged baseline cannot finish a GOF
within its playout period (its delay then accumulates) while the
priority-aware policy fits with headroom.

``exp1``/``exp2``/``exp3``: the encoder-switching field scenarios on the
position-correlated time-varying channel.  Each trio is (a) degraded
encoder only, (b) high encoder only, (c) beacon-driven switching.
"""

from __future__ import annotations

from dataclasses import replace

from .engine import SimConfig, run
from .mac import MacConfig
from .media import GofConfig
from .policies import Policy

PRESET_NAMES = ("sim40", "exp1", "exp2", "exp3")

_EXP_POLICY = {
    1: Policy.LCRDO_BEACON,
    2: Policy.LCRDO_ADAPTIVE_MPEG2,
    3: Policy.LCRDO_ADAPTIVE_MJPEG,
}


def sim40_config(seed: int = 1) -> SimConfig:
    return SimConfig(
        seed=seed,
        policy=Policy.NO_ACK,
        mac=MacConfig(max_retries=3, tx_duration=0.008, ack_duration=0.002,
                      beacon_interval=0.1),
        gof=GofConfig((1, 2, 6), (50, 20, 10), gof_period=1.8, frame_rate=5.0),
        packet_budget=3500,
        loss_mode="iid",
        calibrate_target=0.40,
        calibrate_tol=0.005,
    )


def experiment_config(exp: int, case: str, seed: int = 1,
                      duration: float = 180.0) -> SimConfig:
    if exp not in _EXP_POLICY or case not in "abc":
        raise ValueError(f"unknown experiment {exp}{case}")
    policy = _EXP_POLICY[exp]
    fixed = {"a": 2, "b": 1, "c": None}[case]
    cfg = SimConfig(
        seed=seed,
        policy=policy,
        mac=MacConfig(max_retries=3, tx_duration=0.008, ack_duration=0.001,
                      beacon_interval=0.1),
        packet_budget=None,
        duration=duration,
        loss_mode="position",
        calibrate_target=0.40,
        calibrate_tol=0.005,
        fixed_encoder=fixed,
    )
    if exp == 3:
        cfg = replace(cfg, frame_width=320, frame_height=240,
                      content_rate=10.0)
    return cfg


def preset_cases(name: str, seed: int = 1) -> list[tuple[str, SimConfig]]:
    """(label, config) pairs making up one preset comparison."""
    if name == "sim40":
        base = sim40_config(seed)
        return [(p.value, replace(base, policy=p))
                for p in (Policy.NO_ACK, Policy.ACK, Policy.LCRDO_ACK)]
    if name in ("exp1", "exp2", "exp3"):
        exp = int(name[-1])
        return [(f"{name}{case}", experiment_config(exp, case, seed))
                for case in "abc"]
    raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")


def run_preset(name: str, seeds: list[int],
               evaluate_ssim: bool = False) -> list[dict]:
    """Run a preset over several seeds; one summary dict per (seed, case)."""
    rows = []
    for seed in seeds:
        for label, cfg in preset_cases(name, seed):
            result = run(replace(cfg, evaluate_ssim=evaluate_ssim))
            rep = result.distortion
            rows.append({
                "preset": name,
                "seed": seed,
                "case": label,
                "policy": result.policy,
                "d_M": rep.d_M,
                "temporal_ratio": rep.temporal_ratio,
                "avg_ssim": rep.avg_ssim,
                "drop_f1": rep.packet_drop_rate_by_priority[0],
                "drop_f2": rep.packet_drop_rate_by_priority[1],
                "drop_f3": rep.packet_drop_rate_by_priority[2],
                "f1_frame_completion_rate": rep.f1_frame_completion_rate,
                "switches": len(result.switch_events),
            })
    return rows
