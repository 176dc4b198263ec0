"""Deterministic simulator for priority-aware packet video streaming over a
lossy mobile wireless link, with receiver-side distortion metrics."""

from .channel import (CalibrationError, ChannelParams, CircularPath,
                      calibrate_channel, drop_probability, mean_drop_rate,
                      paper_geometry, rssi_at)
from .engine import (ComparisonReport, ConfigError, RunResult, SimConfig,
                     compare_transmitters, export, export_json, keyed_uniform,
                     result_to_dict, run)
from .mac import MacConfig, MacOutcome, transmit_acked, transmit_unacked
from .media import (CodecFamily, EncoderProfile, Frame, FramePriority,
                    GofConfig, Packet, build_gof_stream, packetize,
                    quantize_grid, reconstruct_frame, synth_frame)
from .policies import Policy
from .presets import (PRESET_NAMES, experiment_config, preset_cases,
                      run_preset, sim40_config)
from .receiver import (DistortionReport, GofReceptionRecord, ReceiverState,
                       d_M, d_m, max_distortion, temporal_ratio)
from .ssim import SsimParams, avg_ssim, select_extremes, ssim

__version__ = "0.1.0"

__all__ = [
    "CalibrationError", "ChannelParams", "CircularPath", "CodecFamily",
    "ComparisonReport", "ConfigError", "DistortionReport", "EncoderProfile",
    "Frame", "FramePriority", "GofConfig", "GofReceptionRecord", "MacConfig",
    "MacOutcome", "PRESET_NAMES", "Packet", "Policy", "ReceiverState",
    "RunResult", "SimConfig", "SsimParams", "avg_ssim", "build_gof_stream",
    "calibrate_channel", "compare_transmitters", "d_M", "d_m",
    "drop_probability", "experiment_config", "export", "export_json",
    "keyed_uniform", "max_distortion", "mean_drop_rate", "packetize",
    "paper_geometry", "preset_cases", "quantize_grid", "reconstruct_frame",
    "result_to_dict", "rssi_at", "run", "run_preset", "select_extremes",
    "sim40_config", "ssim", "synth_frame", "temporal_ratio",
    "transmit_acked", "transmit_unacked",
]
