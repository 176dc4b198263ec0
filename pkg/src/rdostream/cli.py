"""Command-line entry points.

Subcommands:
  run        simulate one configuration, write result.json / trace.csv /
             summary.csv / plotdata.csv into --out
  compare    run a preset comparison over several seeds, print a table
  calibrate  solve the channel midpoint for a target mean drop rate
  ssim       score two grayscale images against each other

Exit codes: 0 on success, 2 on configuration errors, 3 on calibration
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from .channel import (CalibrationError, ChannelParams, calibrate_channel,
                      mean_drop_rate, paper_geometry)
from .engine import (ConfigError, export_json, export_plotdata_csv,
                     export_summary_csv, export_trace_csv, run)
from .policies import Policy
from .presets import PRESET_NAMES, preset_cases, run_preset, sim40_config
from .serialize import config_from_json
from .ssim import ssim


def _load_config(args: argparse.Namespace):
    if args.config:
        try:
            cfg = config_from_json(Path(args.config).read_text())
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise ConfigError(f"cannot load config {args.config}: {exc}")
    else:
        cfg = sim40_config()
    from dataclasses import replace
    if args.seed is not None:
        cfg = replace(cfg, seed=args.seed)
    if args.policy is not None:
        try:
            cfg = replace(cfg, policy=Policy(args.policy))
        except ValueError as exc:
            raise ConfigError(str(exc))
    return cfg


def cmd_run(args: argparse.Namespace) -> int:
    cfg = _load_config(args)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    result = run(cfg)
    (out / "result.json").write_bytes(export_json(result))
    (out / "trace.csv").write_bytes(export_trace_csv(result))
    (out / "summary.csv").write_bytes(export_summary_csv(result))
    (out / "plotdata.csv").write_bytes(export_plotdata_csv(result))
    rep = result.distortion
    print(f"policy={result.policy} seed={result.seed} "
          f"d_M={rep.d_M:.3f} temporal_ratio={rep.temporal_ratio:.4f}")
    print(f"wrote result.json trace.csv summary.csv plotdata.csv to {out}")
    return 0


def cmd_compare(args: argparse.Namespace) -> int:
    if args.preset not in PRESET_NAMES:
        raise ConfigError(f"unknown preset {args.preset!r}")
    seeds = list(range(1, args.seeds + 1))
    rows = run_preset(args.preset, seeds, evaluate_ssim=args.ssim)
    fields = ["preset", "seed", "case", "policy", "d_M", "temporal_ratio",
              "avg_ssim", "drop_f1", "drop_f2", "drop_f3",
              "f1_frame_completion_rate", "switches"]
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: ("" if row[k] is None else row[k])
                         for k in fields})
    text = buf.getvalue()
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "compare.csv").write_text(text)
        print(f"wrote {out / 'compare.csv'}")
    else:
        print(text, end="")
    # per-case means for a quick read
    cases = sorted({r["case"] for r in rows},
                   key=[r["case"] for r in rows].index)
    for case in cases:
        sel = [r for r in rows if r["case"] == case]
        dm = float(np.mean([r["d_M"] for r in sel]))
        tr = float(np.mean([r["temporal_ratio"] for r in sel]))
        print(f"# {case}: mean d_M={dm:.2f} mean temporal_ratio={tr:.4f}",
              file=sys.stderr)
    return 0


def cmd_calibrate(args: argparse.Namespace) -> int:
    geometry = paper_geometry()
    params = calibrate_channel(geometry, ChannelParams(),
                               target_mean_drop=args.target, tol=args.tol)
    achieved = mean_drop_rate(geometry[0], geometry[1], params)
    print(json.dumps({
        "target": args.target,
        "tolerance": args.tol,
        "drop_midpoint_dbm": params.drop_midpoint_dbm,
        "achieved_mean_drop_rate": achieved,
    }, indent=2))
    return 0


def _load_image(path: str) -> np.ndarray:
    try:
        from PIL import Image
    except ImportError:
        raise ConfigError("the ssim subcommand needs Pillow "
                          "(pip install rdostream[cli])")
    try:
        with Image.open(path) as img:
            return np.asarray(img.convert("L"), dtype=np.float64)
    except OSError as exc:
        raise ConfigError(f"cannot read image {path}: {exc}")


def cmd_ssim(args: argparse.Namespace) -> int:
    ref = _load_image(args.ref)
    test = _load_image(args.test)
    if ref.shape != test.shape:
        raise ConfigError(
            f"image shapes differ: {ref.shape} vs {test.shape}")
    print(f"{ssim(ref, test):.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rdostream",
        description="Priority-aware video streaming simulator and metrics.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="run one simulation")
    p_run.add_argument("--config", help="JSON config file (defaults to the "
                       "sim40 scenario when omitted)")
    p_run.add_argument("--seed", type=int, default=None)
    p_run.add_argument("--policy", default=None,
                       choices=[p.value for p in Policy])
    p_run.add_argument("--out", required=True, help="output directory")
    p_run.set_defaults(func=cmd_run)

    p_cmp = sub.add_parser("compare", help="run a preset over many seeds")
    p_cmp.add_argument("--preset", required=True, choices=PRESET_NAMES)
    p_cmp.add_argument("--seeds", type=int, default=5,
                       help="number of seeds (1..N)")
    p_cmp.add_argument("--ssim", action="store_true",
                       help="also evaluate average SSIM (slow)")
    p_cmp.add_argument("--out", default=None)
    p_cmp.set_defaults(func=cmd_compare)

    p_cal = sub.add_parser("calibrate",
                           help="solve channel midpoint for a drop target")
    p_cal.add_argument("--target", type=float, default=0.40)
    p_cal.add_argument("--tol", type=float, default=0.005)
    p_cal.set_defaults(func=cmd_calibrate)

    p_ssim = sub.add_parser("ssim", help="SSIM between two images")
    p_ssim.add_argument("--ref", required=True)
    p_ssim.add_argument("--test", required=True)
    p_ssim.set_defaults(func=cmd_ssim)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CalibrationError as exc:
        print(f"calibration failed: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
