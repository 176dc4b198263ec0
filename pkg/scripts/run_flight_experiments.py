#!/usr/bin/env python3
"""Run the encoder-switching experiment trios (exp1/exp2/exp3).

Each trio compares (a) degraded encoder only, (b) high encoder only and
(c) beacon-driven switching on the same time-varying channel, reporting
the displayed-duration ratio and switch counts.
"""

import argparse

from rdostream.presets import run_preset


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--experiments", nargs="+", type=int,
                        default=[1, 2, 3], choices=[1, 2, 3])
    parser.add_argument("--seeds", type=int, default=5)
    parser.add_argument("--ssim", action="store_true",
                        help="also evaluate average SSIM (slow)")
    args = parser.parse_args()

    for exp in args.experiments:
        rows = run_preset(f"exp{exp}", list(range(1, args.seeds + 1)),
                          evaluate_ssim=args.ssim)
        print(f"--- exp{exp} ({rows[0]['policy']}) ---")
        print(f"{'case':>8} {'seed':>4} {'temporal':>9} {'switches':>8}"
              f" {'avg_ssim':>9}")
        for r in rows:
            s = f"{r['avg_ssim']:9.4f}" if r["avg_ssim"] is not None else "      n/a"
            print(f"{r['case']:>8} {r['seed']:>4} {r['temporal_ratio']:9.4f}"
                  f" {r['switches']:8d} {s}")


if __name__ == "__main__":
    main()
