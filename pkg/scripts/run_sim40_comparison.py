#!/usr/bin/env python3
"""Compare the three fixed-stream transmitters on the 40%-drop channel.

Runs no-ack / ack / lcrdo-ack over a range of seeds and prints per-seed
d_M plus aggregate statistics.
"""

import argparse
from dataclasses import replace

import numpy as np

from rdostream.engine import run
from rdostream.policies import Policy
from rdostream.presets import sim40_config

POLICIES = (Policy.NO_ACK, Policy.ACK, Policy.LCRDO_ACK)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seeds", type=int, default=10,
                        help="number of seeds (1..N)")
    args = parser.parse_args()

    header = "seed " + "".join(f"{p.value:>12}" for p in POLICIES)
    print(header)
    collected = {p: [] for p in POLICIES}
    for seed in range(1, args.seeds + 1):
        base = replace(sim40_config(seed), evaluate_ssim=False)
        row = [f"{seed:4d}"]
        for p in POLICIES:
            d_M = run(replace(base, policy=p)).distortion.d_M
            collected[p].append(d_M)
            row.append(f"{d_M:12.1f}")
        print("".join(row))
    print("-" * len(header))
    means = ["mean"] + [f"{np.mean(collected[p]):12.2f}" for p in POLICIES]
    print("".join(means))


if __name__ == "__main__":
    main()
