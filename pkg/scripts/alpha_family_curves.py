#!/usr/bin/env python3
"""The one-parameter input family between product and maximally entangled.

Plots mutual information vs memory for several interpolation angles. For
qubits every member of the family crosses every other at the same memory
value, so the curves form a pencil through one point; at d >= 3 the
crossings spread out. Default reproduces the qubit pencil:

    python3 scripts/alpha_family_curves.py --plot alpha_family.png
"""

import argparse
import csv
import math
import sys
from dataclasses import replace

import numpy as np

from quditmem import ChannelSpec, interpolating_params, mutual_information_ansatz


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--model", default="qcd", choices=("qd", "qcd"))
    parser.add_argument("--d", type=int, default=2)
    parser.add_argument("--eta", type=float, default=0.4)
    parser.add_argument("--nu", type=float, default=0.0)
    parser.add_argument("--angles", default="0,0.2,0.4,0.6,0.785398",
                        help="interpolation angles in radians, comma separated")
    parser.add_argument("--points", type=int, default=161)
    parser.add_argument("--output", help="CSV path (default: stdout)")
    parser.add_argument("--plot", help="PNG path (needs matplotlib)")
    return parser.parse_args()


def main() -> int:
    args = parse_args()
    angles = [float(a) for a in args.angles.split(",")]
    base = ChannelSpec(args.model, args.d, args.eta, 0.0, args.nu)
    mus = np.linspace(0.0, 1.0, args.points)
    curves = {}
    for angle in angles:
        params = interpolating_params(args.d, angle)
        curves[angle] = [mutual_information_ansatz(replace(base, mu=m), params) for m in mus]

    handle = open(args.output, "w", newline="") if args.output else sys.stdout
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(["mu"] + [f"I_alpha_{a:g}" for a in angles])
    for i, m in enumerate(mus):
        writer.writerow([f"{m:.17g}"] + [f"{curves[a][i]:.17g}" for a in angles])
    if args.output:
        handle.close()

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        star = math.acos(1.0 / math.sqrt(args.d))
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        for angle in angles:
            tag = " (entangled)" if abs(angle - star) < 1e-6 else ""
            ax.plot(mus, curves[angle], label=f"angle {angle:g}{tag}")
        ax.set_xlabel("memory weight mu")
        ax.set_ylabel("mutual information [bits]")
        ax.set_title(f"{args.model} d={args.d} eta={args.eta} nu={args.nu}")
        ax.legend(fontsize=8)
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        print(f"wrote {args.plot}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
