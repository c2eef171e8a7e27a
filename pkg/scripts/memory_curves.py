#!/usr/bin/env python3
"""Mutual information vs memory for product and maximally entangled inputs.

Writes a CSV (mu, I_product, I_entangled, delta) and optionally a PNG with
the crossover marked. Example:

    python3 scripts/memory_curves.py --model qcd --d 3 --eta 0.4 --nu 1.0 \
        --points 201 --plot memory_curves.png
"""

import argparse
import csv
import sys
from dataclasses import replace

import numpy as np

from quditmem import (
    ChannelSpec,
    find_crossover,
    max_entangled_params,
    mutual_information_ansatz,
    product_params,
)


def parse_args() -> argparse.Namespace:
    parser = argparse.ArgumentParser(description=__doc__.split("\n")[0])
    parser.add_argument("--model", default="qd", choices=("qd", "qcd"))
    parser.add_argument("--d", type=int, default=3)
    parser.add_argument("--eta", type=float, default=0.8)
    parser.add_argument("--nu", type=float, default=1.0)
    parser.add_argument("--points", type=int, default=201)
    parser.add_argument("--output", help="CSV path (default: stdout)")
    parser.add_argument("--plot", help="PNG path (needs matplotlib)")
    return parser.parse_args()


def main() -> int:
    args = parse_args()
    base = ChannelSpec(args.model, args.d, args.eta, 0.0, args.nu)
    mus = np.linspace(0.0, 1.0, args.points)
    prod = np.array([mutual_information_ansatz(replace(base, mu=m), product_params(args.d)) for m in mus])
    ent = np.array([mutual_information_ansatz(replace(base, mu=m), max_entangled_params(args.d)) for m in mus])

    result = find_crossover(base)
    where = "none" if result.mu_c is None else f"{result.mu_c:.8f}"
    print(f"crossover mu_c = {where}", file=sys.stderr)

    handle = open(args.output, "w", newline="") if args.output else sys.stdout
    writer = csv.writer(handle, lineterminator="\n")
    writer.writerow(["mu", "I_product", "I_entangled", "delta"])
    for m, a, b in zip(mus, prod, ent):
        writer.writerow([f"{m:.17g}", f"{a:.17g}", f"{b:.17g}", f"{b - a:.17g}"])
    if args.output:
        handle.close()

    if args.plot:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt

        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        ax.plot(mus, prod, label="product input")
        ax.plot(mus, ent, label="maximally entangled input")
        if result.mu_c is not None:
            ax.axvline(result.mu_c, color="gray", ls="--", lw=1, label=f"crossover {result.mu_c:.4f}")
        ax.set_xlabel("memory weight mu")
        ax.set_ylabel("mutual information [bits]")
        ax.set_title(f"{args.model} d={args.d} eta={args.eta} nu={args.nu}")
        ax.legend()
        fig.tight_layout()
        fig.savefig(args.plot, dpi=150)
        print(f"wrote {args.plot}", file=sys.stderr)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
