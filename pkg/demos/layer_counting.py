"""Counting renormalization layers against the continuum wedge area.

Builds the halving tensor network over l0 boundary sites, counts sites per
layer, and compares the total against the regulated wedge area, whose
deviation falls off as the interval grows.  Also pastes a horizon into the
tower and counts the doubled thermal network.
"""

import argparse
import math

from holobit import geometry, mera

G_NEWTON = 1.0 / (8.0 * math.pi)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--l0", type=int, default=64,
                        help="boundary sites (default 64)")
    args = parser.parse_args()

    net = mera.build_network(args.l0)
    ledger = mera.count_ledger(net)
    print(f"network over {args.l0} boundary sites, layers {net.layers}")
    print(f"sites per coarse layer: {ledger.per_layer}")
    h = mera.shannon_from_counting(net)
    print(f"total count H = {h} bits"
          + (f" (= l0 - 1 for a power of two)" if h == args.l0 - 1 else ""))

    print("\ncount vs continuum wedge area:")
    print(f"{'l0':>6s} {'count':>7s} {'area':>12s} {'relative':>11s}")
    for l0 in (16, 64, 256, 1024):
        geom = geometry.WedgeGeometry(l=float(l0), eps=1.0, g_newton=G_NEWTON)
        comp = mera.continuum_comparison(mera.build_network(l0), geom)
        flag = "  (below asymptotic window)" if comp.below_asymptotic else ""
        print(f"{l0:6d} {comp.count:7d} {comp.area:12.4f} "
              f"{comp.relative:11.3e}{flag}")

    # truncating the tower at a horizon layer and mirroring doubles the count
    horizon = min(3, len(net.layers) - 2)
    thermal = mera.build_network(args.l0, horizon_layer=horizon)
    print(f"\nthermal pasting at layer {horizon}: "
          f"pasted layers {thermal.pasted_layers}")
    print(f"thermal count H = {mera.shannon_from_counting(thermal)} bits "
          f"(double the truncated one-sided tower)")
    print(f"bulk temperature at depth {horizon}: "
          f"{mera.bulk_temperature(horizon, kappa=1.0):.4f} "
          f"(linear in depth, prop. 1/kappa)")

    # each whole momentum replica adds one more copy of the boundary bits
    for k in (0, 1, 2):
        print(f"H_total with {k} replicas: "
              f"{mera.boundary_microstates(net, k)} bits")


if __name__ == "__main__":
    main()
