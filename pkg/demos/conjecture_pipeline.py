"""The bit-counting identity H = C_A + I_A / (pi hbar), end to end.

Runs the full scenario pipeline: all consistency checks on the default
scenario, the interval sweep showing the counting converge on the continuum
identity, and the velocity sweep showing the action term switch on with
momentum.  Closes with the equal-a-priori weights that tie area and action
to bit counts.
"""

import math

from holobit import maxent, runner


def main() -> None:
    scenario = runner.Scenario()
    report = runner.run_scenario(scenario)
    print(f"default scenario: {report.n_passed}/{len(report.checks)} "
          "checks pass")
    gated = [c for c in report.checks
             if c.residual is not None and c.tolerance]
    worst = max(gated, key=lambda c: c.residual / c.tolerance)
    print(f"tightest margin: {worst.name} at residual {worst.residual:.3e} "
          f"(tolerance {worst.tolerance:.1e})")

    print("\nidentity H = C_A + I_A/(pi hbar) versus interval size:")
    print(f"{'l/eps':>7s} {'H bits':>7s} {'C_A':>12s} {'I_A/pi hbar':>12s} "
          f"{'residual':>12s} {'relative':>10s}")
    table = runner.sweep(scenario, "geometry.l", [16.0, 64.0, 256.0, 1024.0])
    for row in table.rows:
        print(f"{row['l_over_eps']:7.0f} {row['h_bits']:7d} "
              f"{row['c_a']:12.4f} {row['i_a'] / math.pi:12.6f} "
              f"{row['conjecture_residual']:12.6f} "
              f"{row['conjecture_relative']:10.3e}")
    print("(the default scenario is at rest, so I_A = 0 and the residual is "
          "the integer rounding gap, falling like 1/l relative to H)")

    print("\naction term versus velocity (momentum switches it on):")
    vel = runner.sweep(scenario, "fluid.u", [0.0, 0.02, 0.05, 0.1])
    for row in vel.rows:
        t_perp = row["t_perp"]
        t_text = f"{t_perp:10.3f}" if t_perp is not None else "  infinite"
        print(f"  u = {row['value']:5.3f}: I_A/pi hbar = "
              f"{row['i_a'] / math.pi:12.8f}, t_perp = {t_text}, "
              f"replicas = {row['replicas']}")

    # the weights behind the counting: one bit per 8 pi G R of area and per
    # pi hbar of action, and S = -ln p inverts the exponential exactly
    g_newton = 1.0 / (8.0 * math.pi)
    mult = maxent.determine_multipliers(g_newton, r_ads=1.0)
    print(f"\nequal-a-priori multipliers at unit normalization: "
          f"alpha = {mult.alpha:.8f} (= ln 2), beta = {mult.beta:.8f} "
          f"(= ln 2 / pi)")
    p = maxent.equal_apriori_probability(area=3.0, action=1.5,
                                         g_newton=g_newton, r_ads=1.0)
    s = maxent.entropy_from_probability(p)
    print(f"p(area = 3, action = 1.5) = {p:.8f}, -ln p = {s:.8f} "
          f"(= alpha*3 + beta*1.5 = {mult.alpha * 3.0 + mult.beta * 1.5:.8f})")


if __name__ == "__main__":
    main()
