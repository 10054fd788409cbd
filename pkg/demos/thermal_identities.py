"""Entropy identities for coarse-grained Hamiltonians.

Redefines a Hamiltonian through a unistochastic coarse-graining, builds
canonical states on the redefined energies, and traces the identity
S_nat = beta <E> - beta F across temperatures.  Ends with the equivalent
boundary and bulk expressions for the same on-shell action.
"""

import math

import numpy as np
from scipy.stats import ortho_group

from holobit import thermo

LN2 = math.log(2.0)


def main() -> None:
    rng = np.random.default_rng(42)

    # a 6-level spectrum pushed through a random unistochastic map
    energies = np.sort(rng.uniform(0.0, 3.0, size=6))
    p_matrix = thermo.unistochastic_matrix(ortho_group.rvs(6, random_state=rng))
    h = thermo.coarse_grain_hamiltonian(energies, p_matrix)
    print(f"original energies:  {np.round(energies, 4)}")
    print(f"redefined energies: {np.round(h.coarse_energies, 4)}")
    print(f"coarse spectrum inside original range: {h.coarse_within_spectrum()}")

    print("\nS_nat = beta <E> - beta F across temperatures:")
    print(f"{'beta':>6s} {'S_nat':>10s} {'<E>':>10s} {'F':>10s} {'identity':>11s}")
    for beta in (0.0, 0.5, 1.0, 2.0, 5.0):
        state = thermo.canonical_state(beta, h)
        s = thermo.natural_entropy(state)
        e = thermo.mean_energy(state, h)
        f = thermo.helmholtz(beta, h) if beta > 0.0 else float("nan")
        gap = thermo.entropy_identity_check(beta, h)
        print(f"{beta:6.1f} {s:10.6f} {e:10.6f} {f:10.6f} {gap:11.3e}")
    print("(beta = 0 has F undefined but beta F -> -ln n, so the identity "
          "still closes exactly)")

    # boosting shifts every level by -v P + K without touching the identity
    momenta = rng.uniform(-1.0, 1.0, size=6)
    boosted = thermo.boosted_energies(energies, momenta, v_x=0.3, k_const=0.7)
    hb = thermo.coarse_grain_hamiltonian(boosted, p_matrix)
    print(f"\nboosted identity gap at beta = 1: "
          f"{thermo.entropy_identity_check(1.0, hb):.3e}")

    # the action conjugate to the boundary free energy, and the
    # tensor-network bookkeeping that plays the same role in the bulk
    g_newton = 1.0 / (8.0 * math.pi)
    beta = 1.0
    boundary = thermo.gkpw_action(beta, thermo.helmholtz(beta, h))
    print(f"\nboundary action hbar beta F at beta = 1: {boundary:.8f}")
    print("bulk network action I = -(ln2/pi) W - hbar ln2 A:")
    print(f"  one unit of W (= pi): "
          f"{thermo.bulk_tn_action(math.pi, 0.0, g_newton, 1.0):.8f} = -ln 2")
    print(f"  one unit of A:        "
          f"{thermo.bulk_tn_action(0.0, 1.0, g_newton, 1.0):.8f} = -hbar ln 2")
    print(f"membrane tension at unit normalization: "
          f"{thermo.membrane_tension(g_newton, r_ads=1.0):.8f} "
          f"(= ln 2 = {LN2:.8f})")


if __name__ == "__main__":
    main()
