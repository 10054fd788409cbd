"""Thermal identities for coarse-grained Hamiltonians.

A redefinition of the Hamiltonian mixes exact energy eigenvalues through a
stochastic overlap matrix into coarse energies <E>_k.  The Gibbs ensemble over
those coarse levels satisfies the exact identity H^nat = beta (<E> - F) with
F the Helmholtz free energy, which ties the counting entropy to the bulk
action through betaF (the boundary free energy equals the on-shell bulk
action).  The tensor-network bulk action collects the counted bits with the
weights ln2/pi per unit action and hbar ln2 per unit area, the latter being a
membrane tension when spread over the wedge.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import logsumexp, xlogy

from .constants import HBAR, LN2

ROW_SUM_TOL = 1e-12


@dataclass(eq=False)
class RedefinedHamiltonian:
    """Exact spectrum, stochastic overlap matrix, and coarse energies.

    p_matrix rows are distributions over the K coarse levels: p[n, k] >= 0 and
    sum_k p[n, k] = 1 for every exact level n.
    """

    energies: np.ndarray
    p_matrix: np.ndarray
    coarse_energies: np.ndarray

    @property
    def n_levels(self) -> int:
        return self.coarse_energies.size

    def coarse_within_spectrum(self, atol: float = 1e-12) -> bool:
        """Whether every <E>_k lies inside [min E, max E].  Guaranteed for
        doubly stochastic mixing (each coarse level a convex combination of
        exact ones); a merely row-stochastic rectangular matrix can violate it."""
        lo, hi = float(self.energies.min()), float(self.energies.max())
        c = self.coarse_energies
        return bool(np.all(c >= lo - atol) and np.all(c <= hi + atol))


def coarse_grain_hamiltonian(energies, p_matrix) -> RedefinedHamiltonian:
    """Coarse energies <E>_k = sum_n E_n p_{n,k} from a stochastic overlap."""
    e = np.asarray(energies, dtype=float)
    p = np.asarray(p_matrix, dtype=float)
    if e.ndim != 1 or e.size == 0:
        raise ValueError("energies must be a nonempty 1-D array")
    if p.ndim != 2 or p.shape[0] != e.size:
        raise ValueError(f"overlap matrix shape {p.shape} does not match "
                         f"{e.size} energy levels")
    if np.any(p < 0.0):
        raise ValueError("overlap probabilities must be nonnegative")
    rows = p.sum(axis=1)
    if np.max(np.abs(rows - 1.0)) > ROW_SUM_TOL:
        raise ValueError(f"overlap rows must sum to 1 within {ROW_SUM_TOL:g} "
                         f"(worst defect {np.max(np.abs(rows - 1.0)):.3e})")
    return RedefinedHamiltonian(energies=e, p_matrix=p, coarse_energies=e @ p)


def unistochastic_matrix(orthogonal: np.ndarray) -> np.ndarray:
    """Elementwise square of an orthogonal matrix: doubly stochastic mixing of
    the physical kind (squared overlaps of two complete orthonormal bases)."""
    q = np.asarray(orthogonal, dtype=float)
    if q.ndim != 2 or q.shape[0] != q.shape[1]:
        raise ValueError("need a square matrix")
    if np.max(np.abs(q @ q.T - np.eye(q.shape[0]))) > 1e-10:
        raise ValueError("matrix is not orthogonal")
    return q ** 2


def boosted_energies(energies, momenta, v_x: float, k_const: float = 0.0) -> np.ndarray:
    """Coarse energies in a moving reservoir: <E>_k - v_x <P>_k + K.

    The additive constant K shifts E and F equally and cancels in every
    entropy; it is carried only so the energy bookkeeping stays explicit.
    """
    e = np.asarray(energies, dtype=float)
    p = np.asarray(momenta, dtype=float)
    if e.shape != p.shape:
        raise ValueError("energies and momenta must align")
    return e - v_x * p + k_const


@dataclass(frozen=True, eq=False)
class CanonicalState:
    """Gibbs weights over coarse levels at inverse temperature beta."""

    beta: float
    weights: np.ndarray
    log_z: float

    @property
    def z(self) -> float:
        return math.exp(self.log_z)


def canonical_state(beta: float, h_redef: RedefinedHamiltonian) -> CanonicalState:
    if beta < 0.0:
        raise ValueError("beta must be >= 0")
    logits = -beta * h_redef.coarse_energies
    log_z = float(logsumexp(logits))
    w = np.exp(logits - log_z)
    return CanonicalState(beta=beta, weights=w, log_z=log_z)


def helmholtz(beta: float, h_redef: RedefinedHamiltonian) -> float:
    """F = -(1/beta) ln sum_k e^{-beta <E>_k}.  Undefined at beta = 0, where
    only the product beta*F has a limit (-ln K); requesting F there raises."""
    if beta < 0.0:
        raise ValueError("beta must be >= 0")
    if beta == 0.0:
        raise ValueError("F is undefined at beta = 0 (beta*F -> -ln K); "
                         "use natural_entropy, which handles the limit")
    return -float(logsumexp(-beta * h_redef.coarse_energies)) / beta


def mean_energy(state: CanonicalState, h_redef: RedefinedHamiltonian) -> float:
    return float(state.weights @ h_redef.coarse_energies)


def natural_entropy(state: CanonicalState) -> float:
    """H^nat = -sum w ln w of the Gibbs weights (0 ln 0 = 0)."""
    return float(-xlogy(state.weights, state.weights).sum())


def entropy_identity_check(beta: float, h_redef: RedefinedHamiltonian) -> float:
    """Residual |H^nat - beta(<E> - F)|, evaluated through beta*F = -ln Z so
    the beta = 0 limit (S = ln K, beta*F = -ln K) is exact rather than special
    cased."""
    state = canonical_state(beta, h_redef)
    beta_f = -state.log_z
    identity = beta * mean_energy(state, h_redef) - beta_f
    return abs(natural_entropy(state) - identity)


def gkpw_action(beta: float, f_value: float, hbar: float = HBAR) -> float:
    """Bulk on-shell action I = hbar * beta * F conjugate to the boundary
    free energy."""
    if not (math.isfinite(beta) and math.isfinite(f_value)):
        raise ValueError("beta and F must be finite")
    return hbar * beta * f_value


def bulk_tn_action(w_tn: float, a_tn: float, g_newton: float, r_ads: float,
                   hbar: float = HBAR) -> float:
    """Tensor-network bulk action I = -(ln2/pi) W - hbar ln2 A.

    W is the accumulated action-like count and A the area-like count; the
    area term spread over the wedge is the membrane_tension below, which is
    where g_newton and r_ads enter.
    """
    if g_newton <= 0.0 or r_ads <= 0.0:
        raise ValueError("g_newton and r_ads must be positive")
    if not (math.isfinite(w_tn) and math.isfinite(a_tn)):
        raise ValueError("counts must be finite")
    return -(LN2 / math.pi) * w_tn - hbar * LN2 * a_tn


def membrane_tension(g_newton: float, r_ads: float, hbar: float = HBAR) -> float:
    """T = hbar ln2 / (8 pi G_N R_ads^2): one bit of area cost per cell of the
    wedge slice."""
    if g_newton <= 0.0 or r_ads <= 0.0:
        raise ValueError("g_newton and r_ads must be positive")
    return hbar * LN2 / (8.0 * math.pi * g_newton * r_ads ** 2)
