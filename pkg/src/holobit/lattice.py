"""Coarse-grained phase-space lattice and its Gaussian packet basis.

Position and momentum are replaced by block observables that are constant on
rectangular phase-space cells of widths eps_q and eps_p with eps_q * eps_p = h.
Every cell carries one unit-norm Gaussian packet

    psi_mn(q) ~ exp(-pi (q - m eps_q)^2 / eps_q^2) * exp(i n eps_p q),

the width convention in which the Fourier transform is a Gaussian of width
eps_p in the same sense.  Symmetric (Loewdin) orthogonalization of the
truncated packet family yields an orthonormal cell basis.  Expanding a pure
state in that basis and dropping the relative phases turns it into a classical
mixture over cells; the Shannon entropy of that mixture is the information
erased by the coarse graining.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .constants import H_PLANCK, LN2

# admissibility bound for the raw measurement errors: sigma_q * sigma_p < 60^2 * hbar / 2
ERROR_PRODUCT_BOUND = 60.0 ** 2 * 0.5

TOL_ORTH = 1e-8
TOL_NORM = 1e-8
DEFAULT_TRUNCATION_TOL = 1e-3
DEFAULT_GRAM_COND_MAX = 1e12


class TruncationWarning(UserWarning):
    """A state leaks outside the truncated cell window."""


class GramConditionError(np.linalg.LinAlgError):
    """The raw packet Gram matrix is numerically singular."""


def validate_errors(sigma_q: float, sigma_p: float) -> bool:
    """True iff the error pair admits commuting block observables.

    The bound is strict: sigma_q * sigma_p < 60^2 * hbar / 2 = 1800 at hbar = 1.
    """
    if sigma_q <= 0.0 or sigma_p <= 0.0:
        raise ValueError("measurement errors must be positive")
    return sigma_q * sigma_p < ERROR_PRODUCT_BOUND


@dataclass(frozen=True)
class PlanckLattice:
    """Grid of phase-space cells; cell (m, n) is centered at (m*eps_q, n*eps_p).

    eps_p is fixed by the cell-area condition eps_q * eps_p = h, so each cell
    occupies exactly one Planck cell.  m_max_q and m_max_p are half-extents:
    the lattice keeps 2*m_max_q + 1 position columns and 2*m_max_p + 1
    momentum rows.
    """

    eps_q: float
    m_max_q: int
    m_max_p: int

    def __post_init__(self):
        if self.eps_q <= 0.0:
            raise ValueError("eps_q must be positive")
        if self.m_max_q < 0 or self.m_max_p < 0:
            raise ValueError("truncation half-extents must be >= 0")

    @property
    def eps_p(self) -> float:
        return H_PLANCK / self.eps_q

    @property
    def n_cells(self) -> int:
        return (2 * self.m_max_q + 1) * (2 * self.m_max_p + 1)

    @property
    def cells(self) -> list[tuple[int, int]]:
        """Cell indices, position-major, both axes ascending from -m_max."""
        return [(m, n)
                for m in range(-self.m_max_q, self.m_max_q + 1)
                for n in range(-self.m_max_p, self.m_max_p + 1)]

    def position_spectrum(self) -> np.ndarray:
        """Eigenvalues {0, +-eps_q, ...} of the coarse position observable."""
        return self.eps_q * np.arange(-self.m_max_q, self.m_max_q + 1, dtype=float)

    def momentum_spectrum(self) -> np.ndarray:
        return self.eps_p * np.arange(-self.m_max_p, self.m_max_p + 1, dtype=float)


def build_lattice(eps_q: float, m_max_q: int, m_max_p: int) -> PlanckLattice:
    return PlanckLattice(eps_q, m_max_q, m_max_p)


@dataclass(frozen=True)
class GridSpec:
    """Uniform fine position grid used for all quadrature.

    The packet construction needs spacing <= eps_q / 16 and at least 4*eps_q of
    padding beyond the outermost cell center; build_packet_basis enforces both.
    """

    spacing: float
    q_min: float
    q_max: float

    def __post_init__(self):
        if self.spacing <= 0.0 or self.q_max <= self.q_min:
            raise ValueError("grid must have positive spacing and extent")

    @classmethod
    def for_lattice(cls, lattice: PlanckLattice, points_per_cell: int = 32,
                    padding_cells: float = 4.0) -> "GridSpec":
        edge = (lattice.m_max_q + padding_cells) * lattice.eps_q
        return cls(spacing=lattice.eps_q / points_per_cell, q_min=-edge, q_max=edge)

    def points(self) -> np.ndarray:
        n = int(round((self.q_max - self.q_min) / self.spacing)) + 1
        return np.linspace(self.q_min, self.q_max, n)


def _trapezoid_weights(q: np.ndarray) -> np.ndarray:
    w = np.full(q.size, q[1] - q[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


@dataclass(eq=False)
class PacketBasis:
    """Raw Gaussian packets and their orthonormalized companions on a fine grid."""

    lattice: PlanckLattice
    grid_spec: GridSpec
    grid: np.ndarray                 # fine position grid
    weights: np.ndarray              # trapezoid quadrature weights
    cells: list[tuple[int, int]]
    raw: np.ndarray                  # (n_cells, n_grid), unit-norm Gaussians
    vectors: np.ndarray              # (n_cells, n_grid), orthonormalized
    gram_raw: np.ndarray             # Gram matrix of the raw packets
    gram_condition: float

    @property
    def n_cells(self) -> int:
        return len(self.cells)

    def index_of(self, m: int, n: int) -> int:
        return self.cells.index((m, n))

    def inner(self, f: np.ndarray, g: np.ndarray) -> complex:
        return complex(np.sum(self.weights * np.conj(f) * g))

    def gram(self, vectors: np.ndarray) -> np.ndarray:
        return (np.conj(vectors) * self.weights) @ vectors.T

    def orthonormality_defect(self) -> float:
        g = self.gram(self.vectors)
        return float(np.max(np.abs(g - np.eye(self.n_cells))))


def build_packet_basis(lattice: PlanckLattice, grid_spec: GridSpec | None = None,
                       cond_max: float = DEFAULT_GRAM_COND_MAX) -> PacketBasis:
    """Place one Gaussian packet per cell and orthonormalize the family.

    The Gram matrix is computed by trapezoid quadrature on the fine grid
    (spectrally accurate for Gaussians at the required spacing) and inverted
    through its eigendecomposition, G^(-1/2) = V diag(1/sqrt(lambda)) V^dagger.
    Raises GramConditionError when the eigenvalue ratio exceeds cond_max;
    enlarging the grid padding or dropping outer cells restores conditioning.
    """
    if grid_spec is None:
        grid_spec = GridSpec.for_lattice(lattice)
    if grid_spec.spacing > lattice.eps_q / 16.0 + 1e-12:
        raise ValueError("fine-grid spacing must be <= eps_q / 16")
    span = lattice.m_max_q * lattice.eps_q
    pad = 4.0 * lattice.eps_q
    if grid_spec.q_min > -(span + pad) + 1e-9 or grid_spec.q_max < span + pad - 1e-9:
        raise ValueError("fine grid must cover all cells plus 4*eps_q padding")

    q = grid_spec.points()
    w = _trapezoid_weights(q)
    cells = lattice.cells
    eps_q, eps_p = lattice.eps_q, lattice.eps_p

    raw = np.empty((len(cells), q.size), dtype=complex)
    for i, (m, n) in enumerate(cells):
        v = np.exp(-np.pi * (q - m * eps_q) ** 2 / eps_q ** 2) * np.exp(1j * n * eps_p * q)
        v /= np.sqrt(np.sum(w * np.abs(v) ** 2))
        raw[i] = v

    gram = (np.conj(raw) * w) @ raw.T
    gram = 0.5 * (gram + gram.conj().T)
    evals, evecs = np.linalg.eigh(gram)
    if evals[0] <= 0.0 or evals[-1] / evals[0] > cond_max:
        cond = np.inf if evals[0] <= 0.0 else evals[-1] / evals[0]
        raise GramConditionError(
            f"packet Gram matrix is numerically singular (condition {cond:.3g}); "
            "enlarge the fine-grid padding or reduce the cell truncation window")
    inv_sqrt = (evecs * evals ** -0.5) @ evecs.conj().T
    vectors = inv_sqrt.T @ raw

    return PacketBasis(lattice=lattice, grid_spec=grid_spec, grid=q, weights=w,
                       cells=cells, raw=raw, vectors=vectors, gram_raw=gram,
                       gram_condition=float(evals[-1] / evals[0]))


def normalize_state(basis: PacketBasis, amplitudes: np.ndarray) -> np.ndarray:
    psi = np.asarray(amplitudes, dtype=complex)
    norm = np.sqrt(np.real(basis.inner(psi, psi)))
    if norm == 0.0:
        raise ValueError("cannot normalize the zero state")
    return psi / norm


def equal_superposition(basis: PacketBasis, indices) -> np.ndarray:
    """Unit-norm equal superposition of the selected orthonormalized packets."""
    indices = list(indices)
    psi = basis.vectors[indices].sum(axis=0) / np.sqrt(len(indices))
    return normalize_state(basis, psi)


def expand(state: np.ndarray, basis: PacketBasis,
           truncation_tol: float = DEFAULT_TRUNCATION_TOL) -> np.ndarray:
    """Coefficients c_n = <b_n|state> of a normalized state in the cell basis.

    Warns with TruncationWarning when the captured norm sum |c_n|^2 falls below
    1 - truncation_tol, which signals support outside the cell window.
    """
    psi = np.asarray(state, dtype=complex)
    if psi.shape != basis.grid.shape:
        raise ValueError(f"state has {psi.shape[0] if psi.ndim else 0} samples, "
                         f"grid has {basis.grid.size}")
    norm = np.sqrt(np.real(basis.inner(psi, psi)))
    if abs(norm - 1.0) > TOL_NORM:
        raise ValueError(f"state is not normalized (norm = {norm!r})")
    coeff = (np.conj(basis.vectors) * basis.weights) @ psi
    captured = float(np.sum(np.abs(coeff) ** 2))
    if captured < 1.0 - truncation_tol:
        warnings.warn(f"captured norm {captured:.6f} is below 1 - {truncation_tol:g}; "
                      "state leaks outside the cell window", TruncationWarning)
    return coeff


@dataclass(eq=False)
class ClassicalMixture:
    """Cell probabilities left after erasing the phases of an expansion."""

    probabilities: np.ndarray
    captured_norm: float

    def __post_init__(self):
        p = np.asarray(self.probabilities, dtype=float)
        if np.any(p < -1e-15):
            raise ValueError("probabilities must be nonnegative")
        self.probabilities = np.clip(p, 0.0, None)

    def renormalized(self) -> np.ndarray:
        return self.probabilities / self.captured_norm

    def truncated(self, truncation_tol: float = DEFAULT_TRUNCATION_TOL) -> bool:
        return self.captured_norm < 1.0 - truncation_tol


def classicalize(coefficients: np.ndarray,
                 truncation_tol: float = DEFAULT_TRUNCATION_TOL) -> ClassicalMixture:
    """Statistical mixture p_n = |c_n|^2 induced by a cell-basis expansion."""
    c = np.asarray(coefficients, dtype=complex)
    p = np.abs(c) ** 2
    captured = float(p.sum())
    if captured <= 0.0:
        raise ValueError("expansion carries no weight inside the cell window")
    if captured < 1.0 - truncation_tol:
        warnings.warn(f"captured norm {captured:.6f} is below 1 - {truncation_tol:g}",
                      TruncationWarning)
    return ClassicalMixture(probabilities=p, captured_norm=captured)


def shannon_entropy_bits(mixture) -> float:
    """H = -sum p log2 p of the captured-norm-renormalized cell probabilities."""
    if isinstance(mixture, ClassicalMixture):
        p = mixture.renormalized()
    else:
        p = np.asarray(mixture, dtype=float)
        p = p / p.sum()
    pos = p[p > 0.0]
    return float(-np.sum(pos * np.log2(pos)))


def von_neumann_entropy_nats(mixture) -> float:
    """S = ln2 * H exactly; the mixture is diagonal, so S is Shannon in nats."""
    return LN2 * shannon_entropy_bits(mixture)


def observable_matrix_elements(basis: PacketBasis, observable) -> np.ndarray:
    """Matrix <b_i|O|b_j> in the orthonormalized cell basis.

    observable may be a callable on the cell index (an operator diagonal in the
    redefined cells, O = sum_n f(n)|b_n><b_n|), a 1-D array over the fine grid
    (a multiplication operator such as the original position), or a 2-D kernel
    acting pointwise on grid samples.
    """
    vecs, w = basis.vectors, basis.weights
    if callable(observable):
        f = np.array([observable(i) for i in range(basis.n_cells)], dtype=float)
        overlaps = basis.gram(vecs)
        return overlaps @ (f[:, None] * overlaps)
    obs = np.asarray(observable)
    if obs.ndim == 1:
        if obs.shape != basis.grid.shape:
            raise ValueError("grid observable must match the fine grid")
        return (np.conj(vecs) * (w * obs)) @ vecs.T
    if obs.ndim == 2:
        return (np.conj(vecs) * w) @ obs @ vecs.T
    raise ValueError("observable must be callable, a grid array, or a kernel matrix")


def check_superselection(basis: PacketBasis, observable) -> float:
    """Largest off-diagonal magnitude of the observable in the cell basis.

    Operators diagonal in the redefined cells give values at the
    orthonormalization tolerance; the original position operator does not.
    """
    mat = observable_matrix_elements(basis, observable)
    off = mat - np.diag(np.diag(mat))
    return float(np.max(np.abs(off)))
