"""Packet basis construction, coarse-graining entropy, superselection."""

import math
import warnings

import numpy as np
import pytest

from holobit import lattice
from holobit.constants import LN2

EPS_Q = math.sqrt(2.0 * math.pi)


@pytest.fixture(scope="module")
def basis():
    cells = lattice.PlanckLattice(eps_q=EPS_Q, m_max_q=2, m_max_p=1)
    return lattice.build_packet_basis(cells)


def test_validate_errors_strict_bound():
    assert lattice.validate_errors(59.0, 30.0)
    assert not lattice.validate_errors(60.0, 30.0)  # product == bound: excluded
    assert not lattice.validate_errors(100.0, 100.0)
    with pytest.raises(ValueError):
        lattice.validate_errors(0.0, 1.0)


def test_lattice_cell_structure():
    cells = lattice.PlanckLattice(eps_q=EPS_Q, m_max_q=2, m_max_p=1)
    assert cells.n_cells == 15
    # eps_q * eps_p = h = 2 pi at hbar = 1
    assert cells.eps_q * cells.eps_p == pytest.approx(2.0 * math.pi, rel=1e-15)
    assert cells.position_spectrum().shape == (5,)
    assert set(np.unique(cells.momentum_spectrum() / cells.eps_p)) == {-1, 0, 1}


def test_raw_neighbor_overlaps(basis):
    """Adjacent cells overlap at exp(-pi/2); diagonal neighbors at exp(-pi)."""
    i00 = basis.index_of(0, 0)
    q_neighbor = abs(basis.gram_raw[i00, basis.index_of(1, 0)])
    p_neighbor = abs(basis.gram_raw[i00, basis.index_of(0, 1)])
    diag = abs(basis.gram_raw[i00, basis.index_of(1, 1)])
    assert q_neighbor == pytest.approx(math.exp(-math.pi / 2.0), rel=1e-10)
    assert p_neighbor == pytest.approx(math.exp(-math.pi / 2.0), rel=1e-10)
    assert diag == pytest.approx(math.exp(-math.pi), rel=1e-10)


def test_orthonormalization(basis):
    assert basis.orthonormality_defect() < lattice.TOL_ORTH
    assert 1.0 < basis.gram_condition < lattice.DEFAULT_GRAM_COND_MAX
    # raw packets are unit norm but not orthogonal
    diag = np.abs(np.diag(basis.gram_raw))
    assert np.max(np.abs(diag - 1.0)) < 1e-12
    assert np.max(np.abs(basis.gram_raw - np.eye(basis.n_cells))) > 0.2


def test_gram_condition_guard():
    cells = lattice.PlanckLattice(eps_q=EPS_Q, m_max_q=2, m_max_p=1)
    with pytest.raises(lattice.GramConditionError):
        lattice.build_packet_basis(cells, cond_max=1.0 + 1e-6)


def test_grid_spacing_guard():
    cells = lattice.PlanckLattice(eps_q=EPS_Q, m_max_q=2, m_max_p=1)
    coarse = lattice.GridSpec(spacing=cells.eps_q / 8.0,
                              q_min=-6.0 * EPS_Q, q_max=6.0 * EPS_Q)
    with pytest.raises(ValueError, match="spacing"):
        lattice.build_packet_basis(cells, grid_spec=coarse)
    narrow = lattice.GridSpec(spacing=cells.eps_q / 32.0,
                              q_min=-3.0 * EPS_Q, q_max=3.0 * EPS_Q)
    with pytest.raises(ValueError, match="padding"):
        lattice.build_packet_basis(cells, grid_spec=narrow)


def test_equal_superposition_entropy(basis):
    for k in (1, 2, 4, 8):
        state = lattice.equal_superposition(basis, range(k))
        mixture = lattice.classicalize(lattice.expand(state, basis))
        h = lattice.shannon_entropy_bits(mixture)
        s = lattice.von_neumann_entropy_nats(mixture)
        assert h == pytest.approx(math.log2(k), abs=1e-9)
        assert s == LN2 * h  # exact by construction, not approximate


def test_weighted_superposition_entropy(basis):
    psi = (math.sqrt(0.7) * basis.vectors[0]
           + math.sqrt(0.3) * basis.vectors[5])
    psi = lattice.normalize_state(basis, psi)
    mixture = lattice.classicalize(lattice.expand(psi, basis))
    expected = -(0.7 * math.log2(0.7) + 0.3 * math.log2(0.3))
    assert lattice.shannon_entropy_bits(mixture) == pytest.approx(expected,
                                                                  abs=1e-9)


def test_expand_rejects_bad_states(basis):
    with pytest.raises(ValueError, match="normalized"):
        lattice.expand(2.0 * basis.vectors[0], basis)
    with pytest.raises(ValueError):
        lattice.expand(np.ones(7, dtype=complex), basis)


def test_truncation_warning(basis):
    # a packet far outside the cell window: normalized on the grid, but its
    # projection onto the 15 cells captures almost nothing
    q = basis.grid
    stray = np.exp(-np.pi * (q - 5.0 * EPS_Q) ** 2 / EPS_Q ** 2).astype(complex)
    stray = lattice.normalize_state(basis, stray)
    with pytest.warns(lattice.TruncationWarning):
        coeff = lattice.expand(stray, basis)
    with pytest.warns(lattice.TruncationWarning):
        mixture = lattice.classicalize(coeff)
    assert mixture.truncated()
    assert mixture.captured_norm < 0.5


def test_no_truncation_warning_inside_window(basis):
    state = lattice.equal_superposition(basis, [0, 1])
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        coeff = lattice.expand(state, basis)
        mixture = lattice.classicalize(coeff)
    assert not mixture.truncated()


def test_classicalize_rejects_zero_weight():
    with pytest.raises(ValueError):
        lattice.classicalize(np.zeros(4, dtype=complex))


def test_superselection_diagonal_observables(basis):
    for f in (lambda i: float(i), lambda i: float(i * i),
              lambda i: math.exp(-0.3 * i)):
        assert lattice.check_superselection(basis, f) < 1e-8


def test_superselection_position_violates(basis):
    # the original (fine-grained) position operator couples different cells
    assert lattice.check_superselection(basis, basis.grid) > 1e-3


def test_observable_requires_known_form(basis):
    with pytest.raises(ValueError):
        lattice.observable_matrix_elements(basis, np.ones((2, 3, 4)))
    with pytest.raises(ValueError, match="fine grid"):
        lattice.observable_matrix_elements(basis, np.ones(3))
