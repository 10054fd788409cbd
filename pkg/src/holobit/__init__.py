"""Entropy of coarse-grained coherence and its holographic counterparts.

The package walks one chain: Gaussian packet coarse-graining of a pure state
into a classical mixture (lattice), hyperbolic wedge geometry with its
geodesics and areas (geometry), a boosted boundary fluid and its abbreviated
action (hydro), exact layer-by-layer microstate counting (mera), constrained
maximum entropy on phase-space grids (maxent), thermal identities (thermo),
and a scenario runner with acceptance checks tying the routes together
(runner, acceptance, cli).
"""

from .constants import H_PLANCK, HBAR, LN2
from .lattice import (
    ClassicalMixture,
    GramConditionError,
    GridSpec,
    PacketBasis,
    PlanckLattice,
    TruncationWarning,
    build_lattice,
    build_packet_basis,
    check_superselection,
    classicalize,
    equal_superposition,
    expand,
    normalize_state,
    observable_matrix_elements,
    shannon_entropy_bits,
    validate_errors,
    von_neumann_entropy_nats,
)
from .geometry import (
    BoostedMetric,
    GeodesicArc,
    WedgeGeometry,
    btz_metric_components,
    central_charge,
    geodesic_arc,
    geodesic_length,
    geodesic_length_quadrature,
    holographic_complexity,
    metric_discrepancy,
    program_length_spatial,
    raise_boundary_indices,
    rt_entropy,
    wedge_area,
    wedge_area_quadrature,
)
from .hydro import (
    ConjectureReport,
    FluidState,
    RegimeError,
    RegimeWarning,
    abbreviated_action,
    action_routes,
    check_regime,
    conjecture_check,
    margolus_levitin,
    momentum_density,
    momentum_density_forms,
    orthogonality_time,
    program_length_total,
    shift_vector,
)
from .mera import (
    ContinuumComparison,
    CountLedger,
    MeraNetwork,
    ReplicaCount,
    boundary_microstates,
    build_network,
    bulk_temperature,
    continuum_comparison,
    count_ledger,
    min_energy_width,
    momentum_replicas,
    shannon_from_counting,
)
from .maxent import (
    ConstraintSet,
    ConvergenceError,
    InfeasibleConstraintsError,
    Multipliers,
    MuSpaceGrid,
    OccupancyField,
    check_feasibility,
    closed_form_occupancy,
    determine_multipliers,
    entropy_from_probability,
    enumerate_integer_occupancies,
    equal_apriori_probability,
    feasibility_margin,
    integer_argmax,
    log_microstates,
    maxent_solve,
    multinomial_weight,
    nearest_feasible_integer,
    thermo_relation_check,
)
from .thermo import (
    CanonicalState,
    RedefinedHamiltonian,
    boosted_energies,
    bulk_tn_action,
    canonical_state,
    coarse_grain_hamiltonian,
    entropy_identity_check,
    gkpw_action,
    helmholtz,
    mean_energy,
    membrane_tension,
    natural_entropy,
    unistochastic_matrix,
)
from .runner import (
    ConfigError,
    RunReport,
    Scenario,
    SweepTable,
    load_scenario,
    run_scenario,
    serialize_report,
    serialize_sweep,
    sweep,
)
from .acceptance import AcceptanceReport, run_acceptance, serialize_acceptance

__version__ = "0.1.0"
