"""Layer-by-layer microstate counting on a coarse-graining tensor network.

A binary network over l_0 boundary sites halves the site count per layer
(l_{m+1} = ceil(l_m / 2)) until a single top site remains.  Each
disentangle-and-coarse-grain step removes one bit per retained site, so the
per-layer counts are exact integers and the boundary Shannon entropy is
sum_{m>=1} l_m.  All arithmetic is arbitrary-precision integer arithmetic;
nothing here is floating point except the continuum comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import WedgeGeometry, wedge_area


@dataclass(frozen=True)
class MeraNetwork:
    """Layer site counts from the boundary down, layers[0] = l_0.

    A network built with a horizon layer m_h keeps only layers 0..m_h and is
    pasted against its own mirror there; pasted_layers lists both towers.
    """

    layers: tuple[int, ...]
    arity: int = 2
    horizon_layer: int | None = None

    def __post_init__(self):
        if self.arity < 2:
            raise ValueError("arity must be >= 2")
        if not self.layers or any(l < 1 for l in self.layers):
            raise ValueError("layer counts must be positive")

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    @property
    def is_thermal(self) -> bool:
        return self.horizon_layer is not None

    @property
    def boundary_sites(self) -> int:
        return self.layers[0]

    @property
    def pasted_layers(self) -> tuple[int, ...]:
        """Both towers of a thermal network, joined at the horizon layer."""
        if not self.is_thermal:
            return self.layers
        return self.layers + tuple(reversed(self.layers))


def build_network(l0: int, arity: int = 2,
                  horizon_layer: int | None = None) -> MeraNetwork:
    """Network over l0 boundary sites; ceil division per layer down to one site.

    With horizon_layer = m_h the tower is truncated at layer m_h and mirrored,
    which models a horizon at that depth.
    """
    if l0 < 1:
        raise ValueError("l0 must be >= 1")
    layers = [l0]
    while layers[-1] > 1:
        layers.append(-(-layers[-1] // arity))
    if horizon_layer is not None:
        if not 1 <= horizon_layer <= len(layers) - 1:
            raise ValueError(f"horizon layer must lie in 1..{len(layers) - 1}")
        layers = layers[:horizon_layer + 1]
    return MeraNetwork(layers=tuple(layers), arity=arity,
                       horizon_layer=horizon_layer)


@dataclass(frozen=True)
class CountLedger:
    """Per-layer bit counts (1/N) log2(W^(m)/W^(m+1)) = l_{m+1}, exact ints."""

    per_layer: tuple[int, ...]
    total: int

    def __post_init__(self):
        if self.total != sum(self.per_layer):
            raise ValueError("ledger total must equal the per-layer sum")


def count_ledger(net: MeraNetwork) -> CountLedger:
    if net.is_thermal:
        tower = net.layers[1:]
        per_layer = tuple(tower) + tuple(reversed(tower))
    else:
        per_layer = tuple(net.layers[1:])
    return CountLedger(per_layer=per_layer, total=sum(per_layer))


def shannon_from_counting(net: MeraNetwork) -> int:
    """Boundary entropy in bits: every non-boundary layer contributes its site
    count, and a pasted thermal network counts both towers."""
    return count_ledger(net).total


@dataclass(frozen=True)
class ReplicaCount:
    """Number of extra network copies induced by boundary momentum."""

    count: int
    ratio: float
    mode: str

    @property
    def fractional(self) -> float:
        return self.ratio - math.floor(self.ratio)


def momentum_replicas(r_ads: float, t_perp: float | None,
                      mode: str = "floor") -> ReplicaCount:
    """k = floor(R_ads / t_perp) whole replicas; a None t_perp (no momentum)
    gives k = 0.  mode "round" rounds to nearest instead, for sensitivity."""
    if r_ads <= 0.0:
        raise ValueError("r_ads must be positive")
    if mode not in ("floor", "round"):
        raise ValueError("mode must be 'floor' or 'round'")
    if t_perp is None:
        return ReplicaCount(count=0, ratio=0.0, mode=mode)
    if t_perp <= 0.0:
        raise ValueError("t_perp must be positive")
    ratio = r_ads / t_perp
    k = math.floor(ratio) if mode == "floor" else math.floor(ratio + 0.5)
    return ReplicaCount(count=int(k), ratio=ratio, mode=mode)


def boundary_microstates(net: MeraNetwork, replicas: int) -> int:
    """Total bit count with k whole replicas: H_total = (1 + k) * sum l_m."""
    if replicas < 0:
        raise ValueError("replica count must be >= 0")
    return (1 + replicas) * shannon_from_counting(net)


def min_energy_width(r_ads: float) -> float:
    """Smallest resolvable constraint energy h / (4 R_ads); the replica ratio
    equals eps_kin / min_energy_width."""
    if r_ads <= 0.0:
        raise ValueError("r_ads must be positive")
    return math.pi / (2.0 * r_ads)


def bulk_temperature(m: int, kappa: float, r_inf: float = 1.0,
                     r_ads: float = 1.0) -> float:
    """Inverse temperature assigned to layer m.

    Layer m sits at radius r_m = r_inf * 2^(-m); with U_m = log2(r_m / r_inf)
    the assignment is 1/T = -R_ads * U_m / kappa = R_ads * m / kappa >= 0.
    """
    if m < 0:
        raise ValueError("layer index must be >= 0")
    if kappa <= 0.0 or r_inf <= 0.0 or r_ads <= 0.0:
        raise ValueError("kappa, r_inf, r_ads must be positive")
    r_m = r_inf * 2.0 ** (-m)
    u_m = math.log2(r_m / r_inf)
    return -r_ads * u_m / kappa


@dataclass(frozen=True)
class ContinuumComparison:
    count: int
    area: float
    absolute: float
    relative: float
    below_asymptotic: bool


# l/eps below this is outside the regime where count and area agree to percent
ASYMPTOTIC_RATIO = 16.0


def continuum_comparison(net: MeraNetwork, geom: WedgeGeometry) -> ContinuumComparison:
    """Deviation of the integer layer count from the continuum wedge area.

    Requires l0 = round(l/eps).  The relative deviation is reported against
    the area and flagged when l/eps is below the asymptotic window.
    """
    ratio = geom.l / geom.eps
    if net.boundary_sites != round(ratio):
        raise ValueError(f"network has l0 = {net.boundary_sites} but the "
                         f"geometry has l/eps = {ratio:g}")
    count = shannon_from_counting(net)
    area = wedge_area(geom)
    absolute = abs(count - area)
    relative = math.inf if area == 0.0 else absolute / area
    return ContinuumComparison(count=count, area=area, absolute=absolute,
                               relative=relative,
                               below_asymptotic=ratio < ASYMPTOTIC_RATIO)
