"""Boundary perfect fluid, its wedge abbreviated action, and the entropy
conjecture that ties both to the discrete layer count.

The fluid obeys the stiff equation of state p = eps; rho = eps / gamma^2 plays
the role of a mass density, and the horizon consistency r_+^2 = rho makes the
three momentum-density expressions coincide exactly.  The abbreviated action
of the wedge is I_A = [Area/(8 pi G_N)] * rho u^2, and the shortest time to an
orthogonal state is t_perp = h / (4 eps_kin) with eps_kin = rho u^2 / 2.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

from .constants import H_PLANCK, HBAR
from .geometry import WedgeGeometry, program_length_spatial, wedge_area

REGIME_WARN = 0.1    # |u| above this is outside the quoted accuracy regime
REGIME_ERROR = 0.5   # |u| at or above this is refused unless overridden


class RegimeWarning(UserWarning):
    """Fluid velocity outside the slow-motion regime the estimates assume."""


class RegimeError(ValueError):
    """Fluid velocity too large for the non-relativistic estimates."""


def check_regime(u: float, strict: bool = False, allow_relativistic: bool = False):
    au = abs(u)
    if strict and au > REGIME_WARN:
        raise RegimeError(f"|u| = {au:g} exceeds {REGIME_WARN} in strict mode")
    if au >= REGIME_ERROR and not allow_relativistic:
        raise RegimeError(f"|u| = {au:g} is relativistic; pass "
                          "allow_relativistic=True to proceed anyway")
    if au > REGIME_WARN:
        warnings.warn(f"|u| = {au:g} exceeds {REGIME_WARN}; quadratic-order "
                      "estimates degrade", RegimeWarning)


@dataclass(frozen=True)
class FluidState:
    """Uniform boundary fluid at coordinate velocity u with energy density
    eps_energy; pressure equals eps_energy (stiff equation of state)."""

    u: float
    eps_energy: float = 1.0

    def __post_init__(self):
        if abs(self.u) >= 1.0:
            raise ValueError("|u| must be < 1")
        if self.eps_energy <= 0.0:
            raise ValueError("energy density must be positive")

    @classmethod
    def from_rest_density(cls, rho: float, u: float) -> "FluidState":
        return cls(u=u, eps_energy=rho / (1.0 - u * u))

    @property
    def gamma(self) -> float:
        return 1.0 / math.sqrt(1.0 - self.u * self.u)

    @property
    def pressure(self) -> float:
        return self.eps_energy

    @property
    def rho(self) -> float:
        return self.eps_energy / self.gamma ** 2

    @property
    def eps_kin(self) -> float:
        """Kinetic energy density rho u^2 / 2 entering the orthogonality time."""
        return 0.5 * self.rho * self.u ** 2

    @property
    def horizon_radius(self) -> float:
        """r_+ of the matching black-brane geometry, fixed by r_+^2 = rho."""
        return math.sqrt(self.rho)


def momentum_density_forms(fluid: FluidState, g_newton: float,
                           r_plus: float | None = None) -> tuple[float, float, float]:
    """The three equivalent expressions for p^x.

    8 pi G_N p^x = -r_+^2 gamma u = -eps u / gamma = -rho gamma u, with
    r_+^2 = rho enforced.  Returned in that order, each divided by 8 pi G_N.
    """
    if g_newton <= 0.0:
        raise ValueError("g_newton must be positive")
    if r_plus is None:
        r_plus = fluid.horizon_radius
    elif abs(r_plus ** 2 - fluid.rho) > 1e-9 * max(1.0, fluid.rho):
        raise ValueError(f"r_plus^2 = {r_plus**2:g} is inconsistent with "
                         f"rho = {fluid.rho:g}")
    denom = 8.0 * math.pi * g_newton
    g = fluid.gamma
    return (-r_plus ** 2 * g * fluid.u / denom,
            -fluid.eps_energy * fluid.u / g / denom,
            -fluid.rho * g * fluid.u / denom)


def momentum_density(fluid: FluidState, g_newton: float,
                     r_plus: float | None = None) -> float:
    return momentum_density_forms(fluid, g_newton, r_plus)[0]


def shift_vector(fluid: FluidState) -> float:
    """Radial-slicing shift component v_x = -u."""
    return -fluid.u


def margolus_levitin(eps_kin: float) -> float:
    """Shortest time to an orthogonal state, t_perp = h / (4 eps_kin)."""
    if eps_kin <= 0.0:
        raise ValueError("kinetic energy must be positive")
    return H_PLANCK / (4.0 * eps_kin)


def orthogonality_time(fluid: FluidState) -> float | None:
    """t_perp of the fluid; None marks the no-momentum state (u = 0), where the
    orthogonality time is infinite and 1/t_perp = 0 exactly."""
    if fluid.u == 0.0:
        return None
    return margolus_levitin(fluid.eps_kin)


def abbreviated_action(geom: WedgeGeometry, fluid: FluidState,
                       strict: bool = False,
                       allow_relativistic: bool = False) -> float:
    """Wedge abbreviated action I_A = [Area/(8 pi G_N)] * rho u^2.

    The integrand p^x v_x is constant over the wedge, so the action is the
    spatial program length times rho u^2.  Velocity-regime policy: silent for
    |u| <= 0.1, warns below 0.5, refuses above unless allow_relativistic.
    """
    check_regime(fluid.u, strict=strict, allow_relativistic=allow_relativistic)
    return program_length_spatial(geom) * fluid.rho * fluid.u ** 2


def action_routes(geom: WedgeGeometry, fluid: FluidState,
                  allow_relativistic: bool = False) -> tuple[float, float, float]:
    """Three routes to I_A / (pi hbar).

    1. exact area:     [Area/(8 pi G)] rho u^2 / (pi hbar)
    2. lattice count:  [(l/eps)/(8 pi G)] * 4 eps_kin / h
    3. central charge: [c/(12 pi) * (l/eps)] / t_perp at R_ads = 1

    Routes 2 and 3 coincide identically; route 1 differs by area/(l/eps),
    i.e. by about pi/(l/eps) in the asymptotic regime.
    """
    r1 = abbreviated_action(geom, fluid,
                            allow_relativistic=allow_relativistic) / (math.pi * HBAR)
    ratio = geom.l / geom.eps
    if fluid.u == 0.0:
        return r1, 0.0, 0.0
    r2 = ratio / (8.0 * math.pi * geom.g_newton) * 4.0 * fluid.eps_kin / H_PLANCK
    c = 3.0 * geom.r_ads / (2.0 * geom.g_newton)
    r3 = c / (12.0 * math.pi) * ratio / margolus_levitin(fluid.eps_kin)
    return r1, r2, r3


@dataclass(frozen=True)
class ConjectureReport:
    """Comparison of the counting entropy with complexity plus action."""

    h_bits: float
    c_a: float
    i_over_pi_hbar: float
    residual: float

    @property
    def rhs(self) -> float:
        return self.c_a + self.i_over_pi_hbar

    @property
    def relative(self) -> float:
        if self.h_bits == 0.0:
            return math.inf if self.residual != 0.0 else 0.0
        return abs(self.residual) / abs(self.h_bits)


def conjecture_check(h_bits: float, c_a: float, i_a: float,
                     hbar: float = HBAR) -> ConjectureReport:
    """Residual of H = C_A + I_A / (pi hbar)."""
    i_term = i_a / (math.pi * hbar)
    return ConjectureReport(h_bits=h_bits, c_a=c_a, i_over_pi_hbar=i_term,
                            residual=h_bits - c_a - i_term)


def program_length_total(ell_spatial: float, t_perp: float | None) -> float:
    """ell_A = ell_A^s (1 + 1/t_perp); a None t_perp is the no-momentum state."""
    if t_perp is None:
        return ell_spatial
    if t_perp <= 0.0:
        raise ValueError("t_perp must be positive")
    return ell_spatial * (1.0 + 1.0 / t_perp)
