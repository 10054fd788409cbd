"""Static-slice wedge geometry in the hyperbolic upper half plane, plus the
boosted black-brane metric sourced by a uniformly moving boundary fluid.

The constant-time slice carries ds^2 = R^2 (dw^2 + dz^2) / z^2.  A boundary
interval of width l is bounded in the bulk by the half circle of radius l/2
centered on the interval; lengths and areas are regulated by the cutoff
z = eps.  Closed forms come with independent quadrature routes so every
number can be cross-checked at runtime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate


@dataclass(frozen=True)
class WedgeGeometry:
    """Boundary interval of width l with bulk cutoff eps, curvature radius
    r_ads, and Newton constant g_newton."""

    l: float
    eps: float
    r_ads: float = 1.0
    g_newton: float = 1.0

    def __post_init__(self):
        if self.eps <= 0.0:
            raise ValueError("cutoff eps must be positive")
        if self.l <= 2.0 * self.eps:
            raise ValueError("interval must satisfy l > 2*eps")
        if self.r_ads <= 0.0 or self.g_newton <= 0.0:
            raise ValueError("r_ads and g_newton must be positive")

    @property
    def radius(self) -> float:
        return self.l / 2.0


@dataclass(frozen=True)
class GeodesicArc:
    """Half circle (w - center)^2 + z^2 = radius^2 anchored on the boundary."""

    center: float
    radius: float


def geodesic_arc(geom: WedgeGeometry) -> GeodesicArc:
    return GeodesicArc(center=geom.l / 2.0, radius=geom.l / 2.0)


def geodesic_length(geom: WedgeGeometry) -> float:
    """Hyperbolic length of the anchored half circle above z = eps.

    Exact value 2 R ln[(a/eps)(1 + sqrt(1 - (eps/a)^2))] with a = l/2;
    asymptotically 2 R ln(l/eps) and -> 0 as l -> 2 eps.
    """
    a = geom.radius
    x = geom.eps / a
    return 2.0 * geom.r_ads * math.log((1.0 + math.sqrt(1.0 - x * x)) / x)


def geodesic_length_quadrature(geom: WedgeGeometry) -> float:
    """Independent arclength route: integrate R*sqrt(w'^2 + z'^2)/z over the arc."""
    a = geom.radius
    theta = math.asin(geom.eps / a)

    def speed_over_z(t):
        dw = -a * math.sin(t)
        dz = a * math.cos(t)
        return geom.r_ads * math.hypot(dw, dz) / (a * math.sin(t))

    val, _ = integrate.quad(speed_over_z, theta, math.pi - theta,
                            epsabs=1e-12, epsrel=1e-12, limit=200)
    return val


def rt_entropy(length: float, g_newton: float) -> float:
    """Minimal-length entropy S = L / (4 G_N), in nats."""
    if g_newton <= 0.0:
        raise ValueError("g_newton must be positive")
    return length / (4.0 * g_newton)


def central_charge(g_newton: float, r_ads: float = 1.0) -> float:
    """Boundary central charge c = 3 R / (2 G_N)."""
    return 3.0 * r_ads / (2.0 * g_newton)


def wedge_area(geom: WedgeGeometry) -> float:
    """Regulated slice area integral of dw dz / z^2 over the wedge.

    Closed form (2/eps) sqrt(a^2 - eps^2) - 2 arcsin(sqrt(a^2 - eps^2)/a) with
    a = l/2, tending to l/eps - pi as eps/l -> 0.  The area is expressed in
    curvature-radius units (no R^2 factor).
    """
    a = geom.radius
    if a <= geom.eps:
        return 0.0
    s = math.sqrt(a * a - geom.eps * geom.eps)
    return 2.0 * s / geom.eps - 2.0 * math.asin(s / a)


def wedge_area_quadrature(geom: WedgeGeometry) -> float:
    """Independent 2-D quadrature of the same area integral."""
    a = geom.radius
    c = geom.l / 2.0

    val, _ = integrate.dblquad(
        lambda w, z: 1.0 / (z * z),
        geom.eps, a,
        lambda z: c - math.sqrt(max(a * a - z * z, 0.0)),
        lambda z: c + math.sqrt(max(a * a - z * z, 0.0)),
        epsabs=1e-10, epsrel=1e-10)
    return val


def holographic_complexity(geom: WedgeGeometry) -> float:
    """C_A = Area / (8 pi G_N R_ads)."""
    return wedge_area(geom) / (8.0 * math.pi * geom.g_newton * geom.r_ads)


def program_length_spatial(geom: WedgeGeometry) -> float:
    """ell_A^s = Area / (8 pi G_N), the spatial part of the program length."""
    return wedge_area(geom) / (8.0 * math.pi * geom.g_newton)


MINKOWSKI_2D = np.diag([-1.0, 1.0])


@dataclass(frozen=True)
class BoostedMetric:
    """Planar black-brane geometry carried along by a boundary fluid moving at
    coordinate velocity u (so u^mu = (gamma, gamma*u) with gamma = 1/sqrt(1-u^2))."""

    r_plus: float = 1.0
    u: float = 0.0

    def __post_init__(self):
        if self.r_plus <= 0.0:
            raise ValueError("horizon radius must be positive")
        if abs(self.u) >= 1.0:
            raise ValueError("|u| must be < 1")

    @property
    def gamma(self) -> float:
        return 1.0 / math.sqrt(1.0 - self.u * self.u)

    def velocity_upper(self) -> np.ndarray:
        g = self.gamma
        return np.array([g, g * self.u])

    def velocity_lower(self) -> np.ndarray:
        return MINKOWSKI_2D @ self.velocity_upper()


def btz_metric_components(r: float, metric: BoostedMetric) -> np.ndarray:
    """Full 3x3 metric at radius r in ingoing coordinates, index order (t, x, r).

    g_{mu nu} = r^2 eta_{mu nu} + r_+^2 u_mu u_nu on the boundary block,
    g_{mu r} = -u_mu, g_{rr} = 0.
    """
    if r <= 0.0:
        raise ValueError("radius must be positive")
    ul = metric.velocity_lower()
    g = np.zeros((3, 3))
    g[:2, :2] = r * r * MINKOWSKI_2D + metric.r_plus ** 2 * np.outer(ul, ul)
    g[:2, 2] = -ul
    g[2, :2] = -ul
    return g


def metric_discrepancy(r: float, metric: BoostedMetric) -> np.ndarray:
    """Boundary-block discrepancy delta_g = g_{mu nu} - r^2 eta_{mu nu}.

    Equals r_+^2 u_mu u_nu and is independent of r; computed here by literal
    subtraction so r-independence is a checkable property, not an assumption.
    """
    g = btz_metric_components(r, metric)[:2, :2]
    return g - r * r * MINKOWSKI_2D


def raise_boundary_indices(tensor: np.ndarray) -> np.ndarray:
    """Raise both indices of a boundary 2-tensor with eta = diag(-1, 1)."""
    return MINKOWSKI_2D @ np.asarray(tensor) @ MINKOWSKI_2D
