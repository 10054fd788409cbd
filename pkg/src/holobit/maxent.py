"""Constrained maximum entropy on a discretized single-particle phase space.

Occupancies n(x, p) live on a grid of x sites times a symmetric, truncated
momentum grid and are treated as per-cell counts, so the multinomial
W = N! / prod n! and its Stirling form ln W = N ln N - sum n ln n are exact
statements about the grid with no measure factors.  Fixing the total count and
the per-site momentum sums and maximizing ln W gives the exponential family
n(x, p) = exp(-alpha - beta p v_x); the dual problem is smooth and strictly
convex, so a damped Newton iteration converges from any starting point.
Small instances admit exhaustive integer enumeration, used as an oracle for
the continuum solver.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize
from scipy.special import digamma, gammaln, xlogy

from .constants import HBAR, LN2

DUAL_TOL = 1e-10
DUAL_MAX_ITER = 200


class InfeasibleConstraintsError(ValueError):
    """No strictly interior occupancy satisfies the requested constraints."""


class ConvergenceError(RuntimeError):
    """The dual Newton iteration failed to reach the residual tolerance."""


@dataclass(frozen=True, eq=False)
class MuSpaceGrid:
    """x sites times a symmetric truncated momentum grid.

    dx and dp are bookkeeping cell measures only; occupancies are per-cell
    counts, which keeps every counting formula exact and measure-free.
    """

    positions: np.ndarray
    momenta: np.ndarray
    dx: float = 1.0
    dp: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "positions", np.asarray(self.positions, dtype=float))
        object.__setattr__(self, "momenta", np.asarray(self.momenta, dtype=float))
        if self.positions.ndim != 1 or self.positions.size < 1:
            raise ValueError("need at least one x site")
        if self.momenta.ndim != 1 or self.momenta.size < 2:
            raise ValueError("need at least two momentum values")
        p = self.momenta
        if np.any(np.diff(p) <= 0.0):
            raise ValueError("momentum grid must be strictly increasing")
        if not np.allclose(p, -p[::-1], atol=1e-12 * max(1.0, abs(p[-1]))):
            raise ValueError("momentum grid must be symmetric about 0")
        if p[-1] <= 0.0:
            raise ValueError("momentum grid must have positive extent")
        if self.dx <= 0.0 or self.dp <= 0.0:
            raise ValueError("cell measures must be positive")

    @classmethod
    def regular(cls, n_x: int, n_p: int, p_max: float,
                dx: float = 1.0, dp: float = 1.0) -> "MuSpaceGrid":
        if n_x < 1 or n_p < 2:
            raise ValueError("need n_x >= 1 and n_p >= 2")
        if p_max <= 0.0:
            raise ValueError("p_max must be positive")
        return cls(positions=np.arange(n_x, dtype=float),
                   momenta=np.linspace(-p_max, p_max, n_p), dx=dx, dp=dp)

    @property
    def n_x(self) -> int:
        return self.positions.size

    @property
    def n_p(self) -> int:
        return self.momenta.size

    @property
    def n_cells(self) -> int:
        return self.n_x * self.n_p

    @property
    def p_max(self) -> float:
        return float(self.momenta[-1])


@dataclass(eq=False)
class OccupancyField:
    """Cell counts n(x, p), real (continuum relaxation) or integer (oracle)."""

    grid: MuSpaceGrid
    table: np.ndarray
    site_multipliers: tuple[float, ...] | None = None

    def __post_init__(self):
        t = np.asarray(self.table)
        if t.shape != (self.grid.n_x, self.grid.n_p):
            raise ValueError(f"table shape {t.shape} does not match the "
                             f"{self.grid.n_x} x {self.grid.n_p} grid")
        if not np.all(np.isfinite(t.astype(float))):
            raise ValueError("occupancies must be finite")
        if np.any(t < 0):
            raise ValueError("occupancies must be nonnegative")
        self.table = t

    @property
    def total(self) -> float:
        return float(self.table.sum())

    @property
    def site_totals(self) -> np.ndarray:
        return self.table.sum(axis=1).astype(float)

    @property
    def site_momenta(self) -> np.ndarray:
        return self.table.astype(float) @ self.grid.momenta

    def is_integer_valued(self, atol: float = 1e-9) -> bool:
        t = self.table.astype(float)
        return bool(np.all(np.abs(t - np.round(t)) <= atol))


@dataclass(frozen=True)
class ConstraintSet:
    """Total count, per-site momentum sums, and the conjugate velocity profile.

    velocity is the profile v_x the momentum multipliers are factored against
    (lambda_x = beta * v_x); a scalar is broadcast to all sites.
    """

    n_total: float
    momentum_profile: tuple[float, ...]
    velocity: tuple[float, ...] = (1.0,)

    def __post_init__(self):
        if not math.isfinite(self.n_total) or self.n_total <= 0.0:
            raise ValueError("n_total must be positive and finite")
        prof = tuple(float(v) for v in np.atleast_1d(self.momentum_profile))
        vel = np.atleast_1d(np.asarray(self.velocity, dtype=float))
        if vel.size == 1:
            vel = np.full(len(prof), vel[0])
        if vel.size != len(prof):
            raise ValueError("velocity profile must be scalar or match P(x)")
        if not all(math.isfinite(v) for v in prof) or not np.all(np.isfinite(vel)):
            raise ValueError("constraints must be finite")
        object.__setattr__(self, "momentum_profile", prof)
        object.__setattr__(self, "velocity", tuple(float(v) for v in vel))

    @property
    def n_x(self) -> int:
        return len(self.momentum_profile)


def feasibility_margin(grid: MuSpaceGrid, constraints: ConstraintSet) -> float:
    """N_total * p_max - sum_x |P(x)|; strictly positive iff an interior
    occupancy exists (every solvable momentum budget stays below the extreme
    all-mass-at-+-p_max configurations)."""
    if constraints.n_x != grid.n_x:
        raise ValueError(f"constraints cover {constraints.n_x} sites, "
                         f"grid has {grid.n_x}")
    budget = sum(abs(v) for v in constraints.momentum_profile)
    return constraints.n_total * grid.p_max - budget


def check_feasibility(grid: MuSpaceGrid, constraints: ConstraintSet) -> None:
    margin = feasibility_margin(grid, constraints)
    if margin <= 0.0:
        raise InfeasibleConstraintsError(
            f"momentum budget sum|P| exceeds N * p_max by {-margin:g}; "
            "no interior occupancy satisfies the constraints")


@dataclass(frozen=True)
class Multipliers:
    """Exponential-family parameters of n(x, p) = exp(-alpha - beta p v_x)."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ValueError("multipliers must be finite")


def log_microstates(occupancy, mode: str = "stirling") -> float:
    """ln W of an occupancy table.

    Stirling mode evaluates N ln N - sum n ln n (exact for the entropy
    functional the solver maximizes, with 0 ln 0 = 0).  Exact mode evaluates
    ln(N! / prod n!) through log-gamma and requires integer occupancies.
    """
    table = occupancy.table if isinstance(occupancy, OccupancyField) else occupancy
    t = np.asarray(table, dtype=float)
    if np.any(t < 0) or not np.all(np.isfinite(t)):
        raise ValueError("occupancies must be nonnegative and finite")
    total = t.sum()
    if mode == "stirling":
        return float(xlogy(total, total) - xlogy(t, t).sum())
    if mode == "exact":
        if np.any(np.abs(t - np.round(t)) > 1e-9):
            raise ValueError("exact mode requires integer occupancies")
        return float(gammaln(total + 1.0) - gammaln(t + 1.0).sum())
    raise ValueError("mode must be 'stirling' or 'exact'")


def multinomial_weight(table) -> int:
    """Exact integer W = N! / prod n! of an integer occupancy table."""
    t = np.asarray(table)
    flat = [int(round(float(c))) for c in np.ravel(t)]
    if np.any(np.abs(np.asarray(flat, dtype=float) - np.asarray(t, dtype=float).ravel()) > 1e-9):
        raise ValueError("multinomial weights need integer occupancies")
    if any(c < 0 for c in flat):
        raise ValueError("occupancies must be nonnegative")
    w = math.factorial(sum(flat))
    for c in flat:
        w //= math.factorial(c)
    return w


def _occupancy_table(alpha: float, lam: np.ndarray, p: np.ndarray) -> np.ndarray | None:
    """exp(-alpha - lam_x p), or None when the exponent would overflow."""
    expo = -alpha - np.outer(lam, p)
    if expo.max() > 700.0:
        return None
    return np.exp(expo)


def _dual_value(alpha: float, lam: np.ndarray, table: np.ndarray | None,
                n_total: float, profile: np.ndarray) -> float:
    if table is None:
        return math.inf
    return float(table.sum() + alpha * n_total + lam @ profile)


def maxent_solve(grid: MuSpaceGrid, constraints: ConstraintSet,
                 tol: float = DUAL_TOL,
                 max_iter: int = DUAL_MAX_ITER) -> tuple[OccupancyField, Multipliers]:
    """Occupancy maximizing ln W subject to the total and momentum constraints.

    Newton iteration on the dual variables (alpha, lambda_x) with Armijo
    backtracking; the dual is smooth and strictly convex, so the damped steps
    decrease it monotonically.  Residuals are measured on the constraints,
    relative to max(1, N_total).  The returned beta is the projection of the
    per-site multipliers onto the velocity profile (exact whenever the profile
    admits the single-scale form lambda_x = beta * v_x; the per-site
    multipliers attached to the occupancy are always authoritative).
    """
    check_feasibility(grid, constraints)
    p = grid.momenta
    profile = np.asarray(constraints.momentum_profile, dtype=float)
    n_total = float(constraints.n_total)
    n_x = grid.n_x
    scale = max(1.0, n_total)

    alpha = math.log(grid.n_cells / n_total)
    lam = np.zeros(n_x)
    table = _occupancy_table(alpha, lam, p)
    value = _dual_value(alpha, lam, table, n_total, profile)

    residual = math.inf
    for _ in range(max_iter):
        site_mom = table @ p
        grad = np.concatenate(([n_total - table.sum()], profile - site_mom))
        residual = float(np.max(np.abs(grad))) / scale
        if residual <= tol:
            break

        hess = np.zeros((n_x + 1, n_x + 1))
        hess[0, 0] = table.sum()
        hess[0, 1:] = site_mom
        hess[1:, 0] = site_mom
        hess[np.arange(1, n_x + 1), np.arange(1, n_x + 1)] = table @ (p * p)
        step = -np.linalg.solve(hess, grad)
        slope = float(grad @ step)

        # Once the predicted decrease falls below the roundoff floor of the
        # dual value the Armijo comparison is pure noise; the undamped Newton
        # step is safe there and finishes the quadratic tail.
        armijo_floor = 64.0 * np.finfo(float).eps * max(1.0, abs(value))
        t = 1.0
        while True:
            trial_alpha = alpha + t * step[0]
            trial_lam = lam + t * step[1:]
            trial_table = _occupancy_table(trial_alpha, trial_lam, p)
            trial_value = _dual_value(trial_alpha, trial_lam, trial_table,
                                      n_total, profile)
            if trial_value <= value + 1e-4 * t * slope:
                break
            if math.isfinite(trial_value) and -slope <= armijo_floor:
                break
            t *= 0.5
            if t <= 1e-14:
                raise ConvergenceError(
                    f"line search stalled at residual {residual:.3e} (total "
                    f"{grad[0]:.3e}, momentum {np.abs(grad[1:]).max():.3e})")
        alpha, lam, table, value = trial_alpha, trial_lam, trial_table, trial_value
    else:
        site_mom = table @ p
        raise ConvergenceError(
            f"no convergence after {max_iter} iterations; residuals: "
            f"total {n_total - table.sum():.3e}, "
            f"momentum {np.abs(profile - site_mom).max():.3e}")

    vel = np.asarray(constraints.velocity, dtype=float)
    denom = float(vel @ vel)
    beta = float(lam @ vel) / denom if denom > 0.0 else 0.0
    occupancy = OccupancyField(grid=grid, table=table,
                               site_multipliers=tuple(float(v) for v in lam))
    return occupancy, Multipliers(alpha=float(alpha), beta=beta)


def closed_form_occupancy(grid: MuSpaceGrid, multipliers: Multipliers,
                          v_x) -> OccupancyField:
    """n(x, p) = exp(-alpha - beta p v_x) on the truncated momentum grid."""
    vel = np.broadcast_to(np.asarray(v_x, dtype=float), (grid.n_x,))
    expo = -multipliers.alpha - multipliers.beta * np.outer(vel, grid.momenta)
    if expo.max() > 700.0:
        raise OverflowError("closed-form exponent exceeds the overflow guard; "
                            "rescale the multipliers or the momentum grid")
    lam = multipliers.beta * vel
    return OccupancyField(grid=grid, table=np.exp(expo),
                          site_multipliers=tuple(float(v) for v in lam))


def determine_multipliers(g_newton: float, r_ads: float,
                          hbar: float = HBAR) -> Multipliers:
    """Holographic assignment alpha = ln2 / (8 pi G_N R_ads), beta = ln2 / (pi hbar):
    one bit per 8 pi G_N R_ads of wedge area and per pi hbar of action."""
    if g_newton <= 0.0 or r_ads <= 0.0 or hbar <= 0.0:
        raise ValueError("G_N, R_ads, hbar must be positive")
    return Multipliers(alpha=LN2 / (8.0 * math.pi * g_newton * r_ads),
                       beta=LN2 / (math.pi * hbar))


def equal_apriori_probability(area: float, action: float, g_newton: float,
                              r_ads: float, hbar: float = HBAR) -> float:
    """p = exp(-alpha * area - beta * action) with the holographic multipliers."""
    if not (math.isfinite(area) and math.isfinite(action)):
        raise ValueError("area and action must be finite")
    mult = determine_multipliers(g_newton, r_ads, hbar=hbar)
    return math.exp(-mult.alpha * area - mult.beta * action)


def entropy_from_probability(p_bulk: float) -> float:
    """S = -ln p, the exact inverse of equal_apriori_probability's exponential."""
    if p_bulk <= 0.0:
        raise ValueError("probability must be positive")
    return -math.log(p_bulk)


def thermo_relation_check(grid: MuSpaceGrid, v_x, beta: float,
                          n_total: float = 100.0,
                          step: float | None = None) -> float:
    """Max residual |ds/dP_x - beta v_x| over sites, by central differences.

    The base point is the closed-form occupancy with multipliers (alpha, beta)
    where alpha normalizes the total to n_total; each per-site momentum P_x is
    then perturbed by +-step (default 1e-3 * p_max) and the Stirling entropy of
    the re-solved occupancy is differenced.  The exact Legendre relation is
    ds/dP_x = lambda_x = beta v_x, so the residual measures only the finite
    difference and solver errors and scales as step^2.
    """
    vel = np.broadcast_to(np.asarray(v_x, dtype=float), (grid.n_x,)).copy()
    lam = beta * vel
    p = grid.momenta
    weights = np.exp(-np.outer(lam, p))
    alpha = math.log(weights.sum() / n_total)
    base_profile = math.exp(-alpha) * (weights @ p)
    if step is None:
        step = 1e-3 * grid.p_max

    def entropy_at(profile: np.ndarray) -> float:
        occ, _ = maxent_solve(grid, ConstraintSet(
            n_total=n_total, momentum_profile=tuple(profile),
            velocity=tuple(vel)))
        return log_microstates(occ)

    worst = 0.0
    for x in range(grid.n_x):
        shift = np.zeros(grid.n_x)
        shift[x] = step
        deriv = (entropy_at(base_profile + shift)
                 - entropy_at(base_profile - shift)) / (2.0 * step)
        worst = max(worst, abs(deriv - lam[x]))
    return worst


def continuum_argmax(grid: MuSpaceGrid,
                     constraints: ConstraintSet) -> OccupancyField:
    """Real table maximizing the exact log weight ln N! - sum ln G(n + 1).

    maxent_solve maximizes the Stirling form, whose optimum is the exponential
    family; at small N the two relaxations genuinely differ, and it is this
    one, built on the gamma-interpolated weight, whose nearest feasible
    integer table reproduces the exhaustive-enumeration argmax.  The objective
    is strictly concave (trigamma is positive), so the polytope maximizer is
    unique; the Stirling solution provides the interior starting point.
    """
    start, _ = maxent_solve(grid, constraints)
    p = grid.momenta
    n_x, n_p = grid.n_x, grid.n_p
    n_total = float(constraints.n_total)
    profile = np.asarray(constraints.momentum_profile, dtype=float)

    eq = [{"type": "eq", "fun": lambda n: n.sum() - n_total,
           "jac": lambda n: np.ones_like(n)}]
    for x in range(n_x):
        row = np.zeros((n_x, n_p))
        row[x] = p
        row = row.ravel()
        eq.append({"type": "eq",
                   "fun": lambda n, row=row, t=profile[x]: float(n @ row - t),
                   "jac": lambda n, row=row: row})
    result = minimize(lambda n: float(gammaln(n + 1.0).sum()),
                      start.table.ravel(),
                      jac=lambda n: digamma(n + 1.0),
                      bounds=[(0.0, None)] * (n_x * n_p),
                      constraints=eq, method="SLSQP",
                      options={"ftol": 1e-14, "maxiter": 500})
    if not result.success:
        raise ConvergenceError(
            f"exact-weight polytope solve failed: {result.message}")
    return OccupancyField(grid=grid, table=result.x.reshape(n_x, n_p))


def _site_rows(momenta: np.ndarray, target: float, n_max: int,
               atol: float) -> dict[int, list[tuple[int, ...]]]:
    """Integer rows over the momentum grid with row @ p == target, keyed by
    row total; totals run 0..n_max."""
    n_p = momenta.size
    rows: dict[int, list[tuple[int, ...]]] = {}
    row = [0] * n_p

    def descend(j: int, used: int, mom: float) -> None:
        if j == n_p:
            if abs(mom - target) <= atol:
                rows.setdefault(used, []).append(tuple(row))
            return
        for c in range(n_max - used + 1):
            row[j] = c
            descend(j + 1, used + c, mom + c * momenta[j])
        row[j] = 0

    descend(0, 0, 0.0)
    return rows


def enumerate_integer_occupancies(grid: MuSpaceGrid, n_total: int,
                                  momentum_profile,
                                  atol: float = 1e-9) -> list[np.ndarray]:
    """All integer occupancy tables meeting the total and per-site momentum
    constraints exactly (within atol on the momentum sums).  Exhaustive, for
    oracle use on small instances."""
    n = int(round(n_total))
    if abs(n - n_total) > 1e-9 or n < 0:
        raise ValueError("n_total must be a nonnegative integer")
    profile = np.atleast_1d(np.asarray(momentum_profile, dtype=float))
    if profile.size != grid.n_x:
        raise ValueError("momentum profile must cover every site")
    per_site = [_site_rows(grid.momenta, float(t), n, atol) for t in profile]

    results: list[np.ndarray] = []
    chosen: list[tuple[int, ...]] = []

    def descend(x: int, remaining: int) -> None:
        if x == grid.n_x - 1:
            for r in per_site[x].get(remaining, []):
                results.append(np.array(chosen + [r], dtype=int))
            return
        for total, site_rows in per_site[x].items():
            if total > remaining:
                continue
            for r in site_rows:
                chosen.append(r)
                descend(x + 1, remaining - total)
                chosen.pop()

    descend(0, n)
    return results


def integer_argmax(grid: MuSpaceGrid, n_total: int, momentum_profile,
                   atol: float = 1e-9) -> tuple[np.ndarray, int, int]:
    """(best table, its exact multinomial weight, feasible-table count).

    Ties are broken by enumeration order; compare weights, not tables, when
    checking another candidate for optimality.
    """
    tables = enumerate_integer_occupancies(grid, n_total, momentum_profile, atol)
    if not tables:
        raise InfeasibleConstraintsError(
            "no integer occupancy satisfies the constraints exactly")
    best, best_w = tables[0], multinomial_weight(tables[0])
    for t in tables[1:]:
        w = multinomial_weight(t)
        if w > best_w:
            best, best_w = t, w
    return best, best_w, len(tables)


def nearest_feasible_integer(occupancy: OccupancyField,
                             tables: list[np.ndarray]) -> np.ndarray:
    """Feasible integer table closest (L2) to a continuum occupancy.

    Elementwise rounding of the continuum solution can violate the
    constraints, so "rounds to" means this nearest feasible lattice point.
    """
    if not tables:
        raise ValueError("no candidate tables")
    target = occupancy.table.astype(float)
    dists = [float(((t - target) ** 2).sum()) for t in tables]
    return tables[int(np.argmin(dists))]
