"""Empirical stress tests of the a-priori gradient and second-derivative
estimates on solved problems.

The estimates have the shape

    sup_{B_rho} |Du|^2              <= c (R - rho)^(-theta2) E_R^theta1
    int_{B_rho} g1(|Du|) |D^2 u|^2  <= c (R - rho)^(-theta4) E_R^theta3

with E_R = int_{B_R} (1 + f(Du)) and a non-constructive constant c.  A
pointwise bound with unknown c cannot be falsified, so the checks are:

* slope tests: the fitted log-log slope of the measured quantity against
  E_R across an amplitude sweep must not exceed the predicted theta
  exponent (+ 0.05 additive tolerance);
* ratio boundedness: the implied constants across a sweep must stay within
  a factor 10^3 of the sweep's base value (they may shrink freely - a slack
  upper bound is consistent - but must not grow past it);
* exactly assertable structure: sup over nested balls is monotone.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .exponents import MoserSchedule
from .growth import GrowthTriple, paper_triple
from .integrand import Ball, Exponential, IntegrandFamily, PxLaplacian
from .solver import (
    DiscreteField,
    Grid,
    SolveOptions,
    SolveTrace,
    field_stats,
    minimize,
)

RATIO_SPREAD_LIMIT = 1e3
SLOPE_TOL = 0.05


class ThetaOscillationError(ValueError):
    """Coefficient oscillation on the ball exceeds the schedule's theta."""


@dataclass
class ProblemTemplate:
    """A solvable configuration whose boundary data can be rescaled."""

    family: IntegrandFamily
    side: float
    n: int
    boundary: Callable
    opts: SolveOptions = SolveOptions()
    x0: float = 0.0
    y0: float = 0.0

    def grid(self, amplitude: float = 1.0) -> Grid:
        b = self.boundary
        return Grid(self.side, self.n, lambda x, y: amplitude * b(x, y), self.x0, self.y0)

    def solve(self, amplitude: float = 1.0) -> "SolvedProblem":
        g = self.grid(amplitude)
        u, trace = minimize(g, self.family, opts=self.opts)
        return SolvedProblem(grid=u.grid, family=self.family, field=u, trace=trace, amplitude=amplitude)


@dataclass
class SolvedProblem:
    grid: Grid
    family: IntegrandFamily
    field: DiscreteField
    trace: SolveTrace
    amplitude: float = 1.0


def coefficient_oscillation_theta(family: IntegrandFamily, ball: Ball) -> Optional[float]:
    """q/p of the active coefficient on the ball; None for x-homogeneous kinds."""
    if isinstance(family, Exponential):
        lo, hi = family.a.range_on_ball(ball)
    elif isinstance(family, PxLaplacian):
        lo, hi = family.pfun.range_on_ball(ball)
    else:
        return None
    if lo <= 0:
        raise ValueError("coefficient must stay positive on the measurement ball")
    return hi / lo


def oscillation_radius(family: IntegrandFamily, ball: Ball, theta: float) -> Optional[float]:
    """Sufficient radius R0 = (theta - 1) p / (3 L) for the ball condition
    q <= theta p, with p the coefficient minimum on the ball and L its
    declared Lipschitz constant.  None for x-homogeneous kinds or L = 0."""
    if theta is None:
        return None
    if isinstance(family, Exponential):
        coeff = family.a
    elif isinstance(family, PxLaplacian):
        coeff = family.pfun
    else:
        return None
    if coeff.lipschitz == 0:
        return None  # constant coefficient: any radius works
    p = coeff.range_on_ball(ball)[0]
    return (float(theta) - 1.0) * p / (3.0 * coeff.lipschitz)


def _guard_oscillation(problem: SolvedProblem, schedule: MoserSchedule, ball: Ball):
    theta_ball = coefficient_oscillation_theta(problem.family, ball)
    if theta_ball is None:
        return
    theta_sched = schedule.params.theta
    if theta_sched is None:
        raise ThetaOscillationError(
            f"{problem.family.kind} needs a schedule carrying theta; this one has none"
        )
    if theta_ball > float(theta_sched) * (1 + 1e-9):
        raise ThetaOscillationError(
            f"coefficient oscillation on the ball gives theta = {theta_ball:.6g} "
            f"> schedule theta = {float(theta_sched):.6g}; shrink R"
        )


@dataclass(frozen=True)
class MeasureRecord:
    amplitude: float
    sup_grad_sq: float      # sup over B_rho of |Du|^2
    outer_energy: float     # E_R
    w22_weighted: float     # int_{B_rho} g1(|Du|) |D^2 u|^2
    v_integral: float
    rho: float
    R: float
    c_hat: float            # sup^2 (R - rho)^theta2 / E_R^theta1
    c_hat_v: float          # V (R - rho)^theta0 / E_R^theta3
    c_hat_w22: float        # W22 (R - rho)^theta4 / E_R^theta3
    converged: bool
    # log-domain copies of the implied constants (large theta exponents can
    # underflow the float forms); -inf when the measured quantity vanishes
    log_c_hat: float = -np.inf
    log_c_hat_v: float = -np.inf

    def row(self) -> str:
        return (
            f"{self.amplitude:<10.6g} {self.sup_grad_sq:<14.8g} {self.outer_energy:<14.8g} "
            f"{self.w22_weighted:<14.8g} {self.c_hat:<12.6g} {self.c_hat_v:<12.6g}"
        )

    @staticmethod
    def header() -> str:
        return (
            f"{'amplitude':<10} {'sup|Du|^2':<14} {'E_R':<14} "
            f"{'W22':<14} {'c_hat':<12} {'c_hat_V'}"
        )


def measure(
    problem: SolvedProblem,
    schedule: MoserSchedule,
    rho: float,
    R: float,
    center: Optional[tuple] = None,
    triple: Optional[GrowthTriple] = None,
) -> MeasureRecord:
    """One measurement of the theorem quantities on concentric balls."""
    grid = problem.grid
    cx, cy = center if center is not None else grid.center()
    ball = Ball(cx, cy, R)
    _guard_oscillation(problem, schedule, ball)
    if triple is None:
        triple = paper_triple(problem.family, ball)
    st = field_stats(
        grid,
        problem.family,
        problem.field,
        rho,
        R,
        center=(cx, cy),
        triple=triple,
        gamma=float(schedule.params.gamma),
    )
    gap = R - rho
    t0, t1 = float(schedule.theta0), float(schedule.theta1)
    t2, t3, t4 = float(schedule.theta2), float(schedule.theta3), float(schedule.theta4)
    sup_sq = st.sup_grad**2
    e_r = st.outer_energy
    c_hat = _implied_constant(sup_sq, gap, t2, e_r, t1)
    c_hat_v = _implied_constant(st.v_integral, gap, t0, e_r, t3)
    c_hat_w = _implied_constant(st.w22_weighted, gap, t4, e_r, t3)
    return MeasureRecord(
        amplitude=problem.amplitude,
        sup_grad_sq=sup_sq,
        outer_energy=e_r,
        w22_weighted=st.w22_weighted,
        v_integral=st.v_integral,
        rho=rho,
        R=R,
        c_hat=c_hat,
        c_hat_v=c_hat_v,
        c_hat_w22=c_hat_w,
        converged=problem.trace.converged,
        log_c_hat=_implied_log_constant(sup_sq, gap, t2, e_r, t1),
        log_c_hat_v=_implied_log_constant(st.v_integral, gap, t0, e_r, t3),
    )


def _implied_log_constant(quantity, gap, gap_exp, energy, e_exp) -> float:
    """log of quantity * gap^gap_exp / energy^e_exp; -inf for zero quantities."""
    if quantity <= 0 or energy <= 0 or gap <= 0:
        return -np.inf
    return float(np.log(quantity) + gap_exp * np.log(gap) - e_exp * np.log(energy))


def _implied_constant(quantity, gap, gap_exp, energy, e_exp) -> float:
    """Float form of the implied constant; clamps to 0/inf past double range."""
    logc = _implied_log_constant(quantity, gap, gap_exp, energy, e_exp)
    if logc == -np.inf or logc < -745.0:
        return 0.0
    if logc > 700.0:
        return float(np.inf)
    return float(np.exp(logc))


def _ols_slope(logx: np.ndarray, logy: np.ndarray) -> float:
    vx = logx - logx.mean()
    vy = logy - logy.mean()
    denom = float(vx @ vx)
    if denom <= 0:
        raise ValueError("insufficient spread: zero variance in the regressor")
    return float(vx @ vy) / denom


def _bounded_log_spread(log_values: Sequence[float], log_ref: float) -> bool:
    vals = [v for v in log_values if v > -np.inf]
    if not vals or log_ref == -np.inf:
        return True
    return max(vals) - log_ref <= np.log(RATIO_SPREAD_LIMIT)


@dataclass
class EstimateReport:
    records: list
    s1: Optional[float]
    s3: Optional[float]
    theta0: float
    theta1: float
    theta2: float
    theta3: float
    theta4: float
    slope1_ok: bool
    slope3_ok: bool
    ratio_ok: bool
    ratio_v_ok: bool
    failures: list = field(default_factory=list)
    notes: str = ""

    @property
    def passed(self) -> bool:
        return self.slope1_ok and self.slope3_ok and self.ratio_ok and self.ratio_v_ok

    def render(self) -> str:
        lines = [MeasureRecord.header()]
        lines += [r.row() for r in self.records]
        lines.append("-" * 78)
        s1 = "skipped" if self.s1 is None else f"{self.s1:.6g}"
        s3 = "skipped" if self.s3 is None else f"{self.s3:.6g}"
        lines.append(
            f"fitted slopes: s1 = {s1} (theta1 = {self.theta1:.6g}), "
            f"s3 = {s3} (theta3 = {self.theta3:.6g})"
        )
        lines.append(
            f"predicted exponents: theta0={self.theta0:.6g} theta1={self.theta1:.6g} "
            f"theta2={self.theta2:.6g} theta3={self.theta3:.6g} theta4={self.theta4:.6g}"
        )
        lines.append(
            "pass flags: "
            f"slope1={'ok' if self.slope1_ok else 'FAIL'} "
            f"slope3={'ok' if self.slope3_ok else 'FAIL'} "
            f"ratio={'ok' if self.ratio_ok else 'FAIL'} "
            f"ratio_V={'ok' if self.ratio_v_ok else 'FAIL'}"
        )
        for f in self.failures:
            lines.append(f"solve failure: {f}")
        if self.notes:
            lines.append(self.notes)
        return "\n".join(lines)


def sweep_amplitudes(
    template: ProblemTemplate,
    amplitudes: Sequence[float],
    schedule: MoserSchedule,
    rho: float,
    R: float,
    center: Optional[tuple] = None,
) -> EstimateReport:
    """Solve the template across boundary amplitudes and fit scaling slopes.

    Requires >= 5 amplitudes spanning at least one decade.  Slope flags
    compare the fitted exponents against theta1/theta3; ratio flags require
    the implied constants to stay within 10^3 of the smallest-energy sweep
    member (growth past that falsifies single-constant boundedness).
    """
    amps = [float(a) for a in amplitudes]
    if len(amps) < 5:
        raise ValueError(f"insufficient spread: need >= 5 amplitudes, got {len(amps)}")
    pos = [abs(a) for a in amps if a != 0]
    if not pos or max(pos) / min(pos) < 10 or len(set(amps)) < 3:
        raise ValueError("insufficient spread: amplitudes must span at least one decade")

    records = []
    failures = []
    for a in amps:
        solved = template.solve(a)
        if not solved.trace.converged:
            failures.append(
                f"amplitude {a:g}: gradient norm {solved.trace.final_grad_norm:.3g} "
                f"after {solved.trace.iterations} iterations"
            )
        records.append(measure(solved, schedule, rho, R, center=center))

    good = [r for r in records if r.converged]
    t1, t3 = float(schedule.theta1), float(schedule.theta3)
    s1 = s3 = None
    if len(good) >= 5:
        xs = np.array([r.outer_energy for r in good])
        y1 = np.array([r.sup_grad_sq for r in good])
        y3 = np.array([r.w22_weighted for r in good])
        m1 = (xs > 0) & (y1 > 0)
        m3 = (xs > 0) & (y3 > 0)
        if np.sum(m1) >= 3:
            s1 = _ols_slope(np.log(xs[m1]), np.log(y1[m1]))
        if np.sum(m3) >= 3:
            s3 = _ols_slope(np.log(xs[m3]), np.log(y3[m3]))

    base = min((r for r in records if r.log_c_hat > -np.inf), key=lambda r: r.outer_energy, default=None)
    ratio_ok = _bounded_log_spread(
        [r.log_c_hat for r in records], base.log_c_hat if base else -np.inf
    )
    base_v = min((r for r in records if r.log_c_hat_v > -np.inf), key=lambda r: r.outer_energy, default=None)
    ratio_v_ok = _bounded_log_spread(
        [r.log_c_hat_v for r in records], base_v.log_c_hat_v if base_v else -np.inf
    )
    return EstimateReport(
        records=records,
        s1=s1,
        s3=s3,
        theta0=float(schedule.theta0),
        theta1=t1,
        theta2=float(schedule.theta2),
        theta3=t3,
        theta4=float(schedule.theta4),
        slope1_ok=s1 is not None and s1 <= t1 + SLOPE_TOL,
        slope3_ok=s3 is None or s3 <= t3 + SLOPE_TOL,
        ratio_ok=ratio_ok,
        ratio_v_ok=ratio_v_ok,
        failures=failures,
    )


@dataclass(frozen=True)
class RadiusReport:
    pairs: tuple
    sup_values: tuple          # sup |Du|^2 on each B_rho
    normalized: tuple          # sup^2 (R - rho)^theta2
    monotone_ok: bool
    bounded_ok: bool

    @property
    def passed(self) -> bool:
        return self.monotone_ok and self.bounded_ok


def radius_sweep(
    problem: SolvedProblem,
    schedule: MoserSchedule,
    pairs: Sequence[tuple],
    center: Optional[tuple] = None,
) -> RadiusReport:
    """Check nested-ball monotonicity and (R - rho)-normalized boundedness.

    Needs >= 4 pairs with one fixed R; the gaps R - rho must span a factor
    >= 4.  The normalized constants are compared against the widest-gap
    pair: they may only shrink, up to the spread limit.
    """
    if len(pairs) < 4:
        raise ValueError(f"need >= 4 (rho, R) pairs, got {len(pairs)}")
    Rs = {float(R) for _, R in pairs}
    if len(Rs) != 1:
        raise ValueError("all pairs must share the same outer radius R")
    gaps = [float(R) - float(r) for r, R in pairs]
    if min(gaps) <= 0:
        raise ValueError("need rho < R in every pair")
    if max(gaps) / min(gaps) < 4:
        raise ValueError("the gaps R - rho must span at least a factor 4")
    orderd = sorted((float(r), float(R)) for r, R in pairs)
    recs = [measure(problem, schedule, r, R, center=center) for r, R in orderd]
    sups = [r.sup_grad_sq for r in recs]
    monotone_ok = all(sups[i] <= sups[i + 1] for i in range(len(sups) - 1))
    t2 = float(schedule.theta2)
    log_norm = [
        (np.log(r.sup_grad_sq) + t2 * np.log(r.R - r.rho)) if r.sup_grad_sq > 0 else -np.inf
        for r in recs
    ]
    normalized = [
        0.0 if lv == -np.inf or lv < -745 else (np.inf if lv > 700 else float(np.exp(lv)))
        for lv in log_norm
    ]
    ref = log_norm[0]  # widest gap (smallest rho)
    bounded_ok = _bounded_log_spread(log_norm, ref if ref > -np.inf else max(log_norm))
    return RadiusReport(
        pairs=tuple(orderd),
        sup_values=tuple(sups),
        normalized=tuple(normalized),
        monotone_ok=monotone_ok,
        bounded_ok=bounded_ok,
    )


@dataclass(frozen=True)
class SecondDerivativeRecord:
    w22_weighted: float
    w22_unweighted: float
    implied_constant: float      # W22 (R - rho)^theta4 / E_R^theta3
    nondegenerate: bool          # g1(0) = m > 0
    m: float
    unweighted_bound_constant: Optional[float]  # c / m form when nondegenerate


def second_derivative_check(
    problem: SolvedProblem,
    schedule: MoserSchedule,
    rho: float,
    R: float,
    center: Optional[tuple] = None,
) -> SecondDerivativeRecord:
    """The weighted second-derivative quantity and its implied constant.

    For densities with g1(0) = m > 0 the unweighted integral is also
    reported with the 1/m factor of the nondegenerate corollary.
    """
    grid = problem.grid
    cx, cy = center if center is not None else grid.center()
    ball = Ball(cx, cy, R)
    _guard_oscillation(problem, schedule, ball)
    triple = paper_triple(problem.family, ball)
    st = field_stats(
        grid, problem.family, problem.field, rho, R, center=(cx, cy), triple=triple,
        gamma=float(schedule.params.gamma),
    )
    gap = R - rho
    t3, t4 = float(schedule.theta3), float(schedule.theta4)
    implied = st.w22_weighted * gap**t4 / st.outer_energy**t3 if st.outer_energy > 0 else 0.0
    m = st.g1_at_zero
    nondeg = m > 0
    unweighted_c = (st.w22_unweighted * m) * gap**t4 / st.outer_energy**t3 if nondeg else None
    return SecondDerivativeRecord(
        w22_weighted=st.w22_weighted,
        w22_unweighted=st.w22_unweighted,
        implied_constant=implied,
        nondegenerate=nondeg,
        m=m,
        unweighted_bound_constant=unweighted_c,
    )
