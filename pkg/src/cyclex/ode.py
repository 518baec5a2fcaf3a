"""Direct integration of the Cartesian field as an independent check.

The field is integrated in the time direction that makes the polar angle
increase, so one revolution corresponds to the same return map the
quadrature route tabulates.  The unwrapped angle is carried as an extra
state; a revolution ends when it has advanced by 2 pi, which puts the
state back on the positive x-axis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp

from .errors import OriginApproach, StepFailure
from .trig import SystemSpec

__all__ = ["ode_crosscheck", "OdeTrajectory", "CrossCheck", "integrate_revolution"]


@dataclass(eq=False)
class OdeTrajectory:
    t: np.ndarray
    x: np.ndarray
    y: np.ndarray
    crossings: list[tuple[float, float, float]] = field(default_factory=list)

    @property
    def crossing_radii(self) -> list[float]:
        return [math.hypot(x, y) for _, x, y in self.crossings]


@dataclass(eq=False)
class CrossCheck:
    trajectory: OdeTrajectory
    radii: list[float]
    return_slope: float
    orientation: int

    @property
    def log_slope(self) -> float:
        return math.log(self.return_slope) if self.return_slope > 0 else math.nan

    @property
    def first_return(self) -> float:
        return self.radii[1]


def _rhs(system: SystemSpec, sigma: int):
    X, Y = system.X, system.Y

    def rhs(_t, z):
        x, y = z[0], z[1]
        u = X.evaluate_float(x, y)
        v = Y.evaluate_float(x, y)
        r2 = x * x + y * y
        return [sigma * u, sigma * v, sigma * (x * v - y * u) / r2]

    return rhs


def integrate_revolution(system: SystemSpec, x0: float, y0: float, theta0: float, sigma: int, *,
                         rtol=1e-12, atol=1e-14, ball=1e-8, escape=1e6, max_time=1e4):
    """One turn of the angle from ``(x0, y0)``; returns the solver output."""
    target = theta0 + 2 * math.pi
    rhs = _rhs(system, sigma)

    def done(_t, z):
        return z[2] - target

    done.terminal = True
    done.direction = 1

    def near_origin(_t, z):
        return z[0] ** 2 + z[1] ** 2 - ball**2

    near_origin.terminal = True

    def far(_t, z):
        return z[0] ** 2 + z[1] ** 2 - escape**2

    far.terminal = True

    sol = solve_ivp(rhs, (0.0, max_time), [x0, y0, theta0], method="DOP853", rtol=rtol, atol=atol,
                    events=[done, near_origin, far], dense_output=False)
    if sol.status == -1:
        raise StepFailure(sol.message)
    if sol.t_events[1].size:
        raise OriginApproach(f"trajectory entered the ball of radius {ball} around the origin")
    if sol.t_events[2].size:
        raise StepFailure(f"trajectory left the disc of radius {escape}")
    if not sol.t_events[0].size:
        raise StepFailure(f"no full revolution within time {max_time}")
    return sol


def _orientation(system: SystemSpec, x: float, y: float) -> int:
    g = x * system.Y.evaluate_float(x, y) - y * system.X.evaluate_float(x, y)
    if g == 0:
        raise StepFailure("start point lies on a ray of vanishing angular velocity")
    return 1 if g > 0 else -1


def ode_crosscheck(system: SystemSpec, start: tuple[float, float], revolutions: int = 1, tol: float = 1e-12,
                   probe: float = 0.25, ball: float = 1e-8) -> CrossCheck:
    """Successive returns to the positive x-axis and the return-map slope.

    The slope is a centred finite difference in ``rho = r**(n-m-1)`` taken
    at ``rho_start * (1 +- probe)`` over a single revolution.
    """
    x0, y0 = map(float, start)
    if x0 == 0.0 and y0 == 0.0:
        raise ValueError("start must differ from the origin")
    sigma = _orientation(system, x0, y0)
    # Bring the start onto the positive x-axis representation via its angle.
    theta = math.atan2(y0, x0)
    ts, xs, ys, crossings = [], [], [], []
    radii = [math.hypot(x0, y0)]
    t_offset, x, y = 0.0, x0, y0
    for _ in range(revolutions):
        sol = integrate_revolution(system, x, y, theta, sigma, rtol=tol, atol=tol * 1e-2, ball=ball)
        ts.append(sol.t + t_offset)
        xs.append(sol.y[0])
        ys.append(sol.y[1])
        te, ze = sol.t_events[0][0], sol.y_events[0][0]
        t_offset += te
        x, y, theta = ze[0], ze[1], ze[2]
        crossings.append((t_offset, x, y))
        radii.append(math.hypot(x, y))
    traj = OdeTrajectory(np.concatenate(ts), np.concatenate(xs), np.concatenate(ys), crossings)

    c = system.bernoulli_exponent
    rho0 = radii[0] ** c
    ends = []
    for rho in (rho0 * (1 - probe), rho0 * (1 + probe)):
        r = rho ** (1.0 / c)
        th = math.atan2(y0, x0)
        sol = integrate_revolution(system, r * math.cos(th), r * math.sin(th), th, sigma,
                                   rtol=tol, atol=tol * 1e-2, ball=ball)
        ze = sol.y_events[0][0]
        ends.append(math.hypot(ze[0], ze[1]) ** c)
    slope = (ends[1] - ends[0]) / (2 * probe * rho0)
    return CrossCheck(traj, radii, slope, sigma)
