"""Explicit limit cycle of ``x' = P_n + x R_m, y' = Q_n + y R_m``.

With ``rho = r**c`` and ``c = n - m - 1`` the orbit equation becomes the
linear ODE ``rho' = c (f/g) rho + c (h/g)`` in the angle.  Writing
``E(t) = exp(int_0^t c f/g)`` its solution is

    rho(t; rho0) = E(t) * (rho0 + int_0^t c (h/g) / E(s) ds),

so the return map ``rho0 -> A (rho0 + B)`` is affine with slope
``A = E(2 pi)`` and the only candidate periodic orbit starts at
``a = A B / (1 - A)``.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import ContinuumOfPeriodicOrbits, DomainError, NoCycle
from .quadrature import QuadratureConfig, _adaptive_panels, cumulative, integrate
from .trig import PolarForm, TrigPoly, series_nonvanishing, to_polar

__all__ = [
    "Existence",
    "BernoulliCoefficients",
    "BernoulliSolution",
    "CycleResult",
    "bernoulli_coefficients",
    "compute_cycle",
    "log_multiplier",
    "psi",
    "write_profile_csv",
]

TWO_PI = 2 * math.pi
# |A - 1| at or below this is treated as a non-hyperbolic return map.
A_ONE_TOL = 1e-12


class Existence(Enum):
    UNIQUE = "unique"
    NONE = "none"
    CONTINUUM = "continuum"


@dataclass(frozen=True)
class BernoulliCoefficients:
    """Evaluators for ``c f/g`` (rate) and ``c h/g`` (forcing)."""

    f: TrigPoly
    g: TrigPoly
    h: TrigPoly
    exponent: int

    def rate(self, theta):
        return self.exponent * self.f(theta) / self.g(theta)

    def forcing(self, theta):
        return self.exponent * self.h(theta) / self.g(theta)

    def __call__(self, theta):
        return self.rate(theta), self.forcing(theta)

    @property
    def orientation(self) -> int:
        """Sign of g, i.e. the sense in which the angle turns in time."""
        return 1 if float(self.g(0.0)) > 0 else -1


def bernoulli_coefficients(pf: PolarForm) -> BernoulliCoefficients:
    if not series_nonvanishing(pf.g, pf.n + 1):
        raise DomainError("g(theta) vanishes: the system has an invariant line through the origin")
    return BernoulliCoefficients(pf.f, pf.g, pf.h, pf.bernoulli_exponent)


def _as_polar(obj) -> PolarForm:
    return obj if isinstance(obj, PolarForm) else to_polar(obj)


class BernoulliSolution:
    """Running integrals of the linear orbit equation on ``[0, 2 pi]``.

    ``exponent(t) = int_0^t c f/g`` and ``integral(t) = int_0^t c (h/g) e^{-exponent}``
    are tabulated on a uniform grid and refined locally for off-grid angles.
    """

    def __init__(self, coeffs: BernoulliCoefficients, cfg: QuadratureConfig | None = None, samples: int = 1024):
        self.coeffs = coeffs
        self.cfg = cfg or QuadratureConfig()
        self.grid = np.linspace(0.0, TWO_PI, samples + 1)
        self._P, self.exponent_error = cumulative(coeffs.rate, self.grid, self.cfg)
        self._I, self.integral_error = cumulative(self._weighted_forcing, self.grid, self.cfg)

    def _local(self, func, table, theta):
        theta = np.asarray(theta, dtype=float)
        flat = theta.ravel()
        idx = np.clip(np.searchsorted(self.grid, flat, side="right") - 1, 0, self.grid.size - 2)
        left = self.grid[idx]
        part, _ = _adaptive_panels(func, left, flat, self.cfg, TWO_PI)
        return (table[idx] + part).reshape(theta.shape)

    def exponent(self, theta):
        return self._local(self.coeffs.rate, self._P, theta)

    def _weighted_forcing(self, theta):
        return self.coeffs.forcing(theta) * np.exp(-self.exponent(theta))

    def integral(self, theta):
        return self._local(self._weighted_forcing, self._I, theta)

    @property
    def log_A(self) -> float:
        return float(self._P[-1])

    @property
    def A(self) -> float:
        return math.exp(self.log_A)

    @property
    def B(self) -> float:
        return float(self._I[-1])

    def rho(self, theta, rho0: float):
        return np.exp(self.exponent(theta)) * (rho0 + self.integral(theta))

    def rho_on_grid(self, rho0: float) -> np.ndarray:
        return np.exp(self._P) * (rho0 + self._I)

    def return_map(self, rho0: float) -> float:
        return self.A * (rho0 + self.B)

    def min_margin(self, rho0: float) -> tuple[float, float]:
        """Minimum of ``rho0 + integral(t)`` over one turn and where it occurs.

        ``rho`` has the sign of this margin.  Candidates are the grid
        samples plus every local minimum, located by bisection on the sign
        change of the forcing term (the margin's derivative).
        """
        margin = rho0 + self._I
        k = int(np.argmin(margin))
        best, where = float(margin[k]), float(self.grid[k])
        q = self.coeffs.forcing(self.grid)
        for i in np.nonzero((q[:-1] < 0) & (q[1:] >= 0))[0]:
            lo, hi = self.grid[i], self.grid[i + 1]
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if self.coeffs.forcing(mid) < 0:
                    lo = mid
                else:
                    hi = mid
            val = float(rho0 + self.integral(np.array([hi]))[0])
            if val < best:
                best, where = val, float(hi)
        return best, where


@dataclass(frozen=True, eq=False)
class CycleResult:
    A: float
    B: float
    a: float
    exists: Existence
    theta: np.ndarray = field(repr=False)
    r: np.ndarray = field(repr=False)
    rho: np.ndarray = field(repr=False)
    log_multiplier: float = 0.0
    orientation: int = 1
    a_error: float = 0.0
    min_margin: float = math.nan
    exponent: int = -1

    @property
    def multiplier(self) -> float:
        """Derivative of the return map in rho along increasing angle."""
        return self.A

    @property
    def hyperbolic(self) -> bool:
        return abs(self.A - 1.0) > A_ONE_TOL

    @property
    def stability(self) -> str | None:
        """'stable' or 'unstable' in forward time; None without a unique cycle.

        The return map is taken along increasing angle, which runs backward
        in time when g < 0, so the verdict flips with the orientation.
        """
        if self.exists is not Existence.UNIQUE:
            return None
        contracting = self.A < 1.0
        return "stable" if contracting == (self.orientation > 0) else "unstable"

    @property
    def r0(self) -> float:
        """Crossing radius on the positive x-axis."""
        return float(self.r[0])

    @property
    def r_profile(self) -> list[tuple[float, float]]:
        return list(zip(self.theta.tolist(), self.r.tolist()))

    def require_cycle(self) -> CycleResult:
        if self.exists is Existence.CONTINUUM:
            raise ContinuumOfPeriodicOrbits("A = 1 and B = 0: every orbit is periodic")
        if self.exists is Existence.NONE:
            raise NoCycle(f"no positive periodic solution (a={self.a!r}, min margin={self.min_margin!r})")
        return self


def compute_cycle(system, cfg: QuadratureConfig | None = None, samples: int = 1024) -> CycleResult:
    """Constants ``A, B, a`` and the radius profile of the unique cycle, if any.

    ``system`` is a :class:`~cyclex.trig.PolarForm` or a
    :class:`~cyclex.trig.SystemSpec`.  The cycle exists when the return map
    is hyperbolic and ``rho(t; a)`` stays strictly positive over a turn.
    """
    pf = _as_polar(system)
    coeffs = bernoulli_coefficients(pf)
    sol = BernoulliSolution(coeffs, cfg, samples)
    A, B, logA = sol.A, sol.B, sol.log_A
    c = pf.bernoulli_exponent
    nan = np.full(sol.grid.shape, np.nan)
    common = dict(theta=sol.grid, log_multiplier=logA, orientation=coeffs.orientation, exponent=c)

    if abs(A - 1.0) <= A_ONE_TOL:
        cont_tol = max(A_ONE_TOL, 10 * sol.integral_error)
        exists = Existence.CONTINUUM if abs(B) <= cont_tol else Existence.NONE
        return CycleResult(A, B, math.nan, exists, r=nan, rho=nan, **common)

    a = A * B / (1.0 - A)
    a_err = abs(B) * A / (1.0 - A) ** 2 * sol.exponent_error + abs(A / (1.0 - A)) * sol.integral_error
    margin, _ = sol.min_margin(a)
    rho = sol.rho_on_grid(a)
    if a <= 0 or margin <= 0:
        return CycleResult(A, B, a, Existence.NONE, r=nan, rho=rho, a_error=a_err, min_margin=margin, **common)
    r = rho ** (1.0 / c)
    return CycleResult(A, B, a, Existence.UNIQUE, r=r, rho=rho, a_error=a_err, min_margin=margin, **common)


def log_multiplier(system, cfg: QuadratureConfig | None = None) -> float:
    """``log A = int_0^{2 pi} c f/g``."""
    coeffs = bernoulli_coefficients(_as_polar(system))
    return integrate(coeffs.rate, 0.0, TWO_PI, cfg)[0]


def _psi_integrand(s):
    return 2.0 / (1.0 + np.cos(s) ** 2)


def psi(theta, cfg: QuadratureConfig | None = None):
    """``2 int_0^theta ds / (1 + cos(s)**2)``; accepts scalars or arrays.

    This is the removable-singularity-free form of
    ``2 int (1 + tan^2) / (2 + tan^2)``.
    """
    cfg = cfg or QuadratureConfig()
    t = np.asarray(theta, dtype=float)
    flat = t.ravel()
    width = max(float(np.max(np.abs(flat))) if flat.size else 0.0, 1.0)
    vals, _ = _adaptive_panels(_psi_integrand, np.zeros_like(flat), flat, cfg, width)
    out = vals.reshape(t.shape)
    return float(out) if out.ndim == 0 else out


def write_profile_csv(result: CycleResult, fh) -> None:
    """Rows ``theta, r, rho`` with 15 significant digits."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(["theta", "r", "rho"])
    for t, r, rho in zip(result.theta, result.r, result.rho):
        w.writerow([format(float(t), ".15g"), format(float(r), ".15g"), format(float(rho), ".15g")])
