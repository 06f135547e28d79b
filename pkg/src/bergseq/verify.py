"""Identity checks that exercise the whole stack end to end.

The two-sided balance for a weighted log-modulus ties the circle means,
the zero-counting terms, and the curvature quadrature to one scalar
residual; a small residual certifies all three at once.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import DomainViolation
from .geometry import mobius_involution, pseudo_dist
from .quadrature import (
    DEFAULT_RULE,
    QuadratureRule,
    circle_mean,
    disk_log_integral,
    polar_integral,
)
from .weights import WeightModel, log_mean_disk

_BOUNDARY_GUARD = 1e-6


@dataclass(frozen=True)
class BlaschkeSpec:
    """f = (product of Blaschke factors over zeros) * outer polynomial.

    The outer polynomial must not vanish on the closed disk; this is
    checked up front via its roots, because a hidden zero would silently
    unbalance the two sides of every identity downstream.
    """

    zeros: tuple = ()
    outer_coeffs: tuple = (1.0,)  # ascending powers

    def __post_init__(self):
        zs = tuple(complex(a) for a in self.zeros)
        object.__setattr__(self, "zeros", zs)
        for a in zs:
            if abs(a) >= 1.0:
                raise DomainViolation(f"zero {a} outside the open disk")
        cs = tuple(complex(c) for c in self.outer_coeffs)
        object.__setattr__(self, "outer_coeffs", cs)
        if all(c == 0 for c in cs):
            raise DomainViolation("outer polynomial is identically zero")
        if len(cs) > 1:
            roots = np.roots(np.asarray(cs[::-1], dtype=complex))
            if np.any(np.abs(roots) <= 1.0 + 1e-12):
                raise DomainViolation("outer polynomial vanishes on the closed disk")

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        val = np.polyval(np.asarray(self.outer_coeffs[::-1], dtype=complex), z)
        for a in self.zeros:
            if a == 0:
                val = val * z
            else:
                val = val * (abs(a) / a) * (a - z) / (1.0 - np.conjugate(a) * z)
        return val

    def log_abs(self, z):
        with np.errstate(divide="ignore"):
            return np.log(np.abs(self(z)))


def _phi_and_ratio(weight: Optional[WeightModel]):
    if weight is None:
        zero = lambda w: np.zeros(np.shape(w))
        return zero, zero
    return weight.phi, weight.lap_poincare_ratio


def poisson_jensen_residual(
    f: BlaschkeSpec,
    psi: Optional[WeightModel],
    z: complex,
    r: float,
    rule: QuadratureRule = DEFAULT_RULE,
    n_theta: int = 2048,
):
    """|LHS - RHS| of the weighted two-sided balance on D_r(z).

    LHS: circle mean of 2 log|f| - psi over the pseudohyperbolic circle
    of radius r about z.  RHS: the center value, plus log(r^2/rho_j^2)
    per zero strictly inside, minus the log-kernel curvature mean of psi
    pulled back to D_r(0).  psi = None means the zero weight.
    """
    if not 0.0 < r < 1.0:
        raise DomainViolation(f"radius must lie in (0, 1), got {r}")
    z = complex(z)
    phi, ratio_fn = _phi_and_ratio(psi)

    rhos = [pseudo_dist(a, z) for a in f.zeros]
    for a, rho in zip(f.zeros, rhos):
        if abs(rho - r) <= _BOUNDARY_GUARD:
            raise DomainViolation(f"zero {a} sits on the integration circle")
        if rho == 0.0:
            raise DomainViolation("evaluation center is a zero of f")

    def u(w):
        return 2.0 * f.log_abs(w) - np.asarray(phi(w), dtype=float)

    lhs = circle_mean(z, r, u, n_theta)

    center = float(u(np.asarray([z]))[0])
    zero_term = sum(math.log(r * r / (rho * rho)) for rho in rhos if rho < r)

    g = lambda zeta: np.asarray(ratio_fn(mobius_involution(z, zeta)), dtype=float)
    curv = float(disk_log_integral(r, g, "hyperbolic", rule)) / (2.0 * math.pi)

    rhs = center + zero_term - curv
    return abs(lhs - rhs)


def bergman_inequality_margin(
    coeffs: Sequence,
    weight: Optional[WeightModel],
    z: complex,
    r: float,
    rule: QuadratureRule = DEFAULT_RULE,
):
    """|f(z)|^2 e^{-phi(z)} over the weighted hyperbolic mass of D_r(z).

    f is the polynomial with the given ascending coefficients.  The
    sub-mean-value inequality bounds this ratio uniformly in (f, z) for
    weights with two-sided curvature control; f identically zero gives 0.
    """
    if not 0.0 < r < 1.0:
        raise DomainViolation(f"radius must lie in (0, 1), got {r}")
    z = complex(z)
    cs = np.asarray(list(coeffs)[::-1], dtype=complex)
    phi, _ = _phi_and_ratio(weight)

    def g(zeta):
        w = mobius_involution(z, zeta)
        return np.abs(np.polyval(cs, w)) ** 2 * np.exp(-np.asarray(phi(w), dtype=float))

    hyper = lambda rho: 1.0 / (1.0 - rho * rho) ** 2
    mass = float(polar_integral(g, 0.0, 0.0, r, hyper, None, rule))
    point = abs(np.polyval(cs, z)) ** 2 * math.exp(-float(np.atleast_1d(phi(np.asarray([z])))[0]))
    if point == 0.0:
        return 0.0
    if mass <= 0:
        raise DomainViolation("degenerate weighted mass")
    return point / mass


def mean_comparison_margin(
    weight: WeightModel,
    r: float,
    grid,
    rule: QuadratureRule = DEFAULT_RULE,
):
    """max over the grid of |phi(z) - (log-kernel mean of phi on D_r(z))|.

    Vanishes to quadrature accuracy for harmonic phi; for curvature-
    bounded weights it stabilizes under grid refinement, which is the
    practical form of the pointwise weight-comparison bound.
    """
    if not 0.0 < r < 1.0:
        raise DomainViolation(f"radius must lie in (0, 1), got {r}")
    pts = np.atleast_1d(np.asarray(grid, dtype=complex))
    worst = 0.0
    for z in pts:
        z = complex(z)
        mean = log_mean_disk(weight.phi, r, z, rule)
        here = float(np.atleast_1d(weight.phi(np.asarray([z])))[0])
        worst = max(worst, abs(here - mean))
    return worst
