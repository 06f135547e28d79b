"""Weight models, logarithmic means, and sequence potentials.

A weight is a scalar function phi whose exponential e^{-phi} dampens the
integration measure.  The model carries phi together with the density of
its Laplacian against the hyperbolic area form (and, on the punctured
disk, against the cylindrical form), which is what all density quotients
consume.

The potentials sigma and lambda of a finite sequence are computed by the
Jensen reduction: the angular mean of log|w - a| on a circle of radius
rho about the center is log max(rho, |a - center|), so the 2-D kernel
integral collapses to a radial quadrature with kink breakpoints at the
point distances.  This keeps the bound sigma <= 1 sharp to quadrature
rounding even at points where it is attained.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .errors import DomainViolation, WindowViolation
from .geometry import Domain, TWO_PI, lift_value, mobius_involution
from .quadrature import (
    DEFAULT_RULE,
    QuadratureRule,
    c_r_cyl,
    c_r_disk,
    polar_integral,
    radial_log_mean,
)


@dataclass(frozen=True)
class WeightModel:
    """Evaluatable weight with its curvature densities.

    phi maps complex arrays to values (may be -inf at log poles).
    lap_poincare_ratio is Delta phi / omega_P; lap_cyl_ratio is
    Delta phi / omega_c and only meaningful on the punctured disk.
    """

    phi: Callable
    lap_poincare_ratio: Callable
    domain: Domain
    lap_cyl_ratio: Optional[Callable] = None
    family: str = "custom"
    params: dict = field(default_factory=dict)
    constant_poincare_ratio: Optional[float] = None
    hypothesis_flags: dict = field(default_factory=dict)


def _log_L(z):
    """log(1/|z|^2), vectorized."""
    return np.log(1.0 / np.abs(z) ** 2)


def standard_disk(s: float) -> WeightModel:
    """phi = s log 1/(1-|z|^2); Delta phi = 2s omega_P exactly."""
    if s <= 1.0:
        raise ValueError(f"standard disk weight needs s > 1, got {s}")
    return WeightModel(
        phi=lambda z: -s * np.log1p(-np.abs(z) ** 2),
        lap_poincare_ratio=lambda z: np.full_like(np.abs(z), 2.0 * s, dtype=float),
        domain=Domain.DISK,
        family="standard-disk",
        params={"s": s},
        constant_poincare_ratio=2.0 * s,
        hypothesis_flags={"border_lower": s > 1.0},
    )


def standard_puncture(s: float, t: float) -> WeightModel:
    """phi = s log 1/(1-|z|^2) - t log log(1/|z|^2) on the punctured disk.

    Needs s > 1 (border curvature) and t >= 2 (subharmonicity of the
    shifted weight near the puncture).  The strict cylindrical lower
    bound near the puncture fails for every (s, t) in this family, which
    the hypothesis flags record; puncture-side density quotients for it
    are reported but degenerate as the center approaches the puncture.
    """
    if s <= 1.0:
        raise ValueError(f"standard puncture weight needs s > 1, got {s}")
    if t < 2.0:
        raise ValueError(f"shifted weight is superharmonic at the puncture for t < 2, got {t}")

    def phi(z):
        return -s * np.log1p(-np.abs(z) ** 2) - t * np.log(_log_L(z))

    def ratio_p(z):
        r2 = np.abs(z) ** 2
        return 2.0 * t + 2.0 * s * r2 * _log_L(z) ** 2 / (1.0 - r2) ** 2

    def ratio_c(z):
        r2 = np.abs(z) ** 2
        return 2.0 * s * r2 / (1.0 - r2) ** 2 + 2.0 * t / _log_L(z) ** 2

    return WeightModel(
        phi=phi,
        lap_poincare_ratio=ratio_p,
        domain=Domain.PUNCTURED_DISK,
        lap_cyl_ratio=ratio_c,
        family="standard-puncture",
        params={"s": s, "t": t},
        hypothesis_flags={
            "border_lower": True,
            "puncture_weak": t >= 2.0,
            "puncture_strict": False,
        },
    )


def custom_weight(
    phi,
    lap_poincare_ratio,
    domain: Domain,
    lap_cyl_ratio=None,
    check_tol: float = 1e-8,
    hypothesis_flags: Optional[dict] = None,
) -> WeightModel:
    """Wrap user callables; cross-checks the two Laplacian densities.

    On the punctured disk the densities must satisfy
    ratio_cyl = ratio_poincare / (log 1/|z|^2)^2 wherever both are
    defined; checked on a radial sample grid at construction.
    """
    if domain is Domain.PUNCTURED_DISK and lap_cyl_ratio is not None:
        zs = np.exp(np.linspace(-8.0, -0.15, 40)) * np.exp(0.7j)
        got = np.asarray(lap_cyl_ratio(zs), dtype=float)
        want = np.asarray(lap_poincare_ratio(zs), dtype=float) / _log_L(zs) ** 2
        scale = np.maximum(np.abs(want), 1.0)
        if np.max(np.abs(got - want) / scale) > check_tol:
            raise ValueError("inconsistent Laplacian densities between omega_P and omega_c")
    return WeightModel(
        phi=phi,
        lap_poincare_ratio=lap_poincare_ratio,
        domain=domain,
        lap_cyl_ratio=lap_cyl_ratio,
        family="custom",
        hypothesis_flags=dict(hypothesis_flags or {}),
    )


def shifted_cyl_weight(weight: WeightModel):
    """psi = phi + 2 log log(1/|z|^2) with Delta psi = Delta phi - 4 omega_P.

    Returns (psi, ratio_cyl_of_psi), the cylindrical-side pair used by
    the puncture density.
    """
    if weight.domain is not Domain.PUNCTURED_DISK:
        raise DomainViolation("cylindrical shift only applies on the punctured disk")
    if weight.lap_cyl_ratio is None:
        raise DomainViolation("weight lacks a cylindrical Laplacian density")

    def psi(z):
        return weight.phi(z) + 2.0 * np.log(_log_L(z))

    def ratio(z):
        return weight.lap_cyl_ratio(z) - 4.0 / _log_L(z) ** 2

    return psi, ratio


def _phi_fn(phi):
    return phi.phi if isinstance(phi, WeightModel) else phi


# ---------------------------------------------------------------------------
# Logarithmic means.

def log_mean_disk(phi, r, z, rule: QuadratureRule = DEFAULT_RULE):
    """Normalized log-kernel mean of phi over the pseudohyperbolic disk D_r(z).

    Reproduces constants exactly (same-node normalizer) and harmonic
    functions to angular-rule accuracy.
    """
    f = _phi_fn(phi)
    kernel = lambda rho: np.log(r * r / (rho * rho))
    weight = lambda rho: 1.0 / (1.0 - rho * rho) ** 2
    pulled = lambda zeta: f(mobius_involution(z, zeta))
    return float(polar_integral(pulled, 0.0, 0.0, r, weight, kernel, rule, normalized=True))


def cutoff(x, c):
    """Smooth increasing cutoff: 0 on [0, c/2], 1 on [c, 1]."""
    t = np.clip((np.asarray(x, dtype=float) - 0.5 * c) / (0.5 * c), 0.0, 1.0)
    return t * t * t * (t * (6.0 * t - 15.0) + 10.0)


_TRUNC_RULE = QuadratureRule(rel_tol=1e-5)


def truncated_log_mean(phi, r, c, z, rule: QuadratureRule = _TRUNC_RULE):
    """Log-kernel mean of the weight truncated to |zeta| >= c/2.

    Agrees with log_mean_disk up to a bounded error wherever |z| > c;
    the cutoff makes singular-at-0 weights integrable.  The cutoff is
    only C^2, so the default convergence tolerance is looser here than
    for smooth integrands.
    """
    if not 0.0 < c < 1.0:
        raise DomainViolation(f"cutoff radius must lie in (0, 1), got {c}")
    f = _phi_fn(phi)

    def g(zeta):
        w = mobius_involution(z, zeta)
        return cutoff(np.abs(w), c) * f(w)

    kernel = lambda rho: np.log(r * r / (rho * rho))
    weight = lambda rho: 1.0 / (1.0 - rho * rho) ** 2
    return float(polar_integral(g, 0.0, 0.0, r, weight, kernel, rule, normalized=True))


def extended_covered_mean(psi, eps, r, z, rule: QuadratureRule = DEFAULT_RULE):
    """Covered mean of a punctured-disk function, extended by reflection.

    The function is lifted through the exponential cover to the upper
    half plane, shifted into the interior by eps, reflected across the
    real axis, and averaged with the Euclidean log kernel over a disk of
    radius r about the lift of z.  2 pi periodicity of the lift makes the
    projected value well defined.
    """
    if eps <= 0 or r <= 0:
        raise DomainViolation("eps and r must be positive")
    f = _phi_fn(psi)
    q = complex(lift_value(z))

    def integrand(zeta):
        w = q - 1j * eps - zeta
        w = np.where(w.imag > 0.0, w, np.conjugate(w))
        return f(np.exp(1j * (w + 1j * eps)))

    kernel = lambda rho: np.log(r * r / (rho * rho))
    weight = lambda rho: np.ones_like(rho)
    return float(polar_integral(integrand, 0.0, 0.0, r, weight, kernel, rule, normalized=True))


# ---------------------------------------------------------------------------
# Sequence potentials (border side).

def border_potential(points, r, z, harmonic=None, rule: QuadratureRule = DEFAULT_RULE):
    """(sigma, lambda) of a border-supported finite sequence at z.

    The zero generator is the finite Blaschke product over the points,
    optionally multiplied by exp(a zeta + b) with harmonic = (a, b); the
    returned sigma is provably independent of that factor.  lambda is the
    kernel-weighted annulus mean of log|T|^2 over 1/2 < |zeta| < r in the
    phi_z coordinates; the angular integral is Jensen-exact and only the
    radial mean is quadrature.
    """
    if not 0.5 < r < 1.0:
        raise DomainViolation(f"border potential needs r in (1/2, 1), got {r}")
    d = np.abs(mobius_involution(z, np.asarray(points, dtype=complex))) if len(points) else np.empty(0)
    harm = 0.0
    if harmonic is not None:
        a, b = harmonic
        harm = 2.0 * (a * z + b).real

    if d.size:
        weight = lambda rho: 1.0 / (1.0 - rho * rho) ** 2
        kernel = lambda rho: np.log(r * r / (rho * rho))
        g = lambda rho: 2.0 * np.log(np.maximum(rho[:, None], d[None, :]))
        means = radial_log_mean(g, 0.5, r, weight, kernel, rule, breaks=d)
        lam = float(np.sum(means)) + harm
        if np.any(d == 0.0):
            return 0.0, lam
        log_t2 = float(2.0 * np.sum(np.log(d))) + harm
    else:
        lam = harm
        log_t2 = harm
    return float(math.exp(log_t2 - lam)), lam


def border_density_form(points, r, z):
    """Curvature density of the border potential, as a closed sum.

    Upsilon / (2 omega_P) at z equals (2 pi / c_r) times the sum of
    log(1/rho^2) over the points whose phi_z image lands in the annulus
    1/2 < rho < r.
    """
    if len(points) == 0:
        return 0.0
    d = np.abs(mobius_involution(z, np.asarray(points, dtype=complex)))
    sel = d[(d > 0.5) & (d < r)]
    return float((TWO_PI / c_r_disk(r)) * np.sum(np.log(1.0 / sel**2)))


# ---------------------------------------------------------------------------
# Sequence potentials (puncture side).

def lifted_translates(points, q, radius):
    """All preimages of the points under the cover within `radius` of q."""
    out = []
    for w in np.atleast_1d(lift_value(np.asarray(points, dtype=complex))):
        k0 = round((q.real - w.real) / TWO_PI)
        span = int(radius / TWO_PI) + 2
        for k in range(k0 - span, k0 + span + 1):
            t = w + TWO_PI * k
            if abs(t - q) <= radius:
                out.append(t)
    return np.asarray(out, dtype=complex)


def puncture_potential(points, r, z, harmonic=None, rule: QuadratureRule = DEFAULT_RULE):
    """(sigma, lambda) of a puncture-supported sequence, via the cover.

    The generator is the product of (w - gamma) over every lift of the
    sequence within Euclidean distance r + 2 pi of the lift of z; lambda
    is the Euclidean log-kernel annulus mean (inner radius 1, outer r) of
    log|T|^2, Jensen-reduced as on the border side.  2 pi periodicity of
    the translate set makes the result independent of the chosen lift.
    """
    if r <= 1.0:
        raise DomainViolation(f"puncture potential needs r > 1, got {r}")
    points = np.asarray(points, dtype=complex)
    if points.size and np.max(np.abs(points)) >= math.exp(-r):
        raise WindowViolation(f"sequence must satisfy |gamma| < e^-r = {math.exp(-r):.3g}")
    q = complex(lift_value(z))
    if q.imag <= r:
        raise WindowViolation(f"lift of z has Im = {q.imag:.3g} <= r = {r}")
    trans = lifted_translates(points, q, r + TWO_PI) if points.size else np.empty(0, dtype=complex)
    d = np.abs(trans - q)
    harm = 0.0
    if harmonic is not None:
        a, b = harmonic
        harm = 2.0 * (a * q + b).real

    if d.size:
        weight = lambda rho: np.ones_like(rho)
        kernel = lambda rho: np.log(r * r / (rho * rho))
        g = lambda rho: 2.0 * np.log(np.maximum(rho[:, None], d[None, :]))
        means = radial_log_mean(g, 1.0, r, weight, kernel, rule, breaks=d)
        lam = float(np.sum(means)) + harm
        if np.any(d == 0.0):
            return 0.0, lam
        log_t2 = float(2.0 * np.sum(np.log(d))) + harm
    else:
        lam = harm
        log_t2 = harm
    return float(math.exp(log_t2 - lam)), lam


def puncture_density_form(points, r, z=None, q=None):
    """Curvature density of the puncture potential at a lift q.

    (1/c_r) sum of log(r^2/|gamma - q|^2) over lifted sequence points in
    the open annulus 1 < |gamma - q| < r; 2 pi periodicity of the
    translate set makes the value independent of the choice of lift.
    """
    if q is None:
        if z is None:
            raise DomainViolation("need either z or a lift q")
        q = complex(lift_value(z))
    if len(points) == 0:
        return 0.0
    trans = lifted_translates(points, q, r)
    d = np.abs(trans - q)
    sel = d[(d > 1.0) & (d < r)]
    return float(np.sum(np.log(r * r / sel**2)) / c_r_cyl(r))
