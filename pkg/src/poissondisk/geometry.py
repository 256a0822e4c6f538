"""Length, area and distortion functionals of a mapping of the disk.

A mapping handle is any object with a vectorised ``jets(Z)`` returning a
:class:`~poissondisk.solver.WirtingerJet`, an ``evaluate(Z)`` method and
the attributes ``closed`` (jets valid on the closed disk) and
``max_radius``.  Both :class:`~poissondisk.catalog.CatalogMap` and a
fitted :class:`~poissondisk.solver.PoissonSolution` qualify.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DegeneratePointError, DomainError, SenseReversalError
from .kernels import BoundaryAngle
from .quadrature import gauss_legendre, periodic_trapezoid, polar_grid

K_INFLATION = 1.01


def _radius(m, r):
    r = float(r)
    limit = 1.0 if getattr(m, "closed", False) else m.max_radius
    if not 0 < r <= limit:
        raise DomainError(f"radius {r} outside (0, {limit}] for this mapping")
    return r


def perimeter(m, r, nodes=256):
    """``l_f(r) = r int_0^{2 pi} |f_z - e^{-2 i theta} f_zbar| d theta``."""
    r = _radius(m, r)
    theta, w = periodic_trapezoid(nodes)
    j = m.jets(r * np.exp(1j * theta))
    return float(r * np.sum(w * np.abs(j.f_z - np.exp(-2j * theta) * j.f_zbar)))


def polyline_length(m, r, nodes=4096):
    """Length of the closed polyline through ``f(r e^{i theta_k})``."""
    r = _radius(m, r)
    theta, _ = periodic_trapezoid(nodes)
    v = m.evaluate(r * np.exp(1j * theta))
    return float(np.sum(np.abs(np.diff(np.append(v, v[0])))))


def default_radius_grid(m, levels=12):
    """``1 - 2**-k`` for ``k = 1..levels`` capped at the mapping's limit radius."""
    geo = 1.0 - 2.0 ** -np.arange(1, levels + 1)
    top = 1.0 if getattr(m, "closed", False) else m.max_radius
    return np.unique(np.append(geo[geo < top], top))


@dataclass
class LengthProfile:
    radii: np.ndarray
    values: np.ndarray
    sup_estimate: float
    monotone: bool
    increasing_at_end: bool


def perimeter_sup(m, r_grid=None, nodes=256):
    """Perimeter profile over ``r_grid`` and its maximum as ``l_f(1)``.

    Monotonicity is reported, never assumed; ``increasing_at_end`` flags a
    profile still rising at its last radius (the sup may be under-estimated).
    """
    radii = default_radius_grid(m) if r_grid is None else np.asarray(r_grid, dtype=float)
    if np.any(np.diff(radii) <= 0):
        raise ValueError("r_grid must be increasing")
    vals = np.array([perimeter(m, r, nodes) for r in radii])
    d = np.diff(vals)
    tol = 1e-12 * np.abs(vals).max(initial=1.0)
    monotone = bool(np.all(d >= -tol))
    rising = bool(d.size and d[-1] > tol and radii[-1] < 1.0)
    return LengthProfile(radii, vals, float(vals.max()), monotone, rising)


def radial_length(m, theta, r, nodes=64):
    """``l*_f(r, theta) = int_0^r |f_z + e^{-2 i theta} f_zbar| d rho``."""
    r = _radius(m, r)
    t = float(theta.theta if isinstance(theta, BoundaryAngle) else theta)
    rho, w = gauss_legendre(0.0, r, nodes)
    rho, w = rho[0] if rho.ndim > 1 else rho, w[0] if w.ndim > 1 else w
    j = m.jets(rho * np.exp(1j * t))
    return float(np.sum(w * np.abs(j.f_z + np.exp(-2j * t) * j.f_zbar)))


def radial_length_sup(m, n_theta=64, r=None, nodes=64):
    """``M = sup_theta l*_f(1, theta)`` over a uniform angle grid.

    ``l*_f(r, theta)`` is nondecreasing in ``r``, so the sup over ``r`` is
    taken at the mapping's limit radius.
    """
    r = (1.0 if getattr(m, "closed", False) else m.max_radius) if r is None else r
    r = _radius(m, r)
    theta, _ = periodic_trapezoid(n_theta)
    rho, w = gauss_legendre(0.0, r, nodes)
    rho, w = np.ravel(rho), np.ravel(w)
    pts = rho[None, :] * np.exp(1j * theta)[:, None]
    j = m.jets(pts)
    integrand = np.abs(j.f_z + np.exp(-2j * theta)[:, None] * j.f_zbar)
    vals = integrand @ w
    return float(vals.max())


def _disk_grid(r, n_radial, n_angular):
    rho, wr = gauss_legendre(0.0, r, n_radial)
    rho, wr = np.ravel(rho), np.ravel(wr)
    theta, wt = periodic_trapezoid(n_angular)
    pts = rho[:, None] * np.exp(1j * theta)[None, :]
    return pts, (rho * wr)[:, None] * wt[None, :]


def image_area(m, r=None, n_radial=64, n_angular=128):
    """``area f(D_r) = int_{D_r} J_f dA`` for a sense-preserving mapping."""
    r = (1.0 if getattr(m, "closed", False) else m.max_radius) if r is None else r
    r = _radius(m, r)
    pts, w = _disk_grid(r, n_radial, n_angular)
    J = m.jets(pts).jacobian
    if np.any(J <= 0):
        raise SenseReversalError("J_f <= 0 at a quadrature node")
    return float(np.sum(w * J))


@dataclass
class IsoperimetricResult:
    area: float
    bound: float
    holds: bool
    perimeter: float


def isoperimetric_check(m, tol=1e-8, profile=None):
    """``area f(D) <= l_f(1)^2 / (4 pi)``."""
    profile = perimeter_sup(m) if profile is None else profile
    area = image_area(m, profile.radii[-1])
    bound = profile.sup_estimate ** 2 / (4.0 * np.pi)
    return IsoperimetricResult(area, bound, bool(area <= bound * (1 + tol) + tol),
                               profile.sup_estimate)


def qc_constant(m, grid=None, degenerate_eps=1e-12):
    """Grid estimate of the quasiconformal constant ``max ||D_f|| / lambda(D_f)``.

    Also checks the equivalent form ``||D_f||^2 <= K |J_f|`` at every node.
    """
    if grid is None:
        top = 1.0 if getattr(m, "closed", False) else m.max_radius
        grid = polar_grid(32, 64, r_max=top)
    j = m.jets(grid)
    lam = j.min_stretch
    if np.any(lam < degenerate_eps):
        raise DegeneratePointError("lambda(D_f) vanishes on the grid")
    if np.any(j.jacobian <= 0):
        raise SenseReversalError("mapping is not sense-preserving on the grid")
    K = float(np.max(j.op_norm / lam))
    if np.any(j.op_norm ** 2 > K * np.abs(j.jacobian) * (1 + 1e-10)):
        raise ArithmeticError("||D_f||^2 <= K |J_f| failed for the computed K")
    return K


def effective_K(m, grid=None, inflation=K_INFLATION):
    """Exact ``K`` when the mapping knows it, else the inflated grid estimate."""
    exact = getattr(m, "exact_K", None)
    if exact is not None:
        return float(exact), "exact"
    return qc_constant(m, grid) * inflation, "grid"
