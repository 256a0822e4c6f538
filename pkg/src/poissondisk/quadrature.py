"""Quadrature rules on intervals, the circle and the unit disk.

All rules return ``(nodes, weights)`` so that an integral is
``np.sum(weights * F(nodes))``.
"""

from functools import lru_cache

import numpy as np
from numpy.polynomial.legendre import leggauss


@lru_cache(maxsize=64)
def _leggauss(n):
    x, w = leggauss(n)
    x.setflags(write=False)
    w.setflags(write=False)
    return x, w


def gauss_legendre(a, b, n):
    """Gauss-Legendre rule with ``n`` nodes on ``[a, b]``.

    ``a`` and ``b`` may be arrays; the nodes then gain a trailing axis.
    """
    x, w = _leggauss(int(n))
    a = np.asarray(a, dtype=float)[..., None]
    b = np.asarray(b, dtype=float)[..., None]
    half = 0.5 * (b - a)
    return half * x + (a + half), half * w


def periodic_trapezoid(n, start=0.0):
    """Uniform angles ``start + 2*pi*k/n`` and weights summing to ``2*pi``."""
    theta = start + 2.0 * np.pi * np.arange(n) / n
    return theta, np.full(n, 2.0 * np.pi / n)


def clustered_unit_interval(n):
    """Gauss-Legendre on [0, 1] after ``t = (1 - cos(pi*u))/2``.

    The substitution clusters nodes at both ends and removes inverse
    square-root endpoint singularities.
    """
    u, wu = gauss_legendre(0.0, 1.0, n)
    t = 0.5 * (1.0 - np.cos(np.pi * u))
    return t, wu * 0.5 * np.pi * np.sin(np.pi * u)


def distance_to_circle(z, phi):
    """Distance from interior ``z`` to the unit circle along direction ``phi``.

    Root of ``|z + R e^{i phi}| = 1`` with ``R > 0``.
    """
    z = np.asarray(z, dtype=complex)
    p = (np.conj(z) * np.exp(1j * phi)).real
    q = 1.0 - np.abs(z) ** 2
    # q / (p + sqrt(p^2 + q)) avoids cancellation when p > 0
    s = np.sqrt(p * p + q)
    return np.where(p > 0, q / np.where(p > 0, p + s, 1.0), s - p)


def centered_disk_rule(z, n_radial=64, n_angular=128):
    """Area rule for the unit disk in polar coordinates centred at ``z``.

    Integrands with an integrable singularity at ``z`` (logarithmic, or
    ``1/|w - z|`` times a bounded function of the direction) become smooth
    in the angle.  The radial variable is ``rho = R(phi) s**2``, which
    also absorbs the ``rho log rho`` behaviour at the centre.

    Parameters
    ----------
    z : complex or array of complex, shape (m,)
        Centres, all strictly inside the disk.

    Returns
    -------
    nodes : ndarray, shape (m, n_angular * n_radial) (or without m)
    weights : ndarray, same shape; ``dA`` weights.
    """
    z = np.asarray(z, dtype=complex)
    scalar = z.ndim == 0
    z = np.atleast_1d(z)
    phi, wphi = periodic_trapezoid(n_angular)
    s, ws = _leggauss(n_radial)
    s = 0.5 * (s + 1.0)
    ws = 0.5 * ws
    e = np.exp(1j * phi)
    R = distance_to_circle(z[:, None], phi[None, :])  # (m, A)
    rho = R[:, :, None] * (s * s)[None, None, :]  # (m, A, S)
    # dA = rho drho dphi, drho = 2 R s ds
    w = rho * (2.0 * R[:, :, None] * s[None, None, :]) * ws * wphi[None, :, None]
    nodes = z[:, None, None] + rho * e[None, :, None]
    nodes = nodes.reshape(len(z), -1)
    w = w.reshape(len(z), -1)
    if scalar:
        return nodes[0], w[0]
    return nodes, w


def local_disk_rule(center, radius, n_radial=32, n_angular=64):
    """Polar rule on the disk ``D(center, radius)`` centred at ``center``.

    Uses Gauss-Legendre in the radius and the trapezoid rule in the angle.
    """
    rho, wr = gauss_legendre(0.0, radius, n_radial)
    phi, wphi = periodic_trapezoid(n_angular)
    center = np.asarray(center, dtype=complex)
    nodes = center[..., None, None] + rho[..., None, :] * np.exp(1j * phi)[:, None]
    w = (rho * wr)[..., None, :] * wphi[:, None]
    shape = center.shape + (n_angular * n_radial,)
    return nodes.reshape(shape), np.broadcast_to(w, nodes.shape).reshape(shape)


def polar_grid(n_radii=32, n_angles=64, r_max=1.0, include_center=True, boundary_levels=12):
    """Evaluation grid of the disk refined toward the circle.

    Radii are a uniform grid on ``[0, r_max)`` merged with ``1 - 2**-k``
    (``k = 1..boundary_levels``) below ``r_max``, plus ``r_max`` itself.
    """
    radii = np.linspace(0.0, r_max, n_radii, endpoint=False)
    geo = 1.0 - 2.0 ** -np.arange(1, boundary_levels + 1)
    radii = np.unique(np.concatenate([radii, geo[geo < r_max], [r_max]]))
    if not include_center:
        radii = radii[radii > 0]
    theta, _ = periodic_trapezoid(n_angles)
    pts = (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()
    if include_center and radii[0] == 0:
        pts = np.concatenate([[0j], pts[n_angles:]])
    return pts
