"""Bloch, Lipschitz and mean-oscillation functionals of mappings of the disk."""

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import qmc

from ..exceptions import DomainError
from ..majorant import Majorant, linear_majorant
from ..quadrature import clustered_unit_interval, gauss_legendre, local_disk_rule, polar_grid


@dataclass
class BlochParams:
    """Weight parameters: majorant ``omega``, exponent ``alpha`` and corollary exponent ``s``."""

    omega: Majorant = field(default_factory=linear_majorant)
    alpha: float = 1.0
    s: float = 0.5

    def check_definition(self):
        if not self.alpha > 0:
            raise DomainError(f"alpha must be positive, got {self.alpha}")

    def check_theorem2(self):
        if not 1.0 <= self.alpha < 2.0:
            raise DomainError(f"alpha must lie in [1, 2), got {self.alpha}")

    def check_corollary(self):
        if not 0.0 <= self.s < 1.0:
            raise DomainError(f"s must lie in [0, 1), got {self.s}")
        if not 1.0 <= self.alpha <= self.s + 1.0:
            raise DomainError(f"alpha must lie in [1, s + 1], got {self.alpha}")


def limit_radius(m):
    return 1.0 if getattr(m, "closed", False) else m.max_radius


def interior_grid(m, n_radii=32, n_angles=64, levels=12):
    """Polar grid refined toward the circle, kept strictly inside the disk."""
    top = min(1.0 - 2.0 ** -levels, limit_radius(m))
    return polar_grid(n_radii, n_angles, r_max=top, boundary_levels=levels)


def bloch_norm(m, p=None, grid=None):
    """``|f(0)| + sup ||D_f(z)|| omega(d(z)**alpha)`` over the grid."""
    p = BlochParams() if p is None else p
    p.check_definition()
    grid = interior_grid(m) if grid is None else np.asarray(grid, dtype=complex)
    j = m.jets(grid)
    d = 1.0 - np.abs(grid)
    weighted = j.op_norm * p.omega(d ** p.alpha)
    f0 = abs(complex(np.ravel(m.evaluate(np.array([0j])))[0]))
    return float(f0 + weighted.max())


def bloch_constant(m, p, grid=None):
    """``sup ||D_f(z)|| omega(d(z)**alpha)`` (the norm without ``|f(0)|``)."""
    grid = interior_grid(m) if grid is None else np.asarray(grid, dtype=complex)
    j = m.jets(grid)
    return float(np.max(j.op_norm * p.omega((1.0 - np.abs(grid)) ** p.alpha)))


def _mean_oscillation_many(m, z, r, n_radial=32, n_angular=64):
    z = np.asarray(z, dtype=complex).ravel()
    r = np.broadcast_to(np.asarray(r, dtype=float), z.shape)
    nodes, w = local_disk_rule(z, r, n_radial, n_angular)
    fz = np.asarray(m.evaluate(z))
    fv = np.asarray(m.evaluate(nodes.ravel())).reshape(nodes.shape)
    return np.sum(w * np.abs(fv - fz[:, None]), axis=1) / (np.pi * r * r)


def mean_oscillation(m, z, r, n_radial=32, n_angular=64):
    """``(1/|D(z,r)|) int_{D(z,r)} |f(zeta) - f(z)| dA(zeta)``."""
    z = complex(z)
    d = 1.0 - abs(z)
    if not 0 < r <= d * (1 + 1e-12):
        raise DomainError(f"need 0 < r <= d(z) = {d}, got r = {r}")
    return float(_mean_oscillation_many(m, [z], [min(r, d)], n_radial, n_angular)[0])


def oscillation_constant(m, p, grid, fractions=(0.25, 0.5, 1.0), n_radial=32, n_angular=64):
    """``sup mean_oscillation(z, r) * omega(r**alpha) / r`` over grid points and
    ``r = fraction * d(z)``."""
    grid = np.asarray(grid, dtype=complex).ravel()
    d = 1.0 - np.abs(grid)
    zz = np.concatenate([grid for _ in fractions])
    rr = np.concatenate([f * d for f in fractions])
    osc = _mean_oscillation_many(m, zz, rr, n_radial, n_angular)
    return float(np.max(osc * p.omega(rr ** p.alpha) / rr)), zz, rr, osc


def pair_samples(n=10_000, seed=0, r_max=1.0 - 2.0 ** -12, n_adversarial=None):
    """Quasi-random pairs in the disk plus near-boundary and near-diagonal pairs.

    Returns two complex arrays ``(z1, z2)`` with ``z1 != z2``.
    """
    rng = np.random.default_rng(seed)
    u = qmc.Halton(d=4, scramble=True, seed=rng).random(n)
    z1 = r_max * np.sqrt(u[:, 0]) * np.exp(2j * np.pi * u[:, 1])
    z2 = r_max * np.sqrt(u[:, 2]) * np.exp(2j * np.pi * u[:, 3])
    k = n // 10 if n_adversarial is None else n_adversarial
    extra = []
    levels = np.arange(1, 13)
    # near the circle, both points at comparable depth
    rad = 1.0 - 2.0 ** -rng.choice(levels, size=(2, k))
    ang = rng.uniform(0, 2 * np.pi, size=k)
    spread = rng.choice([1e-3, 1e-2, 1e-1, 1.0], size=k)
    extra.append((rad[0] * np.exp(1j * ang), rad[1] * np.exp(1j * (ang + spread))))
    # near-diagonal pairs everywhere, including at the centre
    base = np.sqrt(rng.uniform(0, 1, size=k)) * np.exp(2j * np.pi * rng.uniform(size=k))
    base[: k // 10] *= 1e-6
    step = 10.0 ** -rng.integers(2, 7, size=k) * np.exp(2j * np.pi * rng.uniform(size=k))
    extra.append((base, base + step))
    a = np.concatenate([z1] + [e[0] for e in extra])
    b = np.concatenate([z2] + [e[1] for e in extra])
    # keep inside the admissible radius
    for arr in (a, b):
        big = np.abs(arr) > r_max
        arr[big] *= r_max / np.abs(arr[big])
    keep = np.abs(a - b) > 1e-12
    return a[keep], b[keep]


def lipschitz_constant(m, omega, pairs):
    """``sup |f(z) - f(w)| / omega(|z - w|)`` over sampled pairs."""
    z1, z2 = pairs
    df = np.abs(np.asarray(m.evaluate(z1)) - np.asarray(m.evaluate(z2)))
    return float(np.max(df / omega(np.abs(z1 - z2))))


def weighted_lipschitz(m, p, pairs):
    """``sup |f(z) - f(w)| omega(d(z)**s d(w)**(alpha - s)) / |z - w|`` over pairs."""
    p.check_corollary()
    z1, z2 = pairs
    df = np.abs(np.asarray(m.evaluate(z1)) - np.asarray(m.evaluate(z2)))
    d1, d2 = 1.0 - np.abs(z1), 1.0 - np.abs(z2)
    weight = p.omega(d1 ** p.s * d2 ** (p.alpha - p.s))
    return float(np.max(df * weight / np.abs(z1 - z2)))


def segment_integrals(m, omega, pairs, nodes=32):
    """Per pair: ``int ||D_f|| ds`` and ``int omega(d)/d ds`` along ``[z1, z2]``.

    Nodes cluster at both endpoints so that ``omega(d)/d`` near the circle
    stays well resolved.
    """
    z1, z2 = pairs
    t, wt = clustered_unit_interval(nodes)
    t, wt = np.ravel(t), np.ravel(wt)
    seg = z1[:, None] + t[None, :] * (z2 - z1)[:, None]
    length = np.abs(z2 - z1)
    jets = m.jets(seg)
    path = (jets.op_norm @ wt) * length
    d = 1.0 - np.abs(seg)
    curve = ((omega(d) / d) @ wt) * length
    return path, curve, seg, jets


def curve_condition_check(omega, pairs, nodes=32):
    """Empirical ``C`` with ``int_[z,w] omega(d)/d ds <= C omega(|z - w|)`` on segments."""
    z1, z2 = pairs
    t, wt = clustered_unit_interval(nodes)
    t, wt = np.ravel(t), np.ravel(wt)
    seg = z1[:, None] + t[None, :] * (z2 - z1)[:, None]
    d = 1.0 - np.abs(seg)
    curve = ((omega(d) / d) @ wt) * np.abs(z2 - z1)
    return float(np.max(curve / omega(np.abs(z1 - z2))))


def radial_profile(phi, r_grid, theta_grid, nodes=32):
    """``A(r) = sup_theta int_0^r phi(rho e^{i theta}) d rho`` for each ``r``."""
    r_grid = np.asarray(r_grid, dtype=float)
    theta_grid = np.asarray(theta_grid, dtype=float)
    rho, w = gauss_legendre(0.0, r_grid, nodes)  # (R, n)
    pts = rho[:, None, :] * np.exp(1j * theta_grid)[None, :, None]
    vals = np.asarray(phi(pts), dtype=float)
    integrals = np.sum(vals * w[:, None, :], axis=2)  # (R, T)
    return integrals.max(axis=1)
