"""Quadrature solution ``f = P[psi] - G[g]`` of Poisson's equation on the disk.

:class:`PoissonSolution` follows the scikit-learn estimator protocol:
``fit(psi, g)`` stores the Dirichlet datum and the source, ``predict(Z)``
returns ``f(Z)`` and ``transform(Z)`` returns Wirtinger jets.
"""

import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
from sklearn.base import BaseEstimator

from . import kernels
from .exceptions import DomainError, QuadratureConvergenceError, ResolutionWarning
from .quadrature import centered_disk_rule, periodic_trapezoid
from .validation import check_disk_points, check_is_fitted, check_power_of_two

_CHUNK = 2_000_000  # kernel evaluations per vectorised block
WARN_FACTOR = 10.0  # ResolutionWarning when 1 - |z| < WARN_FACTOR / N
MAX_RADIUS_FACTOR = 32.0


@dataclass(frozen=True)
class BoundaryData:
    """Samples ``psi(e^{i theta_k})`` at ``theta_k = 2 pi k / N``."""

    samples: np.ndarray

    def __post_init__(self):
        s = np.asarray(self.samples, dtype=complex)
        check_power_of_two(s.size, minimum=16, name="N")
        if not np.all(np.isfinite(s)):
            raise ValueError("boundary samples must be finite")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def N(self):
        return self.samples.size

    @property
    def theta(self):
        return periodic_trapezoid(self.N)[0]

    @classmethod
    def from_function(cls, psi, n=2048):
        """Sample ``psi`` (a function of the boundary point ``e^{i theta}``)."""
        check_power_of_two(n, minimum=16, name="N")
        pts = np.exp(1j * periodic_trapezoid(n)[0])
        return cls(np.broadcast_to(np.asarray(psi(pts), dtype=complex), pts.shape).copy())


def _sup_grid(resolution):
    r = np.linspace(0.0, 1.0, resolution)
    t = 2.0 * np.pi * np.arange(resolution) / resolution
    return r[:, None] * np.exp(1j * t)[None, :]


@dataclass(frozen=True)
class SourceField:
    """Right-hand side ``g`` of ``Laplacian f = g`` with an estimated sup norm.

    Use :meth:`from_callable` so that ``sup_norm`` is filled in.
    """

    eval: Callable
    sup_norm: float
    grid_resolution: int = 201
    is_zero: bool = False

    def __call__(self, w):
        w = np.asarray(w, dtype=complex)
        return np.broadcast_to(np.asarray(self.eval(w), dtype=complex), w.shape)

    @classmethod
    def from_callable(cls, g, resolution=201, safety=1.01):
        """Wrap ``g`` and estimate ``||g||_inf``.

        The estimate is the max of ``|g|`` on a ``resolution x resolution``
        polar grid of the closed disk, inflated by ``safety``.
        """
        grid = _sup_grid(resolution)
        vals = np.abs(np.broadcast_to(np.asarray(g(grid), dtype=complex), grid.shape))
        if not np.all(np.isfinite(vals)):
            raise ValueError("source is not finite on the closed disk")
        sup = float(vals.max())
        if sup > 0 and not _looks_continuous(vals, sup):
            warnings.warn("source shows jumps on the estimation grid; "
                          "results assume a continuous g", RuntimeWarning, stacklevel=2)
        return cls(g, sup * safety, resolution, is_zero=sup == 0.0)

    @classmethod
    def zero(cls):
        return cls(lambda w: np.zeros(np.shape(w), dtype=complex), 0.0, 0, is_zero=True)


def _looks_continuous(vals, sup, ratio=0.25):
    # adjacent samples 1/200 apart should not differ by a quarter of the sup
    jr = np.abs(np.diff(vals, axis=0)).max()
    jt = np.abs(np.diff(vals[1:], axis=1)).max()
    return max(jr, jt) <= ratio * sup


@dataclass(frozen=True)
class WirtingerJet:
    """Value and Wirtinger derivatives of a mapping; fields may be arrays."""

    f: complex
    f_z: complex
    f_zbar: complex

    @property
    def op_norm(self):
        """``||D_f|| = |f_z| + |f_zbar|``."""
        return np.abs(self.f_z) + np.abs(self.f_zbar)

    @property
    def min_stretch(self):
        """``lambda(D_f) = ||f_z| - |f_zbar||``."""
        return np.abs(np.abs(self.f_z) - np.abs(self.f_zbar))

    @property
    def jacobian(self):
        """``J_f = |f_z|^2 - |f_zbar|^2``."""
        return np.abs(self.f_z) ** 2 - np.abs(self.f_zbar) ** 2

    def __getitem__(self, idx):
        return WirtingerJet(np.asarray(self.f)[idx], np.asarray(self.f_z)[idx],
                            np.asarray(self.f_zbar)[idx])


def jet_norms(j):
    """Return ``{"op_norm", "min_stretch", "jacobian"}`` of a jet."""
    a, b = np.abs(j.f_z), np.abs(j.f_zbar)
    return {"op_norm": a + b, "min_stretch": np.abs(a - b), "jacobian": (a - b) * (a + b)}


def _as_source(g):
    if g is None:
        return SourceField.zero()
    if isinstance(g, SourceField):
        return g
    if np.isscalar(g):
        c = complex(g)
        return SourceField.from_callable(lambda w: np.full(np.shape(w), c))
    return SourceField.from_callable(g)


class PoissonSolution(BaseEstimator):
    """Solution of ``Laplacian f = g`` in the unit disk with ``f = psi`` on the circle.

    ``f(z) = P[psi](z) - G[g](z)`` where ``P[psi]`` is the Poisson integral
    (periodic trapezoid rule over the boundary samples) and ``G[g]`` the
    Green potential (polar rule centred at the evaluation point).

    Parameters
    ----------
    boundary_nodes : int, default 2048
        Number of boundary samples ``N`` (a power of two) used when ``psi``
        is given as a function.
    radial_nodes, angular_nodes : int, default 64, 128
        Size of the polar rule for the Green potential.
    sup_grid : int, default 201
        Resolution of the polar grid used to estimate ``||g||_inf``.
    check_convergence : bool, default False
        Re-evaluate the Green potential with doubled node counts and raise
        :class:`QuadratureConvergenceError` on disagreement.
    convergence_tol : float, default 1e-8
    """

    closed = False
    default_tolerance = 1e-4

    def __init__(self, boundary_nodes=2048, radial_nodes=64, angular_nodes=128,
                 sup_grid=201, check_convergence=False, convergence_tol=1e-8):
        self.boundary_nodes = boundary_nodes
        self.radial_nodes = radial_nodes
        self.angular_nodes = angular_nodes
        self.sup_grid = sup_grid
        self.check_convergence = check_convergence
        self.convergence_tol = convergence_tol

    def fit(self, psi, g=None):
        """Store the boundary datum and the source.

        Parameters
        ----------
        psi : BoundaryData, array of N complex samples, or callable
            Dirichlet datum; a callable receives points ``e^{i theta}``.
        g : SourceField, callable, scalar or None
            Source term; ``None`` means ``g = 0``.
        """
        if isinstance(psi, BoundaryData):
            self.boundary_ = psi
        elif callable(psi):
            self.boundary_ = BoundaryData.from_function(psi, self.boundary_nodes)
        else:
            self.boundary_ = BoundaryData(np.asarray(psi, dtype=complex).ravel())
        if isinstance(g, SourceField) or g is None or np.isscalar(g):
            self.source_ = _as_source(g)
        else:
            self.source_ = SourceField.from_callable(g, resolution=self.sup_grid)
        self.n_boundary_ = self.boundary_.N
        return self

    # mapping-handle protocol
    @property
    def source(self):
        check_is_fitted(self, "boundary_")
        return self.source_

    @property
    def max_radius(self):
        """Largest radius evaluated by default grids.

        Derivatives of the trapezoid-rule Poisson integral lose accuracy
        like ``N exp(-N d)`` at distance ``d`` from the circle, so this sits
        at ``1 - 32/N`` (error near 1e-11 for ``N = 2048``), well inside the
        ``10/N`` warning band.
        """
        check_is_fitted(self, "boundary_")
        return 1.0 - MAX_RADIUS_FACTOR / self.n_boundary_

    @property
    def quadrature(self):
        return {"boundary_nodes": int(getattr(self, "n_boundary_", self.boundary_nodes)),
                "radial_nodes": int(self.radial_nodes), "angular_nodes": int(self.angular_nodes)}

    def boundary_samples(self, n=None):
        check_is_fitted(self, "boundary_")
        s = self.boundary_.samples
        if n is None or n == s.size:
            return s
        # trigonometric resampling
        c = np.fft.fft(s) / s.size
        k = np.fft.fftfreq(s.size, 1.0 / s.size)
        keep = np.abs(k) < n / 2
        theta = periodic_trapezoid(n)[0]
        return np.exp(1j * np.outer(theta, k[keep])) @ c[keep]

    def _points(self, Z):
        check_is_fitted(self, "boundary_")
        z = check_disk_points(Z)
        if np.any(1.0 - np.abs(z) < WARN_FACTOR / self.n_boundary_):
            warnings.warn(f"points within 10/N = {WARN_FACTOR / self.n_boundary_:.2e} of the circle; "
                          "boundary quadrature is under-resolved", ResolutionWarning, stacklevel=3)
        return z

    def _boundary_sum(self, z, kernel):
        s = self.boundary_.samples
        theta = self.boundary_.theta
        flat = z.ravel()
        out = np.empty(flat.shape, dtype=complex)
        step = max(1, _CHUNK // s.size)
        for i in range(0, flat.size, step):
            zz = flat[i:i + step, None]
            out[i:i + step] = kernel(zz, theta[None, :]) @ s / s.size
        return out.reshape(z.shape)

    def poisson_integral(self, Z):
        """``P[psi](z)`` by the periodic trapezoid rule."""
        z = self._points(Z)
        return self._boundary_sum(z, kernels._poisson)

    def _area_sum(self, z, kernel, n_radial, n_angular):
        flat = z.ravel()
        out = np.zeros(flat.shape, dtype=complex)
        if self.source_.is_zero:
            return out.reshape(z.shape)
        per = n_radial * n_angular
        step = max(1, _CHUNK // per)
        for i in range(0, flat.size, step):
            zz = flat[i:i + step]
            nodes, w = centered_disk_rule(zz, n_radial, n_angular)
            vals = kernel(zz[:, None], nodes) * self.source_(nodes)
            out[i:i + step] = np.sum(w * vals, axis=1) / (2.0 * np.pi)
        return out.reshape(z.shape)

    def _area(self, z, kernel):
        val = self._area_sum(z, kernel, self.radial_nodes, self.angular_nodes)
        if self.check_convergence and not self.source_.is_zero:
            fine = self._area_sum(z, kernel, 2 * self.radial_nodes, 2 * self.angular_nodes)
            err = np.abs(fine - val)
            bad = err > self.convergence_tol * np.maximum(1.0, np.abs(fine))
            if np.any(bad):
                raise QuadratureConvergenceError(
                    f"Green potential refinement disagreement {err.max():.2e} "
                    f"exceeds {self.convergence_tol:.1e}")
            return fine
        return val

    def green_potential(self, Z):
        """``G[g](z) = (1/2 pi) int G(z, w) g(w) dA(w)``."""
        z = self._points(Z)
        return self._area(z, kernels._green)

    def predict(self, Z):
        """``f(z) = P[psi](z) - G[g](z)``."""
        z = self._points(Z)
        return self._boundary_sum(z, kernels._poisson) - self._area(z, kernels._green)

    def evaluate(self, Z):
        return self.predict(Z)

    def green_derivatives(self, Z):
        """``(d/dz G[g], d/dzbar G[g])`` by quadrature of the derivative kernels."""
        z = self._points(Z)
        dz = self._area(z, lambda zz, w: kernels._green_dw(zz, 1.0, w))
        dzb = self._area(z, lambda zz, w: kernels._green_dwbar(zz, 1.0, w))
        return dz, dzb

    def poisson_derivatives(self, Z):
        """``(d/dz P[psi], d/dzbar P[psi])`` from the differentiated kernel."""
        z = self._points(Z)
        dz = self._boundary_sum(z, lambda zz, t: kernels._poisson_dw(zz, 1.0, t))
        dzb = self._boundary_sum(z, lambda zz, t: kernels._poisson_dwbar(zz, 1.0, t))
        return dz, dzb

    def jets(self, Z):
        """Vectorised :class:`WirtingerJet` of ``f`` at ``Z``."""
        z = self._points(Z)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ResolutionWarning)
            pz, pzb = self.poisson_derivatives(z)
            gz, gzb = self.green_derivatives(z)
            f = self.predict(z)
        return WirtingerJet(f, pz - gz, pzb - gzb)

    def transform(self, Z):
        """Array of shape ``(n, 3)`` with columns ``f, f_z, f_zbar``."""
        j = self.jets(np.ravel(check_disk_points(Z)))
        return np.column_stack([j.f, j.f_z, j.f_zbar])

    def wirtinger_jet(self, z):
        j = self.jets(np.atleast_1d(complex(z)))
        return j[0]

    def laplacian_residual(self, z, h):
        """``|Delta_h f(z) - g(z)|`` with the five-point stencil of radius ``h``."""
        z = complex(z)
        if not h > 0 or abs(z) + h >= 1.0:
            raise DomainError("five-point stencil leaves the disk")
        pts = np.array([z, z + h, z - h, z + 1j * h, z - 1j * h])
        v = self.predict(pts)
        lap = (v[1:].sum() - 4.0 * v[0]) / (h * h)
        return float(abs(lap - self.source_(np.array([z]))[0]))


# Functional API mirroring the estimator methods.

def poisson_integral(b, z):
    return PoissonSolution().fit(b).poisson_integral(z)


def green_potential(s, z, radial_nodes=64, angular_nodes=128):
    p = PoissonSolution(radial_nodes=radial_nodes, angular_nodes=angular_nodes)
    zero = BoundaryData(np.zeros(16, dtype=complex))
    return p.fit(zero, _as_source(s)).green_potential(z)


def solve(p, z):
    return p.predict(z)


def wirtinger_jet(p, z):
    return p.wirtinger_jet(z)


def laplacian_residual(p, z, h):
    return p.laplacian_residual(z, h)


def subdisk_jet(f, g, a, r, z=0.0, boundary_nodes=256, radial_nodes=48, angular_nodes=96):
    """Jet at ``a + z`` of a solution of ``Laplacian f = g``, from data on ``D(a, r)``.

    Represents ``F(z) = f(z + a) - f(a)`` on the disk ``|z| < r`` by its
    values on ``|z| = r`` and the shifted source, then differentiates the
    scaled Poisson and Green kernels under the integrals.

    Parameters
    ----------
    f : callable
        Values of the mapping (vectorised over complex arrays).
    g : SourceField or callable
    a : complex
        Centre of the sub-disk.
    r : float
        Radius, ``0 < r < 1 - |a|``.
    z : complex
        Offset of the evaluation point from ``a`` (``|z| < r``).

    Returns
    -------
    WirtingerJet
        Jet of ``f`` at ``a + z``.
    """
    a = complex(a)
    z = complex(z)
    if not 0 < r < 1.0 - abs(a):
        raise DomainError("need 0 < r < 1 - |a|")
    if abs(z) >= r:
        raise DomainError("evaluation point must lie inside the sub-disk")
    g = _as_source(g)
    theta, wt = periodic_trapezoid(boundary_nodes)
    fa = complex(np.asarray(f(np.array([a])))[0])
    F = np.asarray(f(a + r * np.exp(1j * theta)), dtype=complex) - fa
    dz = np.sum(wt * kernels._poisson_dw(z, r, theta) * F) / (2.0 * np.pi)
    dzb = np.sum(wt * kernels._poisson_dwbar(z, r, theta) * F) / (2.0 * np.pi)
    if not g.is_zero:
        nodes, w = centered_disk_rule(z / r, radial_nodes, angular_nodes)
        gv = g(r * nodes + a)
        c = r * r / (2.0 * np.pi)
        dz -= c * np.sum(w * kernels._green_dw(z, r, nodes) * gv)
        dzb -= c * np.sum(w * kernels._green_dwbar(z, r, nodes) * gv)
    fz = complex(np.asarray(f(np.array([a + z])))[0])
    return WirtingerJet(fz, complex(dz), complex(dzb))
