"""Green and Poisson kernels of the unit disk and their Wirtinger derivatives.

All functions broadcast over numpy arrays of complex points.  Angles are
plain floats (radians) or :class:`BoundaryAngle` instances.
"""

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError, KernelSingularityError
from .validation import check_disk_points

COLLISION_EPS = 1e-12
TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class DiskPoint:
    """A point ``z = re + i*im`` of the unit disk."""

    re: float
    im: float

    def __post_init__(self):
        if self.re * self.re + self.im * self.im >= 1.0:
            raise DomainError(f"{self.z!r} is not inside the unit disk")

    @classmethod
    def from_complex(cls, z):
        z = complex(z)
        return cls(z.real, z.imag)

    @classmethod
    def closed(cls, z):
        """Point of the closed disk, ``|z| <= 1``."""
        z = complex(z)
        if abs(z) > 1.0 + 1e-14:
            raise DomainError(f"{z!r} is outside the closed unit disk")
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", z.real)
        object.__setattr__(obj, "im", z.imag)
        return obj

    @property
    def z(self):
        return complex(self.re, self.im)

    @property
    def distance(self):
        """Euclidean distance ``1 - |z|`` to the unit circle."""
        return 1.0 - abs(self.z)

    def __complex__(self):
        return self.z


@dataclass(frozen=True, eq=False)
class BoundaryAngle:
    """Angle of a point ``e^{i theta}`` of the unit circle, kept in [0, 2*pi)."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", float(self.theta) % TWO_PI)

    @property
    def point(self):
        return np.exp(1j * self.theta)

    def __eq__(self, other):
        if not isinstance(other, BoundaryAngle):
            other = BoundaryAngle(other)
        d = abs(self.theta - other.theta)
        return min(d, TWO_PI - d) < 1e-15 * TWO_PI

    def __hash__(self):
        return hash(round(self.theta, 12) % round(TWO_PI, 12))

    def __float__(self):
        return self.theta


def _angle(t):
    if isinstance(t, BoundaryAngle):
        return t.theta
    if isinstance(t, (list, tuple)) and t and isinstance(t[0], BoundaryAngle):
        return np.array([a.theta for a in t])
    return np.asarray(t, dtype=float)


def _pt(z, closed=False):
    if isinstance(z, DiskPoint):
        return z.z
    return check_disk_points(z, closed=closed)


# Raw kernels: no validation, used by the quadrature code.

def _green(z, w):
    num = np.abs(1.0 - z * np.conj(w)) ** 2
    den = np.abs(z - w) ** 2
    return 0.5 * np.log(num / den)


def _poisson(z, theta):
    return (1.0 - np.abs(z) ** 2) / np.abs(1.0 - z * np.exp(-1j * theta)) ** 2


def _poisson_dw(v, r, theta):
    # v = w - z
    q = v - r * np.exp(1j * theta)
    den = np.abs(q) ** 2
    return (-np.conj(v) * den - (r * r - np.abs(v) ** 2) * (np.conj(v) - r * np.exp(-1j * theta))) / den**2


def _poisson_dwbar(v, r, theta):
    q = v - r * np.exp(1j * theta)
    den = np.abs(q) ** 2
    return (-v * den - (r * r - np.abs(v) ** 2) * (v - r * np.exp(1j * theta))) / den**2


def _green_dw(v, r, zeta):
    return 0.5 * r * (np.abs(zeta) ** 2 - 1.0) / ((r - v * np.conj(zeta)) * (v - r * zeta))


def _green_dwbar(v, r, zeta):
    vb = np.conj(v)
    return 0.5 * r * (np.abs(zeta) ** 2 - 1.0) / ((r - vb * zeta) * (vb - r * np.conj(zeta)))


def green_kernel(z, w):
    """Green function ``log|(1 - z conj(w)) / (z - w)|`` of the unit disk.

    Computed as half the log of a ratio of squared moduli.

    Raises
    ------
    KernelSingularityError
        If ``|z - w|`` is below ``COLLISION_EPS``.
    """
    z = _pt(z)
    w = _pt(w)
    if np.any(np.abs(z - w) < COLLISION_EPS):
        raise KernelSingularityError("green_kernel evaluated at coincident points")
    out = _green(z, w)
    return out if np.ndim(out) else float(out)


def poisson_kernel(z, t):
    """Poisson kernel ``(1 - |z|^2) / |1 - z e^{-i t}|^2``."""
    z = _pt(z)
    out = _poisson(z, _angle(t))
    return out if np.ndim(out) else float(out)


def _scaled_args(w, z, r):
    w = np.asarray(complex(w) if isinstance(w, DiskPoint) else w, dtype=complex)
    z = np.asarray(complex(z) if isinstance(z, DiskPoint) else z, dtype=complex)
    if not np.all(np.asarray(r) > 0):
        raise DomainError("scale r must be positive")
    v = w - z
    if np.any(np.abs(v) >= r):
        raise DomainError("scaled kernels need |w - z| < r")
    return v


def _out(x):
    return x if np.ndim(x) else complex(x)


def scaled_poisson_dw(w, z, r, t):
    """``d/dw P((w - z)/r, e^{it})`` from its closed form."""
    return _out(_poisson_dw(_scaled_args(w, z, r), r, _angle(t)))


def scaled_poisson_dwbar(w, z, r, t):
    """``d/d(conj w) P((w - z)/r, e^{it})`` from its closed form."""
    return _out(_poisson_dwbar(_scaled_args(w, z, r), r, _angle(t)))


def _scaled_green_args(w, z, r, zeta):
    v = _scaled_args(w, z, r)
    zeta = _pt(zeta, closed=True)
    if np.any(np.abs(v / r - zeta) < COLLISION_EPS):
        raise KernelSingularityError("(w - z)/r coincides with zeta")
    return v, zeta


def scaled_green_dw(w, z, r, zeta):
    """``d/dw G((w - z)/r, zeta)``.

    Equals ``r (|zeta|^2 - 1) / (2 [r - (w - z) conj(zeta)] (w - z - r zeta))``.
    """
    v, zeta = _scaled_green_args(w, z, r, zeta)
    return _out(_green_dw(v, r, zeta))


def scaled_green_dwbar(w, z, r, zeta):
    """``d/d(conj w) G((w - z)/r, zeta)``; the complex conjugate of
    :func:`scaled_green_dw`."""
    v, zeta = _scaled_green_args(w, z, r, zeta)
    return _out(_green_dwbar(v, r, zeta))
