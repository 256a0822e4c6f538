"""Input validation helpers in the spirit of ``sklearn.utils.validation``."""

import numbers

import numpy as np

from .exceptions import DomainError


def as_complex_points(Z):
    """Convert ``Z`` to a complex ndarray.

    Accepted inputs are complex scalars or array-likes, objects with a
    ``z`` attribute (such as :class:`~poissondisk.kernels.DiskPoint`),
    sequences of those, and real arrays of shape ``(n, 2)`` holding
    Cartesian ``(x, y)`` pairs.
    """
    if hasattr(Z, "z"):
        return np.asarray(Z.z, dtype=complex)
    if isinstance(Z, (list, tuple)) and Z and hasattr(Z[0], "z"):
        return np.array([p.z for p in Z], dtype=complex)
    arr = np.asarray(Z)
    if arr.dtype == object:
        raise TypeError("could not interpret input as complex points")
    if np.isrealobj(arr) and arr.ndim == 2 and arr.shape[1] == 2:
        return arr[:, 0] + 1j * arr[:, 1]
    return arr.astype(complex)


def check_disk_points(Z, closed=False, margin=0.0):
    """Validate points of the unit disk and return them as a complex array.

    Parameters
    ----------
    Z : array-like
        Points, see :func:`as_complex_points`.
    closed : bool, default False
        Admit points on the unit circle.
    margin : float, default 0.0
        Additionally require ``1 - |z| >= margin``.

    Returns
    -------
    ndarray of complex
    """
    z = as_complex_points(Z)
    if not np.all(np.isfinite(z)):
        raise DomainError("points must be finite")
    mod = np.abs(z)
    if closed:
        bad = mod > 1.0 + 1e-14
    else:
        bad = mod >= 1.0
    if margin > 0:
        bad |= 1.0 - mod < margin
    if np.any(bad):
        worst = z.ravel()[np.argmax(np.ravel(mod))]
        where = "closed" if closed else "open"
        raise DomainError(f"point {worst!r} is outside the {where} unit disk")
    return z


def check_radius(r, low=0.0, high=1.0, closed_high=False, name="r"):
    """Check ``low < r < high`` (or ``<= high``) and return ``float(r)``."""
    if not isinstance(r, numbers.Real):
        raise TypeError(f"{name} must be a real number, got {type(r).__name__}")
    r = float(r)
    ok = r > low and (r <= high if closed_high else r < high)
    if not ok:
        rb = "]" if closed_high else ")"
        raise DomainError(f"{name}={r} outside ({low}, {high}{rb}")
    return r


def check_power_of_two(n, minimum=1, name="n"):
    n = int(n)
    if n < minimum or n & (n - 1):
        raise ValueError(f"{name} must be a power of two >= {minimum}, got {n}")
    return n


def check_is_fitted(estimator, attributes):
    from sklearn.utils.validation import check_is_fitted as _check

    _check(estimator, attributes)
