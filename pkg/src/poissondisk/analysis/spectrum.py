"""Coefficients of the harmonic extension ``P[psi] = sum a_n z^n + sum conj(b_n) zbar^n``."""

import warnings
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as P

from ..exceptions import AliasingWarning
from ..solver import BoundaryData


@dataclass(frozen=True)
class CoefficientSpectrum:
    """Analytic and anti-analytic coefficients, both indexed by ``n``.

    ``a[n]`` for ``n = 0..n_max`` and ``b[n]`` for ``n = 1..n_max``; ``b[0]``
    is zero by convention.  ``energy`` is the mean of ``|psi|^2`` over the
    samples and ``nyquist`` the coefficient of ``e^{i N theta / 2}``; both
    are kept for the Parseval check.
    """

    a: np.ndarray
    b: np.ndarray
    energy: float = float("nan")
    nyquist: complex = 0j

    @property
    def n_max(self):
        return self.a.size - 1

    def coefficient_sum(self, n):
        """``|a_n| + |b_n|`` (zero beyond ``n_max``)."""
        if n > self.n_max:
            return 0.0
        return float(abs(self.a[n]) + abs(self.b[n]))

    def parseval_residual(self):
        total = np.sum(np.abs(self.a) ** 2) + np.sum(np.abs(self.b[1:]) ** 2) + abs(self.nyquist) ** 2
        return float(abs(total - self.energy))

    def boundary_values(self, n):
        """Samples of the truncated series at ``theta_k = 2 pi k / n``."""
        e = np.exp(2j * np.pi * np.arange(n) / n)
        return P.polyval(e, self.a) + P.polyval(np.conj(e), np.conj(self.b))

    def evaluate(self, z):
        z = np.asarray(z, dtype=complex)
        return P.polyval(z, self.a) + P.polyval(np.conj(z), np.conj(self.b))

    def derivatives(self, z):
        """``(d/dz, d/dzbar)`` of the harmonic function."""
        z = np.asarray(z, dtype=complex)
        n = np.arange(self.a.size)
        dz = P.polyval(z, (n * self.a)[1:]) if self.a.size > 1 else np.zeros_like(z)
        dzb = P.polyval(np.conj(z), (n * np.conj(self.b))[1:]) if self.b.size > 1 else np.zeros_like(z)
        return dz, dzb

    def op_norm(self, z):
        """``||D_{P[psi]}(z)|| = |d/dz| + |d/dzbar|``."""
        dz, dzb = self.derivatives(z)
        return np.abs(dz) + np.abs(dzb)

    def h_theta(self, z, theta):
        """``H_theta = d/dz + e^{i theta} conj(d/dzbar)``; its max over theta is ``op_norm``."""
        dz, dzb = self.derivatives(z)
        return dz + np.exp(1j * np.asarray(theta)) * np.conj(dzb)


def harmonic_coefficients(b, n_max=None, alias_fraction=1e-8):
    """Coefficients ``a_n = psi_hat(n)``, ``b_n = conj(psi_hat(-n))`` via the FFT.

    Parameters
    ----------
    b : BoundaryData or array of N samples
    n_max : int, optional
        Highest index kept, ``n_max < N/2``; defaults to ``N/2 - 1``.

    Warns
    -----
    AliasingWarning
        If frequencies ``|k| >= 3N/8`` carry more than ``alias_fraction``
        of the energy.
    """
    samples = b.samples if isinstance(b, BoundaryData) else np.asarray(b, dtype=complex).ravel()
    N = samples.size
    if n_max is None:
        n_max = N // 2 - 1
    if not 0 <= n_max < N // 2:
        raise ValueError(f"n_max must be < N/2 = {N // 2}")
    c = np.fft.fft(samples) / N
    k = np.fft.fftfreq(N, 1.0 / N)
    energy = float(np.sum(np.abs(c) ** 2))
    top = np.sum(np.abs(c[np.abs(k) >= 3 * N / 8]) ** 2)
    if energy > 0 and top > alias_fraction * energy:
        warnings.warn(f"top quarter of the spectrum holds {top / energy:.1e} of the energy",
                      AliasingWarning, stacklevel=2)
    a = c[: n_max + 1].copy()
    bb = np.zeros(n_max + 1, dtype=complex)
    bb[1:] = np.conj(c[N - np.arange(1, n_max + 1)])
    nyq = c[N // 2] if n_max == N // 2 - 1 else 0j
    if n_max < N // 2 - 1:
        energy = float(np.sum(np.abs(a) ** 2) + np.sum(np.abs(bb) ** 2))
    return CoefficientSpectrum(a, bb, energy, complex(nyq))


def harmonic_part(m, n=2048):
    """Spectrum of the harmonic part ``P[f]`` of a mapping handle."""
    return harmonic_coefficients(np.asarray(m.boundary_samples(n)))
