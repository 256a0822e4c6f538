"""Majorants, the power family ``t**alpha`` and the regularity conditions.

A majorant is a continuous nondecreasing ``omega`` with ``omega(0) = 0``
whose ratio ``omega(t)/t`` is nonincreasing.  It is regular when, for
``0 < delta < delta0`` and some constant ``C``,

* ``int_0^delta omega(t)/t dt <= C omega(delta)``               (lower)
* ``delta int_delta^inf omega(t)/t**2 dt <= C omega(delta)``     (upper)
"""

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np
from scipy import integrate


@dataclass(frozen=True)
class Majorant:
    eval: Callable[[np.ndarray], np.ndarray]
    label: str
    alpha: Optional[float] = None

    def __call__(self, t):
        return self.eval(np.asarray(t, dtype=float))


def power_majorant(alpha):
    """``omega_alpha(t) = t**alpha`` for ``0 < alpha <= 1``."""
    alpha = float(alpha)
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    return Majorant(lambda t: np.power(t, alpha), f"t^{alpha:g}", alpha)


def linear_majorant():
    return Majorant(lambda t: np.asarray(t, dtype=float) * 1.0, "t", 1.0)


def capped_linear_majorant(cap=1.0):
    """``min(t, cap)``."""
    return Majorant(lambda t: np.minimum(t, cap), f"min(t,{cap:g})")


def parse_majorant(spec):
    """``"t"``, ``"t^0.5"`` / ``"power:0.5"`` or ``"min(t,1)"``."""
    s = spec.replace(" ", "")
    if s in ("t", "linear"):
        return linear_majorant()
    for prefix in ("t^", "power:"):
        if s.startswith(prefix):
            return power_majorant(float(s[len(prefix):]))
    if s.startswith("min(t,") and s.endswith(")"):
        return capped_linear_majorant(float(s[6:-1]))
    raise ValueError(f"unknown majorant {spec!r}")


@dataclass
class AxiomCheck:
    passed: bool
    violation: Optional[str] = None
    at: Optional[float] = None

    def __bool__(self):
        return self.passed


def check_majorant_axioms(m, grid, rtol=1e-12):
    """Check monotonicity of ``m`` and antitonicity of ``m(t)/t`` on ``grid``.

    Adjacent pairs suffice since both orders are transitive.

    Returns
    -------
    AxiomCheck
        ``passed`` plus a description of the first violation.
    """
    t = np.asarray(grid, dtype=float)
    if t.size == 0:
        raise ValueError("empty grid")
    if np.any(t <= 0) or np.any(np.diff(t) <= 0):
        raise ValueError("grid must be positive and strictly increasing")
    if abs(float(m(0.0))) > 0:
        return AxiomCheck(False, "omega(0) != 0", 0.0)
    w = np.asarray(m(t), dtype=float)
    if np.any(w < 0) or not np.all(np.isfinite(w)):
        i = int(np.argmax((w < 0) | ~np.isfinite(w)))
        return AxiomCheck(False, "omega not finite and nonnegative", float(t[i]))
    scale = rtol * np.maximum(np.abs(w[:-1]), np.abs(w[1:]))
    dec = np.nonzero(w[1:] < w[:-1] - scale)[0]
    if dec.size:
        return AxiomCheck(False, "omega decreases", float(t[dec[0] + 1]))
    ratio = w / t
    rscale = rtol * np.maximum(ratio[:-1], ratio[1:])
    inc = np.nonzero(ratio[1:] > ratio[:-1] + rscale)[0]
    if inc.size:
        return AxiomCheck(False, "omega(t)/t increases", float(t[inc[0] + 1]))
    return AxiomCheck(True)


@dataclass
class ConditionEstimate:
    constant_estimate: float
    holds: bool
    divergent: bool = False
    ratios: np.ndarray = field(default=None, repr=False)


@dataclass
class RegularityReport:
    condition_16: ConditionEstimate
    condition_17: ConditionEstimate
    delta0: float
    samples: int

    @property
    def regular(self):
        return self.condition_16.holds and self.condition_17.holds


def _lower_integral(m, delta):
    # t = delta * exp(-s): int_0^delta w(t)/t dt = int_0^inf w(delta e^{-s}) ds
    val, _ = integrate.quad(lambda s: float(m(delta * np.exp(-s))), 0.0, np.inf, limit=200)
    return val


def _upper_integral(m, delta, T):
    # t = delta * exp(s): delta int w(t)/t^2 dt = int w(delta e^s) e^{-s} ds
    smax = np.log(T / delta)
    val, _ = integrate.quad(lambda s: float(m(delta * np.exp(s))) * np.exp(-s), 0.0, smax, limit=400)
    return val


def _tail_exponent(m, T):
    """Local growth exponent of omega just below ``T``."""
    lo, hi = float(m(T / 10.0)), float(m(T))
    if lo <= 0:
        return 1.0
    return np.log(hi / lo) / np.log(10.0)


def check_regularity(m, delta0=1.0, n_delta=64, decades=8, truncation=1e6,
                     growth_tol=0.01, divergence_tol=1e-3):
    """Estimate the least constants of both regularity conditions.

    The ratio ``integral / omega(delta)`` is evaluated on ``n_delta``
    log-spaced points of ``(delta0 * 10**-decades, delta0)`` and its
    maximum is reported.  A condition is flagged as failing when the
    ratio still grows by more than ``growth_tol`` over the smallest
    decade, i.e. is unbounded as ``delta -> 0``.

    The upper integral is truncated at ``T = truncation * delta0``; the
    tail beyond ``T`` is estimated from the local power-law exponent
    ``p`` of omega at ``T`` as ``delta * omega(T) / (T (1 - p))``.  If
    ``p >= 1 - divergence_tol`` the integral is reported divergent.
    """
    if not delta0 > 0:
        raise ValueError("delta0 must be positive")
    deltas = np.geomspace(delta0 * 10.0 ** -decades, delta0, n_delta, endpoint=False)
    wd = np.asarray(m(deltas), dtype=float)

    lower = np.array([_lower_integral(m, d) for d in deltas]) / wd
    last_decade = deltas < delta0 * 10.0 ** (1 - decades)
    c16 = float(lower.max())
    grows16 = c16 > (1 + growth_tol) * float(lower[~last_decade].max())
    cond16 = ConditionEstimate(c16, holds=not grows16, ratios=lower)

    T = truncation * delta0
    p = _tail_exponent(m, T)
    if p >= 1.0 - divergence_tol:
        cond17 = ConditionEstimate(float("inf"), holds=False, divergent=True)
    else:
        tail = float(m(T)) / T / (1.0 - p)
        upper = np.array([_upper_integral(m, d, T) + d * tail for d in deltas]) / wd
        c17 = float(upper.max())
        grows17 = c17 > (1 + growth_tol) * float(upper[~last_decade].max())
        cond17 = ConditionEstimate(c17, holds=not grows17, ratios=upper)
    return RegularityReport(cond16, cond17, float(delta0), int(n_delta))
