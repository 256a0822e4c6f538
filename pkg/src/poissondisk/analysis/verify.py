"""Numerical verifiers for the distortion and coefficient inequalities.

Every verifier returns :class:`~poissondisk.analysis.report.VerificationReport`
records.  Unnamed constants of the inequalities are realised as empirical
suprema over the declared samples and stored in ``report.constants``.
Checks that hold pointwise report the sampled point with the smallest
margin.
"""

import warnings

import numpy as np

from ..exceptions import DomainError, ResolutionWarning
from ..geometry import effective_K, image_area, perimeter_sup, radial_length_sup
from ..majorant import linear_majorant
from ..quadrature import periodic_trapezoid, polar_grid
from ..solver import BoundaryData, PoissonSolution
from .functionals import (
    BlochParams,
    _mean_oscillation_many,
    bloch_constant,
    curve_condition_check,
    interior_grid,
    limit_radius,
    lipschitz_constant,
    oscillation_constant,
    pair_samples,
    radial_profile,
    segment_integrals,
    weighted_lipschitz,
)
from .report import make_report, worst_point_report
from .spectrum import harmonic_part


def _tol(m, tol):
    return getattr(m, "default_tolerance", 1e-8) if tol is None else tol


def _label(m):
    return getattr(m, "label", type(m).__name__)


def _resolution(m, **extra):
    res = dict(getattr(m, "quadrature", {}))
    res.update(extra)
    return res


def _sup_g(m):
    return float(m.source.sup_norm)


def _pairs_for(m, pairs, n_pairs=10_000, seed=0):
    if pairs is not None:
        return pairs
    r_max = min(1.0 - 2.0 ** -12, limit_radius(m))
    return pair_samples(n_pairs, seed=seed, r_max=r_max)


# Lipschitz continuity <=> derivative bound omega(d)/d

def verify_thm1_necessity(m, lip_constant=None, omega=None, grid=None, pairs=None,
                          growth_tol=0.05, tol=None, seed=0):
    """Lipschitz constant ``C1`` => derivative bound ``||D_f|| <= C omega(d)/d``.

    ``lhs`` is the empirical derivative constant ``sup ||D_f|| d / omega(d)``.
    Two certificates bound it; ``rhs`` is the smaller one:

    * the proof chain at ``r = d(z)/2``: ``40 C1 + ||g|| / (6 omega(1))``;
    * boundedness under grid refinement: ``(1 + growth_tol)`` times the
      constant on the grid without its two outermost radius levels.
    """
    omega = linear_majorant() if omega is None else omega
    tol = _tol(m, tol)
    pairs = _pairs_for(m, pairs, seed=seed)
    if lip_constant is None:
        lip_constant = lipschitz_constant(m, omega, pairs)
    grid = interior_grid(m) if grid is None else np.asarray(grid)
    grid = grid[np.abs(grid) > 0]
    d = 1.0 - np.abs(grid)
    vals = m.jets(grid).op_norm * d / omega(d)
    c_deriv = float(vals.max())
    coarse = d >= 4.0 * d.min()
    c_coarse = float(vals[coarse].max()) if np.any(coarse) else c_deriv
    proof = 40.0 * lip_constant + _sup_g(m) / (6.0 * float(omega(1.0)))
    growth = (1.0 + growth_tol) * c_coarse
    return make_report(
        "thm1.necessity", c_deriv, min(proof, growth), tol,
        inputs={"map": _label(m), "omega": omega.label, "n_grid": int(grid.size),
                "n_pairs": int(pairs[0].size)},
        constants={"derivative_constant": c_deriv, "lipschitz_constant": lip_constant,
                   "proof_bound": proof, "coarse_derivative_constant": c_coarse,
                   "growth_bound": growth},
        resolution=_resolution(m, grid_points=int(grid.size)))


def verify_thm1_sufficiency(m, deriv_constant=None, omega=None, pairs=None, nodes=32,
                            tol=None, seed=0):
    """Derivative bound => Lipschitz bound, along segments (the disk is convex).

    Per pair, ``|f(z1) - f(z2)| <= int ||D_f|| ds``; ``lhs`` is the
    Lipschitz constant ``sup |f(z1) - f(z2)| / omega(|z1 - z2|)`` and ``rhs``
    the path constant ``C' = sup int ||D_f|| ds / omega(|z1 - z2|)``.
    ``constants`` also carries the curve-condition constant and the
    derivative constant used in :func:`verify_thm1_chain`.
    """
    omega = linear_majorant() if omega is None else omega
    tol = _tol(m, tol)
    z1, z2 = pairs = _pairs_for(m, pairs, seed=seed)
    path, curve, seg, jets = segment_integrals(m, omega, pairs, nodes)
    dist = omega(np.abs(z1 - z2))
    df = np.abs(np.asarray(m.evaluate(z1)) - np.asarray(m.evaluate(z2)))
    lip = float(np.max(df / dist))
    c_path = float(np.max(path / dist))
    d = 1.0 - np.abs(seg)
    if deriv_constant is None:
        deriv_constant = float(np.max(jets.op_norm * d / omega(d)))
    c_curve = float(np.max(curve / dist))
    pointwise_ok = bool(np.all(df <= path * (1 + 1e-9) + tol))
    return make_report(
        "thm1.sufficiency", lip, c_path, tol,
        inputs={"map": _label(m), "omega": omega.label, "n_pairs": int(z1.size)},
        constants={"lipschitz_constant": lip, "path_constant": c_path,
                   "curve_constant": c_curve, "derivative_constant": deriv_constant,
                   "pointwise_path_bound": pointwise_ok},
        resolution=_resolution(m, segment_nodes=nodes, pairs=int(z1.size)))


def verify_thm1_chain(m, omega=None, pairs=None, nodes=32, tol=None, seed=0):
    """``int ||D_f|| ds <= C_D int omega(d)/d ds`` on every sampled segment.

    ``C_D`` is the derivative constant over the segment nodes; the report
    compares the path constant with ``C_D`` times the curve constant.
    """
    omega = linear_majorant() if omega is None else omega
    tol = _tol(m, tol)
    z1, z2 = pairs = _pairs_for(m, pairs, seed=seed)
    path, curve, seg, jets = segment_integrals(m, omega, pairs, nodes)
    d = 1.0 - np.abs(seg)
    c_d = float(np.max(jets.op_norm * d / omega(d)))
    dist = omega(np.abs(z1 - z2))
    rel = 1e-9 * np.maximum(1.0, path)
    return worst_point_report(
        "thm1.curve-chain", z1, path / dist,
        (c_d * curve + rel) / dist, tol,
        inputs={"map": _label(m), "omega": omega.label},
        constants={"derivative_constant": c_d,
                   "curve_constant": curve_condition_check(omega, pairs, nodes),
                   "path_constant": float(np.max(path / dist))},
        resolution=_resolution(m, segment_nodes=nodes, pairs=int(z1.size)))


# Bloch-type norm <=> mean oscillation

def theorem2_grid(m, n_radii=10, n_angles=10):
    """100-point default grid: 10 radii up to 0.99 (capped) times 10 angles."""
    radii = np.append(np.linspace(0.0, 0.9, n_radii - 1), 0.99)
    radii = np.minimum(radii, limit_radius(m) * 0.999)
    theta = 2 * np.pi * (np.arange(n_angles) + 0.5) / n_angles
    return (radii[:, None] * np.exp(1j * theta)[None, :]).ravel()


def verify_thm2_forward(m, p=None, osc_constant=None, grid=None, n_radial=32, n_angular=64,
                        tol=None):
    """Mean-oscillation bound => derivative bound.

    With ``C = sup mean_oscillation(z, r) omega(r**alpha) / r`` checks
    ``||D_f(z)|| <= 3 C / omega(d**alpha) + ||g|| d / 2`` at each grid
    point, ``d = d(z)``.
    """
    p = BlochParams() if p is None else p
    p.check_theorem2()
    tol = _tol(m, tol)
    grid = theorem2_grid(m) if grid is None else np.asarray(grid, dtype=complex)
    if osc_constant is None:
        osc_constant = oscillation_constant(m, p, grid, n_radial=n_radial, n_angular=n_angular)[0]
    d = 1.0 - np.abs(grid)
    lhs = m.jets(grid).op_norm
    G = _sup_g(m)
    rhs = 3.0 * osc_constant / p.omega(d ** p.alpha) + 0.5 * G * d
    # intermediate chain with the actual oscillation at r = d(z)
    osc_d = _mean_oscillation_many(m, grid, d, n_radial, n_angular)
    chain = 3.0 * osc_d / d + 0.5 * G * d
    return worst_point_report(
        f"thm2.forward[alpha={p.alpha:g}]", grid, lhs, rhs, tol,
        inputs={"map": _label(m), "omega": p.omega.label, "alpha": p.alpha},
        constants={"oscillation_constant": osc_constant,
                   "chain_margin": float(np.min(chain - lhs))},
        resolution=_resolution(m, grid_points=int(grid.size), local_radial=n_radial,
                               local_angular=n_angular))


def verify_thm2_reverse(m, p=None, bloch_const=None, grid=None, fractions=(0.25, 0.5, 1.0),
                        n_radial=32, n_angular=64, tol=None):
    """Derivative bound => mean-oscillation bound.

    With ``C = sup ||D_f|| omega(d**alpha)`` checks
    ``mean_oscillation(z, r) <= (2 C / (2 - alpha)) r / omega(r**alpha)``
    for ``r = fraction * d(z)``.
    """
    p = BlochParams() if p is None else p
    p.check_theorem2()
    tol = _tol(m, tol)
    grid = theorem2_grid(m) if grid is None else np.asarray(grid, dtype=complex)
    if bloch_const is None:
        bloch_const = bloch_constant(m, p, np.concatenate([interior_grid(m), grid]))
    d = 1.0 - np.abs(grid)
    zz = np.concatenate([grid for _ in fractions])
    rr = np.concatenate([f * d for f in fractions])
    osc = _mean_oscillation_many(m, zz, rr, n_radial, n_angular)
    rhs = 2.0 * bloch_const / (2.0 - p.alpha) * rr / p.omega(rr ** p.alpha)
    return worst_point_report(
        f"thm2.reverse[alpha={p.alpha:g}]", zz, osc, rhs, tol,
        inputs={"map": _label(m), "omega": p.omega.label, "alpha": p.alpha,
                "fractions": list(fractions)},
        constants={"bloch_constant": bloch_const},
        resolution=_resolution(m, grid_points=int(grid.size), local_radial=n_radial,
                               local_angular=n_angular))


# Green-potential gradient and the circle-average derivative bound

def verify_lemma21(source, grid=None, radial_nodes=64, angular_nodes=128, tol=1e-4):
    """``max(|d/dz G[g]|, |d/dzbar G[g]|) <= ||g|| / 3`` on a grid.

    ``source`` is a :class:`~poissondisk.solver.SourceField` (or anything
    with a ``source`` attribute, such as a mapping handle).
    """
    source = getattr(source, "source", source)
    if grid is None:
        grid = polar_grid(32, 64, r_max=1.0 - 2.0 ** -12, boundary_levels=12)
    grid = np.asarray(grid, dtype=complex)
    p = PoissonSolution(radial_nodes=radial_nodes, angular_nodes=angular_nodes)
    p.fit(BoundaryData(np.zeros(16, dtype=complex)), source)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ResolutionWarning)
        dz, dzb = p.green_derivatives(grid)
    a, b = np.abs(dz), np.abs(dzb)
    lhs = float(max(a.max(), b.max()))
    rhs = source.sup_norm / 3.0
    return make_report(
        "lem2.1", lhs, rhs, tol,
        inputs={"n_grid": int(grid.size), "sup_norm_g": source.sup_norm},
        constants={"sup_dz": float(a.max()), "sup_dzbar": float(b.max()),
                   "argmax": grid[int(np.argmax(np.maximum(a, b)))]},
        resolution={"radial_nodes": radial_nodes, "angular_nodes": angular_nodes,
                    "grid_points": int(grid.size)})


def verify_lemma22(m, a, r, nodes=256, tol=None):
    """``||D_f(a)|| <= (1/(pi r)) int |f(a + r e^{it}) - f(a)| dt + (2/3) ||g|| r``."""
    a = complex(a)
    if not 0 < r < 1.0 - abs(a):
        raise DomainError(f"need 0 < r < 1 - |a| = {1 - abs(a)}")
    tol = _tol(m, tol)
    theta, w = periodic_trapezoid(nodes)
    fa = complex(np.ravel(m.evaluate(np.array([a])))[0])
    circle = np.sum(w * np.abs(np.asarray(m.evaluate(a + r * np.exp(1j * theta))) - fa))
    lhs = float(np.ravel(m.jets(np.array([a])).op_norm)[0])
    rhs = circle / (np.pi * r) + 2.0 * _sup_g(m) * r / 3.0
    return make_report("lem2.2", lhs, rhs, tol, inputs={"map": _label(m), "a": a, "r": r},
                       resolution=_resolution(m, circle_nodes=nodes))


def lemma22_suite(m, centers=None, factors=(0.1, 0.3, 0.5), nodes=256, tol=None):
    """Circle-average bound at ``r = 2 * factor * d(a)`` (capped below ``d(a)``); one
    report per factor, at the worst centre."""
    if centers is None:
        radii = np.array([0.0, 0.3, 0.6, 0.9])
        radii = np.minimum(radii, 0.999 * limit_radius(m))
        th = 2 * np.pi * np.arange(8) / 8
        centers = np.unique((radii[:, None] * np.exp(1j * th)).ravel())
    out = []
    for fac in factors:
        reps = []
        for a in centers:
            d = 1.0 - abs(a)
            r = min(2.0 * fac * d, 0.999 * d)
            reps.append(verify_lemma22(m, a, r, nodes, tol))
        worst = min(reps, key=lambda rep: rep.margin)
        worst.theorem_id = f"lem2.2[r={2 * fac:g}d]"
        worst.inputs["n_centers"] = len(reps)
        out.append(worst)
    return out


# Coefficient bounds

def _require_sense_preserving(m):
    if not getattr(m, "sense_preserving", True):
        raise DomainError(f"{_label(m)} is not sense-preserving")


def verify_thm3(m, n_range=range(1, 33), grid=None, n_boundary=2048, tol=None):
    """Coefficient bound via perimeter and the Bloch-type bound of ``P[f]``.

    One report per ``n`` for
    ``|a_n| + |b_n| <= K l/(2 n pi) + 2 ||g|| / (3 n)`` and one for
    ``sup ||D_{P[f]}|| (1 - |z|^2) <= sqrt(l^2 K/(4 pi^2) + 4||g||^2/9 + l sqrt(K) ||g||/(3 pi))``
    with ``l = l_f(1)``.
    """
    _require_sense_preserving(m)
    tol = _tol(m, tol)
    spec = harmonic_part(m, n_boundary)
    K, K_kind = effective_K(m)
    profile = perimeter_sup(m)
    ell = profile.sup_estimate
    G = _sup_g(m)
    if not (np.isfinite(K) and np.isfinite(ell)):
        raise ValueError("non-finite K or perimeter")
    consts = {"K": K, "K_source": K_kind, "perimeter_sup": ell, "sup_norm_g": G,
              "profile_monotone": profile.monotone,
              "profile_increasing_at_end": profile.increasing_at_end}
    res = _resolution(m, boundary_samples=n_boundary, perimeter_radii=int(profile.radii.size))
    out = []
    for n in n_range:
        lhs = spec.coefficient_sum(n)
        rhs = K * ell / (2.0 * n * np.pi) + 2.0 * G / (3.0 * n)
        out.append(make_report(f"thm3.coefficients[n={n}]", lhs, rhs, tol,
                               inputs={"map": _label(m), "n": n, "a_n": spec.a[n], "b_n": spec.b[n]},
                               constants=consts, resolution=res))
    grid = interior_grid(m) if grid is None else np.asarray(grid, dtype=complex)
    weighted = spec.op_norm(grid) * (1.0 - np.abs(grid) ** 2)
    i = int(np.argmax(weighted))
    rhs = np.sqrt(ell ** 2 * K / (4 * np.pi ** 2) + 4.0 * G ** 2 / 9.0
                  + ell * np.sqrt(K) * G / (3.0 * np.pi))
    out.append(make_report("thm3.bloch", weighted[i], rhs, tol,
                           inputs={"map": _label(m), "argmax": grid[i], "n_grid": int(grid.size)},
                           constants=consts, resolution=res))
    return out


def verify_thm4(m, n_range=range(1, 33), n_theta=64, n_boundary=2048, tol=None):
    """``|a_n| + |b_n| <= K M + (2/3) ||g||`` with ``M = sup_theta l*_f(1, theta)``."""
    _require_sense_preserving(m)
    tol = _tol(m, tol)
    spec = harmonic_part(m, n_boundary)
    K, K_kind = effective_K(m)
    M = radial_length_sup(m, n_theta)
    G = _sup_g(m)
    consts = {"K": K, "K_source": K_kind, "M": M, "sup_norm_g": G}
    res = _resolution(m, boundary_samples=n_boundary, radial_angles=n_theta)
    rhs = K * M + 2.0 * G / 3.0
    return [make_report(f"thm4.coefficients[n={n}]", spec.coefficient_sum(n), rhs, tol,
                        inputs={"map": _label(m), "n": n}, constants=consts, resolution=res,
                        sharp_tol=1e-6 * max(M, 1.0))
            for n in n_range]


# Subharmonic Schwarz lemma applied to ||D_{P[f]}||

def verify_schwarz(m, n_r=32, n_theta=64, nodes=32, n_boundary=2048, tol=1e-8):
    """Radial profile of ``phi = ||D_{P[f]}|| / (K M + (2/3)||g||)``.

    Returns two reports: the normalised profile ``A(r) <= r`` and the
    un-normalised chain ``int_0^r ||D_{P[f]}|| d rho <= K M + (2/3)||g|| r``.
    """
    _require_sense_preserving(m)
    spec = harmonic_part(m, n_boundary)
    K, K_kind = effective_K(m)
    M = radial_length_sup(m, n_theta)
    G = _sup_g(m)
    scale = K * M + 2.0 * G / 3.0
    top = limit_radius(m)
    r_grid = top * np.arange(1, n_r + 1) / n_r
    theta, _ = periodic_trapezoid(n_theta)
    A = radial_profile(lambda z: spec.op_norm(z) / scale, r_grid, theta, nodes)
    premise = bool(A.max() <= 1.0 + tol)
    consts = {"K": K, "K_source": K_kind, "M": M, "sup_norm_g": G, "premise_A_le_1": premise,
              "max_A": float(A.max())}
    res = _resolution(m, r_points=n_r, theta_points=n_theta, ray_nodes=nodes)
    profile = worst_point_report("schwarz.profile", r_grid, A, r_grid, tol,
                                 inputs={"map": _label(m)}, constants=consts, resolution=res)
    raw = radial_profile(spec.op_norm, r_grid, theta, nodes)
    chain = worst_point_report("thm4.radial-chain", r_grid, raw, K * M + 2.0 * G * r_grid / 3.0,
                               _tol(m, None), inputs={"map": _label(m)}, constants=consts,
                               resolution=res)
    return [profile, chain]


def verify_isoperimetric(m, tol=None):
    """``area f(D) <= l_f(1)^2 / (4 pi)``."""
    _require_sense_preserving(m)
    tol = _tol(m, tol)
    profile = perimeter_sup(m)
    area = image_area(m, profile.radii[-1])
    bound = profile.sup_estimate ** 2 / (4.0 * np.pi)
    return make_report("lemA.isoperimetric", area, bound, tol,
                       inputs={"map": _label(m), "radius": float(profile.radii[-1])},
                       constants={"perimeter_sup": profile.sup_estimate,
                                  "profile_monotone": profile.monotone},
                       resolution=_resolution(m, perimeter_radii=int(profile.radii.size)))


def corollary_constants(m, p=None, pairs=None, seed=0):
    """Weighted-Lipschitz constant next to the Bloch constant."""
    p = BlochParams() if p is None else p
    pairs = _pairs_for(m, pairs, seed=seed)
    return {"weighted_lipschitz": weighted_lipschitz(m, p, pairs),
            "bloch_constant": bloch_constant(m, p), "s": p.s, "alpha": p.alpha}
