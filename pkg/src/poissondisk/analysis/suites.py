"""Named verification suites over a mapping handle.

A suite is a deterministic list of verifier calls; ``run_suite`` returns
their reports in a fixed order.  Sense-reversing mappings are skipped by
the suites whose hypotheses require a quasiconformal map.
"""

from ..majorant import power_majorant
from .functionals import BlochParams, pair_samples, limit_radius
from . import verify as v

SUITES = ("thm1", "thm2", "thm3", "thm4", "lem21", "lem22", "isoperimetric", "schwarz")
NEEDS_QC = frozenset({"thm3", "thm4", "isoperimetric", "schwarz"})
THM2_ALPHAS = (1.0, 1.5)

# Sample sizes per mapping kind.  Every jet of a solver-backed map costs a
# full area quadrature, so its suites use fewer pairs and smaller local rules.
CLOSED_FORM_PROFILE = {"n_pairs": 10_000, "segment_nodes": 32, "osc_radial": 32,
                       "osc_angular": 64, "circle_nodes": 256}
QUADRATURE_PROFILE = {"n_pairs": 300, "segment_nodes": 16, "osc_radial": 8,
                      "osc_angular": 16, "circle_nodes": 128}


def resolution_profile(m):
    return dict(CLOSED_FORM_PROFILE if getattr(m, "closed", False) else QUADRATURE_PROFILE)


def _thm1(m, seed, prof):
    r_max = min(1.0 - 2.0 ** -12, limit_radius(m))
    pairs = pair_samples(prof["n_pairs"], seed=seed, r_max=r_max)
    nodes = prof["segment_nodes"]
    out = []
    for omega in (None, power_majorant(0.5)):
        suff = v.verify_thm1_sufficiency(m, omega=omega, pairs=pairs, nodes=nodes)
        out.append(v.verify_thm1_necessity(m, suff.constants["lipschitz_constant"], omega=omega,
                                           pairs=pairs))
        out.append(suff)
        out.append(v.verify_thm1_chain(m, omega=omega, pairs=pairs, nodes=nodes))
    return out


def _thm2(m, prof):
    local = {"n_radial": prof["osc_radial"], "n_angular": prof["osc_angular"]}
    out = []
    for alpha in THM2_ALPHAS:
        p = BlochParams(alpha=alpha)
        out.append(v.verify_thm2_forward(m, p, **local))
        out.append(v.verify_thm2_reverse(m, p, **local))
    return out


def suite_applies(m, suite):
    return suite not in NEEDS_QC or getattr(m, "sense_preserving", True)


def run_suite(m, suite="all", seed=0, n_pairs=None, n_range=range(1, 33), tolerance=None):
    """Run one named suite (or ``"all"``) on ``m`` and return its reports.

    Parameters
    ----------
    m : mapping handle
        A catalog map or a fitted solution.
    suite : str
        One of :data:`SUITES` or ``"all"``.
    seed : int
        Seed of the Lipschitz pair sampler.
    n_pairs : int, optional
        Number of quasi-random pairs; defaults to the mapping's profile
        (see :func:`resolution_profile`).
    tolerance : float, optional
        Overrides the mapping's default tolerance in every report.
    """
    if suite == "all":
        return [r for s in SUITES for r in run_suite(m, s, seed, n_pairs, n_range, tolerance)]
    if suite not in SUITES:
        raise KeyError(f"unknown suite {suite!r}; known: {', '.join(SUITES)}, all")
    if not suite_applies(m, suite):
        return []
    prof = resolution_profile(m)
    if n_pairs is not None:
        prof["n_pairs"] = int(n_pairs)
    if suite == "thm1":
        reps = _thm1(m, seed, prof)
    elif suite == "thm2":
        reps = _thm2(m, prof)
    elif suite == "thm3":
        reps = v.verify_thm3(m, n_range)
    elif suite == "thm4":
        reps = v.verify_thm4(m, n_range)
    elif suite == "lem21":
        reps = [v.verify_lemma21(m.source, radial_nodes=getattr(m, "radial_nodes", 64),
                                 angular_nodes=getattr(m, "angular_nodes", 128))]
    elif suite == "lem22":
        reps = v.lemma22_suite(m, nodes=prof["circle_nodes"])
    elif suite == "isoperimetric":
        reps = [v.verify_isoperimetric(m)]
    else:
        reps = v.verify_schwarz(m)
    if tolerance is not None:
        for r in reps:
            r.tolerance = float(tolerance)
            r.holds = bool(r.margin >= -r.tolerance)
    return reps
