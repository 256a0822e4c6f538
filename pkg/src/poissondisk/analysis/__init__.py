"""Function-space functionals, coefficient spectra and inequality verifiers."""

from .functionals import (
    BlochParams,
    bloch_constant,
    bloch_norm,
    curve_condition_check,
    interior_grid,
    lipschitz_constant,
    mean_oscillation,
    oscillation_constant,
    pair_samples,
    radial_profile,
    segment_integrals,
    weighted_lipschitz,
)
from .report import (
    CSV_COLUMNS,
    SHARPNESS_TOL,
    VerificationReport,
    make_report,
    reports_to_csv,
    reports_to_json,
)
from .spectrum import CoefficientSpectrum, harmonic_coefficients, harmonic_part
from .suites import SUITES, run_suite
from .verify import (
    corollary_constants,
    lemma22_suite,
    theorem2_grid,
    verify_isoperimetric,
    verify_lemma21,
    verify_lemma22,
    verify_schwarz,
    verify_thm1_chain,
    verify_thm1_necessity,
    verify_thm1_sufficiency,
    verify_thm2_forward,
    verify_thm2_reverse,
    verify_thm3,
    verify_thm4,
)

__all__ = [name for name in dir() if not name.startswith("_")]
