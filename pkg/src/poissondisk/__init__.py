"""Poisson's equation on the unit disk: kernel solver, distortion functionals
and numerical checks of coefficient and regularity inequalities."""

from .catalog import CatalogMap, catalog_listing, default_catalog, parse_map
from .exceptions import (
    AliasingWarning,
    DegeneratePointError,
    DomainError,
    KernelSingularityError,
    QuadratureConvergenceError,
    ResolutionWarning,
    SenseReversalError,
)
from .geometry import (
    image_area,
    isoperimetric_check,
    perimeter,
    perimeter_sup,
    qc_constant,
    radial_length,
    radial_length_sup,
)
from .kernels import (
    BoundaryAngle,
    DiskPoint,
    green_kernel,
    poisson_kernel,
    scaled_green_dw,
    scaled_green_dwbar,
    scaled_poisson_dw,
    scaled_poisson_dwbar,
)
from .majorant import (
    Majorant,
    check_majorant_axioms,
    check_regularity,
    linear_majorant,
    parse_majorant,
    power_majorant,
)
from .solver import (
    BoundaryData,
    PoissonSolution,
    SourceField,
    WirtingerJet,
    green_potential,
    jet_norms,
    laplacian_residual,
    poisson_integral,
    solve,
    wirtinger_jet,
)

__version__ = "0.1.0"
