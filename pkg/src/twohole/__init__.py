"""Composite conformal maps of an annulus onto a plane with two holes."""

from .bilinear import (
    BilinearParams,
    CirclePairGeometry,
    bilinear_derivative,
    bilinear_inverse,
    eval_bilinear,
    solve_bilinear_params,
)
from .composite import (
    AnnulusGrid,
    CompositeMap,
    HoleTarget,
    annulus_grid,
    build_composite,
    composite_from_bilinear,
    composite_from_geometry,
    eval_composite,
    hole_center,
    hole_radius,
    inner_hole_image,
    solve_e,
    solve_r1,
)
from .discrepancy import (
    DiscrepancyReport,
    asymptotic_amplitude,
    discrepancy_at,
    discrepancy_closed_form,
    max_discrepancy,
    reproduce_table1,
    touching_limit,
    touching_max_discrepancy,
)
from .errors import (
    BadShape,
    DegenerateDerivative,
    DomainViolation,
    InternalConsistencyError,
    MappingError,
    NonConvergence,
    NoRoot,
    OverlappingCircles,
    PoleInput,
    WrongFamily,
)
from .outer import (
    HypotrochoidSpec,
    LaurentMap,
    PolygonSpec,
    curvature_extremes,
    eval_laurent,
    generalized_binomial,
    hypotrochoid_bounds,
    hypotrochoid_map,
    laurent_derivative,
    sample_boundary,
    schwarz_christoffel_map,
    straight_edge_m,
)

__version__ = "0.1.0"
