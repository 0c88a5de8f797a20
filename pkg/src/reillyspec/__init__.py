"""Spectra of polygonal and star-shaped 1-varifolds and the Reilly inequality."""

from .errors import *  # noqa: F401,F403
from .families import (
    FAKE_REGULAR,
    LOSANGE,
    NOT_EQUALITY,
    REGULAR,
    STAR_STATIONARY,
    TRAPEZE,
    Equilateral,
    FakeRegular,
    Losange,
    RandomSimple,
    Regular,
    SplitMix64,
    StationaryStar,
    Trapeze,
    build,
    fake_regular,
    losange,
    random_simple_polygon,
    regular_polygon,
    star_stationary,
    trapeze,
)
from .geometry import (
    CurvatureMeasure,
    Polygon,
    StarGraph,
    center_at_vertex_barycenter,
    curvature_vectors,
    curvature_vectors_star,
    interior_angles,
    planar_dimension,
    transform_polygon,
    validate_polygon,
    validate_star,
    vertex_barycenter,
)
from .oracle import OracleResult, charpoly_roots, rayleigh_montecarlo_upper
from .reilly import (
    EqualityClass,
    ReillyReport,
    SphereReference,
    classify_equality,
    classify_star,
    hsiung_minkowski_residual,
    reilly_report,
    reilly_report_polygon,
    reilly_report_star,
    sphere_reference,
)
from .spectral import (
    PiecewiseAffine,
    Spectrum,
    closed_form_spectrum,
    cycle_laplacian,
    eigensolve,
    first_order_residual,
    jacobi_eigh,
    lambda1,
    polygon_spectrum,
    reconstruct_eigenfunction,
    star_laplacian,
)
from .transfer import (
    characteristic,
    characteristic_shooting,
    find_eigenvalues_transfer,
    monodromy,
    trapeze_characteristic,
)

__version__ = "0.1.0"
