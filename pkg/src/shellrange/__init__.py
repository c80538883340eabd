"""Geometric descriptors of ranges of 2x2 complex matrices in hyperbolic models.

The library computes exact descriptors (shape case, foci, semi-axes, radii,
asymptotic points, boundary conics) of the numerical range, the
Davis-Wielandt shell and the conformal range, across the Beltrami-Cayley-
Klein, parabolic Cayley-Klein and Poincare half-plane models, and verifies
them against a brute-force sampling oracle.
"""

from .config import DEFAULT_TOLERANCES, Tolerances
from .exceptions import (
    InternalConsistencyError,
    KindMismatch,
    ModelDimensionMismatch,
    NonFiniteEntry,
    NoRealLinePair,
    OutsideModel,
    ParseError,
    ShellRangeError,
    SingularDenominator,
    TooFewSamples,
    WrongCase,
)
from .hyperbolic import (
    HPoint,
    INFINITY,
    boundary_action,
    dist,
    embed,
    horo_signed_distance,
    is_infinity,
    moebius_point_action,
    transcribe,
)
from .matrices import (
    IDENTITY_MAP,
    MoebiusMap,
    as_matrix,
    moebius_apply,
    normality_defect,
    operator_norm,
    real_double,
    schur_form,
)
from .oracle import Report, SampleCloud, empirical_axes, sample, verify_membership
from .ranges import (
    ConicBCK,
    DualQuadric,
    NumericalRangeDescriptor,
    RangeDescriptor,
    ShellDescriptor,
    boundary_polyline,
    conformal_dual_conic,
    conformal_range,
    dw_shell,
    ellipse_membership,
    extract_foci,
    moment_map,
    numerical_range,
    parabola_membership,
    shell_dual_quadric,
)
from .spectra import (
    CanonicalRep,
    CharacteristicValues,
    Invariants,
    SpectralClass,
    TripleRatio,
    canonical_matrix,
    canonical_representative,
    characteristic_values,
    classify,
    eigendistance,
    eigenvalues,
    invariants,
    semi_axes,
    triple_ratio,
)

__version__ = "0.1.0"
