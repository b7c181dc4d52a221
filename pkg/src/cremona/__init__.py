"""Exact verification toolkit for determinantal Cremona transformations.

Builds rational maps from matrices of linear forms over small finite fields,
flips them through the bilinear identity, solves fibers, stratifies ranks,
extracts Hilbert data through a Buchberger engine, and checks the numerical
contraction relations; a gallery of named examples comes bundled with
machine-checkable manifests, driven by the ``cremona`` CLI.
"""

from .errors import (
    ArityError,
    BadPrime,
    BasePoint,
    BudgetExceeded,
    CharZeroUnsupported,
    ConstructionFailed,
    CremonaError,
    DimensionTooLow,
    FieldError,
    IdentityFailure,
    IncompleteBasis,
    InsufficientPoints,
    MalformedSpec,
    RangeError,
    ShapeError,
    UnknownId,
)
from .fields import GF, QQ, ExtensionField, FieldCfg, PrimeField, RationalField, field_from_cfg
from .poly import (
    Poly,
    PolyMatrix,
    ProjPoint,
    enumerate_projective_points,
    projective_count,
)
from .linalg import det_bareiss, det_laplace, echelon, kernel, max_minors, rank
from .hilbert import HilbertData, sectional_genus
from .groebner import (
    GroebnerBasis,
    Ideal,
    groebner_basis,
    hilbert_data,
    ideal_intersection,
    ideal_quotient,
    ideal_sum,
    normal_form,
    projective_emptiness,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
