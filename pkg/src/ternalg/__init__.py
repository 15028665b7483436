"""Ternary algebra of complex third-order hypermatrices.

Associative triple products, rotation invariants, the weight decomposition,
the traceless q-cyclic space with its bilinear K-form, and the right-biunit
construction.  See the README for the CLI and file format.
"""

from ._backend import BACKEND
from .core import (
    DEFAULT_ATOL,
    DEFAULT_RTOL,
    EPS6,
    Q,
    QBAR,
    CodecError,
    InputError,
    MembershipError,
    RegularityError,
    allclose_cx,
    hermitian_inner,
    isclose_cx,
    levi_civita,
    new_hypermatrix,
    norm,
    random_hypermatrix,
    read_hypermatrix,
    slice_matrix,
    tau,
    write_hypermatrix,
)
from .ternary import (
    CANONICAL_SCHEMES,
    ContractionScheme,
    ProductKind,
    SchemeResult,
    SchemeSurvey,
    associativity_residual,
    biunit_residual,
    enumerate_schemes,
    ternary_product,
    ternary_product_naive,
)
from .rotation import InvariantRecord, invariants, random_rotation, rotate, rotation_from_euler
from .decomp import (
    CyclicParts,
    ExclusionReport,
    WeightParts,
    cyclic_decompose,
    cyclic_split_weight2,
    exclusion_residuals,
    substitute,
    weight_decompose,
    weight_residuals,
    xi_project,
)
from .qcyclic import (
    basis,
    from_coords,
    h_matrix_closed,
    h_matrix_direct,
    k_form,
    k_matrix,
    make_biunit,
    restricted_invariants_check,
    to_coords,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DEFAULT_ATOL",
    "DEFAULT_RTOL",
    "EPS6",
    "Q",
    "QBAR",
    "CodecError",
    "InputError",
    "MembershipError",
    "RegularityError",
    "allclose_cx",
    "hermitian_inner",
    "isclose_cx",
    "levi_civita",
    "new_hypermatrix",
    "norm",
    "random_hypermatrix",
    "read_hypermatrix",
    "slice_matrix",
    "tau",
    "write_hypermatrix",
    "CANONICAL_SCHEMES",
    "ContractionScheme",
    "ProductKind",
    "SchemeResult",
    "SchemeSurvey",
    "associativity_residual",
    "biunit_residual",
    "enumerate_schemes",
    "ternary_product",
    "ternary_product_naive",
    "InvariantRecord",
    "invariants",
    "random_rotation",
    "rotate",
    "rotation_from_euler",
    "CyclicParts",
    "ExclusionReport",
    "WeightParts",
    "cyclic_decompose",
    "cyclic_split_weight2",
    "exclusion_residuals",
    "substitute",
    "weight_decompose",
    "weight_residuals",
    "xi_project",
    "basis",
    "from_coords",
    "h_matrix_closed",
    "h_matrix_direct",
    "k_form",
    "k_matrix",
    "make_biunit",
    "restricted_invariants_check",
    "to_coords",
    "__version__",
]
