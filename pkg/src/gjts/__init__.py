"""Exact computations with generalized Jordan triple systems of second order.

Scalars live in Q(sqrt2, sqrt3); systems are given by structure constants.
The package verifies the defining identities, computes the Peirce
decomposition attached to a tripotent and analyzes the left-unit case through
the associated circle algebra.
"""

from .identities import (
    GJTS_1_1,
    GJTS_1_2,
    WEAK_COMM_1_41,
    IdentityReport,
    check_identity_1_1,
    check_identity_1_2,
    check_weak_commutativity,
)
from .labels import LABEL_ORDER, ComponentLabel
from .left_unit import (
    CircleAlgebra,
    GradedSpace,
    check_bilinear_equations,
    check_circle_properties,
    derived_products,
    extract_circle,
    involutions,
    is_left_unit,
    reconstruct_triple,
    split_circle,
    synthesize_from_circle,
)
from .linalg import Matrix, Subspace
from .models import (
    ModelDescriptor,
    build_akn_ank,
    build_ann_ann,
    build_dnk,
    build_model,
    build_structurable_matrix,
)
from .peirce import (
    PeirceDecomposition,
    TripotentContext,
    check_operator_relations,
    classify,
    make_context,
    peirce_decompose,
)
from .scalar import Scalar
from .triple import TripleSystem, from_product_oracle

__version__ = "0.1.0"
