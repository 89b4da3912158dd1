"""Exact computations with representations of the algebras Lambda(m, n).

Lambda(m, n) is the path algebra of the quiver with loops ``a`` at vertex 1,
``b`` at vertex 2 and an arrow ``c: 1 -> 2``, modulo
``a^m = b^n = ca - bc = b^2 c = 0``.
"""

from .classify import (
    CertificateFailure,
    ClassificationReport,
    certify,
    classify,
    count_formula,
    list_general_indecomposables,
)
from .exactla import QQ, Field, Matrix, kernel_basis, rank
from .ktmod import (
    LabeledMatrix,
    RowColOp,
    TruncPoly,
    apply_op,
    dual_labeled,
    labeled_to_triple,
    triple_to_labeled,
)
from .modrep import (
    RepTriple,
    check_relations,
    degeneration_necessary,
    endo_space,
    is_isomorphic,
    local_family,
    local_tangent,
    orbit_dim,
    tangent_dim,
)
from .partitions import Partition, conjugate, dominance_leq, enumerate_partitions
from .reduce import (
    NotGeneral,
    ReductionTrace,
    reduce_to_normal_form,
    split_min_parts,
    split_one_one,
    split_repeated_parts,
)
from .strata import (
    GeneralIndecomposable,
    Stratum,
    candidate_filter,
    h_of,
    normal_form,
    stratum_dim,
    transpose_dual,
)

__version__ = "0.1.0"
