"""Exact-arithmetic engine for double affine Lie algebra modules."""

__version__ = "0.1.0"

from .algebra import (
    C1,
    C2,
    D1,
    D2,
    DoubleAffine,
    Element,
    LatticeVector,
    Sym,
    h_,
    jacobi_exhaustive,
    jacobi_sample_check,
    x_,
)
from .extremal import (
    ExtremalReport,
    embedding_check,
    extremal_space,
    irreducibility_probe,
    truncated_maximal_component,
    vanishes_in_truncated_quotient,
)
from .garland import (
    AnnihilatorPolynomial,
    LambdaSeries,
    annihilator_check,
    check_evaluation_relation,
    check_two_factor_relation,
    garland_check,
    lambda_coefficient,
    nilpotency_index,
)
from .linalg import SparseMatrix
from .modules import (
    IMAGINARY,
    LEVEL_ZERO,
    PARABOLIC,
    Decomposition,
    InducedModule,
    InsufficientTruncation,
    ModuleVector,
    Truncation,
    TruncationOverflow,
    Weight,
    chain_dims,
    create_module,
)
from .partition import (
    affine_coordinates,
    affine_height,
    dominates,
    from_affine_coordinates,
    in_imaginary_set,
    in_level_plus,
    in_parabolic_cone,
    parabolic_value,
    roots_in_box,
    symmetric_part,
    symmetric_span_member,
)
from .rootsys import CartanMatrix, RootSystem
from .syntax import format_element, format_vector, parse_element, parse_weight
from .weyl import (
    FiniteModule,
    WeylSpec,
    build_weyl_module,
    highest_h_line_dim,
    verify_cyclic_relations,
)
