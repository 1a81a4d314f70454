"""Real subspaces of quaternionic Euclidean space: quaternionic Kahler
angles, protohomogeneity, equivalence, and moduli enumeration."""

from .quaternion import (
    STANDARD_BASIS,
    CanonicalBasis,
    GroupElement,
    HVector,
    Quaternion,
    apply_group,
    induced_rotation,
    random_group_element,
    random_unitary,
    right_mult,
)
from .subspace import (
    AngleTriple,
    ConstancyReport,
    NumericalFailure,
    Subspace,
    constancy_check,
    distribution_rank,
    from_spanning,
    is_h_orthogonal,
    joint_canonical_basis,
    omega,
    p_operator,
    pbar_operator,
    vector_qka,
)
from .families import (
    FamilySpec,
    admissible,
    construct,
    construct_classical,
    construct_sum,
    construct_v3,
    construct_v4,
    gram_matrix,
    min_quaternionic_dim,
)
from .classify import (
    ModuliStratum,
    TypeSignature,
    Verdict,
    are_equivalent,
    branch_of_v3,
    classify_subspace,
    factorize,
    is_protohomogeneous,
    moduli_describe,
    moduli_membership,
    representative,
    strata_for,
    type_of,
)
from .oracles import (
    det_formula_check,
    invariance_oracle,
    psd_oracle,
    steenrod_oracle,
)
from .serialize import load_subspace, save_subspace

__version__ = "0.1.0"
