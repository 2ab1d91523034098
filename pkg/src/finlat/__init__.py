"""Finite topological spaces, continuous-map classification, and
function-lattice structure checks.

The package splits into a small core (spaces, maps, relations, lattices,
operators), an interchange layer (`records`), and a verification layer
(`verify`) that re-derives everything against independent references.
"""

from .finspace import (
    FinSpace,
    InvalidTopology,
    SpaceTooLarge,
    SubsetProps,
    canonical_relabel,
    classify_subset,
    discrete_space,
    enumerate_topologies,
    from_stars,
    make_space,
    subspace,
)
from .contmap import (
    ContMap,
    MapClassification,
    NotContinuous,
    PROCEDURES,
    Procedure,
    classify_map,
    decide_by,
    enumerate_continuous_maps,
    image,
    make_map,
    preimage,
    saturation,
)
from .equivrel import (
    EquivRel,
    JoinResult,
    PartitionError,
    eqq_condition_i,
    eqq_condition_ii,
    from_blocks,
    from_pairs,
    identity_relation,
    is_closed_relation,
    join_closed,
    meet,
    quotient,
    saturate,
)
from .funclat import (
    ConstraintSystem,
    SublatticeFlags,
    canonical_form,
    classify_sublattice,
    contains,
    disjoint_complement,
    full_space,
    intersection,
    member,
    solution_basis,
    zero_ideal,
)
from .comphom import (
    CertificateReport,
    HomMatrix,
    NotHomomorphism,
    certify_composition,
    hoc_conditions,
    hom_from_map,
    is_homomorphism,
)
from .records import (
    RecordError,
    load_record,
    parse_records,
)

__version__ = "0.1.0"

__all__ = [
    "FinSpace",
    "InvalidTopology",
    "SpaceTooLarge",
    "SubsetProps",
    "canonical_relabel",
    "classify_subset",
    "discrete_space",
    "enumerate_topologies",
    "from_stars",
    "make_space",
    "subspace",
    "ContMap",
    "MapClassification",
    "NotContinuous",
    "PROCEDURES",
    "Procedure",
    "classify_map",
    "decide_by",
    "enumerate_continuous_maps",
    "image",
    "make_map",
    "preimage",
    "saturation",
    "EquivRel",
    "JoinResult",
    "PartitionError",
    "eqq_condition_i",
    "eqq_condition_ii",
    "from_blocks",
    "from_pairs",
    "identity_relation",
    "is_closed_relation",
    "join_closed",
    "meet",
    "quotient",
    "saturate",
    "ConstraintSystem",
    "SublatticeFlags",
    "canonical_form",
    "classify_sublattice",
    "contains",
    "disjoint_complement",
    "full_space",
    "intersection",
    "member",
    "solution_basis",
    "zero_ideal",
    "CertificateReport",
    "HomMatrix",
    "NotHomomorphism",
    "certify_composition",
    "hoc_conditions",
    "hom_from_map",
    "is_homomorphism",
    "RecordError",
    "load_record",
    "parse_records",
    "__version__",
]
