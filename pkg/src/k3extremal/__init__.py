"""Classification toolkit for extremal elliptic K3 surfaces without semi-stable fibers."""

from .configurations import (
    CASE_A_TYPES,
    Configuration,
    PreconditionError,
    check_deg_j_identity,
    deg_j,
    enumerate_case,
    q_invariants,
    type_index,
)
from .kodaira import (
    ComponentGroup,
    FiberError,
    FiberType,
    component_group,
    euler_number,
    is_reducible,
    lattice_rank,
    root_label,
)
from .lattices import (
    DiscriminantForm,
    DynkinLabel,
    GramLattice,
    LatticeError,
    anti_isometry_exists,
    direct_sum,
    discriminant_form,
    gram_of,
    hyperbolic_u,
    index_of_sublattice,
    overlattice_extend,
)
from .mordell_weil import (
    SectionAssignment,
    TorsionReport,
    contribution,
    height,
    pair_contribution,
    pair_height,
    section_correction,
    torsion_search,
)
from .realizability import (
    BinaryEvenForm,
    Realization,
    d_lattice_quotient,
    exclude_trivial_mw,
    fiber_root_sum,
    gluing_evidence,
    picard_candidate,
    realize,
    reduced_binary_forms,
    verify_published_witness,
)
from .report import classification_report, group_name

__version__ = "0.1.0"

__all__ = [
    "CASE_A_TYPES",
    "BinaryEvenForm",
    "ComponentGroup",
    "Configuration",
    "DiscriminantForm",
    "DynkinLabel",
    "FiberError",
    "FiberType",
    "GramLattice",
    "LatticeError",
    "PreconditionError",
    "Realization",
    "SectionAssignment",
    "TorsionReport",
    "anti_isometry_exists",
    "check_deg_j_identity",
    "classification_report",
    "component_group",
    "contribution",
    "d_lattice_quotient",
    "deg_j",
    "direct_sum",
    "discriminant_form",
    "enumerate_case",
    "euler_number",
    "exclude_trivial_mw",
    "fiber_root_sum",
    "gluing_evidence",
    "gram_of",
    "group_name",
    "height",
    "hyperbolic_u",
    "index_of_sublattice",
    "is_reducible",
    "lattice_rank",
    "overlattice_extend",
    "pair_contribution",
    "pair_height",
    "picard_candidate",
    "q_invariants",
    "realize",
    "reduced_binary_forms",
    "root_label",
    "section_correction",
    "torsion_search",
    "type_index",
    "verify_published_witness",
]
