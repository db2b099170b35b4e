"""Generic enumerated-group engine."""

from .core import (
    GROUP_BOUND,
    GroupHandle,
    close,
    element_order,
    element_orders,
    has_order,
    intersection,
    is_abelian,
    is_normal,
    join,
    noncommuting_pair,
    power,
    trivial_subgroup,
)
from .structure import (
    ConjugacyClass,
    Fingerprint,
    StructureProbe,
    center,
    centralizer,
    class_data,
    conjugacy_classes,
    derived_subgroup,
    is_perfect,
    iso_fingerprint,
    normal_closure,
    preimage,
    quotient,
    structure_probe,
    sylow,
)
from .frobenius import FrobeniusDecomposition, frobenius_structure
from .lattice import ORACLE_BOUND, SubgroupLattice, all_subgroups, maximal_subgroups, subgroup_lattice

__all__ = [
    "GROUP_BOUND",
    "GroupHandle",
    "close",
    "element_order",
    "element_orders",
    "has_order",
    "intersection",
    "is_abelian",
    "is_normal",
    "join",
    "noncommuting_pair",
    "power",
    "trivial_subgroup",
    "ConjugacyClass",
    "Fingerprint",
    "StructureProbe",
    "center",
    "centralizer",
    "class_data",
    "conjugacy_classes",
    "derived_subgroup",
    "is_perfect",
    "iso_fingerprint",
    "normal_closure",
    "preimage",
    "quotient",
    "structure_probe",
    "sylow",
    "FrobeniusDecomposition",
    "frobenius_structure",
    "ORACLE_BOUND",
    "SubgroupLattice",
    "all_subgroups",
    "maximal_subgroups",
    "subgroup_lattice",
]
