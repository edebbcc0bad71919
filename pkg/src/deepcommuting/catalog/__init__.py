"""Group families, their Schur covers and the metacyclic multiplier formula."""

from .covers import (
    MetacyclicParams,
    SelfCover,
    check_projection,
    coprime_split,
    dihedral_params,
    metacyclic_multiplier_order,
    multiplier_order,
    projection_images,
    quaternion_params,
    schur_cover_presentation,
)
from .groups import (
    ConjugacyClass,
    GroupHandle,
    PermGroup,
    build_group,
    cycle_label,
    pair_generates_cyclic,
    perm_from_cycles,
    perm_parity,
    power_adjacent,
)
from .specs import (
    Abelian,
    AbelianP,
    Alternating,
    CoprimeProduct,
    Cyclic,
    Dihedral,
    GroupSpec,
    Heisenberg,
    Quaternion,
    Symmetric,
    format_spec,
    parse_spec,
    spec_order,
    validate,
)

__all__ = [
    "Abelian", "AbelianP", "Alternating", "ConjugacyClass", "CoprimeProduct", "Cyclic",
    "Dihedral", "GroupHandle", "GroupSpec", "Heisenberg", "MetacyclicParams", "PermGroup",
    "Quaternion", "SelfCover", "Symmetric", "build_group", "check_projection",
    "coprime_split", "cycle_label", "dihedral_params", "format_spec",
    "metacyclic_multiplier_order", "multiplier_order", "pair_generates_cyclic",
    "parse_spec", "perm_from_cycles", "perm_parity", "power_adjacent", "projection_images",
    "quaternion_params", "schur_cover_presentation", "spec_order", "validate",
]
