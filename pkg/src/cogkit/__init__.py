"""Finite complexes of groups: scwols, developments, and equivariant
assembly of classifying spaces for proper actions."""

from .groups import FinGroup, GroupHom, Permutation, cyclic_group, make_hom, symmetric_group, trivial_group
from .simplicial import SimplicialComplex, barycentric_subdivision, build_complex
from .scwol import ComposableTuple, DeltaComplex, Scwol, realization, scwol_of_complex
from .complexes import (
    ComplexOfGroups,
    MorphismToGroup,
    SimplicialAction,
    induce_from_action,
    validate_cog,
    validate_morphism_to_group,
)
from .development import develop, local_development, roundtrip
from .assembly import assemble_E, build_compatible_system, cubical_chain_complex
from .homology import homology, smith_normal_form

__version__ = "0.1.0"
