"""Finitely enumerable dendroidal sets and their constructions."""

from .base import (
    DendMap,
    Dendrex,
    DendroidalSet,
    NaturalityError,
    check_naturality,
    check_presheaf,
    compose_maps,
    identity_map,
    window,
)
from .basic import DisjointUnion, Empty, Terminal, disjoint_union, empty, terminal
from .nerve import Nerve, nerve
from .pushout import AttachedCell, AttachedCells, Quotient, attach_cell, check_closed, quotient
from .representable import (
    HornSubobject,
    Representable,
    Subobject,
    boundary,
    colour_subobject,
    face_subobject,
    horn,
    map_dendrex,
    representable,
    segal_core,
    yoneda,
)
from .simplicial import ExtensionByZero, SimplicialSetFin, i_shriek, poset_nerve, random_simplicial_set, standard_simplex

__all__ = [
    "AttachedCell",
    "AttachedCells",
    "DendMap",
    "Dendrex",
    "DendroidalSet",
    "DisjointUnion",
    "Empty",
    "ExtensionByZero",
    "HornSubobject",
    "NaturalityError",
    "Nerve",
    "Quotient",
    "Representable",
    "SimplicialSetFin",
    "Subobject",
    "Terminal",
    "attach_cell",
    "boundary",
    "check_closed",
    "check_naturality",
    "check_presheaf",
    "colour_subobject",
    "compose_maps",
    "disjoint_union",
    "empty",
    "face_subobject",
    "horn",
    "i_shriek",
    "identity_map",
    "map_dendrex",
    "nerve",
    "poset_nerve",
    "quotient",
    "random_simplicial_set",
    "representable",
    "segal_core",
    "standard_simplex",
    "terminal",
    "window",
    "yoneda",
]
