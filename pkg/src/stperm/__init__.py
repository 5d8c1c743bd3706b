"""Computational tools for stable categories of permutation modules over F_p."""

from __future__ import annotations

__version__ = "0.1.0"

from .errors import (
    NotAPSubgroupError,
    ResourceLimitError,
    RouteMismatchError,
    StpermError,
    UnsupportedError,
    ValidationError,
)
from .gf import PrimeField
from .groups import FiniteGroup, Subgroup, order_limit
from .catalog import catalog, catalog_names, group_label
from .gsets import GSet, EquivariantMap, brauer_quotient, brauer_quotient_map, coset_gset
from .complexes import PermComplex, homology
from .stable import GModule, is_perfect, support_profile
from .sections import decomposability_verdict, section_graph
from .spectrum import cyclic_spectrum, skeleton

__all__ = [
    "EquivariantMap",
    "FiniteGroup",
    "GModule",
    "GSet",
    "NotAPSubgroupError",
    "PermComplex",
    "PrimeField",
    "ResourceLimitError",
    "RouteMismatchError",
    "StpermError",
    "Subgroup",
    "UnsupportedError",
    "ValidationError",
    "brauer_quotient",
    "brauer_quotient_map",
    "catalog",
    "catalog_names",
    "coset_gset",
    "cyclic_spectrum",
    "decomposability_verdict",
    "group_label",
    "homology",
    "is_perfect",
    "order_limit",
    "section_graph",
    "skeleton",
    "support_profile",
]
