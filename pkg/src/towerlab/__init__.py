"""Finite-scale laboratory for automorphism towers, normalizer towers and
quantifier-free types over parameter sets."""

from .groups import Group, Subgroup, validate_group
from .autgroup import automorphism_group
from .towers import automorphism_tower, normalizer_tower

__version__ = "0.1.0"

__all__ = [
    "Group",
    "Subgroup",
    "validate_group",
    "automorphism_group",
    "automorphism_tower",
    "normalizer_tower",
    "__version__",
]
