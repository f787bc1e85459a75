"""Exact polynomial differential forms on the n-cube and the trimmed serendipity spaces."""

from trimser.exact import binom, enumerate_index_sets, enumerate_multi_indices
from trimser.forms import (
    PolyForm,
    exterior_derivative,
    homogeneous_component,
    koszul,
    ldeg,
    linear_degree,
    trace,
    wedge,
)
from trimser.linalg import FormSpace, contains, equal, image, intersect, is_direct, kernel, plus, span, subspace
from trimser.spaces import SpaceKind, appendix_b_dim, closed_form_dim, dim_formula, generate_space

__version__ = "0.1.0"

__all__ = [
    "FormSpace",
    "PolyForm",
    "SpaceKind",
    "appendix_b_dim",
    "closed_form_dim",
    "binom",
    "contains",
    "dim_formula",
    "enumerate_index_sets",
    "enumerate_multi_indices",
    "equal",
    "exterior_derivative",
    "generate_space",
    "homogeneous_component",
    "image",
    "intersect",
    "is_direct",
    "kernel",
    "koszul",
    "ldeg",
    "linear_degree",
    "plus",
    "span",
    "subspace",
    "trace",
    "wedge",
]
