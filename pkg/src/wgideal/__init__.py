"""Exact W-graph ideal computations for finite Coxeter groups."""

from .coxeter import CapExceeded, CoxeterMatrix, CoxeterSystem, InvalidMatrix, ParabolicSubsystem
from .ideal import (
    IdealContext, build_context, build_graph_from_ideal, is_wgraph_ideal, kl_special_cases, r_polynomials,
)
from .laurent import LaurentPoly, PolyMatrix, alternating_product
from .wgraph import WGraph, action_matrix, kl_preorder, verify_wgraph

__all__ = [
    "CapExceeded", "CoxeterMatrix", "CoxeterSystem", "InvalidMatrix", "ParabolicSubsystem",
    "IdealContext", "build_context", "build_graph_from_ideal", "is_wgraph_ideal", "kl_special_cases",
    "r_polynomials", "LaurentPoly", "PolyMatrix", "alternating_product", "WGraph", "action_matrix",
    "kl_preorder", "verify_wgraph",
]
