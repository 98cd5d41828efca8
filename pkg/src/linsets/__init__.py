"""Exact computations with F_q-linear sets of PG(r-1, q^n)."""
from .field_tower import Tower, TowerSpec, make_tower, tower_for
from .fq_linalg import Subspace, scalar_span_over, span
from .linset_core import LinearSet, linear_set

__version__ = "0.1.0"

__all__ = ["LinearSet", "Subspace", "Tower", "TowerSpec", "linear_set", "make_tower",
           "scalar_span_over", "span", "tower_for"]
