"""Markov bases of the bipartite graph models K_{3,N} via toric fiber products."""

from . import cone, dio, exact, fiber, holes, markov, model, notation, tfp
from .markov import MoveSet, markov_basis, minimize
from .model import named_design

__all__ = ["cone", "dio", "exact", "fiber", "holes", "markov", "model", "notation", "tfp",
           "MoveSet", "markov_basis", "minimize", "named_design"]
