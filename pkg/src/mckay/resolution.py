"""The local ring of the minimal resolution over one ADE singular point.

The exceptional curves are modeled abstractly from the McKay graph: one
degree-1 class per nontrivial irreducible, with self-intersection -2 and
pairwise intersections given by the (0/1) adjacency.  The degree-1 Gram
matrix is therefore the negative of the Cartan matrix of the finite
diagram.
"""

from __future__ import annotations

from .algebra import GradedAlgebra
from .chartab import McKayGraph

__all__ = ["AdjacencyError", "local_resolution_algebra", "gram_matrix", "exceptional_label"]


class AdjacencyError(ValueError):
    """A multiplicity above 1 between nontrivial irreducibles."""


def exceptional_label(irrep_index: int) -> str:
    return f"E{irrep_index}"


def local_resolution_algebra(graph: McKayGraph) -> GradedAlgebra:
    verts = [v for v in range(graph.size) if v != graph.trivial_vertex]
    labels = ["1"] + [exceptional_label(v) for v in verts] + ["[pt]"]
    degrees = [0] + [1] * len(verts) + [2]
    products = {}
    for a, v in enumerate(verts):
        products[(exceptional_label(v), exceptional_label(v))] = [("[pt]", -2)]
        for w in verts[a + 1:]:
            m = graph.adjacency[v][w]
            if m > 1:
                raise AdjacencyError(
                    f"multiplicity {m} between nontrivial irreducibles {v} and {w}"
                )
            if m:
                products[(exceptional_label(v), exceptional_label(w))] = [("[pt]", m)]
    return GradedAlgebra.build(labels, degrees, products)


def gram_matrix(algebra: GradedAlgebra):
    """Degree-1 Gram matrix, symmetric, valued in the point coefficient."""
    _, matrix = algebra.gram()
    n = len(matrix)
    for i in range(n):
        for j in range(n):
            if matrix[i][j] != matrix[j][i]:
                raise ValueError("Gram matrix is not symmetric")
    return matrix
