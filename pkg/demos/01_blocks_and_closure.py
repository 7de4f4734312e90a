#!/usr/bin/env python3
"""Rotation-field subsets as graphs: closure, maximality, decomposition.

The rotation of the x_i x_j plane is the edge (i, j).  Bracketing two
rotations that share an axis produces the third edge of the triangle, so
the subalgebra generated by an edge set meets the basis in the union of
cliques over its connected components.
"""

from spherebl import EdgeSet, Symmetry, decompose, is_maximal, lie_closure

print("A chain of two edges on n=4 closes into a triangle:")
chain = EdgeSet.of(4, [(1, 2), (2, 3)])
print(f"  {chain.sorted_edges()}  ->  {lie_closure(chain).sorted_edges()}")
print(f"  maximal? {is_maximal(chain)}")

print("\nTwo disjoint edges are already closed:")
pair = EdgeSet.of(4, [(1, 2), (3, 4)])
print(f"  {pair.sorted_edges()}  ->  maximal? {is_maximal(pair)}")

print("\nDecomposition into blocks plus free coordinates:")
for n, edges in [(4, [(1, 2)]),
                 (4, [(1, 2), (3, 4)]),
                 (6, [(1, 2), (1, 3), (2, 3), (5, 6)])]:
    sym = decompose(EdgeSet.of(n, edges))
    print(f"  n={n} {edges}")
    print(f"    blocks {sym.blocks()}, free coordinates {sym.r_mask.support()}")

print("\nA symmetry round-trips through its clique edge set:")
sym = Symmetry.from_blocks(6, [(1, 2, 3), (5, 6)])
print(f"  blocks {sym.blocks()} -> edges {sym.edges().sorted_edges()}")
print(f"  decompose(edges) == canonical form? {decompose(sym.edges()) == sym.canonical()}")
