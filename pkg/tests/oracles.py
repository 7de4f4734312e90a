"""Independent oracles the test suite checks the library against.

Nothing here reuses the library's algorithms: the Lie closure oracle works
with actual matrix brackets and linear spans, the enumeration oracle walks
permutations, and the 1-d oracles integrate profiles with adaptive
quadrature.  Values frozen into tests were produced by these routines.
"""

from __future__ import annotations

import itertools
import math

import numpy as np
from scipy.integrate import quad

from spherebl import EdgeSet


def rotation_matrix_generator(n: int, i: int, j: int) -> np.ndarray:
    """Matrix of the vector field rotating the (i, j) coordinate plane."""
    m = np.zeros((n, n))
    m[j - 1, i - 1] = 1.0
    m[i - 1, j - 1] = -1.0
    return m


class _Span:
    """Incremental linear span of flattened matrices (Gram-Schmidt)."""

    def __init__(self, dim: int):
        self.basis: list[np.ndarray] = []
        self.dim = dim

    def contains(self, mat: np.ndarray, tol: float = 1e-9) -> bool:
        v = mat.ravel().astype(float)
        for b in self.basis:
            v = v - np.dot(v, b) * b
        return float(np.linalg.norm(v)) <= tol * max(1.0, float(np.linalg.norm(mat)))

    def add(self, mat: np.ndarray, tol: float = 1e-9) -> bool:
        """Add to the span; True when the matrix was independent."""
        v = mat.ravel().astype(float)
        for b in self.basis:
            v = v - np.dot(v, b) * b
        norm = float(np.linalg.norm(v))
        if norm <= tol * max(1.0, float(np.linalg.norm(mat))):
            return False
        self.basis.append(v / norm)
        return True


def bracket_closure_oracle(A: EdgeSet) -> EdgeSet:
    """Edge set of the bracket-generated subalgebra, by brute force.

    Grows a generating list of matrices, bracketing every pair until the
    span stops growing, then tests each basis rotation for membership.
    """
    n = A.n
    gens = [rotation_matrix_generator(n, i, j) for i, j in A.sorted_edges()]
    span = _Span(n * n)
    work = []
    for g in gens:
        if span.add(g):
            work.append(g)
    frontier = list(work)
    while frontier:
        new = []
        for a in frontier:
            for b in work:
                c = a @ b - b @ a
                if span.add(c):
                    new.append(c)
        work.extend(new)
        frontier = new
    closed = {
        (i, j)
        for i, j in itertools.combinations(range(1, n + 1), 2)
        if span.contains(rotation_matrix_generator(n, i, j))
    }
    return EdgeSet(n, frozenset(closed))


def ordered_block_assignments(n: int, lengths: tuple[int, ...]) -> set:
    """All ordered tuples of disjoint sorted blocks with the given sizes,
    generated by scanning permutations (independent of the library's
    combination recursion).  Exponential; keep n <= 7."""
    out = set()
    for perm in itertools.permutations(range(1, n + 1)):
        blocks = []
        pos = 0
        for size in lengths:
            blocks.append(tuple(sorted(perm[pos:pos + size])))
            pos += size
        out.add(tuple(blocks))
    return out


def exponent_by_counting(families_edges: list[frozenset]) -> int:
    """Most recurrent missing edge, counted naively over explicit edge sets."""
    n_edges = set()
    for es in families_edges:
        n_edges |= es
    universe = set()
    verts = {v for e in n_edges for v in e}
    top = max(verts) if verts else 0
    universe = set(itertools.combinations(range(1, top + 1), 2))
    best = 0
    for e in universe:
        best = max(best, sum(1 for es in families_edges if e not in es))
    return best


# --- 1-d integral oracles (n = 3, single-variable profiles) -------------------
#
# On the 2-sphere the distribution of one coordinate is exactly uniform on
# [-1, 1], so sphere integrals of single-variable functions reduce to
# (1/2) * int_{-1}^1, with no unknown constant.


def sphere3_single_variable_integral(g, eps_breaks=()) -> float:
    pts = sorted({-1.0, 1.0, 0.0, *eps_breaks})
    total = 0.0
    for lo, hi in zip(pts[:-1], pts[1:]):
        v, _ = quad(g, lo, hi, limit=200)
        total += v
    return 0.5 * total


def truncated_extremal_norm_p(gamma: float, p: float, eps: float) -> float:
    """||f_eps||_p^p on S^2 for the single-edge symmetry, exactly.

    f_eps(t) = max(|t|, eps)^(-gamma) + max(1 - t^2, eps^2)^(-gamma).
    """

    def g(t):
        a = max(abs(t), eps) ** (-gamma)
        b = max(1.0 - t * t, eps * eps) ** (-gamma)
        return (a + b) ** p

    m = math.sqrt(1.0 - eps * eps)
    return sphere3_single_variable_integral(
        g, eps_breaks=(-m, -eps, eps, m))


def radial_lower_bound_exponent(n: int, gamma: float, bracket: int) -> float:
    """Exponent of rho in int rho^(n-2-gamma*B) (1-rho^2)^(-1/2) drho."""
    return n - 2 - gamma * bracket
