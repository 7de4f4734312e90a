"""Rotation-field subsets on the sphere and their block structure.

The infinitesimal rotation of the x_i x_j coordinate plane of R^n is
identified with the edge (i, j), 1 <= i < j <= n, of the complete graph on
n vertices.  A subset of these basis fields is therefore an edge set.
Bracketing the rotations of two planes that share a coordinate axis yields
the rotation of the third plane, so the Lie algebra generated by an edge
set meets the basis exactly in the union of complete graphs (cliques) over
the connected components of the edge set.  A subset is called maximal when
it equals that closure, i.e. when it is already a disjoint union of
cliques.

A maximal subset is summarised by a ``Symmetry``: the 0/1 indicator
vectors of its cliques of size >= 2 (the blocks, weakly decreasing in
size) together with the indicator of the coordinates that belong to no
block.  A smooth function on the sphere annihilated by the subset is
invariant under rotations inside each block; it depends only on the block
radii and the free coordinates.

Vertex labels and multi-index positions are 1-based everywhere in the
public interface, matching the JSON wire format.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, EmptySymmetryError, NotMaximalError

#: Multi-indices are packable into one machine word below this bound; counts
#: use Python integers and never overflow regardless.
MAX_DIMENSION = 64


def _check_dimension(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise ValueError(f"dimension must be an integer, got {n!r}")
    if n < 3:
        raise ValueError(f"ambient dimension must be >= 3, got {n}")
    if n > MAX_DIMENSION:
        raise ValueError(f"ambient dimension capped at {MAX_DIMENSION}, got {n}")


@dataclass(frozen=True)
class MultiIndex:
    """A 0/1 vector of length ``n`` marking a coordinate block."""

    n: int
    bits: tuple[int, ...]

    def __post_init__(self):
        _check_dimension(self.n)
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))
        if len(self.bits) != self.n:
            raise ValueError(f"expected {self.n} bits, got {len(self.bits)}")
        if any(b not in (0, 1) for b in self.bits):
            raise ValueError("bits must be 0 or 1")

    @classmethod
    def from_support(cls, n: int, indices: Iterable[int]) -> "MultiIndex":
        """Build from 1-based coordinate indices."""
        idx = set(indices)
        if any(i < 1 or i > n for i in idx):
            raise ValueError(f"support indices must lie in [1, {n}]")
        return cls(n, tuple(1 if i + 1 in idx else 0 for i in range(n)))

    @classmethod
    def zeros(cls, n: int) -> "MultiIndex":
        return cls(n, (0,) * n)

    @classmethod
    def ones(cls, n: int) -> "MultiIndex":
        return cls(n, (1,) * n)

    @property
    def weight(self) -> int:
        """Number of marked coordinates."""
        return sum(self.bits)

    def support(self) -> tuple[int, ...]:
        """Marked coordinates, 1-based, ascending."""
        return tuple(i + 1 for i, b in enumerate(self.bits) if b)

    def complement(self) -> "MultiIndex":
        return MultiIndex(self.n, tuple(1 - b for b in self.bits))

    def dot(self, other: "MultiIndex") -> int:
        if self.n != other.n:
            raise DimensionMismatchError(
                f"multi-indices of dimension {self.n} and {other.n}")
        return sum(a * b for a, b in zip(self.bits, other.bits))

    def to_list(self) -> list[int]:
        return list(self.bits)


def orthogonal(a: MultiIndex, b: MultiIndex) -> bool:
    """True when the two blocks share no coordinate."""
    return a.dot(b) == 0


def complement(a: MultiIndex) -> MultiIndex:
    """Componentwise 1 - bits; an involution."""
    return a.complement()


@dataclass(frozen=True)
class EdgeSet:
    """A set of coordinate-plane rotations, stored as edges (i, j), i < j."""

    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        _check_dimension(self.n)
        norm = frozenset((int(i), int(j)) for i, j in self.edges)
        for i, j in norm:
            if not (1 <= i < j <= self.n):
                raise ValueError(
                    f"edge ({i}, {j}) must satisfy 1 <= i < j <= {self.n}")
        object.__setattr__(self, "edges", norm)

    @classmethod
    def of(cls, n: int, edges: Iterable[Sequence[int]]) -> "EdgeSet":
        return cls(n, frozenset((e[0], e[1]) for e in edges))

    @classmethod
    def empty(cls, n: int) -> "EdgeSet":
        return cls(n, frozenset())

    @classmethod
    def full(cls, n: int) -> "EdgeSet":
        return cls(n, frozenset(itertools.combinations(range(1, n + 1), 2)))

    def __contains__(self, edge) -> bool:
        return tuple(edge) in self.edges

    def __len__(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()]}

    @classmethod
    def from_dict(cls, data: dict) -> "EdgeSet":
        return cls.of(data["n"], data["edges"])


def complete_edges(n: int) -> list[tuple[int, int]]:
    """All C(n, 2) edges of the complete graph on {1, ..., n}."""
    return list(itertools.combinations(range(1, n + 1), 2))


def _components(A: EdgeSet) -> list[tuple[int, ...]]:
    """Connected components of the graph ([n], edges), as sorted tuples.

    Isolated vertices come back as singletons.
    """
    adj: dict[int, set[int]] = {v: set() for v in range(1, A.n + 1)}
    for i, j in A.edges:
        adj[i].add(j)
        adj[j].add(i)
    seen: set[int] = set()
    comps = []
    for v in range(1, A.n + 1):
        if v in seen:
            continue
        stack, comp = [v], []
        seen.add(v)
        while stack:
            u = stack.pop()
            comp.append(u)
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        comps.append(tuple(sorted(comp)))
    return comps


def lie_closure(A: EdgeSet) -> EdgeSet:
    """Basis intersection of the Lie algebra generated by ``A``.

    Two edges sharing a vertex bracket to the edge closing the triangle, so
    the closure is the union of cliques over the connected components.
    """
    closed: set[tuple[int, int]] = set()
    for comp in _components(A):
        if len(comp) >= 2:
            closed.update(itertools.combinations(comp, 2))
    return EdgeSet(A.n, frozenset(closed))


def is_maximal(A: EdgeSet) -> bool:
    """True when ``A`` equals its Lie closure."""
    return lie_closure(A).edges == A.edges


@dataclass(frozen=True)
class Symmetry:
    """Block decomposition of a maximal subset.

    ``alphas`` are the clique indicators, weights >= 2 and weakly
    decreasing; ``r_mask`` marks the coordinates outside every block.  The
    blocks are pairwise disjoint and ``alphas[0] + sum(alphas[1:]) +
    r_mask`` covers every coordinate exactly once.

    Equal-weight blocks may appear in any order: ordered block assignments
    are distinct ``Symmetry`` values on purpose, because balanced families
    count them separately.  :func:`decompose` always returns the canonical
    order (ties broken by smallest contained index); use
    :meth:`canonical` to normalise a hand-built value.
    """

    n: int
    alphas: tuple[MultiIndex, ...]
    r_mask: MultiIndex

    def __post_init__(self):
        _check_dimension(self.n)
        object.__setattr__(self, "alphas", tuple(self.alphas))
        if not self.alphas:
            raise ValueError("a symmetry needs at least one block")
        for a in self.alphas:
            if a.n != self.n:
                raise DimensionMismatchError(
                    f"block of dimension {a.n} inside symmetry of dimension {self.n}")
            if a.weight < 2:
                raise ValueError("every block must contain at least 2 coordinates")
        weights = [a.weight for a in self.alphas]
        if any(weights[i] < weights[i + 1] for i in range(len(weights) - 1)):
            raise ValueError("block weights must be weakly decreasing")
        for a, b in itertools.combinations(self.alphas, 2):
            if not orthogonal(a, b):
                raise ValueError("blocks must be pairwise disjoint")
        if sum(weights) > self.n:
            raise ValueError("blocks cannot cover more than n coordinates")
        expected = _residual_mask(self.n, self.alphas)
        if self.r_mask.bits != expected.bits:
            raise ValueError("r_mask inconsistent with the blocks")

    @classmethod
    def of(cls, n: int, alphas: Sequence[MultiIndex]) -> "Symmetry":
        return cls(n, tuple(alphas), _residual_mask(n, alphas))

    @classmethod
    def from_blocks(cls, n: int, blocks: Sequence[Sequence[int]]) -> "Symmetry":
        """Build from 1-based index blocks, given in the intended order."""
        return cls.of(n, [MultiIndex.from_support(n, b) for b in blocks])

    def blocks(self) -> tuple[tuple[int, ...], ...]:
        return tuple(a.support() for a in self.alphas)

    def length_profile(self) -> tuple[int, ...]:
        return tuple(a.weight for a in self.alphas)

    def edges(self) -> EdgeSet:
        """The maximal subset this symmetry decomposes: cliques on the blocks."""
        es: set[tuple[int, int]] = set()
        for a in self.alphas:
            es.update(itertools.combinations(a.support(), 2))
        return EdgeSet(self.n, frozenset(es))

    def is_canonical(self) -> bool:
        key = [(-a.weight, a.support()[0]) for a in self.alphas]
        return key == sorted(key)

    def canonical(self) -> "Symmetry":
        """Reorder equal-weight blocks by smallest contained index."""
        ordered = sorted(self.alphas, key=lambda a: (-a.weight, a.support()[0]))
        return Symmetry(self.n, tuple(ordered), self.r_mask)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "alphas": [a.to_list() for a in self.alphas],
            "r": self.r_mask.to_list(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Symmetry":
        n = data["n"]
        sym = cls.of(n, [MultiIndex(n, bits) for bits in data["alphas"]])
        if "r" in data and tuple(data["r"]) != sym.r_mask.bits:
            raise ValueError("supplied r mask inconsistent with the blocks")
        return sym


def _residual_mask(n: int, alphas: Sequence[MultiIndex]) -> MultiIndex:
    # complement(alpha_1) - sum of the remaining blocks, componentwise
    bits = list(alphas[0].complement().bits)
    for a in alphas[1:]:
        for i, b in enumerate(a.bits):
            bits[i] -= b
    if any(b < 0 for b in bits):
        raise ValueError("overlapping blocks leave a negative residual mask")
    return MultiIndex(n, tuple(bits))


def decompose(A: EdgeSet) -> Symmetry:
    """Block decomposition of a maximal edge set.

    Raises :class:`EmptySymmetryError` on the empty set and
    :class:`NotMaximalError` when ``A`` is not bracket-closed; closing is
    left to an explicit :func:`lie_closure` call so that no input is
    silently altered.  The cliques on the returned blocks reproduce ``A``
    exactly.
    """
    if not A.edges:
        raise EmptySymmetryError(f"no edges to decompose in dimension {A.n}")
    if not is_maximal(A):
        raise NotMaximalError(
            "edge set is not bracket-closed; apply lie_closure first")
    comps = [c for c in _components(A) if len(c) >= 2]
    comps.sort(key=lambda c: (-len(c), c[0]))
    return Symmetry.of(A.n, [MultiIndex.from_support(A.n, c) for c in comps])
