"""Full automorphism groups by individualization-refinement with backtracking.

The first path down the search tree individualizes the smallest vertex of
the first smallest non-singleton cell at every level until the partition is
discrete.  Walking back up, for each level ``k`` the search tries every
vertex ``w`` of the level-``k`` target cell that is not yet known to lie in
the orbit of the base vertex under the automorphisms found so far (all of
which fix the base prefix).  A successful leaf yields an automorphism; the
group order is the product of the basic orbit lengths.

Refinement is colour refinement with canonical re-ranking: a vertex's new
colour is the rank of ``(old colour, neighbour counts per colour)``.  Ranks
depend only on the graph structure and the input colouring, so isomorphic
nodes of the tree produce corresponding partitions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import BoundExceeded
from .graph_core import Graph
from .perm_core import PermGroup, Permutation, orbit, stabilizer

DEFAULT_VERTEX_BOUND = 1000


@dataclass(frozen=True)
class ColoredPartition:
    """Ordered list of disjoint cells covering ``0..n-1``."""

    cells: tuple[tuple[int, ...], ...]

    @classmethod
    def unit(cls, n: int) -> "ColoredPartition":
        return cls((tuple(range(n)),))

    @classmethod
    def from_colors(cls, colors: np.ndarray) -> "ColoredPartition":
        k = int(colors.max()) + 1 if len(colors) else 0
        cells = [[] for _ in range(k)]
        for v, c in enumerate(colors.tolist()):
            cells[c].append(v)
        return cls(tuple(tuple(c) for c in cells if c))

    def colors(self, n: int) -> np.ndarray:
        out = np.full(n, -1, dtype=np.int64)
        for ci, cell in enumerate(self.cells):
            out[list(cell)] = ci
        if np.any(out < 0):
            raise ValueError("partition does not cover all vertices")
        return out

    def is_discrete(self) -> bool:
        return all(len(c) == 1 for c in self.cells)

    def is_equitable(self, g: Graph) -> bool:
        cellsets = [frozenset(c) for c in self.cells]
        for cell in self.cells:
            for other in cellsets:
                counts = {len(g.neighbor_sets[v] & other) for v in cell}
                if len(counts) > 1:
                    return False
        return True


def _rank_rows(key: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Distinct rows in lexicographic order and the rank of every row."""
    order = np.lexsort(key.T[::-1])
    sk = key[order]
    change = np.empty(len(key), dtype=bool)
    change[0] = True
    change[1:] = np.any(sk[1:] != sk[:-1], axis=1)
    ranks = np.empty(len(key), dtype=np.int64)
    ranks[order] = np.cumsum(change) - 1
    return sk[change], ranks


def _refine(adj: np.ndarray, colors: np.ndarray) -> tuple[np.ndarray, bytes]:
    """Coarsest equitable refinement plus a label-free invariant of the result."""
    n = len(colors)
    _, colors = np.unique(colors, return_inverse=True)
    colors = colors.reshape(-1)
    k = int(colors.max()) + 1
    while True:
        onehot = np.zeros((n, k), dtype=np.float32)
        onehot[np.arange(n), colors] = 1.0
        counts = np.rint(adj @ onehot).astype(np.int64)
        key = np.concatenate([colors[:, None], counts], axis=1)
        uniq, new = _rank_rows(key)
        if len(uniq) == k:
            sizes = np.bincount(new, minlength=k)
            # equitable: every row of a cell has the same counts, so uniq is the quotient
            invariant = sizes.tobytes() + uniq[:, 1:].tobytes()
            return new, invariant
        colors, k = new, len(uniq)


def _individualize(colors: np.ndarray, v: int) -> np.ndarray:
    out = 2 * colors
    out[v] += 1
    return out


def refine(g: Graph, partition: ColoredPartition) -> ColoredPartition:
    """Coarsest equitable partition refining ``partition`` (cell order kept)."""
    colors, _ = _refine(g.matrix.astype(np.float32), partition.colors(g.n))
    return ColoredPartition.from_colors(colors)


def _target_cell(colors: np.ndarray) -> int | None:
    sizes = np.bincount(colors)
    nontrivial = np.nonzero(sizes > 1)[0]
    if len(nontrivial) == 0:
        return None
    return int(nontrivial[np.argmin(sizes[nontrivial])])


@dataclass
class AutSearchResult:
    generators: list[Permutation]
    order: int
    base: list[int]
    basic_orbit_sizes: list[int]
    nodes: int = 0
    levels: list[int] = field(default_factory=list)


class _Search:
    def __init__(self, g: Graph):
        self.n = g.n
        self.adj = g.matrix.astype(np.float32)
        self.adj_int = g.matrix
        self.nodes = 0
        colors, inv = _refine(self.adj, np.zeros(self.n, dtype=np.int64))
        self.path_colors = [colors]
        self.path_inv = [inv]
        self.base: list[int] = []
        self.targets: list[int] = []
        while True:
            cell = _target_cell(colors)
            if cell is None:
                break
            v = int(np.nonzero(colors == cell)[0][0])
            self.base.append(v)
            self.targets.append(cell)
            colors, inv = _refine(self.adj, _individualize(colors, v))
            self.path_colors.append(colors)
            self.path_inv.append(inv)
        self.depth = len(self.base)
        self.first_leaf = np.argsort(self.path_colors[-1])

    def _leaf_perm(self, colors: np.ndarray) -> Permutation | None:
        sigma = np.empty(self.n, dtype=np.int64)
        sigma[self.first_leaf] = np.argsort(colors)
        a = self.adj_int
        if np.array_equal(a[np.ix_(sigma, sigma)], a):
            return Permutation(sigma)
        return None

    def _dfs(self, colors: np.ndarray, level: int) -> Permutation | None:
        self.nodes += 1
        if level == self.depth:
            return self._leaf_perm(colors)
        cell = self.targets[level]
        for u in np.nonzero(colors == cell)[0].tolist():
            child, inv = _refine(self.adj, _individualize(colors, u))
            if inv != self.path_inv[level + 1]:
                continue
            found = self._dfs(child, level + 1)
            if found is not None:
                return found
        return None

    def run(self) -> AutSearchResult:
        gens: list[Permutation] = []
        gen_levels: list[int] = []
        orbit_sizes = [0] * self.depth
        for level in reversed(range(self.depth)):
            base_v = self.base[level]
            colors = self.path_colors[level]
            cell = np.nonzero(colors == self.targets[level])[0].tolist()

            def current_orbit() -> frozenset[int]:
                stab_gens = [g for g, lv in zip(gens, gen_levels) if lv >= level]
                return orbit(PermGroup(self.n, stab_gens), base_v)

            orb = current_orbit()
            for w in cell:
                if w in orb:
                    continue
                child, inv = _refine(self.adj, _individualize(colors, w))
                if inv != self.path_inv[level + 1]:
                    continue
                perm = self._dfs(child, level + 1)
                if perm is not None:
                    gens.append(perm)
                    gen_levels.append(level)
                    orb = current_orbit()
            orbit_sizes[level] = len(orb)
        order = int(np.prod(orbit_sizes, dtype=object)) if orbit_sizes else 1
        return AutSearchResult(gens, order, list(self.base), orbit_sizes, self.nodes, gen_levels)


def search_automorphisms(g: Graph, *, bound: int = DEFAULT_VERTEX_BOUND) -> AutSearchResult:
    if g.n > bound:
        raise BoundExceeded(f"graph has {g.n} vertices, search bound is {bound}")
    if g.n == 0:
        return AutSearchResult([], 1, [], [])
    return _Search(g).run()


def automorphism_group(g: Graph, *, bound: int = DEFAULT_VERTEX_BOUND) -> PermGroup:
    """Full automorphism group; generators from the search, elements on demand."""
    result = search_automorphisms(g, bound=bound)
    return PermGroup(g.n, result.generators)


def vertex_stabilizer_in_aut(g: Graph, v: int, *, bound: int = DEFAULT_VERTEX_BOUND) -> PermGroup:
    return stabilizer(automorphism_group(g, bound=bound), v)


def relabel_images(perm: Sequence[int] | np.ndarray, relabel: Sequence[int]) -> np.ndarray:
    """Conjugate image array of ``perm`` under the vertex renaming ``relabel``."""
    r = np.asarray(relabel)
    out = np.empty(len(r), dtype=np.int64)
    out[r] = r[np.asarray(perm)]
    return out
