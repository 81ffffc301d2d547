"""Undirected simple graphs and the structural algorithms used by the checks."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import BadPartition

INF = float("inf")


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``labels`` is an optional per-vertex tuple of strings used for export.
    """

    def __init__(self, n: int, edges: Iterable[tuple[int, int]], labels: Sequence[str] | None = None):
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range")
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.adjacency: tuple[tuple[int, ...], ...] = tuple(tuple(sorted(a)) for a in adj)
        self.labels: tuple[str, ...] | None = tuple(labels) if labels is not None else None
        if self.labels is not None and len(self.labels) != n:
            raise ValueError("label count does not match vertex count")

    @classmethod
    def from_adjacency_matrix(cls, matrix: np.ndarray, labels=None) -> "Graph":
        us, vs = np.nonzero(np.triu(matrix, 1))
        return cls(len(matrix), zip(us.tolist(), vs.tolist()), labels)

    @cached_property
    def neighbor_sets(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(a) for a in self.adjacency)

    @cached_property
    def matrix(self) -> np.ndarray:
        m = np.zeros((self.n, self.n), dtype=np.uint8)
        for u, nb in enumerate(self.adjacency):
            m[u, list(nb)] = 1
        m.setflags(write=False)
        return m

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u] if u < v]

    def arcs(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adjacency[u]]

    @property
    def num_edges(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def valency(self) -> int | None:
        """Common degree, or None if the graph is not regular."""
        degs = set(self.degrees())
        return degs.pop() if len(degs) == 1 else None

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbor_sets[u]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(distance_partition(self, 0).vertices()) == self.n

    def bipartition(self) -> tuple[list[int], list[int]] | None:
        """Two-colouring classes if bipartite, else None."""
        color = [-1] * self.n
        for s in range(self.n):
            if color[s] >= 0:
                continue
            color[s] = 0
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adjacency[u]:
                    if color[w] < 0:
                        color[w] = 1 - color[u]
                        queue.append(w)
                    elif color[w] == color[u]:
                        return None
        return [v for v in range(self.n) if color[v] == 0], [v for v in range(self.n) if color[v] == 1]

    def is_bipartite(self) -> bool:
        return self.bipartition() is not None

    def is_automorphism(self, images: Sequence[int] | np.ndarray) -> bool:
        img = np.asarray(images)
        m = self.matrix
        return bool(np.array_equal(m[np.ix_(img, img)], m))

    def relabeled(self, images: Sequence[int]) -> "Graph":
        """Copy with vertex ``v`` renamed to ``images[v]``."""
        img = list(images)
        labels = None
        if self.labels is not None:
            labels = [""] * self.n
            for v, lab in enumerate(self.labels):
                labels[img[v]] = lab
        return Graph(self.n, [(img[u], img[v]) for u, v in self.edges()], labels)

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adjacency == other.adjacency

    def __hash__(self):
        return hash((self.n, self.adjacency))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.num_edges})"

    # serialization ----------------------------------------------------

    def to_json(self) -> str:
        payload = {"n": self.n, "edges": [list(e) for e in self.edges()], "labels": list(self.labels) if self.labels else None}
        return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "Graph":
        data = json.loads(text)
        return cls(data["n"], [tuple(e) for e in data["edges"]], data.get("labels"))

    def to_dot(self, name: str = "G") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.n):
            lab = self.labels[v] if self.labels else str(v)
            lines.append(f'  {v} [label="{lab}"];')
        for u, v in self.edges():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class DistancePartition:
    source: int
    spheres: tuple[frozenset[int], ...]

    def vertices(self) -> frozenset[int]:
        return frozenset().union(*self.spheres)

    @property
    def eccentricity(self) -> int:
        return len(self.spheres) - 1

    def distance(self, v: int) -> int | None:
        for i, sph in enumerate(self.spheres):
            if v in sph:
                return i
        return None


def distance_partition(g: Graph, u: int) -> DistancePartition:
    if not 0 <= u < g.n:
        raise ValueError("vertex out of range")
    dist = {u: 0}
    layers = [[u]]
    while True:
        nxt = []
        for x in layers[-1]:
            for w in g.adjacency[x]:
                if w not in dist:
                    dist[w] = len(layers)
                    nxt.append(w)
        if not nxt:
            break
        layers.append(nxt)
    return DistancePartition(u, tuple(frozenset(layer) for layer in layers))


def distance_matrix(g: Graph) -> np.ndarray:
    """All-pairs BFS distances; -1 marks unreachable pairs."""
    d = np.full((g.n, g.n), -1, dtype=np.int32)
    for u in range(g.n):
        for i, sph in enumerate(distance_partition(g, u).spheres):
            d[u, list(sph)] = i
    return d


def diameter(g: Graph) -> int | float:
    if not g.is_connected():
        return INF
    return max(distance_partition(g, u).eccentricity for u in range(g.n))


def pairs_at_distance(g: Graph, i: int) -> list[tuple[int, int]]:
    """Ordered pairs ``(u, v)`` with ``d(u, v) = i``, sorted."""
    out = []
    for u in range(g.n):
        spheres = distance_partition(g, u).spheres
        if i < len(spheres):
            out.extend((u, v) for v in sorted(spheres[i]))
    return out


def girth(g: Graph) -> int | float:
    """Length of a shortest cycle (BFS from every vertex); inf for forests."""
    best = INF
    for root in range(g.n):
        dist = [-1] * g.n
        parent = [-1] * g.n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                break
            for w in g.adjacency[u]:
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def maximal_cliques(g: Graph) -> list[tuple[int, ...]]:
    """All maximal cliques via Bron-Kerbosch with Tomita pivoting."""
    nbrs = g.neighbor_sets
    found: list[tuple[int, ...]] = []

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        if not p and not x:
            found.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda u: len(p & nbrs[u]))
        for v in sorted(p - nbrs[pivot]):
            expand(r + [v], p & nbrs[v], x & nbrs[v])
            p.discard(v)
            x.add(v)

    if g.n:
        expand([], set(range(g.n)), set())
    return sorted(found)


def clique_graph(g: Graph, cliques: Sequence[Sequence[int]] | None = None) -> Graph:
    """Intersection graph of the maximal cliques (in sorted order unless given)."""
    if cliques is None:
        cliques = maximal_cliques(g)
    sets = [frozenset(c) for c in cliques]
    containing: dict[int, list[int]] = {}
    for ci, c in enumerate(sets):
        for v in c:
            containing.setdefault(v, []).append(ci)
    edges = set()
    for members in containing.values():
        for x in range(len(members)):
            for y in range(x + 1, len(members)):
                edges.add((members[x], members[y]))
    labels = ["{" + ",".join(map(str, sorted(c))) + "}" for c in sets]
    return Graph(len(sets), sorted(edges), labels)


def line_graph(g: Graph) -> Graph:
    """Vertices are the edges of ``g`` in sorted order; labelled ``"u-v"``."""
    edges = g.edges()
    at: dict[int, list[int]] = {}
    for ei, (u, v) in enumerate(edges):
        at.setdefault(u, []).append(ei)
        at.setdefault(v, []).append(ei)
    new_edges = set()
    for incident in at.values():
        for x in range(len(incident)):
            for y in range(x + 1, len(incident)):
                new_edges.add((incident[x], incident[y]))
    return Graph(len(edges), sorted(new_edges), [f"{u}-{v}" for u, v in edges])


def _block_of(g: Graph, partition: Sequence[Iterable[int]]) -> tuple[list[frozenset[int]], list[int]]:
    blocks = [frozenset(b) for b in partition]
    block_of = [-1] * g.n
    for bi, b in enumerate(blocks):
        if not b:
            raise BadPartition(f"block {bi} is empty")
        for v in b:
            if not 0 <= v < g.n:
                raise BadPartition(f"vertex {v} out of range")
            if block_of[v] >= 0:
                raise BadPartition(f"vertex {v} lies in blocks {block_of[v]} and {bi}")
            block_of[v] = bi
    missing = [v for v in range(g.n) if block_of[v] < 0]
    if missing:
        raise BadPartition(f"vertices not covered: {missing[:5]}")
    return blocks, block_of


def intra_block_edges(g: Graph, partition: Sequence[Iterable[int]]) -> list[tuple[int, int]]:
    _, block_of = _block_of(g, partition)
    return [(u, v) for u, v in g.edges() if block_of[u] == block_of[v]]


def quotient_graph(g: Graph, partition: Sequence[Iterable[int]]) -> Graph:
    """Blocks adjacent iff some edge crosses between them; intra-block edges ignored."""
    blocks, block_of = _block_of(g, partition)
    edges = set()
    for u, v in g.edges():
        bu, bv = block_of[u], block_of[v]
        if bu != bv:
            edges.add((min(bu, bv), max(bu, bv)))
    labels = ["{" + ",".join(map(str, sorted(b))) + "}" for b in blocks]
    return Graph(len(blocks), sorted(edges), labels)


@dataclass
class CoverCertificate:
    ok: bool
    reason: str = ""
    blocks: tuple[int, ...] = field(default_factory=tuple)


def is_normal_cover(g: Graph, partition: Sequence[Iterable[int]]) -> tuple[bool, CoverCertificate]:
    """Blocks independent and adjacent block pairs joined by perfect matchings."""
    blocks, block_of = _block_of(g, partition)
    for u, v in g.edges():
        if block_of[u] == block_of[v]:
            return False, CoverCertificate(False, "edge inside block", (block_of[u],))
    quotient = quotient_graph(g, blocks)
    for bi, bj in quotient.edges():
        b, c = blocks[bi], blocks[bj]
        if len(b) != len(c):
            return False, CoverCertificate(False, "adjacent blocks of different size", (bi, bj))
        for x, y in ((b, c), (c, b)):
            for v in x:
                if len(g.neighbor_sets[v] & y) != 1:
                    return False, CoverCertificate(False, "not a perfect matching", (bi, bj))
    if g.valency() != quotient.valency():
        raise AssertionError("cover with differing valency")
    return True, CoverCertificate(True)


def s_arcs(g: Graph, s: int) -> list[tuple[int, ...]]:
    """All s-arcs (no immediate backtracking), lexicographically ordered."""
    if s < 0:
        raise ValueError("s must be non-negative")
    arcs = [(v,) for v in range(g.n)]
    for _ in range(s):
        nxt = []
        for arc in arcs:
            prev = arc[-2] if len(arc) >= 2 else -1
            for w in g.adjacency[arc[-1]]:
                if w != prev:
                    nxt.append(arc + (w,))
        arcs = nxt
    return arcs
