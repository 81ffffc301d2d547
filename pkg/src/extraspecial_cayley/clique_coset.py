"""The clique graph of Cay(G, S), built twice: from cliques and from cosets.

Vertices of the bipartite graph are right cosets ``<a>x`` (family A, listed
first) and ``<b>x`` (family B), each family sorted by the smallest vertex
index in the coset.  An edge ``{<a>x, <b>y}`` meets in exactly one group
element, which identifies the edges with the vertices of the Cayley graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Literal

import numpy as np

from . import group_core as gc
from .cayley import CayleyContext
from .errors import MismatchWitness, NotCliquePreserving, NotIsomorphism
from .graph_core import Graph, clique_graph, line_graph, maximal_cliques
from .group_core import GroupElement, GroupParams
from .perm_core import PermGroup, Permutation, induced_group

Family = Literal["A", "B"]


@dataclass(frozen=True, order=True)
class CosetVertex:
    family: Family
    rep: GroupElement

    def label(self) -> str:
        return f"{self.family}:{self.rep.label()}"


def _generator(family: Family) -> GroupElement:
    return GroupElement(1, 0, 0) if family == "A" else GroupElement(0, 1, 0)


def coset(family: Family, x: GroupElement, params: GroupParams) -> frozenset[int]:
    """Vertex indices of ``<a>x`` or ``<b>x``."""
    gen = _generator(family)
    return frozenset(
        gc.index_of(gc.multiply(gc.power(gen, m, params), x, params), params) for m in range(params.p)
    )


def right_cosets(family: Family, params: GroupParams) -> list[frozenset[int]]:
    seen: set[frozenset[int]] = set()
    for v in range(params.order):
        seen.add(coset(family, gc.element_at(v, params), params))
    return sorted(seen, key=min)


@dataclass(frozen=True)
class CosetGraph:
    graph: Graph
    vertices: tuple[CosetVertex, ...]
    members: tuple[frozenset[int], ...]

    def index(self, cv: CosetVertex) -> int:
        return self.vertices.index(cv)


def build_coset_graph(params: GroupParams) -> CosetGraph:
    """Bipartite coset graph on ``<a>``- and ``<b>``-cosets joined when they meet."""
    members: list[frozenset[int]] = []
    verts: list[CosetVertex] = []
    for family in ("A", "B"):
        for cs in right_cosets(family, params):
            members.append(cs)
            verts.append(CosetVertex(family, gc.element_at(min(cs), params)))
    p2 = params.p ** 2
    where_b: dict[int, int] = {}
    for bi in range(p2, 2 * p2):
        for v in members[bi]:
            where_b[v] = bi
    edges = set()
    for ai in range(p2):
        for v in members[ai]:
            edges.add((ai, where_b[v]))
    graph = Graph(len(verts), sorted(edges), [cv.label() for cv in verts])
    return CosetGraph(graph, tuple(verts), tuple(members))


@dataclass(frozen=True)
class Sigma:
    """Clique graph of Γ with vertices ordered like the coset graph."""

    graph: Graph
    cliques: tuple[frozenset[int], ...]
    index: dict

    def vertex_of(self, clique) -> int:
        return self.index[frozenset(clique)]


@lru_cache(maxsize=8)
def sigma_for(ctx: CayleyContext) -> Sigma:
    params = ctx.params
    cliques = [frozenset(c) for c in maximal_cliques(ctx.gamma)]
    fam_a = sorted((c for c in cliques if c == coset("A", ctx.label(min(c)), params)), key=min)
    fam_b = sorted((c for c in cliques if c == coset("B", ctx.label(min(c)), params)), key=min)
    ordered = fam_a + fam_b
    if len(ordered) != len(cliques):
        odd = sorted(set(cliques) - set(ordered), key=min)
        raise MismatchWitness("clique is not a coset of <a> or <b>", witness=sorted(odd[0]))
    labels = [f"A:{ctx.label(min(c)).label()}" for c in fam_a] + [f"B:{ctx.label(min(c)).label()}" for c in fam_b]
    g = clique_graph(ctx.gamma, [sorted(c) for c in ordered])
    g = Graph(g.n, g.edges(), labels)
    return Sigma(g, tuple(ordered), {c: i for i, c in enumerate(ordered)})


@dataclass
class Identification:
    mapping: list[int]
    ok: bool
    detail: str = ""


def identify_clique_and_coset_graphs(ctx: CayleyContext) -> Identification:
    """Map each maximal clique to the coset with the same vertex set; check edges both ways."""
    cos = build_coset_graph(ctx.params)
    generic = maximal_cliques(ctx.gamma)
    cg = clique_graph(ctx.gamma, generic)
    where = {m: i for i, m in enumerate(cos.members)}
    mapping = []
    for c in generic:
        key = frozenset(c)
        if key not in where:
            raise MismatchWitness("clique is not a coset of <a> or <b>", witness=list(c))
        mapping.append(where[key])
    if sorted(mapping) != list(range(cos.graph.n)):
        return Identification(mapping, False, "clique-to-coset map is not a bijection")
    mapped = {tuple(sorted((mapping[u], mapping[v]))) for u, v in cg.edges()}
    if mapped != set(cos.graph.edges()):
        return Identification(mapping, False, "edge sets differ under the identification")
    return Identification(mapping, True)


@dataclass
class LineGraphIsomorphism:
    mapping: list[int]
    line: Graph
    ok: bool


def line_graph_isomorphism(ctx: CayleyContext, sigma: Graph, members=None) -> LineGraphIsomorphism:
    """Send each edge of ``sigma`` to the unique group element in its two cosets.

    ``members`` gives the vertex set (in Γ) of every vertex of ``sigma``;
    defaults to the clique sets of :func:`sigma_for`.
    """
    if members is None:
        members = sigma_for(ctx).cliques
    lg = line_graph(sigma)
    mapping = []
    for u, v in sigma.edges():
        common = members[u] & members[v]
        if len(common) != 1:
            raise NotIsomorphism("edge does not meet in exactly one element", witness=(u, v))
        mapping.append(next(iter(common)))
    if sorted(mapping) != list(range(ctx.gamma.n)):
        raise NotIsomorphism("edge map is not a bijection onto the group")
    sigma_img = np.asarray(mapping)
    a_line = lg.matrix
    a_gamma = ctx.gamma.matrix
    permuted = a_gamma[np.ix_(sigma_img, sigma_img)]
    if not np.array_equal(permuted, a_line):
        bad = np.argwhere(permuted != a_line)[0]
        raise NotIsomorphism("adjacency differs", witness=(int(bad[0]), int(bad[1])))
    return LineGraphIsomorphism(mapping, lg, True)


def induced_action_on_sigma(ctx: CayleyContext, g_perm: Permutation) -> Permutation:
    """Permutation of cliques induced by an automorphism of Γ."""
    sig = sigma_for(ctx)
    img = []
    for c in sig.cliques:
        target = frozenset(int(g_perm.images[v]) for v in c)
        if target not in sig.index:
            raise NotCliquePreserving("image of a clique is not a clique")
        img.append(sig.index[target])
    return Permutation(img)


def induced_group_on_sigma(ctx: CayleyContext, group: PermGroup) -> PermGroup:
    sig = sigma_for(ctx)
    return PermGroup(sig.graph.n, [induced_action_on_sigma(ctx, g) for g in group.generators])


def sigma_edge_group(ctx: CayleyContext, group_on_sigma: PermGroup) -> PermGroup:
    """Action on the edge set of Σ (edges sorted as in ``Graph.edges``)."""
    return induced_group(group_on_sigma, sigma_for(ctx).graph.edges(), unordered=True)
