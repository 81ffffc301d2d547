import itertools

import networkx as nx
import numpy as np
import pytest

from extraspecial_cayley import group_core as gc
from extraspecial_cayley.clique_coset import right_cosets, sigma_for
from extraspecial_cayley.errors import BadPartition
from extraspecial_cayley.graph_core import (
    Graph,
    clique_graph,
    diameter,
    distance_matrix,
    distance_partition,
    girth,
    intra_block_edges,
    is_normal_cover,
    line_graph,
    maximal_cliques,
    quotient_graph,
    s_arcs,
)
from extraspecial_cayley.perm_core import orbits

from conftest import context, params


def complete(n):
    return Graph(n, itertools.combinations(range(n), 2))


def path(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def center_blocks(p):
    from extraspecial_cayley.cayley import center_subgroup

    return orbits(center_subgroup(params(p)))


def test_graph_validation():
    with pytest.raises(ValueError):
        Graph(2, [(0, 0)])
    g = Graph(3, [(1, 0), (0, 1), (2, 1)])
    assert g.edges() == [(0, 1), (1, 2)]
    assert g.adjacency[1] == (0, 2)


def test_distance_partition_examples():
    single = distance_partition(Graph(1, []), 0).spheres
    assert len(single) == 1 and set(single[0]) == {0}
    g = context(3).gamma
    sizes = [len(s) for s in distance_partition(g, 0).spheres]
    assert sizes[:3] == [1, 4, 8]
    dp = distance_partition(context(5).gamma, 0)
    assert dp.distance(gc.index_of(gc.GroupElement(1, 0, 1), params(5))) == 3


def test_distance_layering(p):
    g = context(p).gamma
    dp = distance_partition(g, 0)
    assert set().union(*dp.spheres) == set(range(g.n))
    for u, v in g.edges():
        assert abs(dp.distance(u) - dp.distance(v)) <= 1


def test_distance_matrix_matches_networkx(small_p):
    g = context(small_p).gamma
    d = distance_matrix(g)
    ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
    for u in range(0, g.n, 7):
        for v in range(g.n):
            assert d[u, v] == ref[u][v]
    assert diameter(g) == nx.diameter(to_nx(g)) == 4


def test_girth_examples():
    assert girth(complete(3)) == 3
    assert girth(path(4)) == float("inf")
    assert girth(context(3).gamma) == 3
    sg = sigma_for(context(3)).graph
    assert girth(sg) % 2 == 0 and girth(sg) >= 4
    assert girth(sg) == nx.girth(to_nx(sg))


def test_girth_against_networkx():
    rng = np.random.default_rng(3)
    for _ in range(30):
        n = int(rng.integers(3, 12))
        edges = [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.3]
        g = Graph(n, edges)
        assert girth(g) == nx.girth(to_nx(g))


def test_maximal_cliques_examples():
    assert maximal_cliques(complete(4)) == [(0, 1, 2, 3)]
    cl3 = maximal_cliques(context(3).gamma)
    assert len(cl3) == 18 and all(len(c) == 3 for c in cl3)
    assert sum(1 for c in cl3 if 0 in c) == 2
    cl5 = maximal_cliques(context(5).gamma)
    assert len(cl5) == 50 and all(len(c) == 5 for c in cl5)


def test_maximal_cliques_against_networkx(small_p):
    g = context(small_p).gamma
    ref = sorted(tuple(sorted(c)) for c in nx.find_cliques(to_nx(g)))
    assert maximal_cliques(g) == ref
    rng = np.random.default_rng(11)
    for _ in range(20):
        n = int(rng.integers(4, 14))
        h = Graph(n, [e for e in itertools.combinations(range(n), 2) if rng.random() < 0.5])
        assert maximal_cliques(h) == sorted(tuple(sorted(c)) for c in nx.find_cliques(to_nx(h)))


def test_clique_graph_examples(p):
    k4 = clique_graph(complete(4))
    assert k4.n == 1 and k4.num_edges == 0
    sg = clique_graph(context(p).gamma)
    assert sg.n == 2 * p * p and sg.valency() == p
    assert sg.is_bipartite() and sg.is_connected()


def test_line_graph_examples():
    lg = line_graph(path(3))
    assert lg.n == 2 and lg.edges() == [(0, 1)]
    sg = sigma_for(context(3)).graph
    lsg = line_graph(sg)
    assert lsg.n == 27 and lsg.valency() == 4
    # handshake oracle: edges of L(g) = sum over vertices of C(deg, 2)
    assert lsg.num_edges == sum(d * (d - 1) // 2 for d in sg.degrees()) == 2 * 9 * 3
    assert nx.is_isomorphic(to_nx(lsg), nx.line_graph(to_nx(sg)))


def test_quotient_examples():
    g = context(3).gamma
    single = quotient_graph(g, [[v] for v in range(g.n)])
    assert single.edges() == g.edges()
    q3 = quotient_graph(g, center_blocks(3))
    assert (q3.n, q3.valency(), q3.is_connected()) == (9, 4, True)
    q5 = quotient_graph(context(5).gamma, center_blocks(5))
    assert (q5.n, q5.valency()) == (25, 8)


def test_bad_partitions():
    g = path(4)
    with pytest.raises(BadPartition):
        quotient_graph(g, [[0, 1], [2]])
    with pytest.raises(BadPartition):
        quotient_graph(g, [[0, 1], [1, 2, 3]])


def test_cover_examples():
    g = context(3).gamma
    ok, _ = is_normal_cover(g, [[v] for v in range(g.n)])
    assert ok
    ok, cert = is_normal_cover(g, center_blocks(3))
    assert ok and cert.ok
    a_cosets = [sorted(c) for c in right_cosets("A", params(3))]
    ok, cert = is_normal_cover(g, a_cosets)
    assert not ok and cert.reason == "edge inside block"
    assert len(intra_block_edges(g, a_cosets)) == 27


def test_cover_implies_equal_valency(p):
    g = context(p).gamma
    blocks = center_blocks(p)
    ok, _ = is_normal_cover(g, blocks)
    assert ok and quotient_graph(g, blocks).valency() == g.valency()


def test_s_arcs_examples():
    assert s_arcs(path(3), 0) == [(0,), (1,), (2,)]
    sg3 = sigma_for(context(3)).graph
    assert len(s_arcs(sg3, 3)) == 216
    sg5 = sigma_for(context(5)).graph
    assert len(s_arcs(sg5, 3)) == 4000
    arcs = s_arcs(sg3, 2)
    assert arcs == sorted(arcs)


def test_s_arc_recurrence(p):
    sg = sigma_for(context(p)).graph
    k = sg.valency()
    counts = [len(s_arcs(sg, s)) for s in range(4)]
    assert counts[1] == counts[0] * k
    assert counts[2] == counts[1] * (k - 1)
    assert counts[3] == counts[2] * (k - 1)


def test_serialization_round_trip():
    g = context(3).gamma
    text = g.to_json()
    assert Graph.from_json(text) == g
    assert text == Graph.from_json(text).to_json()
    dot = sigma_for(context(3)).graph.to_dot("sigma")
    assert dot.startswith("graph sigma {") and dot.count(" -- ") == 27
