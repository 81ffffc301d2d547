import itertools

import networkx as nx
import numpy as np
import pytest

from extraspecial_cayley.aut_search import (
    ColoredPartition,
    automorphism_group,
    refine,
    relabel_images,
    search_automorphisms,
    vertex_stabilizer_in_aut,
)
from extraspecial_cayley.cayley import automorphism_vertex_action
from extraspecial_cayley.clique_coset import induced_group_on_sigma, sigma_for
from extraspecial_cayley.errors import BoundExceeded
from extraspecial_cayley.graph_core import Graph, distance_partition
from extraspecial_cayley import group_core as gc
from extraspecial_cayley.perm_core import PermGroup, Permutation, orbit, stabilizer

from conftest import aut_gamma, aut_sigma, context, params


def complete(n):
    return Graph(n, itertools.combinations(range(n), 2))


def from_nx(h):
    h = nx.convert_node_labels_to_integers(h)
    return Graph(h.number_of_nodes(), h.edges())


def test_refine_examples():
    g = context(3).gamma
    assert refine(g, ColoredPartition.unit(27)).cells == (tuple(range(27)),)
    start = ColoredPartition(((0,), tuple(range(1, 27))))
    fine = refine(g, start)
    assert fine.is_equitable(g)
    dist = distance_partition(g, 0)
    for cell in fine.cells:
        assert len({dist.distance(v) for v in cell}) == 1
    assert refine(g, fine) == fine


def test_refine_idempotent_random():
    rng = np.random.default_rng(2)
    g = sigma_for(context(3)).graph
    for _ in range(10):
        colors = rng.integers(0, 3, g.n)
        p1 = refine(g, ColoredPartition.from_colors(colors))
        assert p1.is_equitable(g)
        assert refine(g, p1) == p1


@pytest.mark.parametrize(
    "graph, order",
    [
        (complete(4), 24),
        (from_nx(nx.petersen_graph()), 120),
        (from_nx(nx.cycle_graph(7)), 14),
        (from_nx(nx.hypercube_graph(3)), 48),
        (from_nx(nx.pappus_graph()), 216),
        (from_nx(nx.heawood_graph()), 336),
        (from_nx(nx.path_graph(5)), 2),
        (Graph(4, []), 24),
    ],
)
def test_known_orders(graph, order):
    group = automorphism_group(graph)
    assert group.order == order
    assert search_automorphisms(graph).order == order
    for gen in group.generators:
        assert graph.is_automorphism(gen.images)


def test_random_graphs_against_networkx():
    rng = np.random.default_rng(7)
    for _ in range(12):
        n = int(rng.integers(4, 9))
        h = nx.gnp_random_graph(n, 0.45, seed=int(rng.integers(1 << 30)))
        g = from_nx(h)
        gm = nx.algorithms.isomorphism.GraphMatcher(h, h)
        assert automorphism_group(g).order == sum(1 for _ in gm.isomorphisms_iter())


def test_gamma_orders(small_p):
    p = small_p
    assert aut_gamma(p).order == 2 * p ** 3 * (p - 1) ** 2
    assert aut_gamma(p).order % context(p).N.order == 0
    assert orbit(aut_gamma(p), 0) == set(range(p ** 3))


def test_sigma_order_and_induced_group():
    ctx = context(3)
    assert aut_sigma(3).order == 216
    induced = induced_group_on_sigma(ctx, aut_gamma(3))
    assert induced.same_elements(aut_sigma(3))


def test_vertex_stabilizer_examples():
    assert vertex_stabilizer_in_aut(complete(4), 2).order == 6
    pr = params(3)
    stab = stabilizer(aut_gamma(3), 0)
    assert stab.order == 8
    assert set(stab.elements()) == {automorphism_vertex_action(phi, pr) for phi in gc.aut_G_S(pr)}
    assert stabilizer(aut_gamma(5), 0).order == 32


def test_independent_of_vertex_order():
    g = context(3).gamma
    rng = np.random.default_rng(1)
    relabel = rng.permutation(g.n)
    shuffled = g.relabeled(relabel)
    h = automorphism_group(shuffled)
    assert h.order == 216
    back = PermGroup(g.n, [Permutation(relabel_images(x.images, np.argsort(relabel))) for x in h.generators])
    assert back.same_elements(aut_gamma(3))


def test_bound():
    with pytest.raises(BoundExceeded):
        search_automorphisms(complete(5), bound=4)
