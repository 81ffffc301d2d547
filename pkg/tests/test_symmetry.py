import itertools

import pytest

from extraspecial_cayley import group_core as gc
from extraspecial_cayley.clique_coset import induced_group_on_sigma, sigma_for
from extraspecial_cayley.errors import NoSArcs, NotAutomorphismGroup, OutOfRange
from extraspecial_cayley.graph_core import Graph, distance_matrix
from extraspecial_cayley.perm_core import Permutation, PermGroup, symmetric_group, tuple_orbit
from extraspecial_cayley.symmetry import (
    CheckResult,
    check_distance_transitive,
    check_normal_cayley,
    check_s_arc_regular,
    check_s_arc_transitive,
    check_semisymmetric,
    check_t_distance_transitive,
    witness_pairs_distinct,
)

from conftest import aut_gamma, aut_sigma, context, params


def vtx(p, i, j, k):
    return gc.index_of(gc.GroupElement(i, j, k), params(p))


def complete(n):
    return Graph(n, itertools.combinations(range(n), 2))


def test_two_distance_transitive(small_p):
    ctx = context(small_p)
    r = check_t_distance_transitive(ctx.gamma, aut_gamma(small_p), 2)
    assert r.passed and r.actual == [1, 1] and r.witness is None


def test_distance3_witness_p3():
    ctx = context(3)
    hint = [[0, vtx(3, 1, 0, 1)], [0, vtx(3, 2, 1, 2)]]
    r = check_t_distance_transitive(ctx.gamma, aut_gamma(3), 3, witness_hint=hint)
    assert not r.passed
    assert r.witness == {"distance": 3, "pairs": [[0, 10], [0, 23]]}
    assert witness_pairs_distinct(aut_gamma(3), [0, 10], [0, 23])


def test_default_witness_is_rechecked(p):
    ctx = context(p)
    r = check_t_distance_transitive(ctx.gamma, ctx.N, 3)
    first, second = r.witness["pairs"]
    assert witness_pairs_distinct(ctx.N, first, second)
    assert second not in [list(t) for t in tuple_orbit(ctx.N, first)]


def test_t_range():
    ctx = context(3)
    with pytest.raises(OutOfRange):
        check_t_distance_transitive(ctx.gamma, ctx.N, 5)
    with pytest.raises(OutOfRange):
        check_t_distance_transitive(ctx.gamma, ctx.N, 0)


def test_distance_transitive_examples():
    assert not check_distance_transitive(context(3).gamma, aut_gamma(3)).passed
    assert not check_distance_transitive(context(5).gamma, aut_gamma(5)).passed
    assert check_distance_transitive(complete(5), symmetric_group(5)).passed
    assert check_t_distance_transitive(complete(5), symmetric_group(5), 1).passed


def test_not_automorphism_group():
    g = Graph(3, [(0, 1), (1, 2)])
    with pytest.raises(NotAutomorphismGroup):
        check_t_distance_transitive(g, symmetric_group(3), 1)


def test_two_arc_witness_p3():
    ctx = context(3)
    a, a2, b = vtx(3, 1, 0, 0), vtx(3, 2, 0, 0), vtx(3, 0, 1, 0)
    assert (a, a2, b) == (9, 18, 3)
    r = check_s_arc_transitive(ctx.gamma, aut_gamma(3), 2, witness_hint=[[a, 0, a2], [a, 0, b]])
    assert not r.passed
    assert r.witness == [[9, 0, 18], [9, 0, 3]]
    d = distance_matrix(ctx.gamma)
    assert d[a, a2] == 1 and d[a, b] == 2


def test_sigma_arc_transitivity():
    ctx = context(3)
    sg = sigma_for(ctx).graph
    n_sigma = induced_group_on_sigma(ctx, ctx.N)
    assert check_s_arc_transitive(sg, n_sigma, 1).passed
    assert check_s_arc_transitive(sg, aut_sigma(3), 3).passed
    assert not check_s_arc_transitive(sg, aut_sigma(3), 4).passed


def test_no_s_arcs():
    with pytest.raises(NoSArcs):
        check_s_arc_transitive(Graph(2, []), symmetric_group(2), 1)


def test_s_arc_regular_examples(small_p):
    p = small_p
    sg = sigma_for(context(p)).graph
    r = check_s_arc_regular(sg, aut_sigma(p), 3)
    assert r.passed and r.actual["group_order"] == r.actual["arcs"] == 2 * p ** 3 * (p - 1) ** 2
    assert not check_s_arc_regular(sg, aut_sigma(p), 1).passed


def test_semisymmetric_examples():
    ctx = context(3)
    sg = sigma_for(ctx).graph
    r = check_semisymmetric(sg, induced_group_on_sigma(ctx, ctx.RG))
    assert r.passed and r.actual["vertex_orbits"] == 2
    assert not check_semisymmetric(sg, induced_group_on_sigma(ctx, ctx.N)).passed
    assert not check_semisymmetric(complete(4), symmetric_group(4)).passed


def test_normal_cayley(small_p):
    r = check_normal_cayley(context(small_p), aut_gamma(small_p))
    assert r.passed and r.actual["aut_order"] == 2 * small_p ** 3 * (small_p - 1) ** 2


def test_normal_cayley_fails_for_a_non_normal_overgroup():
    # Aut of the complete graph on 4 vertices contains the regular Klein group
    # as a normal subgroup but Z4 acting regularly is not normal in S4.
    class Ctx:
        RG = PermGroup(4, [Permutation([1, 2, 3, 0])])
        autGS = PermGroup(4, [Permutation([0, 3, 2, 1])])
        N = PermGroup(4, [Permutation([1, 2, 3, 0]), Permutation([0, 3, 2, 1])])

    r = check_normal_cayley(Ctx, symmetric_group(4))
    assert not r.passed and r.actual["RG_normal"] is False


def test_monotonicity_on_sigma_and_gamma(small_p):
    p = small_p
    sg = sigma_for(context(p)).graph
    s_pass = [check_s_arc_transitive(sg, aut_sigma(p), s).passed for s in range(6)]
    assert s_pass == sorted(s_pass, reverse=True)
    g = context(p).gamma
    t_pass = [check_t_distance_transitive(g, aut_gamma(p), t).passed for t in range(1, 5)]
    assert t_pass == [True, True, False, False]


def test_check_result_serialization():
    r = CheckResult("x", False, actual={1: float("inf")}, witness={frozenset({2, 1})}, seconds=0.5)
    d = r.to_dict()
    assert d["pass"] is False and d["actual"] == {"1": "inf"} and d["seconds"] == 0.5
    assert "seconds" not in r.to_dict(timing=False)
