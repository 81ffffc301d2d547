"""The clique graph of the Cayley graph, its coset description, and the line graph back."""

from extraspecial_cayley import group_core as gc
from extraspecial_cayley.aut_search import automorphism_group
from extraspecial_cayley.cayley import build_cayley
from extraspecial_cayley.clique_coset import (
    build_coset_graph,
    identify_clique_and_coset_graphs,
    induced_group_on_sigma,
    line_graph_isomorphism,
    sigma_for,
)
from extraspecial_cayley.graph_core import girth, s_arcs
from extraspecial_cayley.symmetry import check_s_arc_regular, check_semisymmetric

params = gc.GroupParams.from_prime(3)
ctx = build_cayley(params)
sigma = sigma_for(ctx)
sg = sigma.graph
print("cliques:", len(sigma.cliques), "valency", sg.valency(), "girth", girth(sg))  # Pappus graph at p = 3
print("first clique", sorted(sigma.cliques[0]), "label", sg.labels[0])

print("same as coset graph:", sg == build_coset_graph(params).graph)
print("identification ok:", identify_clique_and_coset_graphs(ctx).ok)

iso = line_graph_isomorphism(ctx, sg)
print("L(sigma) -> gamma ok:", iso.ok, " edge 0 ->", ctx.label(iso.mapping[0]))

rg = induced_group_on_sigma(ctx, ctx.RG)
print(check_semisymmetric(sg, rg).actual)   # one edge orbit, two vertex orbits

aut = automorphism_group(sg)
print("#3-arcs", len(s_arcs(sg, 3)), "|Aut(sigma)|", aut.order)
print("3-arc-regular:", check_s_arc_regular(sg, aut, 3).passed)
