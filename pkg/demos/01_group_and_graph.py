"""Walk through the group, its S-preserving automorphisms and the Cayley graph at p = 5."""

from extraspecial_cayley import group_core as gc
from extraspecial_cayley.cayley import build_cayley, sphere_elements
from extraspecial_cayley.graph_core import distance_partition, girth
from extraspecial_cayley.group_core import GroupElement as E

params = gc.GroupParams.from_prime(5)
print("p =", params.p, " t =", params.t, " |G| =", params.order)

a, b, c = E(1, 0, 0), E(0, 1, 0), E(0, 0, 1)
print("ab =", gc.multiply(a, b, params))   # already normal form
print("ba =", gc.multiply(b, a, params))   # ab c^-1
print("[a,b] =", gc.commutator(a, b, params))

# automorphisms fixing S are found by trying every image pair in S x S
auts = gc.aut_G_S(params)
print("|Aut(G,S)| =", len(auts))
alpha, beta, gamma = gc.canonical_automorphisms(params)
print("gamma(ac) =", gc.apply_automorphism(gamma, E(1, 0, 1), params))

ctx = build_cayley(params)
g = ctx.gamma
print("vertices", g.n, "valency", g.valency(), "girth", girth(g))
print("sphere sizes around 1:", [len(s) for s in distance_partition(g, 0).spheres])

third = sphere_elements(ctx, 3)
print("ac in sphere 3:", E(1, 0, 1) in third)
print("aba =", gc.multiply(gc.multiply(a, b, params), a, params), "also in sphere 3")
print("|R(G)| =", ctx.RG.order, " |N| =", ctx.N.order)
