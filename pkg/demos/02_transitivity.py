"""Two-distance-transitive but neither distance-transitive nor 2-arc-transitive, shown at p = 3."""

from extraspecial_cayley import group_core as gc
from extraspecial_cayley.aut_search import automorphism_group
from extraspecial_cayley.cayley import build_cayley
from extraspecial_cayley.perm_core import stabilizer
from extraspecial_cayley.symmetry import check_normal_cayley, check_s_arc_transitive, check_t_distance_transitive

params = gc.GroupParams.from_prime(3)
ctx = build_cayley(params)

aut = automorphism_group(ctx.gamma)   # individualization-refinement search
print("|Aut| =", aut.order, " stabilizer of 1:", stabilizer(aut, 0).order)
print(check_normal_cayley(ctx, aut).actual)

# one orbit on pairs at distance 1 and 2
print(check_t_distance_transitive(ctx.gamma, aut, 2).actual)

ac = gc.index_of(gc.GroupElement(1, 0, 1), params)
ba2c = gc.index_of(gc.GroupElement(2, 1, 2), params)
r = check_t_distance_transitive(ctx.gamma, aut, 3, witness_hint=[[0, ac], [0, ba2c]])
print("distance 3 orbits:", r.actual[2], "witness", r.witness)

# a 2-arc closing a triangle cannot map to one that does not
a, a2, b = 9, 18, 3
r = check_s_arc_transitive(ctx.gamma, aut, 2, witness_hint=[[a, 0, a2], [a, 0, b]])
print("2-arc orbits:", r.actual["orbits"], "witness", r.witness)
