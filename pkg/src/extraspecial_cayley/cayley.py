"""The Cayley graph Cay(G, S), right translations and the normalizer R(G) x| Aut(G,S)."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import group_core as gc
from .errors import InternalInvariant, NotGraphAutomorphism, OutOfRange
from .graph_core import Graph, diameter, distance_partition, girth
from .group_core import GroupAutomorphism, GroupElement, GroupParams
from .perm_core import PermGroup, Permutation, closure, is_normal, orbit, stabilizer_orders


def cayley_graph(params: GroupParams, connection: frozenset[GroupElement]) -> Graph:
    """``g ~ h`` iff ``h g^-1`` lies in ``connection``; vertex ``v`` is ``element_at(v)``."""
    p = params.p
    x = gc.elements_array(params)
    s = np.array(sorted(connection))
    # neighbours of g are s*g for s in S
    nbrs = gc.indices_of_array(gc.multiply_arrays(s[None, :, :], x[:, None, :], p), p)
    edges = [(u, int(v)) for u in range(len(x)) for v in nbrs[u] if u < v]
    labels = [g.label() for g in gc.all_elements(params)]
    return Graph(len(x), edges, labels)


def right_translation(g: GroupElement, params: GroupParams) -> Permutation:
    """``R(g): x -> x g`` on vertex indices."""
    x = gc.elements_array(params)
    img = gc.indices_of_array(gc.multiply_arrays(x, np.array(g), params.p), params.p)
    return Permutation(img)


def left_translation(g: GroupElement, params: GroupParams) -> Permutation:
    x = gc.elements_array(params)
    img = gc.indices_of_array(gc.multiply_arrays(np.array(g), x, params.p), params.p)
    return Permutation(img)


def automorphism_vertex_action(
    phi: GroupAutomorphism, params: GroupParams, gamma: Graph | None = None
) -> Permutation:
    """Permutation ``v -> phi(v)``; checked against ``gamma`` when given."""
    perm = Permutation(gc.automorphism_table(phi, params))
    if perm(0) != 0:
        raise NotGraphAutomorphism("group automorphism does not fix the identity")
    if gamma is not None and not gamma.is_automorphism(perm.images):
        raise NotGraphAutomorphism(f"{phi} does not preserve adjacency")
    return perm


@dataclass(eq=False)
class CayleyContext:
    params: GroupParams
    connection: frozenset[GroupElement]
    gamma: Graph
    RG: PermGroup
    autGS: PermGroup
    N: PermGroup
    aut_maps: tuple[GroupAutomorphism, ...]

    @property
    def p(self) -> int:
        return self.params.p

    def vertex(self, g: GroupElement) -> int:
        return gc.index_of(g, self.params)

    def label(self, v: int) -> GroupElement:
        return gc.element_at(v, self.params)

    def summary(self) -> dict:
        return {
            "p": self.p,
            "t": self.params.t,
            "order": self.gamma.n,
            "valency": self.gamma.valency(),
            "edges": self.gamma.num_edges,
            "girth": girth(self.gamma),
            "diameter": diameter(self.gamma),
            "RG_order": self.RG.order,
            "autGS_order": self.autGS.order,
            "N_order": self.N.order,
        }


def build_cayley(params: GroupParams) -> CayleyContext:
    p = params.p
    s = gc.connection_set(params)
    gamma = cayley_graph(params, s)
    a, b = GroupElement(1, 0, 0), GroupElement(0, 1, 0)
    RG = closure([right_translation(a, params), right_translation(b, params)])
    aut_maps = gc.aut_G_S(params)
    canon = gc.canonical_automorphisms(params)
    autGS = closure([automorphism_vertex_action(phi, params, gamma) for phi in canon])
    N = closure(list(RG.generators) + list(autGS.generators))
    ctx = CayleyContext(params, s, gamma, RG, autGS, N, aut_maps)

    checks = {
        "valency": gamma.valency() == 2 * (p - 1),
        "connected": gamma.is_connected(),
        "|RG|": RG.order == p ** 3,
        "RG regular": len(orbit(RG, 0)) == p ** 3 and bool(np.all(stabilizer_orders(RG) == 1)),
        "|autGS|": autGS.order == 2 * (p - 1) ** 2 == len(aut_maps),
        "autGS from search": set(autGS.elements())
        == {automorphism_vertex_action(phi, params) for phi in aut_maps},
        "autGS fixes 0": all(g(0) == 0 for g in autGS.generators),
        "autGS in Aut": all(gamma.is_automorphism(g.images) for g in autGS.generators),
        "|N|": N.order == RG.order * autGS.order,
        "RG normal in N": is_normal(RG, N),
        "S symmetric": {gc.inverse(x, params) for x in s} == set(s),
        "identity not in S": gc.IDENTITY not in s,
        "S generates G": len(gc.generated_subgroup(s, params)) == p ** 3,
    }
    failed = [name for name, ok in checks.items() if not ok]
    if failed:
        raise InternalInvariant(f"Cayley context checks failed: {failed}")
    return ctx


def sphere_elements(ctx: CayleyContext, i: int) -> frozenset[GroupElement]:
    spheres = distance_partition(ctx.gamma, 0).spheres
    if not 0 <= i < len(spheres):
        raise OutOfRange(f"sphere {i} outside 0..{len(spheres) - 1}")
    return frozenset(ctx.label(v) for v in spheres[i])


def second_sphere_formula(params: GroupParams) -> frozenset[GroupElement]:
    """``{b^j a^i, a^j b^i : 1 <= i, j <= p-1}`` in normal form."""
    p = params.p
    out = set()
    for i in range(1, p):
        for j in range(1, p):
            ai, bj = GroupElement(i, 0, 0), GroupElement(0, j, 0)
            out.add(gc.multiply(bj, ai, params))
            out.add(gc.multiply(GroupElement(j, 0, 0), GroupElement(0, i, 0), params))
    return frozenset(out)


def center_subgroup(params: GroupParams) -> PermGroup:
    """``<R(c)>`` acting on vertices."""
    return closure([right_translation(GroupElement(0, 0, 1), params)])


def subgroup_action(elems: frozenset[GroupElement], params: GroupParams) -> PermGroup:
    """Right-regular image of a subgroup of G."""
    return closure([right_translation(g, params) for g in sorted(elems)], degree=params.order)
