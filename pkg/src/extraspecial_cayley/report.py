"""Verification suite: every structural claim about the family, checked per prime."""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Callable, Literal, Sequence

import numpy as np

from . import __version__
from . import group_core as gc
from .aut_search import search_automorphisms
from .cayley import (
    CayleyContext,
    build_cayley,
    center_subgroup,
    second_sphere_formula,
    sphere_elements,
    subgroup_action,
)
from .clique_coset import (
    build_coset_graph,
    identify_clique_and_coset_graphs,
    induced_group_on_sigma,
    line_graph_isomorphism,
    sigma_edge_group,
    sigma_for,
)
from .errors import CayleyError, ConfigError
from .graph_core import (
    Graph,
    diameter,
    distance_matrix,
    girth,
    is_normal_cover,
    maximal_cliques,
    quotient_graph,
    s_arcs,
)
from .group_core import GroupElement, GroupParams
from .perm_core import (
    PermGroup,
    Permutation,
    Regularity,
    action_regularity,
    is_normal,
    orbit_stabilizer_holds,
    orbits,
    tuple_orbit_labels,
)
from .symmetry import (
    CheckResult,
    check_normal_cayley,
    check_s_arc_regular,
    check_s_arc_transitive,
    check_semisymmetric,
    check_t_distance_transitive,
    witness_pairs_distinct,
)

SCHEMA_VERSION = "1"
DEFAULT_TIMEOUT = 120.0
LARGE_AUT_SEARCH_PRIME = 7


@dataclass
class SuiteConfig:
    p: int
    checks: Sequence[str] | Literal["all"] = "all"
    skip_aut_search: bool = False
    allow_large_aut_search: bool = False
    timeout: float | None = DEFAULT_TIMEOUT
    json_path: str | None = None
    output: str | None = None
    format: Literal["json", "dot"] = "json"

    def __post_init__(self):
        if not (isinstance(self.p, int) and self.p >= 3 and gc.is_prime(self.p)):
            raise ConfigError("p must be an odd prime")
        if self.format not in ("json", "dot"):
            raise ConfigError("format must be json or dot")

    @property
    def run_aut_search(self) -> bool:
        if self.skip_aut_search:
            return False
        return self.p < LARGE_AUT_SEARCH_PRIME or self.allow_large_aut_search

    def selected(self, name: str) -> bool:
        if self.checks == "all":
            return True
        return any(name == c or name.startswith(c.rstrip(".") + ".") for c in self.checks)


@dataclass
class VerificationReport:
    p: int
    t: int
    results: list[CheckResult]
    aut_search: bool
    version: str = __version__
    schema_version: str = SCHEMA_VERSION
    total_seconds: float | None = None

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results if not r.informational)

    def to_dict(self, *, timing: bool = True) -> dict:
        out = {
            "schema_version": self.schema_version,
            "tool_version": self.version,
            "p": self.p,
            "t": self.t,
            "aut_search": self.aut_search,
            "pass": self.passed,
            "checks": [r.to_dict(timing=timing) for r in self.results],
        }
        if timing:
            out["total_seconds"] = self.total_seconds
        return out

    def to_json(self, *, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing=timing), indent=2, sort_keys=True) + "\n"

    def by_name(self, name: str) -> CheckResult:
        for r in self.results:
            if r.name == name:
                return r
        raise KeyError(name)


class Workspace:
    """Lazily built objects shared by the checks of one suite run."""

    def __init__(self, params: GroupParams, run_aut_search: bool):
        self.params = params
        self.p = params.p
        self.run_aut_search = run_aut_search
        self.groups: dict[str, PermGroup] = {}

    def el(self, i, j, k) -> int:
        return gc.index_of(gc.element(i, j, k, self.params), self.params)

    @cached_property
    def aut_maps(self) -> tuple[gc.GroupAutomorphism, ...]:
        return gc.aut_G_S(self.params)

    @cached_property
    def ctx(self) -> CayleyContext:
        ctx = build_cayley(self.params)
        self.groups.update({"RG": ctx.RG, "autGS": ctx.autGS, "N": ctx.N})
        return ctx

    @cached_property
    def dist(self) -> np.ndarray:
        return distance_matrix(self.ctx.gamma)

    @cached_property
    def aut_gamma(self) -> PermGroup | None:
        if not self.run_aut_search:
            return None
        res = search_automorphisms(self.ctx.gamma)
        group = PermGroup(self.ctx.gamma.n, res.generators)
        if group.order != res.order:
            raise CayleyError("search order disagrees with closure order")
        self.groups["Aut(Gamma)"] = group
        return group

    @property
    def gamma_group(self) -> PermGroup:
        """Aut(Γ) when searched, otherwise N."""
        return self.aut_gamma if self.aut_gamma is not None else self.ctx.N

    @cached_property
    def sigma(self):
        return sigma_for(self.ctx)

    @cached_property
    def N_on_sigma(self) -> PermGroup:
        group = induced_group_on_sigma(self.ctx, self.ctx.N)
        self.groups["N on Sigma"] = group
        return group

    @cached_property
    def RG_on_sigma(self) -> PermGroup:
        group = induced_group_on_sigma(self.ctx, self.ctx.RG)
        self.groups["RG on Sigma"] = group
        return group

    @cached_property
    def aut_sigma(self) -> PermGroup | None:
        if not self.run_aut_search:
            return None
        res = search_automorphisms(self.sigma.graph)
        group = PermGroup(self.sigma.graph.n, res.generators)
        if group.order != res.order:
            raise CayleyError("search order disagrees with closure order")
        self.groups["Aut(Sigma)"] = group
        return group

    @property
    def sigma_group(self) -> PermGroup:
        return self.aut_sigma if self.aut_sigma is not None else self.N_on_sigma

    @cached_property
    def center(self) -> PermGroup:
        group = center_subgroup(self.params)
        self.groups["<R(c)>"] = group
        return group

    @cached_property
    def center_blocks(self) -> list[tuple[int, ...]]:
        return orbits(self.center)


# --------------------------------------------------------------------------
# individual checks


def _relations(ws: Workspace) -> CheckResult:
    params, p = ws.params, ws.p
    a, b, c = GroupElement(1, 0, 0), GroupElement(0, 1, 0), GroupElement(0, 0, 1)
    elems = gc.all_elements(params)
    facts = {
        "a^p=b^p=c^p=1": all(gc.power(x, p, params) == gc.IDENTITY for x in (a, b, c)),
        "[a,b]=c": gc.commutator(a, b, params) == c,
        "[c,a]=[c,b]=1": gc.commutator(c, a, params) == gc.IDENTITY == gc.commutator(c, b, params),
        "c central": all(gc.multiply(c, x, params) == gc.multiply(x, c, params) for x in elems),
        "exponent p": all(gc.power(x, p, params) == gc.IDENTITY for x in elems),
        "inverses": all(gc.multiply(x, gc.inverse(x, params), params) == gc.IDENTITY for x in elems),
    }
    x = gc.elements_array(params)
    if p == 3:
        i, j, k = np.meshgrid(np.arange(27), np.arange(27), np.arange(27), indexing="ij")
        tri = (x[i.ravel()], x[j.ravel()], x[k.ravel()])
    else:
        rng = np.random.default_rng(p)
        tri = tuple(x[rng.integers(0, p ** 3, 5000)] for _ in range(3))
    lhs = gc.multiply_arrays(gc.multiply_arrays(tri[0], tri[1], p), tri[2], p)
    rhs = gc.multiply_arrays(tri[0], gc.multiply_arrays(tri[1], tri[2], p), p)
    facts["associative"] = bool(np.array_equal(lhs, rhs))
    failed = [k for k, v in facts.items() if not v]
    return CheckResult("group.relations", not failed, actual=facts, witness=failed or None)


def _aut_gs_order(ws: Workspace) -> CheckResult:
    n = len(ws.aut_maps)
    return CheckResult("lemma3_1.aut_gs_order", n == 2 * (ws.p - 1) ** 2, actual=n, expected=2 * (ws.p - 1) ** 2)


def _aut_gs_relations(ws: Workspace) -> CheckResult:
    params, p = ws.params, ws.p
    alpha, beta, gamma = gc.canonical_automorphisms(params)
    ident = gc.identity_automorphism()
    comp = lambda f, g: gc.compose(f, g, params)  # noqa: E731
    facts = {
        "alpha^(p-1)=1": gc.automorphism_power(alpha, p - 1, params) == ident,
        "beta^(p-1)=1": gc.automorphism_power(beta, p - 1, params) == ident,
        "gamma^2=1": gc.automorphism_power(gamma, 2, params) == ident,
        "alpha beta = beta alpha": comp(alpha, beta) == comp(beta, alpha),
        "alpha^gamma = beta": comp(comp(gc.automorphism_inverse(gamma, params), alpha), gamma) == beta,
        "alpha order p-1": all(gc.automorphism_power(alpha, e, params) != ident for e in range(1, p - 1)),
    }
    generated = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for f in frontier:
            for g in (alpha, beta, gamma):
                h = comp(f, g)
                if h not in generated:
                    generated.add(h)
                    nxt.append(h)
        frontier = nxt
    facts["<alpha,beta,gamma> = Aut(G,S)"] = generated == set(ws.aut_maps)
    # homomorphism property: exhaustive at p=3, sampled otherwise
    x = gc.elements_array(params)
    if p == 3:
        i, j = np.meshgrid(np.arange(27), np.arange(27), indexing="ij")
        xs, ys = i.ravel(), j.ravel()
    else:
        rng = np.random.default_rng(1000 + p)
        xs, ys = rng.integers(0, p ** 3, 4000), rng.integers(0, p ** 3, 4000)
    prod = gc.indices_of_array(gc.multiply_arrays(x[xs], x[ys], p), p)
    hom = True
    for phi in ws.aut_maps:
        table = gc.automorphism_table(phi, params)
        img = gc.indices_of_array(gc.multiply_arrays(x[table[xs]], x[table[ys]], p), p)
        hom &= bool(np.array_equal(table[prod], img))
    facts["all homomorphisms"] = hom
    failed = [k for k, v in facts.items() if not v]
    return CheckResult("lemma3_1.aut_gs_relations", not failed, actual=facts, witness=failed or None)


def _no_normal_p2(ws: Workspace) -> CheckResult:
    params, p = ws.params, ws.p
    listed = gc.order_p2_subgroups(params)
    enumerated = gc.enumerate_order_p2_subgroups(params)
    same = set(listed) == set(enumerated)
    normal_flags = []
    for h in listed:
        normal_flags.append(is_normal(subgroup_action(h, params), ws.ctx.N))
    ok = same and len(enumerated) == p + 1 and not any(normal_flags)
    return CheckResult(
        "lemma3_1.no_normal_p2",
        ok,
        actual={"subgroups": len(enumerated), "matches_case_list": same, "normal_in_N": sum(normal_flags)},
        expected={"subgroups": p + 1, "matches_case_list": True, "normal_in_N": 0},
    )


def _gamma_structure(ws: Workspace) -> CheckResult:
    g, p = ws.ctx.gamma, ws.p
    actual = {"order": g.n, "valency": g.valency(), "connected": g.is_connected(), "girth": girth(g)}
    expected = {"order": p ** 3, "valency": 2 * (p - 1), "connected": True, "girth": 3}
    return CheckResult("thm1_1.gamma_structure", actual == expected, actual=actual, expected=expected,
                       detail=f"diameter={diameter(g)} (reported, no expected value)")


def _sphere1(ws: Workspace) -> CheckResult:
    got = sphere_elements(ws.ctx, 1)
    return CheckResult("thm1_1.sphere1", got == ws.ctx.connection, actual=len(got), expected=2 * (ws.p - 1))


def _sphere2(ws: Workspace) -> CheckResult:
    got = sphere_elements(ws.ctx, 2)
    formula = second_sphere_formula(ws.params)
    ok = got == formula and len(got) == 2 * (ws.p - 1) ** 2
    return CheckResult("thm1_1.sphere2", ok, actual=len(got), expected=2 * (ws.p - 1) ** 2,
                       witness=None if ok else sorted(got ^ formula)[:5])


def _ac(ws: Workspace) -> GroupElement:
    return GroupElement(1, 0, 1)


def _ba2c(ws: Workspace) -> GroupElement:
    params = ws.params
    b, a, c = GroupElement(0, 1, 0), GroupElement(1, 0, 0), GroupElement(0, 0, 1)
    return gc.multiply(gc.multiply(b, gc.power(a, 2, params), params), c, params)


def _sphere3(ws: Workspace) -> CheckResult:
    params = ws.params
    a, b = GroupElement(1, 0, 0), GroupElement(0, 1, 0)
    ac, ba2c = _ac(ws), _ba2c(ws)
    got = sphere_elements(ws.ctx, 3)
    facts = {
        "b^-1 a b = ac": gc.multiply(gc.multiply(gc.inverse(b, params), a, params), b, params) == ac,
        "aba = ba^2c": gc.multiply(gc.multiply(a, b, params), a, params) == ba2c,
        "ac in sphere 3": ac in got,
        "ba^2c in sphere 3": ba2c in got,
    }
    return CheckResult("thm1_1.sphere3_witnesses", all(facts.values()), actual=facts)


def _n_arc_transitive(ws: Workspace) -> CheckResult:
    r = check_t_distance_transitive(ws.ctx.gamma, ws.ctx.N, 1, name="lemma3_1.n_arc_transitive", dist=ws.dist)
    return r


def _two_dt_under_n(ws: Workspace) -> CheckResult:
    return check_t_distance_transitive(ws.ctx.gamma, ws.ctx.N, 2, name="thm1_1.two_distance_transitive_N", dist=ws.dist)


def _distance3_pairs(ws: Workspace) -> list[list[int]]:
    return [[0, ws.ctx.vertex(_ac(ws))], [0, ws.ctx.vertex(_ba2c(ws))]]


def _distance3_under_n(ws: Workspace) -> CheckResult:
    hint = _distance3_pairs(ws)
    r = check_t_distance_transitive(ws.ctx.gamma, ws.ctx.N, 3, name="thm1_1.distance3_orbits_N",
                                    witness_hint=hint, dist=ws.dist)
    w = r.witness["pairs"] if r.witness else None
    recheck = w is not None and witness_pairs_distinct(ws.ctx.N, w[0], w[1])
    ok = r.actual[2] >= 2 and w == [list(h) for h in hint] and recheck
    return CheckResult(r.name, ok, actual={"orbits_at_distance_3": r.actual[2], "witness_rechecked": recheck},
                       expected={"witness": hint}, witness=r.witness)


def _ac_orbit_formula(ws: Workspace) -> CheckResult:
    params, p = ws.params, ws.p
    ac, ba2c = _ac(ws), _ba2c(ws)
    orbit = {gc.apply_automorphism(phi, ac, params) for phi in ws.ctx.aut_maps}
    formula = {GroupElement(i, 0, j) for i in range(1, p) for j in range(1, p)} | {
        GroupElement(0, i, j) for i in range(1, p) for j in range(1, p)
    }
    ok = orbit == formula and ba2c not in orbit
    return CheckResult("thm1_1.ac_orbit_formula", ok, actual={"orbit_size": len(orbit), "ba2c_in_orbit": ba2c in orbit},
                       expected={"orbit_size": 2 * (p - 1) ** 2, "ba2c_in_orbit": False})


def _partial(ws: Workspace) -> str:
    return "" if ws.run_aut_search else "partial: aut search skipped, group is N"


def _not_2_arc_transitive(ws: Workspace) -> CheckResult:
    a, a2, b = ws.el(1, 0, 0), ws.el(2, 0, 0), ws.el(0, 1, 0)
    hint = [[a, 0, a2], [a, 0, b]]
    r = check_s_arc_transitive(ws.ctx.gamma, ws.gamma_group, 2, witness_hint=hint)
    dist_ok = ws.dist[a, a2] == 1 and ws.dist[a, b] == 2
    ok = (not r.passed) and r.witness == hint and bool(dist_ok)
    return CheckResult("thm1_1.not_2_arc_transitive", ok, actual=r.actual, witness=r.witness, detail=_partial(ws))


def _aut_order(ws: Workspace) -> CheckResult:
    expected = 2 * ws.p ** 3 * (ws.p - 1) ** 2
    if ws.aut_gamma is None:
        contained = all(ws.ctx.gamma.is_automorphism(g.images) for g in ws.ctx.N.generators)
        return CheckResult("lemma3_3.aut_order", contained, actual={"N_in_Aut": contained, "N_order": ws.ctx.N.order},
                           expected={"N_in_Aut": True}, detail="partial: aut search skipped, only N <= Aut(Gamma) checked")
    return CheckResult("lemma3_3.aut_order", ws.aut_gamma.order == expected, actual=ws.aut_gamma.order, expected=expected)


def _normal_cayley(ws: Workspace) -> CheckResult:
    if ws.aut_gamma is None:
        contained = all(ws.ctx.gamma.is_automorphism(g.images) for g in ws.ctx.N.generators)
        return CheckResult("lemma3_3.normal_cayley", contained and is_normal(ws.ctx.RG, ws.ctx.N),
                           actual={"N_in_Aut": contained}, detail="partial: normality only via N <= Aut(Gamma)")
    return check_normal_cayley(ws.ctx, ws.aut_gamma, name="lemma3_3.normal_cayley")


def _two_dt(ws: Workspace) -> CheckResult:
    r = check_t_distance_transitive(ws.ctx.gamma, ws.gamma_group, 2, name="thm1_1.two_distance_transitive", dist=ws.dist)
    r.detail = _partial(ws)
    return r


def _not_dt(ws: Workspace) -> CheckResult:
    hint = _distance3_pairs(ws)
    diam = int(ws.dist.max())
    r = check_t_distance_transitive(ws.ctx.gamma, ws.gamma_group, diam, witness_hint=hint, dist=ws.dist)
    w = r.witness
    recheck = w is not None and witness_pairs_distinct(ws.gamma_group, w["pairs"][0], w["pairs"][1])
    ok = (not r.passed) and recheck and w["distance"] == 3
    return CheckResult("thm1_1.not_distance_transitive", ok, actual={"orbits_per_distance": r.actual},
                       witness=w, detail=_partial(ws))


def _sigma_structure(ws: Workspace) -> CheckResult:
    sg, p = ws.sigma.graph, ws.p
    per_vertex = [0] * ws.ctx.gamma.n
    for c in maximal_cliques(ws.ctx.gamma):
        for v in c:
            per_vertex[v] += 1
    actual = {
        "order": sg.n,
        "valency": sg.valency(),
        "bipartite": sg.is_bipartite(),
        "connected": sg.is_connected(),
        "cliques_per_vertex": sorted(set(per_vertex)),
        "edges": sg.num_edges,
    }
    expected = {"order": 2 * p * p, "valency": p, "bipartite": True, "connected": True,
                "cliques_per_vertex": [2], "edges": p ** 3}
    return CheckResult("lemma3_2.sigma_structure", actual == expected, actual=actual, expected=expected)


def _sigma_semisymmetric(ws: Workspace) -> CheckResult:
    r = check_semisymmetric(ws.sigma.graph, ws.RG_on_sigma, name="lemma3_2.sigma_semisymmetric_RG")
    r.passed = r.passed and r.actual["vertex_orbits"] == 2
    r.expected = {"edge_orbits": 1, "vertex_orbits": 2}
    return r


def _sigma_n_arc_transitive(ws: Workspace) -> CheckResult:
    return check_s_arc_transitive(ws.sigma.graph, ws.N_on_sigma, 1, name="lemma3_2.sigma_N_arc_transitive")


def _faithful(ws: Workspace) -> CheckResult:
    group = ws.gamma_group
    induced = induced_group_on_sigma(ws.ctx, group)
    ok = induced.order == group.order
    p_part = group.order
    while p_part % ws.p == 0:
        p_part //= ws.p
    p_power = group.order // p_part
    actual = {"order": group.order, "induced_order": induced.order, "p_part": p_power}
    return CheckResult("lemma3_2.faithful_action", ok and p_power == ws.p ** 3, actual=actual,
                       expected={"p_part": ws.p ** 3}, detail=_partial(ws))


def _identification(ws: Workspace) -> CheckResult:
    ident = identify_clique_and_coset_graphs(ws.ctx)
    cos = build_coset_graph(ws.params)
    same_graph = cos.graph == ws.sigma.graph
    return CheckResult("cor1_3.clique_coset_identification", ident.ok and same_graph,
                       actual={"bijection_ok": ident.ok, "ordered_graphs_equal": same_graph}, detail=ident.detail)


def _line_graph(ws: Workspace) -> CheckResult:
    iso = line_graph_isomorphism(ws.ctx, ws.sigma.graph)
    # edge {<a>, <b>} is the identity
    first = ws.sigma.graph.edges().index((0, ws.p ** 2)) if ws.sigma.graph.has_edge(0, ws.p ** 2) else None
    anchor = first is not None and iso.mapping[first] == 0
    return CheckResult("cor1_3.line_graph_isomorphism", iso.ok and anchor,
                       actual={"edges": len(iso.mapping), "isomorphism": iso.ok, "identity_edge": anchor})


def _three_arc_count(ws: Workspace) -> CheckResult:
    n = len(s_arcs(ws.sigma.graph, 3))
    expected = 2 * ws.p ** 3 * (ws.p - 1) ** 2
    return CheckResult("cor1_3.three_arc_count", n == expected, actual=n, expected=expected)


def _sigma_aut(ws: Workspace) -> CheckResult:
    if ws.aut_sigma is None:
        return CheckResult("cor1_3.sigma_aut_order", False, informational=True, detail="skipped: aut search disabled")
    induced = induced_group_on_sigma(ws.ctx, ws.aut_gamma)
    same = induced.same_elements(ws.aut_sigma)
    ok = ws.aut_sigma.order == ws.aut_gamma.order and same
    return CheckResult("cor1_3.sigma_aut_order", ok, actual={"aut_sigma": ws.aut_sigma.order, "induced_equal": same},
                       expected={"aut_sigma": ws.aut_gamma.order, "induced_equal": True})


def _three_arc_regular(ws: Workspace) -> CheckResult:
    r = check_s_arc_regular(ws.sigma.graph, ws.sigma_group, 3, name="cor1_3.three_arc_regular")
    r.detail = _partial(ws)
    return r


def _rg_regular_on_edges(ws: Workspace) -> CheckResult:
    edge_group = sigma_edge_group(ws.ctx, ws.RG_on_sigma)
    kind = action_regularity(edge_group, range(edge_group.degree))
    return CheckResult("cor1_3.RG_regular_on_sigma_edges", kind == Regularity.REGULAR, actual=kind.value,
                       expected=Regularity.REGULAR.value)


def _center_quotient(ws: Workspace) -> CheckResult:
    q = quotient_graph(ws.ctx.gamma, ws.center_blocks)
    actual = {"order": q.n, "valency": q.valency(), "connected": q.is_connected()}
    expected = {"order": ws.p ** 2, "valency": 2 * (ws.p - 1), "connected": True}
    return CheckResult("lemma3_3.center_quotient", actual == expected, actual=actual, expected=expected)


def _center_cover(ws: Workspace) -> CheckResult:
    ok, cert = is_normal_cover(ws.ctx.gamma, ws.center_blocks)
    return CheckResult("lemma3_3.center_cover", ok, actual=ok, expected=True,
                       witness=None if ok else {"reason": cert.reason, "blocks": list(cert.blocks)})


def _center_semiregular(ws: Workspace) -> CheckResult:
    kind = action_regularity(ws.center, range(ws.ctx.gamma.n))
    return CheckResult("prop2_5.center_semiregular", kind == Regularity.SEMIREGULAR_ONLY, actual=kind.value,
                       expected=Regularity.SEMIREGULAR_ONLY.value,
                       detail=f"{len(ws.center_blocks)} orbits of size {ws.p}")


CONTROL_ENUMERATION_LIMIT = 10 ** 5


def _quotient_control(ws: Workspace) -> CheckResult:
    name = "control.quotient_normal_cayley"
    if not ws.run_aut_search:
        return CheckResult(name, True, informational=True, detail="skipped: aut search disabled")
    blocks = ws.center_blocks
    q = quotient_graph(ws.ctx.gamma, blocks)
    rg_q = induced_blocks_group(ws.ctx.RG, blocks)
    res = search_automorphisms(q)
    actual = {"aut_order": res.order, "regular_order": rg_q.order, "RG_normal": None}
    if res.order <= CONTROL_ENUMERATION_LIMIT:
        actual["RG_normal"] = is_normal(rg_q, PermGroup(q.n, res.generators))
    return CheckResult(name, True, actual=actual, informational=True, detail="control case, reported without assertion")


def induced_blocks_group(group: PermGroup, blocks: Sequence[Sequence[int]]) -> PermGroup:
    """Action on a block system (blocks must be permuted by every generator)."""
    where = {}
    for bi, b in enumerate(blocks):
        for v in b:
            where[v] = bi
    gens = []
    for g in group.generators:
        gens.append(Permutation([where[int(g.images[b[0]])] for b in blocks]))
    return PermGroup(len(blocks), gens)


def _orbit_stabilizer(ws: Workspace) -> CheckResult:
    # make sure the commonly used groups exist before the sweep
    ws.ctx, ws.center, ws.RG_on_sigma, ws.N_on_sigma, ws.aut_gamma, ws.aut_sigma
    results = {name: orbit_stabilizer_holds(g) for name, g in sorted(ws.groups.items())}
    failed = [k for k, v in results.items() if not v]
    return CheckResult("props.orbit_stabilizer", not failed, actual=results, witness=failed or None)


def _monotonicity(ws: Workspace) -> CheckResult:
    facts = {}
    sg = ws.sigma.graph
    sig_pass = [check_s_arc_transitive(sg, ws.sigma_group, s).passed for s in range(0, 4)]
    gam_pass = [check_s_arc_transitive(ws.ctx.gamma, ws.gamma_group, s).passed for s in range(0, 3)]
    diam = int(ws.dist.max())
    dt_pass = [check_t_distance_transitive(ws.ctx.gamma, ws.gamma_group, t, dist=ws.dist).passed
               for t in range(1, diam + 1)]

    def monotone(seq):
        return all(not seq[i] or seq[i - 1] for i in range(1, len(seq)))

    facts["sigma s-arc (s=0..3)"] = sig_pass
    facts["gamma s-arc (s=0..2)"] = gam_pass
    facts["gamma t-distance (t=1..diam)"] = dt_pass
    ok = monotone(sig_pass) and monotone(gam_pass) and monotone(dt_pass)
    # a 2-arc-transitive graph is 2-distance-transitive
    ok = ok and (not gam_pass[2] or dt_pass[1])
    sig_dist = distance_matrix(sg)
    sig_dt2 = check_t_distance_transitive(sg, ws.sigma_group, 2, dist=sig_dist).passed
    facts["sigma 2-distance"] = sig_dt2
    ok = ok and (not sig_pass[2] or sig_dt2)
    return CheckResult("props.monotonicity", ok, actual=facts)


def _determinism(ws: Workspace) -> CheckResult:
    first = {k: _export_text(ws, k, fmt) for k in ("gamma", "sigma", "quotient") for fmt in ("json", "dot")}
    fresh = Workspace(ws.params, False)
    second = {k: _export_text(fresh, k, fmt) for k in ("gamma", "sigma", "quotient") for fmt in ("json", "dot")}
    rows = np.argwhere(ws.dist == 3)
    labels_a = tuple_orbit_labels(ws.ctx.N, rows)
    labels_b = tuple_orbit_labels(fresh.ctx.N, rows)
    ok = first == second and np.array_equal(labels_a, labels_b)
    return CheckResult("props.determinism", ok, actual={"exports_identical": first == second,
                       "orbit_labels_identical": bool(np.array_equal(labels_a, labels_b))})


CHECKS: list[tuple[str, Callable[[Workspace], CheckResult]]] = [
    ("group.relations", _relations),
    ("lemma3_1.aut_gs_order", _aut_gs_order),
    ("lemma3_1.aut_gs_relations", _aut_gs_relations),
    ("lemma3_1.no_normal_p2", _no_normal_p2),
    ("thm1_1.gamma_structure", _gamma_structure),
    ("thm1_1.sphere1", _sphere1),
    ("thm1_1.sphere2", _sphere2),
    ("thm1_1.sphere3_witnesses", _sphere3),
    ("lemma3_1.n_arc_transitive", _n_arc_transitive),
    ("thm1_1.two_distance_transitive_N", _two_dt_under_n),
    ("thm1_1.distance3_orbits_N", _distance3_under_n),
    ("thm1_1.ac_orbit_formula", _ac_orbit_formula),
    ("lemma3_3.aut_order", _aut_order),
    ("lemma3_3.normal_cayley", _normal_cayley),
    ("thm1_1.two_distance_transitive", _two_dt),
    ("thm1_1.not_distance_transitive", _not_dt),
    ("thm1_1.not_2_arc_transitive", _not_2_arc_transitive),
    ("lemma3_2.sigma_structure", _sigma_structure),
    ("lemma3_2.sigma_semisymmetric_RG", _sigma_semisymmetric),
    ("lemma3_2.sigma_N_arc_transitive", _sigma_n_arc_transitive),
    ("lemma3_2.faithful_action", _faithful),
    ("cor1_3.three_arc_count", _three_arc_count),
    ("cor1_3.three_arc_regular", _three_arc_regular),
    ("cor1_3.sigma_aut_order", _sigma_aut),
    ("cor1_3.clique_coset_identification", _identification),
    ("cor1_3.line_graph_isomorphism", _line_graph),
    ("cor1_3.RG_regular_on_sigma_edges", _rg_regular_on_edges),
    ("lemma3_3.center_quotient", _center_quotient),
    ("lemma3_3.center_cover", _center_cover),
    ("prop2_5.center_semiregular", _center_semiregular),
    ("control.quotient_normal_cayley", _quotient_control),
    ("props.orbit_stabilizer", _orbit_stabilizer),
    ("props.monotonicity", _monotonicity),
    ("props.determinism", _determinism),
]

CHECK_NAMES = [name for name, _ in CHECKS]
CONTROL_CHECKS = {"control.quotient_normal_cayley"}


def _run_with_timeout(fn: Callable[[], CheckResult], timeout: float | None):
    if timeout is None:
        return fn()
    box: dict = {}

    def target():
        try:
            box["result"] = fn()
        except BaseException as exc:  # reported as a failed check
            box["error"] = exc

    th = threading.Thread(target=target, daemon=True)
    th.start()
    th.join(timeout)
    if th.is_alive():
        raise TimeoutError
    if "error" in box:
        raise box["error"]
    return box["result"]


def run_suite(config: SuiteConfig) -> VerificationReport:
    params = GroupParams.from_prime(config.p)
    ws = Workspace(params, config.run_aut_search)
    results = []
    start = time.perf_counter()
    for name, fn in CHECKS:
        if not config.selected(name):
            continue
        t0 = time.perf_counter()
        try:
            res = _run_with_timeout(lambda: fn(ws), config.timeout)
            res.name = name
        except TimeoutError:
            res = CheckResult(name, False, detail="skipped: timeout")
        except Exception as exc:  # a module error is a failed check, not a crash
            res = CheckResult(name, False, detail=f"error: {type(exc).__name__}: {exc}")
            res.informational = name in CONTROL_CHECKS
        res.seconds = round(time.perf_counter() - t0, 6)
        results.append(res)
    report = VerificationReport(params.p, params.t, results, ws.run_aut_search)
    report.total_seconds = round(time.perf_counter() - start, 6)
    if config.json_path:
        Path(config.json_path).write_text(report.to_json(), encoding="utf-8")
    return report


# --------------------------------------------------------------------------
# exports


def _export_graph(ws: Workspace, which: str) -> Graph:
    if which == "gamma":
        return ws.ctx.gamma
    if which == "sigma":
        return build_coset_graph(ws.params).graph
    if which == "quotient":
        q = quotient_graph(ws.ctx.gamma, ws.center_blocks)
        labels = [ws.ctx.label(min(b)).label() + "<c>" for b in ws.center_blocks]
        return Graph(q.n, q.edges(), labels)
    raise ConfigError(f"unknown graph {which!r}; expected gamma, sigma or quotient")


def _export_text(ws: Workspace, which: str, fmt: str) -> str:
    g = _export_graph(ws, which)
    return g.to_json() if fmt == "json" else g.to_dot(which)


def export(config: SuiteConfig, which: Literal["gamma", "sigma", "quotient"]) -> Path:
    """Write the requested graph; returns the output path."""
    params = GroupParams.from_prime(config.p)
    ws = Workspace(params, False)
    text = _export_text(ws, which, config.format)
    path = Path(config.output) if config.output else Path(f"{which}_p{config.p}.{config.format}")
    try:
        path.write_text(text, encoding="utf-8")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc
    return path


def summary(config: SuiteConfig) -> dict:
    ctx = build_cayley(GroupParams.from_prime(config.p))
    out = ctx.summary()
    out["girth"] = int(out["girth"])
    return out
