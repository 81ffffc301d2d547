"""Transitivity predicates returning a CheckResult with a witness on failure."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Sequence

import numpy as np

from .cayley import CayleyContext
from .errors import NoSArcs, NotAutomorphismGroup, OutOfRange
from .graph_core import Graph, distance_matrix, s_arcs
from .perm_core import PermGroup, induced_group, is_normal, orbits, stabilizer, tuple_orbit, tuple_orbit_labels


@dataclass
class CheckResult:
    name: str
    passed: bool
    actual: Any = None
    expected: Any = None
    witness: Any = None
    informational: bool = False
    detail: str = ""
    seconds: float | None = field(default=None, compare=False)

    def to_dict(self, *, timing: bool = True) -> dict:
        out = {
            "name": self.name,
            "pass": self.passed,
            "expected": _jsonable(self.expected),
            "actual": _jsonable(self.actual),
            "witness": _jsonable(self.witness),
            "informational": self.informational,
            "detail": self.detail,
        }
        if timing:
            out["seconds"] = self.seconds
        return out


def _jsonable(x):
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, float) and x == float("inf"):
        return "inf"
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    return x


def compare(name: str, expected, actual, **kw) -> CheckResult:
    return CheckResult(name, expected == actual, actual=actual, expected=expected, **kw)


def require_automorphisms(g: Graph, group: PermGroup) -> None:
    if group.degree != g.n:
        raise NotAutomorphismGroup("group degree differs from vertex count")
    for gen in group.generators:
        if not g.is_automorphism(gen.images):
            raise NotAutomorphismGroup(f"generator {gen!r} does not preserve adjacency")


def _orbit_witness(rows: np.ndarray, labels: np.ndarray, hint: Sequence[Sequence[int]] | None):
    lookup = {tuple(r): lab for r, lab in zip(rows.tolist(), labels.tolist())}
    if hint is not None:
        h1, h2 = (tuple(h) for h in hint)
        if h1 in lookup and h2 in lookup and lookup[h1] != lookup[h2]:
            return [list(h1), list(h2)]
    first = rows[int(np.argmax(labels == 0))].tolist()
    second = rows[int(np.argmax(labels == 1))].tolist()
    return [first, second]


def check_t_distance_transitive(
    g: Graph,
    group: PermGroup,
    t: int,
    *,
    name: str = "t_distance_transitive",
    witness_hint: Sequence[Sequence[int]] | None = None,
    dist: np.ndarray | None = None,
) -> CheckResult:
    """One orbit on ordered pairs at each distance ``1..t``.

    ``actual`` lists the orbit count per distance.  The witness is two pairs
    at the first failing distance lying in different orbits (``witness_hint``
    is used when it qualifies).
    """
    require_automorphisms(g, group)
    if dist is None:
        dist = distance_matrix(g)
    diam = int(dist.max())
    if not 1 <= t <= diam:
        raise OutOfRange(f"t={t} outside 1..{diam}")
    counts = []
    witness = None
    for i in range(1, t + 1):
        rows = np.argwhere(dist == i)
        labels = tuple_orbit_labels(group, rows)
        counts.append(int(labels.max()) + 1)
        if witness is None and counts[-1] > 1:
            witness = {"distance": i, "pairs": _orbit_witness(rows, labels, witness_hint)}
    return CheckResult(name, all(c == 1 for c in counts), actual=counts, expected=[1] * t, witness=witness)


def check_distance_transitive(g: Graph, group: PermGroup, *, name: str = "distance_transitive", **kw) -> CheckResult:
    dist = distance_matrix(g)
    return check_t_distance_transitive(g, group, int(dist.max()), name=name, dist=dist, **kw)


def _arc_orbits(g: Graph, group: PermGroup, s: int) -> tuple[np.ndarray, np.ndarray]:
    arcs = s_arcs(g, s)
    if not arcs:
        raise NoSArcs(f"graph has no {s}-arcs")
    rows = np.array(arcs, dtype=np.int64)
    return rows, tuple_orbit_labels(group, rows)


def check_s_arc_transitive(
    g: Graph,
    group: PermGroup,
    s: int,
    *,
    name: str = "s_arc_transitive",
    witness_hint: Sequence[Sequence[int]] | None = None,
) -> CheckResult:
    require_automorphisms(g, group)
    rows, labels = _arc_orbits(g, group, s)
    n_orbits = int(labels.max()) + 1
    witness = None if n_orbits == 1 else _orbit_witness(rows, labels, witness_hint)
    return CheckResult(
        name, n_orbits == 1, actual={"orbits": n_orbits, "arcs": len(rows)}, expected={"orbits": 1}, witness=witness
    )


def check_s_arc_regular(g: Graph, group: PermGroup, s: int, *, name: str = "s_arc_regular") -> CheckResult:
    """Transitive on s-arcs with ``|group| = #s-arcs``."""
    require_automorphisms(g, group)
    rows, labels = _arc_orbits(g, group, s)
    n_orbits = int(labels.max()) + 1
    order = group.order
    ok = n_orbits == 1 and order == len(rows)
    return CheckResult(
        name, ok, actual={"orbits": n_orbits, "group_order": order, "arcs": len(rows)}, expected={"orbits": 1, "group_order": len(rows)}
    )


def check_semisymmetric(g: Graph, group: PermGroup, *, name: str = "semisymmetric") -> CheckResult:
    """Edge-transitive (edges as unordered pairs) but not vertex-transitive."""
    require_automorphisms(g, group)
    edge_orbits = len(orbits(induced_group(group, g.edges(), unordered=True)))
    vertex_orbits = len(orbits(group))
    ok = edge_orbits == 1 and vertex_orbits > 1
    return CheckResult(name, ok, actual={"edge_orbits": edge_orbits, "vertex_orbits": vertex_orbits})


def check_normal_cayley(ctx: CayleyContext, aut: PermGroup, *, name: str = "normal_cayley") -> CheckResult:
    """R(G) normal in ``aut`` and the stabilizer of vertex 0 equals Aut(G,S)."""
    normal = is_normal(ctx.RG, aut)
    stab = stabilizer(aut, 0)
    stab_ok = stab.same_elements(ctx.autGS)
    order_ok = aut.order == ctx.N.order
    return CheckResult(
        name,
        normal and stab_ok and order_ok,
        actual={"RG_normal": normal, "stabilizer_is_autGS": stab_ok, "aut_order": aut.order},
        expected={"RG_normal": True, "stabilizer_is_autGS": True, "aut_order": ctx.N.order},
    )


def witness_pairs_distinct(group: PermGroup, first: Sequence[int], second: Sequence[int]) -> bool:
    """Independent re-check: ``second`` is not in the orbit of ``first``."""
    return tuple(second) not in tuple_orbit(group, first)
