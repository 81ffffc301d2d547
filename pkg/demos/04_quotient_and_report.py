"""Quotient by the centre, the cover check, and the full verification report for p = 5."""

import json

from extraspecial_cayley import group_core as gc
from extraspecial_cayley.cayley import build_cayley, center_subgroup
from extraspecial_cayley.graph_core import is_normal_cover, quotient_graph
from extraspecial_cayley.perm_core import action_regularity, orbits
from extraspecial_cayley.report import SuiteConfig, run_suite

params = gc.GroupParams.from_prime(5)
ctx = build_cayley(params)
center = center_subgroup(params)
blocks = orbits(center)
q = quotient_graph(ctx.gamma, blocks)
print("quotient:", q.n, "vertices, valency", q.valency())
print("cover:", is_normal_cover(ctx.gamma, blocks)[0], " centre action:", action_regularity(center, range(125)).value)

report = run_suite(SuiteConfig(5))
for r in report.results:
    print(f"{'PASS' if r.passed else 'FAIL'}  {r.name}")
print("overall", report.passed)
print(json.dumps(report.by_name("thm1_1.not_distance_transitive").to_dict(timing=False), indent=1))
