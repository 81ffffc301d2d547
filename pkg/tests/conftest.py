from functools import lru_cache

import pytest

from extraspecial_cayley import group_core as gc
from extraspecial_cayley.aut_search import automorphism_group
from extraspecial_cayley.cayley import build_cayley
from extraspecial_cayley.clique_coset import sigma_for


@lru_cache(maxsize=None)
def params(p: int) -> gc.GroupParams:
    return gc.GroupParams.from_prime(p)


@lru_cache(maxsize=None)
def context(p: int):
    return build_cayley(params(p))


@lru_cache(maxsize=None)
def aut_gamma(p: int):
    return automorphism_group(context(p).gamma)


@lru_cache(maxsize=None)
def aut_sigma(p: int):
    return automorphism_group(sigma_for(context(p)).graph)


@pytest.fixture(params=[3, 5, 7], ids=lambda p: f"p{p}")
def p(request):
    return request.param


@pytest.fixture(params=[3, 5], ids=lambda p: f"p{p}")
def small_p(request):
    return request.param


# one pass/fail line per acceptance criterion, printed after the run
_criteria: dict[int, list[tuple[str, str]]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion number")


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    n = report.user_properties and dict(report.user_properties).get("criterion")
    if n:
        _criteria.setdefault(n, []).append((report.nodeid.split("::")[-1], report.outcome))


@pytest.hookimpl(tryfirst=True)
def pytest_runtest_setup(item):
    mark = item.get_closest_marker("criterion")
    if mark:
        item.user_properties.append(("criterion", mark.args[0]))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        outcomes = [o for _, o in _criteria[n]]
        ran = [o for o in outcomes if o != "skipped"]
        if not ran:
            status = "SKIP"
        else:
            status = "PASS" if all(o == "passed" for o in ran) else "FAIL"
        detail = ", ".join(f"{name}={o}" for name, o in _criteria[n])
        terminalreporter.write_line(f"criterion {n}: {status}  ({detail})")
