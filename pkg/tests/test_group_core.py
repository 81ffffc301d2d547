import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from extraspecial_cayley import group_core as gc
from extraspecial_cayley.errors import ConfigError
from extraspecial_cayley.group_core import GroupElement as E

from conftest import params


# Independent model: upper unitriangular 3x3 matrices mod p.
# a = X(1,0,0), b = X(0,1,0), c = X(0,0,1) and a^i b^j c^k = X(i, j, ij + k).
def matrix_of(g: E, p: int) -> np.ndarray:
    i, j, k = g
    return np.array([[1, i, (i * j + k) % p], [0, 1, j], [0, 0, 1]], dtype=np.int64)


def element_of(m: np.ndarray, p: int) -> E:
    i, j, z = int(m[0, 1]) % p, int(m[1, 2]) % p, int(m[0, 2]) % p
    return E(i, j, (z - i * j) % p)


def elements(p):
    return st.tuples(*(st.integers(0, p - 1),) * 3).map(lambda t: E(*t))


def test_multiply_examples():
    assert gc.multiply(E(1, 0, 0), E(0, 1, 0), params(3)) == E(1, 1, 0)
    assert gc.multiply(E(0, 1, 0), E(1, 0, 0), params(3)) == E(1, 1, 2)
    assert gc.multiply(E(1, 2, 0), E(3, 0, 4), params(5)) == E(4, 2, 3)


def test_matrix_model_reproduces_generators():
    p = 5
    a, b = matrix_of(E(1, 0, 0), p), matrix_of(E(0, 1, 0), p)
    ainv, binv = matrix_of(E(4, 0, 0), p), matrix_of(E(0, 4, 0), p)
    comm = ainv @ binv @ a @ b % p
    assert element_of(comm, p) == E(0, 0, 1)


def test_multiply_matches_matrices_exhaustively_p3():
    p = 3
    for x, y in itertools.product(gc.all_elements(params(p)), repeat=2):
        expect = element_of(matrix_of(x, p) @ matrix_of(y, p) % p, p)
        assert gc.multiply(x, y, params(p)) == expect


@pytest.mark.parametrize("p", [5, 7])
@settings(max_examples=300, deadline=None)
@given(data=st.data())
def test_multiply_matches_matrices(p, data):
    x, y = data.draw(elements(p)), data.draw(elements(p))
    expect = element_of(matrix_of(x, p) @ matrix_of(y, p) % p, p)
    assert gc.multiply(x, y, params(p)) == expect


@pytest.mark.parametrize("p", [3, 5, 7])
@settings(max_examples=200, deadline=None)
@given(data=st.data())
def test_group_axioms(p, data):
    pr = params(p)
    x, y, z = (data.draw(elements(p)) for _ in range(3))
    assert gc.multiply(gc.multiply(x, y, pr), z, pr) == gc.multiply(x, gc.multiply(y, z, pr), pr)
    assert gc.multiply(x, gc.inverse(x, pr), pr) == gc.IDENTITY
    assert gc.multiply(gc.inverse(x, pr), x, pr) == gc.IDENTITY
    assert gc.multiply(x, gc.IDENTITY, pr) == x == gc.multiply(gc.IDENTITY, x, pr)
    assert gc.power(x, p, pr) == gc.IDENTITY


def test_associativity_exhaustive_p3():
    pr = params(3)
    x = gc.elements_array(pr)
    i, j, k = (m.ravel() for m in np.meshgrid(*(np.arange(27),) * 3, indexing="ij"))
    lhs = gc.multiply_arrays(gc.multiply_arrays(x[i], x[j], 3), x[k], 3)
    rhs = gc.multiply_arrays(x[i], gc.multiply_arrays(x[j], x[k], 3), 3)
    assert np.array_equal(lhs, rhs)


def test_vectorized_multiply_agrees_with_scalar():
    pr = params(5)
    x = gc.elements_array(pr)
    rng = np.random.default_rng(0)
    a, b = rng.integers(0, 125, 200), rng.integers(0, 125, 200)
    prod = gc.multiply_arrays(x[a], x[b], 5)
    for u, v, w in zip(a, b, prod):
        assert gc.multiply(gc.element_at(int(u), pr), gc.element_at(int(v), pr), pr) == E(*map(int, w))


def test_inverse_examples():
    assert gc.inverse(E(0, 0, 0), params(3)) == E(0, 0, 0)
    assert gc.inverse(E(1, 2, 0), params(3)) == E(2, 1, 1)
    assert gc.multiply(E(1, 2, 0), E(2, 1, 1), params(3)) == gc.IDENTITY
    assert gc.inverse(E(1, 0, 0), params(5)) == E(4, 0, 0)


def test_commutator_examples():
    assert gc.commutator(E(1, 0, 0), E(0, 1, 0), params(5)) == E(0, 0, 1)
    assert gc.commutator(E(0, 0, 1), E(1, 0, 0), params(3)) == gc.IDENTITY
    assert gc.commutator(E(0, 0, 1), E(0, 1, 0), params(3)) == gc.IDENTITY
    for g in gc.all_elements(params(3)):
        assert gc.commutator(g, g, params(3)) == gc.IDENTITY


def test_index_round_trip(p):
    pr = params(p)
    for v in range(pr.order):
        assert gc.index_of(gc.element_at(v, pr), pr) == v
    assert gc.index_of(gc.IDENTITY, pr) == 0


def test_params_validation():
    for bad in (1, 2, 4, 9, 15, -3):
        with pytest.raises(ConfigError, match="odd prime"):
            gc.GroupParams.from_prime(bad)
    with pytest.raises(ConfigError):
        gc.GroupParams(5, 4)  # 4 has order 2 mod 5
    assert [gc.smallest_primitive_root(p) for p in (3, 5, 7, 11, 13)] == [2, 2, 3, 2, 2]


def test_primitive_root_generates(p):
    pr = params(p)
    assert sorted(pow(pr.t, e, p) for e in range(p - 1)) == list(range(1, p))


def test_connection_set():
    s3 = gc.connection_set(params(3))
    assert s3 == {E(1, 0, 0), E(2, 0, 0), E(0, 1, 0), E(0, 2, 0)}
    assert len(gc.connection_set(params(5))) == 8
    s7 = gc.connection_set(params(7))
    assert len(s7) == 12 and gc.IDENTITY not in s7
    assert {gc.inverse(x, params(7)) for x in s7} == s7


def test_canonical_automorphism_examples():
    pr = params(3)
    alpha, beta, gamma = gc.canonical_automorphisms(pr)
    assert (alpha.img_a, alpha.img_b) == (E(2, 0, 0), E(0, 1, 0))
    assert (beta.img_a, beta.img_b) == (E(1, 0, 0), E(0, 2, 0))
    assert (gamma.img_a, gamma.img_b) == (E(0, 1, 0), E(1, 0, 0))
    # oracle: img_a * img_b * img_c evaluated by multiply
    img = gc.multiply(gc.multiply(alpha.img_a, alpha.img_b, pr), alpha.img_c(pr), pr)
    assert gc.apply_automorphism(alpha, E(1, 1, 1), pr) == img == E(2, 1, 2)
    assert gc.apply_automorphism(gamma, E(1, 0, 1), pr) == E(0, 1, 2)
    assert gamma.img_c(pr) == gc.inverse(E(0, 0, 1), pr)
    for g in gc.all_elements(pr):
        assert gc.apply_automorphism(gamma, gc.apply_automorphism(gamma, g, pr), pr) == g


def test_aut_g_s_orders(p):
    auts = gc.aut_G_S(params(p))
    assert len(auts) == 2 * (p - 1) ** 2
    assert gc.identity_automorphism() in auts
    s = gc.connection_set(params(p))
    assert all(gc.preserves_set(phi, s, params(p)) for phi in auts)


def test_aut_g_s_relations(p):
    pr = params(p)
    alpha, beta, gamma = gc.canonical_automorphisms(pr)
    ident = gc.identity_automorphism()
    assert gc.automorphism_power(alpha, p - 1, pr) == ident
    assert gc.automorphism_power(beta, p - 1, pr) == ident
    assert gc.automorphism_power(gamma, 2, pr) == ident
    assert gc.compose(alpha, beta, pr) == gc.compose(beta, alpha, pr)
    conj = gc.compose(gc.compose(gc.automorphism_inverse(gamma, pr), alpha, pr), gamma, pr)
    assert conj == beta


def test_compose_order_convention():
    # compose(phi, psi) applies phi first
    pr = params(5)
    alpha, _, gamma = gc.canonical_automorphisms(pr)
    both = gc.compose(alpha, gamma, pr)
    for g in gc.all_elements(pr)[:40]:
        step = gc.apply_automorphism(gamma, gc.apply_automorphism(alpha, g, pr), pr)
        assert gc.apply_automorphism(both, g, pr) == step


def test_homomorphisms_exhaustive_p3():
    pr = params(3)
    els = gc.all_elements(pr)
    for phi in gc.aut_G_S(pr):
        for x, y in itertools.product(els, repeat=2):
            lhs = gc.apply_automorphism(phi, gc.multiply(x, y, pr), pr)
            rhs = gc.multiply(gc.apply_automorphism(phi, x, pr), gc.apply_automorphism(phi, y, pr), pr)
            assert lhs == rhs


def test_other_primitive_root_same_group():
    # t=3 is also a primitive root mod 5 and mod 7 has t=5
    for p, t in ((5, 3), (7, 5)):
        a = set(gc.aut_G_S(gc.GroupParams(p, t)))
        b = set(gc.aut_G_S(params(p)))
        assert a == b
        canon = gc.canonical_automorphisms(gc.GroupParams(p, t))
        closure = {gc.identity_automorphism()}
        frontier = list(closure)
        while frontier:
            nxt = []
            for f in frontier:
                for g in canon:
                    h = gc.compose(f, g, params(p))
                    if h not in closure:
                        closure.add(h)
                        nxt.append(h)
            frontier = nxt
        assert closure == b


def test_order_p2_subgroups(p):
    pr = params(p)
    subs = gc.order_p2_subgroups(pr)
    assert len(subs) == p + 1
    assert all(len(h) == p * p and gc.is_subgroup(h, pr) for h in subs)
    assert all(E(0, 0, 1) in h for h in subs)
    assert set(subs) == set(gc.enumerate_order_p2_subgroups(pr))
    a_c = gc.generated_subgroup([E(1, 0, 0), E(0, 0, 1)], pr)
    assert subs[1] == a_c


def test_bruteforce_p2_enumeration_p3():
    # Independent of commuting-pair reasoning: every 2-element generating set
    pr = params(3)
    found = set()
    els = gc.all_elements(pr)
    for x, y in itertools.combinations(els, 2):
        h = gc.generated_subgroup([x, y], pr)
        if len(h) == 9:
            found.add(h)
    assert found == set(gc.enumerate_order_p2_subgroups(pr))
