"""Arithmetic in the extraspecial group of order p^3 and exponent p.

Elements are stored in the normal form ``a^i b^j c^k`` as triples ``(i, j, k)``
over Z_p, where ``c = [a, b] = a^-1 b^-1 a b`` is central.  The relation
``ab = bac`` (equivalently ``ba = ab c^-1``) gives the product law::

    (i1, j1, k1) * (i2, j2, k2) = (i1 + i2, j1 + j2, k1 + k2 - i2 * j1)   (mod p)

Moving ``a^i2`` leftwards past ``b^j1`` produces ``c^(-i2 * j1)``, and ``c``
commutes with everything, so the product is again in normal form.

Vertex indices used throughout the package are ``i*p^2 + j*p + k``; the
identity has index 0.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import ConfigError, InternalInvariant

log = logging.getLogger(__name__)

SOFT_MAX_PRIME = 13


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def multiplicative_order(x: int, p: int) -> int:
    x %= p
    if x == 0:
        raise ValueError("0 has no multiplicative order")
    k, y = 1, x
    while y != 1:
        y = (y * x) % p
        k += 1
    return k


def smallest_primitive_root(p: int) -> int:
    for t in range(2, p):
        if multiplicative_order(t, p) == p - 1:
            return t
    raise ValueError(f"no primitive root mod {p}")


@dataclass(frozen=True)
class GroupParams:
    """Odd prime ``p`` together with a primitive root ``t`` modulo ``p``."""

    p: int
    t: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and self.p >= 3 and is_prime(self.p)):
            raise ConfigError("p must be an odd prime")
        if multiplicative_order(self.t, self.p) != self.p - 1:
            raise ConfigError(f"t={self.t} is not a primitive root mod {self.p}")
        if self.p > SOFT_MAX_PRIME:
            log.warning("p=%d is above the supported range (p <= %d)", self.p, SOFT_MAX_PRIME)

    @classmethod
    def from_prime(cls, p: int, t: int | None = None) -> "GroupParams":
        if not (isinstance(p, int) and p >= 3 and is_prime(p)):
            raise ConfigError("p must be an odd prime")
        return cls(p, smallest_primitive_root(p) if t is None else t)

    @property
    def order(self) -> int:
        return self.p ** 3


class GroupElement(NamedTuple):
    i: int
    j: int
    k: int

    def label(self) -> str:
        return f"{self.i}.{self.j}.{self.k}"


IDENTITY = GroupElement(0, 0, 0)


def element(i: int, j: int, k: int, params: GroupParams) -> GroupElement:
    p = params.p
    return GroupElement(i % p, j % p, k % p)


def multiply(g1: GroupElement, g2: GroupElement, params: GroupParams) -> GroupElement:
    p = params.p
    return GroupElement(
        (g1[0] + g2[0]) % p,
        (g1[1] + g2[1]) % p,
        (g1[2] + g2[2] - g2[0] * g1[1]) % p,
    )


def inverse(g: GroupElement, params: GroupParams) -> GroupElement:
    p = params.p
    i, j, k = g
    return GroupElement(-i % p, -j % p, (-k - i * j) % p)


def power(g: GroupElement, n: int, params: GroupParams) -> GroupElement:
    if n < 0:
        g, n = inverse(g, params), -n
    result, base = IDENTITY, g
    while n:
        if n & 1:
            result = multiply(result, base, params)
        base = multiply(base, base, params)
        n >>= 1
    return result


def commutator(g: GroupElement, h: GroupElement, params: GroupParams) -> GroupElement:
    """``[g, h] = g^-1 h^-1 g h``."""
    gi, hi = inverse(g, params), inverse(h, params)
    return multiply(multiply(gi, hi, params), multiply(g, h, params), params)


def index_of(g: GroupElement, params: GroupParams) -> int:
    p = params.p
    return g[0] * p * p + g[1] * p + g[2]


def element_at(idx: int, params: GroupParams) -> GroupElement:
    p = params.p
    i, rest = divmod(idx, p * p)
    j, k = divmod(rest, p)
    return GroupElement(i, j, k)


def all_elements(params: GroupParams) -> list[GroupElement]:
    """Every element, in vertex-index order."""
    p = params.p
    return [GroupElement(i, j, k) for i in range(p) for j in range(p) for k in range(p)]


def elements_array(params: GroupParams) -> np.ndarray:
    """``(p^3, 3)`` integer array of normal forms in vertex-index order."""
    p = params.p
    idx = np.arange(p ** 3)
    return np.stack([idx // (p * p), (idx // p) % p, idx % p], axis=1)


def multiply_arrays(x: np.ndarray, y: np.ndarray, p: int) -> np.ndarray:
    """Row-wise product of two ``(m, 3)`` arrays of normal forms (broadcasts)."""
    x = np.asarray(x)
    y = np.asarray(y)
    out = np.empty(np.broadcast_shapes(x.shape, y.shape), dtype=np.int64)
    out[..., 0] = (x[..., 0] + y[..., 0]) % p
    out[..., 1] = (x[..., 1] + y[..., 1]) % p
    out[..., 2] = (x[..., 2] + y[..., 2] - y[..., 0] * x[..., 1]) % p
    return out


def indices_of_array(x: np.ndarray, p: int) -> np.ndarray:
    return x[..., 0] * p * p + x[..., 1] * p + x[..., 2]


def generated_subgroup(gens: Iterable[GroupElement], params: GroupParams) -> frozenset[GroupElement]:
    gens = list(gens)
    seen = {IDENTITY}
    frontier = [IDENTITY]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = multiply(x, g, params)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(seen)


def is_subgroup(elems: frozenset[GroupElement], params: GroupParams) -> bool:
    if IDENTITY not in elems:
        return False
    return all(multiply(x, y, params) in elems for x in elems for y in elems)


def connection_set(params: GroupParams) -> frozenset[GroupElement]:
    p = params.p
    return frozenset(
        [GroupElement(i, 0, 0) for i in range(1, p)] + [GroupElement(0, i, 0) for i in range(1, p)]
    )


# --------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True, order=True)
class GroupAutomorphism:
    """Automorphism determined by the images of ``a`` and ``b``."""

    img_a: GroupElement
    img_b: GroupElement

    def img_c(self, params: GroupParams) -> GroupElement:
        return commutator(self.img_a, self.img_b, params)


def identity_automorphism() -> GroupAutomorphism:
    return GroupAutomorphism(GroupElement(1, 0, 0), GroupElement(0, 1, 0))


def apply_automorphism(phi: GroupAutomorphism, g: GroupElement, params: GroupParams) -> GroupElement:
    i, j, k = g
    x = multiply(power(phi.img_a, i, params), power(phi.img_b, j, params), params)
    return multiply(x, power(phi.img_c(params), k, params), params)


def automorphism_table(phi: GroupAutomorphism, params: GroupParams) -> np.ndarray:
    """Index table ``v -> index(phi(element_at(v)))`` of length p^3."""
    p = params.p
    pa = np.array([power(phi.img_a, e, params) for e in range(p)])
    pb = np.array([power(phi.img_b, e, params) for e in range(p)])
    pc = np.array([power(phi.img_c(params), e, params) for e in range(p)])
    x = elements_array(params)
    img = multiply_arrays(multiply_arrays(pa[x[:, 0]], pb[x[:, 1]], p), pc[x[:, 2]], p)
    return indices_of_array(img, p)


def _table_is_automorphism(table: np.ndarray, phi: GroupAutomorphism, params: GroupParams) -> bool:
    p = params.p
    n = p ** 3
    if len(np.unique(table)) != n:
        return False
    x = elements_array(params)
    fx = elements_array(params)[table]
    for gen, img in ((GroupElement(1, 0, 0), phi.img_a), (GroupElement(0, 1, 0), phi.img_b)):
        lhs = table[indices_of_array(multiply_arrays(x, np.array(gen), p), p)]
        rhs = indices_of_array(multiply_arrays(fx, np.array(img), p), p)
        if not np.array_equal(lhs, rhs):
            return False
    return True


def is_automorphism(phi: GroupAutomorphism, params: GroupParams) -> bool:
    """True iff the map induced by the generator images is a bijective homomorphism.

    Checking ``f(xa) = f(x)f(a)`` and ``f(xb) = f(x)f(b)`` for all ``x`` is
    enough since ``a`` and ``b`` generate the group.
    """
    return _table_is_automorphism(automorphism_table(phi, params), phi, params)


def compose(phi: GroupAutomorphism, psi: GroupAutomorphism, params: GroupParams) -> GroupAutomorphism:
    """Apply ``phi`` first, then ``psi``."""
    return GroupAutomorphism(
        apply_automorphism(psi, phi.img_a, params), apply_automorphism(psi, phi.img_b, params)
    )


def automorphism_power(phi: GroupAutomorphism, n: int, params: GroupParams) -> GroupAutomorphism:
    out = identity_automorphism()
    for _ in range(n):
        out = compose(out, phi, params)
    return out


def automorphism_inverse(phi: GroupAutomorphism, params: GroupParams) -> GroupAutomorphism:
    table = automorphism_table(phi, params)
    inv = np.empty_like(table)
    inv[table] = np.arange(len(table))
    a_idx = index_of(GroupElement(1, 0, 0), params)
    b_idx = index_of(GroupElement(0, 1, 0), params)
    return GroupAutomorphism(element_at(int(inv[a_idx]), params), element_at(int(inv[b_idx]), params))


def preserves_set(phi: GroupAutomorphism, s: frozenset[GroupElement], params: GroupParams) -> bool:
    return {apply_automorphism(phi, x, params) for x in s} == set(s)


def canonical_automorphisms(
    params: GroupParams,
) -> tuple[GroupAutomorphism, GroupAutomorphism, GroupAutomorphism]:
    """The three generators of Aut(G, S): scale ``a`` by ``t``, scale ``b`` by ``t``, swap."""
    t = params.t
    alpha = GroupAutomorphism(GroupElement(t, 0, 0), GroupElement(0, 1, 0))
    beta = GroupAutomorphism(GroupElement(1, 0, 0), GroupElement(0, t, 0))
    gamma = GroupAutomorphism(GroupElement(0, 1, 0), GroupElement(1, 0, 0))
    return alpha, beta, gamma


def aut_G_S(params: GroupParams) -> tuple[GroupAutomorphism, ...]:
    """All automorphisms of G fixing the connection set setwise.

    Since ``a, b`` lie in ``S`` their images must too, so a search over
    ``S x S`` is exhaustive.  Returned sorted by generator images.
    """
    s = connection_set(params)
    s_idx = np.array(sorted(index_of(x, params) for x in s))
    found = []
    for x in sorted(s):
        for y in sorted(s):
            phi = GroupAutomorphism(x, y)
            table = automorphism_table(phi, params)
            if not _table_is_automorphism(table, phi, params):
                continue
            if np.array_equal(np.sort(table[s_idx]), s_idx):
                found.append(phi)
    found_set = set(found)
    for phi in found:
        for psi in found:
            if compose(phi, psi, params) not in found_set:
                raise InternalInvariant("Aut(G,S) search result is not closed under composition")
    return tuple(found)


def order_p2_subgroups(params: GroupParams) -> list[frozenset[GroupElement]]:
    """The p+1 subgroups of order p^2: <b>x<c> and <a b^i>x<c> for 0 <= i < p."""
    p = params.p
    c = GroupElement(0, 0, 1)
    gens = [GroupElement(0, 1, 0)] + [multiply(GroupElement(1, 0, 0), GroupElement(0, i, 0), params) for i in range(p)]
    subs = [generated_subgroup([g, c], params) for g in gens]
    if len(set(subs)) != p + 1:
        raise InternalInvariant("expected p+1 distinct subgroups of order p^2")
    for h in subs:
        if len(h) != p * p or not is_subgroup(h, params):
            raise InternalInvariant("order-p^2 candidate is not a subgroup of order p^2")
    return subs


def enumerate_order_p2_subgroups(params: GroupParams) -> list[frozenset[GroupElement]]:
    """Exhaustive search for all subgroups of order p^2, independent of the case list.

    A group of order p^2 is abelian and here has exponent p, so each such
    subgroup is ``<x, y>`` for a commuting pair with ``y`` outside ``<x>``.
    Conversely two commuting independent elements generate exactly p^2 elements.
    """
    p = params.p
    x = elements_array(params)
    # x and y commute iff i_x j_y == i_y j_x (mod p)
    commute = (np.outer(x[:, 0], x[:, 1]) - np.outer(x[:, 1], x[:, 0])) % p == 0
    found: set[frozenset[int]] = set()
    for xi in range(1, p ** 3):
        gx = element_at(xi, params)
        cyc = {index_of(power(gx, e, params), params) for e in range(p)}
        covered = set(cyc)
        for yi in np.nonzero(commute[xi])[0].tolist():
            if yi in covered:
                continue
            gy = element_at(yi, params)
            sub = frozenset(
                index_of(multiply(power(gx, e, params), power(gy, f, params), params), params)
                for e in range(p)
                for f in range(p)
            )
            found.add(sub)
            covered |= sub
    return sorted((frozenset(element_at(v, params) for v in s) for s in found), key=lambda s: sorted(s))
