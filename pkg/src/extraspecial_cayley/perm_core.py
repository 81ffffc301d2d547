"""Permutations and small permutation groups stored by explicit enumeration.

Composition is left-to-right: ``(f * g)(x) = g(f(x))``.  With image arrays
this is ``g.images[f.images]``.

Groups in this package have order at most ``2 p^3 (p-1)^2`` (24696 at p=7),
so the full element set is materialized as a sorted 2-D array.  Orbits on
points and on tuples are computed from generators only.
"""

from __future__ import annotations

import enum
import os
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .errors import BoundExceeded, NotInvariant, NotSubgroup

DEFAULT_CLOSURE_BOUND = 10 ** 6
CLOSURE_BOUND_ENV = "ESCAY_CLOSURE_BOUND"


def closure_bound() -> int:
    value = os.environ.get(CLOSURE_BOUND_ENV)
    return int(value) if value else DEFAULT_CLOSURE_BOUND


class Permutation:
    __slots__ = ("images", "_key")

    def __init__(self, images: Sequence[int] | np.ndarray):
        arr = np.array(images, dtype=np.int32)
        if arr.ndim != 1:
            raise ValueError("permutation images must be one-dimensional")
        if not np.array_equal(np.sort(arr), np.arange(len(arr))):
            raise ValueError("not a permutation")
        arr.setflags(write=False)
        self.images = arr
        self._key = arr.tobytes()

    @classmethod
    def _trusted(cls, arr: np.ndarray) -> "Permutation":
        obj = cls.__new__(cls)
        arr = np.ascontiguousarray(arr, dtype=np.int32)
        arr.setflags(write=False)
        obj.images = arr
        obj._key = arr.tobytes()
        return obj

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls._trusted(np.arange(n, dtype=np.int32))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def __mul__(self, other: "Permutation") -> "Permutation":
        return Permutation._trusted(other.images[self.images])

    def inverse(self) -> "Permutation":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(len(self.images), dtype=np.int32)
        return Permutation._trusted(inv)

    def __pow__(self, n: int) -> "Permutation":
        base = self if n >= 0 else self.inverse()
        out = Permutation.identity(self.degree)
        for _ in range(abs(n)):
            out = out * base
        return out

    def is_identity(self) -> bool:
        return bool(np.array_equal(self.images, np.arange(len(self.images))))

    def __eq__(self, other):
        return isinstance(other, Permutation) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other: "Permutation") -> bool:
        return tuple(self.images) < tuple(other.images)

    def __repr__(self):
        return f"Permutation({self.cycles()})"

    def cycles(self) -> str:
        seen = set()
        out = []
        for i in range(self.degree):
            if i in seen or self.images[i] == i:
                continue
            cyc = [i]
            seen.add(i)
            j = int(self.images[i])
            while j != i:
                seen.add(j)
                cyc.append(j)
                j = int(self.images[j])
            out.append("(" + " ".join(map(str, cyc)) + ")")
        return "".join(out) or "()"


def _sorted_unique_rows(arr: np.ndarray) -> np.ndarray:
    # big-endian non-negative ints compare bytewise in numeric order, so a
    # 1-d void view sorts rows lexicographically far faster than axis=0
    if len(arr) == 0:
        return arr
    big = np.ascontiguousarray(arr, dtype=">i4")
    rows = big.view(np.dtype((np.void, big.shape[1] * 4))).ravel()
    _, idx = np.unique(rows, return_index=True)
    return arr[idx].astype(np.int32, copy=False)


class PermGroup:
    """Group generated by ``generators``; elements enumerated on first use."""

    def __init__(self, degree: int, generators: Iterable[Permutation], *, bound: int | None = None):
        gens = []
        for g in generators:
            if g.degree != degree:
                raise ValueError("generator degree mismatch")
            if not g.is_identity() and g not in gens:
                gens.append(g)
        self.degree = degree
        self.generators: tuple[Permutation, ...] = tuple(gens)
        self.bound = closure_bound() if bound is None else bound
        self._elements: np.ndarray | None = None

    @classmethod
    def from_elements(cls, degree: int, elements: np.ndarray) -> "PermGroup":
        """Build from a known element array (must already be a group)."""
        elements = _sorted_unique_rows(np.asarray(elements, dtype=np.int32).reshape(-1, degree))
        gens: list[Permutation] = []
        current = PermGroup(degree, [])
        for row in elements:
            if len(current) == len(elements):
                break
            perm = Permutation._trusted(row)
            if perm not in current:
                gens.append(perm)
                current = PermGroup(degree, gens)
        group = cls(degree, gens)
        group._elements = elements
        group._elements.setflags(write=False)
        return group

    # enumeration ------------------------------------------------------

    def _enumerate(self) -> np.ndarray:
        ident = np.arange(self.degree, dtype=np.int32)
        known = {ident.tobytes()}
        blocks = [ident[None, :]]
        frontier = ident[None, :]
        gen_arrays = [g.images for g in self.generators]
        while len(frontier) and gen_arrays:
            cand = _sorted_unique_rows(np.concatenate([g[frontier] for g in gen_arrays]))
            fresh = [row for row in cand if row.tobytes() not in known]
            if not fresh:
                break
            frontier = np.array(fresh, dtype=np.int32)
            known.update(row.tobytes() for row in frontier)
            blocks.append(frontier)
            if len(known) > self.bound:
                raise BoundExceeded(f"group closure exceeded {self.bound} elements")
        return _sorted_unique_rows(np.concatenate(blocks))

    @property
    def elements_array(self) -> np.ndarray:
        if self._elements is None:
            self._elements = self._enumerate()
            self._elements.setflags(write=False)
        return self._elements

    @cached_property
    def _index(self) -> dict[bytes, int]:
        return {row.tobytes(): i for i, row in enumerate(self.elements_array)}

    def elements(self) -> list[Permutation]:
        return [Permutation._trusted(row) for row in self.elements_array]

    @property
    def order(self) -> int:
        return len(self.elements_array)

    def __len__(self) -> int:
        return self.order

    def __contains__(self, perm: Permutation) -> bool:
        return perm.degree == self.degree and perm._key in self._index

    def __iter__(self):
        return iter(self.elements())

    def same_elements(self, other: "PermGroup") -> bool:
        return self.degree == other.degree and np.array_equal(self.elements_array, other.elements_array)

    def is_subset_of(self, other: "PermGroup") -> bool:
        return all(g in other for g in self.generators)

    def __repr__(self):
        return f"PermGroup(degree={self.degree}, ngens={len(self.generators)})"


def closure(generators: Sequence[Permutation], *, degree: int | None = None, bound: int | None = None) -> PermGroup:
    """Close ``generators`` under composition; raises BoundExceeded past ``bound``."""
    if degree is None:
        if not generators:
            raise ValueError("degree required for an empty generator list")
        degree = generators[0].degree
    group = PermGroup(degree, generators, bound=bound)
    group.elements_array
    return group


def trivial_group(degree: int) -> PermGroup:
    return closure([], degree=degree)


def symmetric_group(degree: int) -> PermGroup:
    if degree < 2:
        return trivial_group(degree)
    cycle = Permutation(list(range(1, degree)) + [0])
    swap = Permutation([1, 0] + list(range(2, degree)))
    return PermGroup(degree, [cycle, swap])  # elements only enumerated on demand


# orbits -----------------------------------------------------------------


def orbit(group: PermGroup, point: int) -> frozenset[int]:
    if not 0 <= point < group.degree:
        raise ValueError("point out of range")
    seen = {point}
    stack = [point]
    gens = [g.images for g in group.generators]
    while stack:
        x = stack.pop()
        for g in gens:
            y = int(g[x])
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return frozenset(seen)


def orbits(group: PermGroup, points: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Orbits meeting ``points`` (default all), each sorted, ordered by minimum."""
    todo = range(group.degree) if points is None else sorted(points)
    done: set[int] = set()
    out = []
    for x in todo:
        if x in done:
            continue
        orb = orbit(group, x)
        done |= orb
        out.append(tuple(sorted(orb)))
    return out


def _encode(tuples: np.ndarray, n: int) -> np.ndarray:
    codes = np.zeros(len(tuples), dtype=np.int64)
    for col in range(tuples.shape[1]):
        codes = codes * n + tuples[:, col]
    return codes


def tuple_orbit_labels(group: PermGroup, tuples: np.ndarray) -> np.ndarray:
    """Orbit label per row of ``tuples`` (rows must be sorted and distinct).

    Labels are numbered by the first row of each orbit.  Raises
    NotInvariant if a generator maps a tuple outside the set.
    """
    tuples = np.asarray(tuples, dtype=np.int64)
    m = len(tuples)
    if m == 0:
        return np.zeros(0, dtype=np.int64)
    codes = _encode(tuples, group.degree)
    if np.any(np.diff(codes) <= 0):
        raise ValueError("tuples must be sorted and distinct")
    rows, cols = [], []
    for g in group.generators:
        img_codes = _encode(g.images[tuples], group.degree)
        pos = np.searchsorted(codes, img_codes)
        pos_clip = np.minimum(pos, m - 1)
        bad = codes[pos_clip] != img_codes
        if np.any(bad):
            first = int(np.argmax(bad))
            raise NotInvariant(
                f"generator maps {tuple(tuples[first].tolist())} outside the given set"
            )
        rows.append(np.arange(m))
        cols.append(pos)
    if rows:
        r = np.concatenate(rows)
        c = np.concatenate(cols)
    else:
        r = c = np.zeros(0, dtype=np.int64)
    adj = coo_matrix((np.ones(len(r), dtype=np.int8), (r, c)), shape=(m, m))
    _, labels = connected_components(adj, directed=True, connection="weak")
    # renumber by first occurrence so labels follow the tuple order
    _, first_pos = np.unique(labels, return_index=True)
    rank = np.empty(len(first_pos), dtype=np.int64)
    rank[np.argsort(first_pos)] = np.arange(len(first_pos))
    return rank[labels]


def orbits_on_tuples(group: PermGroup, tuples: Iterable[Sequence[int]]) -> list[list[tuple[int, ...]]]:
    arr = np.array(sorted({tuple(t) for t in tuples}), dtype=np.int64)
    if len(arr) == 0:
        return []
    labels = tuple_orbit_labels(group, arr)
    out: list[list[tuple[int, ...]]] = [[] for _ in range(int(labels.max()) + 1)]
    for row, lab in zip(arr.tolist(), labels.tolist()):
        out[lab].append(tuple(row))
    return out


def orbits_on_ordered_pairs(group: PermGroup, pairs: Iterable[tuple[int, int]]) -> list[list[tuple[int, int]]]:
    """Partition of an invariant pair set into orbits, ordered by minimal pair."""
    return orbits_on_tuples(group, pairs)


def induced_group(group: PermGroup, tuples: Sequence[Sequence[int]], *, unordered: bool = False) -> PermGroup:
    """Action of ``group`` on the index set of ``tuples`` (sorted order).

    With ``unordered`` each tuple is treated as a set, e.g. for edges.
    """
    norm = sorted({tuple(sorted(t)) if unordered else tuple(t) for t in tuples})
    arr = np.array(norm, dtype=np.int64)
    codes = _encode(arr, group.degree)
    gens = []
    for g in group.generators:
        img = g.images[arr]
        if unordered:
            img = np.sort(img, axis=1)
        img_codes = _encode(img, group.degree)
        pos = np.searchsorted(codes, img_codes)
        pos_clip = np.minimum(pos, len(codes) - 1)
        if np.any(codes[pos_clip] != img_codes):
            raise NotInvariant("generator does not preserve the tuple set")
        gens.append(Permutation._trusted(pos))
    return PermGroup(len(norm), gens, bound=group.bound)


# stabilizers, normality, regularity -------------------------------------


def stabilizer(group: PermGroup, point: int) -> PermGroup:
    if not 0 <= point < group.degree:
        raise ValueError("point out of range")
    elems = group.elements_array
    return PermGroup.from_elements(group.degree, elems[elems[:, point] == point])


def stabilizer_orders(group: PermGroup) -> np.ndarray:
    elems = group.elements_array
    return (elems == np.arange(group.degree)[None, :]).sum(axis=0)


def orbit_stabilizer_holds(group: PermGroup) -> bool:
    """``|G| = |orbit(x)| * |G_x|`` for every point ``x``."""
    stab = stabilizer_orders(group)
    for orb in orbits(group):
        for x in orb:
            if len(orb) * int(stab[x]) != group.order:
                return False
    return True


def is_normal(sub: PermGroup, group: PermGroup) -> bool:
    """Generator-level normality test of ``sub`` in ``group``."""
    # containment of the generators suffices and avoids enumerating a bad ``sub``
    if sub.degree != group.degree or not all(h in group for h in sub.generators):
        raise NotSubgroup("sub is not contained in group")
    for g in group.generators:
        gi = g.inverse()
        for h in sub.generators:
            if gi * h * g not in sub:
                return False
    return True


def is_normal_bruteforce(sub: PermGroup, group: PermGroup) -> bool:
    if not sub.is_subset_of(group):
        raise NotSubgroup("sub is not contained in group")
    for g in group.elements():
        gi = g.inverse()
        for h in sub.elements():
            if gi * h * g not in sub:
                return False
    return True


class Regularity(str, enum.Enum):
    REGULAR = "regular"
    SEMIREGULAR_ONLY = "semiregular-only"
    TRANSITIVE_ONLY = "transitive-only"
    NEITHER = "neither"


def action_regularity(group: PermGroup, points: Iterable[int]) -> Regularity:
    pts = sorted(set(points))
    pset = set(pts)
    for g in group.generators:
        for x in pts:
            if int(g.images[x]) not in pset:
                raise NotInvariant(f"point {x} mapped outside the given set")
    orbs = orbits(group, pts)
    transitive = len(orbs) == 1
    stab = stabilizer_orders(group)
    semiregular = all(int(stab[x]) == 1 for x in pts)
    if transitive and semiregular:
        return Regularity.REGULAR
    if semiregular:
        return Regularity.SEMIREGULAR_ONLY
    if transitive:
        return Regularity.TRANSITIVE_ONLY
    return Regularity.NEITHER


def tuple_orbit(group: PermGroup, tup: Sequence[int]) -> frozenset[tuple[int, ...]]:
    """Orbit of a single tuple by breadth-first search over generators."""
    start = tuple(int(x) for x in tup)
    seen = {start}
    stack = [start]
    gens = [g.images for g in group.generators]
    while stack:
        t = stack.pop()
        for g in gens:
            img = tuple(int(g[x]) for x in t)
            if img not in seen:
                seen.add(img)
                stack.append(img)
    return frozenset(seen)
