"""Finite posets, finite lattices and Birkhoff duality.

Posets and lattices are stored as boolean ``leq`` matrices over the indices
``0..n-1``; lattices additionally carry ``join`` and ``meet`` tables. A
distributive lattice built from a poset keeps its elements as down-set
bitmasks, so join and meet are plain ``|`` and ``&`` on ints.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Iterable, Iterator, Sequence

import numpy as np

ELEMENT_CAP = 4096
POSET_CAP = 6


class PosetError(ValueError):
    pass


class LatticeError(ValueError):
    pass


class CapExceeded(ValueError):
    pass


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


def _closure(leq: np.ndarray) -> np.ndarray:
    leq = leq.copy()
    np.fill_diagonal(leq, True)
    for k in range(len(leq)):
        leq |= leq[:, k : k + 1] & leq[k : k + 1, :]
    return leq


def _cover_matrix(leq: np.ndarray) -> np.ndarray:
    lt = leq.copy()
    np.fill_diagonal(lt, False)
    lt_i = lt.astype(np.int32)
    between = (lt_i @ lt_i) > 0
    return lt & ~between


def _heights(leq: np.ndarray, covers: np.ndarray) -> list[int]:
    """Longest chain length from a minimal element, per point."""
    n = len(leq)
    order = sorted(range(n), key=lambda i: int(leq[:, i].sum()))
    h = [0] * n
    for y in order:
        below = np.flatnonzero(covers[:, y])
        if len(below):
            h[y] = 1 + max(h[x] for x in below)
    return h


@dataclass(frozen=True, eq=False)
class Poset:
    """Finite partial order on ``range(size)``; ``leq[i, j]`` iff i <= j."""

    size: int
    leq: np.ndarray = field(repr=False)

    @cached_property
    def covers(self) -> list[tuple[int, int]]:
        c = _cover_matrix(self.leq)
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(c))]

    @cached_property
    def down(self) -> tuple[int, ...]:
        """Bitmask of the strict down-set of each point."""
        out = []
        for j in range(self.size):
            mask = 0
            for i in np.flatnonzero(self.leq[:, j]):
                if i != j:
                    mask |= 1 << int(i)
            out.append(mask)
        return tuple(out)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Poset)
            and self.size == other.size
            and np.array_equal(self.leq, other.leq)
        )

    def __hash__(self) -> int:
        return hash((self.size, self.leq.tobytes()))


def check_poset(size: int, pairs: Iterable[Sequence[int]]) -> Poset:
    """Reflexive-transitive closure of ``pairs``; raises on a cycle."""
    if size < 0:
        raise PosetError("size must be non-negative")
    rel = np.zeros((size, size), dtype=bool)
    for pair in pairs:
        i, j = (int(v) for v in pair)
        if not (0 <= i < size and 0 <= j < size):
            raise PosetError(f"pair {(i, j)} out of range for size {size}")
        rel[i, j] = True
    leq = _closure(rel)
    both = leq & leq.T
    np.fill_diagonal(both, False)
    if both.any():
        i, j = (int(v) for v in np.argwhere(both)[0])
        raise PosetError(f"cycle detected between {i} and {j}")
    return Poset(size, _frozen(leq))


def antichain(n: int) -> Poset:
    return check_poset(n, [])


def chain(n: int) -> Poset:
    return check_poset(n, [(i, i + 1) for i in range(n - 1)])


@dataclass(frozen=True, eq=False)
class FiniteLattice:
    """A finite lattice given by its order and operation tables.

    ``elements`` holds a bitmask per element when the lattice is a family of
    sets closed under union and intersection (hence distributive); it is
    ``None`` otherwise. ``downsets`` marks the full down-set lattice of a
    poset, where a cover adds exactly one point and height is popcount.
    """

    size: int
    leq: np.ndarray = field(repr=False)
    join: np.ndarray = field(repr=False)
    meet: np.ndarray = field(repr=False)
    zero: int
    one: int
    elements: tuple[int, ...] | None = field(default=None, repr=False)
    downsets: bool = False

    @cached_property
    def join_rows(self) -> list[list[int]]:
        return self.join.tolist()

    @cached_property
    def meet_rows(self) -> list[list[int]]:
        return self.meet.tolist()

    @cached_property
    def leq_rows(self) -> list[list[bool]]:
        return self.leq.tolist()

    @cached_property
    def cover_pairs(self) -> list[tuple[int, int]]:
        if self.downsets:
            index = {m: i for i, m in enumerate(self.elements)}
            top = self.elements[self.one]
            out = []
            for i, m in enumerate(self.elements):
                rest = top & ~m
                while rest:
                    bit = rest & -rest
                    rest ^= bit
                    j = index.get(m | bit)
                    if j is not None:
                        out.append((i, j))
            return sorted(out)
        c = _cover_matrix(self.leq)
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(c))]

    @cached_property
    def heights(self) -> list[int]:
        if self.downsets:
            return [bin(m).count("1") for m in self.elements]
        covers = np.zeros((self.size, self.size), dtype=bool)
        for i, j in self.cover_pairs:
            covers[i, j] = True
        return _heights(self.leq, covers)

    @property
    def length(self) -> int:
        return self.heights[self.one]

    @cached_property
    def atoms(self) -> list[int]:
        return sorted(j for i, j in self.cover_pairs if i == self.zero)

    @cached_property
    def distributive(self) -> bool:
        return is_distributive(self)


def _lattice_from_tables(
    leq: np.ndarray,
    join: np.ndarray,
    meet: np.ndarray,
    elements: tuple[int, ...] | None = None,
    downsets: bool = False,
) -> FiniteLattice:
    n = len(leq)
    below = leq.sum(axis=0)
    zero = int(np.flatnonzero(below == 1)[0]) if n > 1 else 0
    one = int(np.flatnonzero(below == n)[0])
    for a in (leq, join, meet):
        _frozen(a)
    return FiniteLattice(n, leq, join, meet, zero, one, elements, downsets)


def lattice_from_leq(size: int, pairs: Iterable[Sequence[int]]) -> FiniteLattice:
    """Build a lattice from an order relation, computing join and meet.

    Raises :class:`LatticeError` if some pair lacks a least upper or
    greatest lower bound.
    """
    if size < 1:
        raise LatticeError("a lattice needs at least one element")
    if size > ELEMENT_CAP:
        raise CapExceeded(f"{size} elements exceeds cap {ELEMENT_CAP}")
    leq = check_poset(size, pairs).leq.copy()
    join = np.empty((size, size), dtype=np.int32)
    meet = np.empty((size, size), dtype=np.int32)
    for table, rel, kind in ((join, leq, "join"), (meet, leq.T, "meet")):
        count = rel.sum(axis=1)
        for i in range(size):
            bounds = rel[i][None, :] & rel  # row j: common bounds of i and j
            # the least bound is the one whose own bound set is all of them
            best = np.where(bounds, count[None, :], -1).argmax(axis=1)
            if not np.array_equal(rel[best], bounds):
                j = int(np.flatnonzero((rel[best] != bounds).any(axis=1))[0])
                raise LatticeError(f"no {kind} for elements {i} and {j}")
            table[i] = best
    return _lattice_from_tables(leq, join, meet)


def _downsets(P: Poset, cap: int) -> list[int]:
    order = sorted(range(P.size), key=lambda p: bin(P.down[p]).count("1"))
    family = [0]
    for p in order:
        need = P.down[p]
        grown = [d | (1 << p) for d in family if d & need == need]
        family.extend(grown)
        if len(family) > cap:
            raise CapExceeded(f"down-set lattice exceeds cap {cap}")
    return sorted(family)


def lattice_from_masks(masks: Sequence[int], downsets: bool = False) -> FiniteLattice:
    """Lattice of a family of bitmasks closed under | and &, sorted ascending."""
    arr = np.asarray(masks, dtype=np.int64)
    if np.any(arr[1:] <= arr[:-1]):
        raise LatticeError("masks must be strictly ascending")
    ors = arr[:, None] | arr[None, :]
    ands = arr[:, None] & arr[None, :]
    if arr[-1] == len(arr) - 1:
        # full powerset: an element's mask is its index
        join, meet = ors.astype(np.int32), ands.astype(np.int32)
    else:
        join = np.searchsorted(arr, ors).astype(np.int32)
        meet = np.searchsorted(arr, ands).astype(np.int32)
    if not (np.array_equal(arr[np.minimum(join, len(arr) - 1)], ors)
            and np.array_equal(arr[np.minimum(meet, len(arr) - 1)], ands)):
        raise LatticeError("mask family is not closed under union and intersection")
    leq = ands == arr[:, None]
    return _lattice_from_tables(leq, join, meet, tuple(int(m) for m in masks), downsets)


def downset_lattice(P: Poset, cap: int = ELEMENT_CAP) -> FiniteLattice:
    """Lattice of down-sets of ``P``; element masks use bit ``i`` for point ``i``."""
    if P.size > 62:
        raise CapExceeded("posets above 62 points are not supported")
    return lattice_from_masks(_downsets(P, cap), downsets=True)


def is_distributive(L: FiniteLattice) -> bool:
    if L.elements is not None:
        return True
    J, M = L.join, L.meet
    for x in range(L.size):
        left = M[x][J]  # x ∧ (y ∨ z)
        right = J[M[x][:, None], M[x][None, :]]  # (x ∧ y) ∨ (x ∧ z)
        if not np.array_equal(left, right):
            return False
    return True


def join_irreducible_elements(L: FiniteLattice) -> list[int]:
    lower_covers = [0] * L.size
    for _, j in L.cover_pairs:
        lower_covers[j] += 1
    return [j for j in range(L.size) if lower_covers[j] == 1]


def join_irreducibles(L: FiniteLattice) -> Poset:
    """Poset of join-irreducibles, listed in ascending element index."""
    if not L.distributive:
        raise LatticeError("join_irreducibles requires a distributive lattice")
    ji = join_irreducible_elements(L)
    sub = L.leq[np.ix_(ji, ji)].copy()
    return Poset(len(ji), _frozen(sub))


@dataclass(frozen=True)
class StructureReport:
    atoms: list[int]
    heights: list[int]
    length: int
    covers: list[tuple[int, int]]
    distributive: bool


def structure(L: FiniteLattice) -> StructureReport:
    return StructureReport(
        atoms=list(L.atoms),
        heights=list(L.heights),
        length=L.length,
        covers=list(L.cover_pairs),
        distributive=L.distributive,
    )


# --- isomorphism of relations -------------------------------------------------


def _point_invariants(leq: np.ndarray) -> list[tuple[int, int]]:
    return [(int(leq[:, i].sum()), int(leq[i].sum())) for i in range(len(leq))]


def relation_isomorphisms(
    a: np.ndarray, b: np.ndarray, first_only: bool = False
) -> Iterator[tuple[int, ...]]:
    """Bijections ``f`` with ``a[i, j] == b[f(i), f(j)]``, ascending search order."""
    n = len(a)
    if len(b) != n:
        return
    ia, ib = _point_invariants(a), _point_invariants(b)
    if sorted(ia) != sorted(ib):
        return
    al, bl = a.tolist(), b.tolist()
    candidates = [[j for j in range(n) if ib[j] == ia[i]] for i in range(n)]
    order = sorted(range(n), key=lambda i: (len(candidates[i]), i))
    image = [-1] * n
    used = [False] * n

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k == n:
            yield tuple(image)
            return
        x = order[k]
        for y in candidates[x]:
            if used[y]:
                continue
            ok = True
            for t in range(k):
                u = order[t]
                v = image[u]
                if al[x][u] != bl[y][v] or al[u][x] != bl[v][y]:
                    ok = False
                    break
            if ok:
                image[x], used[y] = y, True
                yield from extend(k + 1)
                image[x], used[y] = -1, False

    found = extend(0)
    if first_only:
        first = next(found, None)
        if first is not None:
            yield first
    else:
        yield from found


def poset_isomorphism(P: Poset, Q: Poset) -> tuple[int, ...] | None:
    return next(relation_isomorphisms(P.leq, Q.leq, first_only=True), None)


def poset_automorphisms(P: Poset) -> list[tuple[int, ...]]:
    return sorted(relation_isomorphisms(P.leq, P.leq))


# --- enumeration ----------------------------------------------------------------


def _fingerprint(leq: np.ndarray) -> tuple:
    covers = _cover_matrix(leq)
    inv = _point_invariants(leq)
    cov = [(int(covers[:, i].sum()), int(covers[i].sum())) for i in range(len(leq))]
    return tuple(sorted(zip(inv, cov)))


def posets_of_size(n: int) -> tuple[Poset, ...]:
    """One representative per isomorphism class of ``n``-point posets."""
    if n > POSET_CAP:
        raise CapExceeded(f"poset size {n} exceeds cap {POSET_CAP}")
    return _posets_of_size(n)


@lru_cache(maxsize=None)
def _posets_of_size(n: int) -> tuple[Poset, ...]:
    if n == 0:
        return (Poset(0, _frozen(np.zeros((0, 0), dtype=bool))),)
    reps: list[Poset] = []
    buckets: dict[tuple, list[Poset]] = {}
    for P in _posets_of_size(n - 1):
        # every n-point poset is an (n-1)-point one plus a maximal point
        for d in _downsets(P, ELEMENT_CAP):
            leq = np.zeros((n, n), dtype=bool)
            leq[: n - 1, : n - 1] = P.leq
            for i in range(n - 1):
                leq[i, n - 1] = bool(d >> i & 1)
            leq[n - 1, n - 1] = True
            key = _fingerprint(leq)
            bucket = buckets.setdefault(key, [])
            if any(next(relation_isomorphisms(leq, Q.leq, True), None) for Q in bucket):
                continue
            Q = Poset(n, _frozen(leq))
            bucket.append(Q)
            reps.append(Q)
    return tuple(reps)


def enumerate_posets(max_size: int, min_size: int = 0) -> Iterator[Poset]:
    """Posets of every size in ``[min_size, max_size]``, one per isomorphism class."""
    if max_size > POSET_CAP:
        raise CapExceeded(f"max_size {max_size} exceeds cap {POSET_CAP}")
    for n in range(min_size, max_size + 1):
        yield from posets_of_size(n)
