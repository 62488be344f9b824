"""Congruences of rotational lattices.

A congruence is stored as a label vector: every element is labelled by the
least index in its block. Label vectors compare and hash as tuples, which
gives a canonical order on congruences.
"""

from __future__ import annotations

import itertools
import weakref
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np

from .lattice import CapExceeded, LatticeError
from .rotational import (
    AlgebraMap,
    RotationalLattice,
    _lattice_from_tables,
    permutation_order,
)

CON_CAP = 64
PARTITION_ORACLE_CAP = 12


class CongruenceError(ValueError):
    pass


def canonical_labels(labels: Sequence[int]) -> tuple[int, ...]:
    first: dict[int, int] = {}
    return tuple(first.setdefault(lab, i) for i, lab in enumerate(labels))


@dataclass(frozen=True, eq=False)
class Congruence:
    algebra: RotationalLattice = field(repr=False)
    labels: tuple[int, ...]

    @cached_property
    def blocks(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for x, lab in enumerate(self.labels):
            out.setdefault(lab, []).append(x)
        return list(out.values())

    @property
    def is_identity(self) -> bool:
        return all(lab == i for i, lab in enumerate(self.labels))

    @property
    def is_full(self) -> bool:
        return all(lab == 0 for lab in self.labels)

    def __le__(self, other: "Congruence") -> bool:
        return contained(self.labels, other.labels)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Congruence) and self.labels == other.labels

    def __hash__(self) -> int:
        return hash(self.labels)

    def __len__(self) -> int:
        return len(self.blocks)


def contained(a: Sequence[int], b: Sequence[int]) -> bool:
    """Partition ``a`` refines partition ``b``."""
    return all(b[x] == b[lab] for x, lab in enumerate(a))


def identity(A: RotationalLattice) -> Congruence:
    return Congruence(A, tuple(range(A.size)))


def full(A: RotationalLattice) -> Congruence:
    return Congruence(A, (0,) * A.size)


def is_compatible(A: RotationalLattice, labels: Sequence[int]) -> bool:
    """Whether the partition respects join, meet and g."""
    lab = np.asarray(labels)
    L = A.lattice
    g = np.asarray(A.g)
    order = np.argsort(lab, kind="stable")
    same = lab[order[1:]] == lab[order[:-1]]
    xs, ys = order[:-1][same], order[1:][same]
    # consecutive members of each block suffice by transitivity
    return bool(
        np.array_equal(lab[L.join[xs]], lab[L.join[ys]])
        and np.array_equal(lab[L.meet[xs]], lab[L.meet[ys]])
        and np.array_equal(lab[g[xs]], lab[g[ys]])
    )


def congruence(A: RotationalLattice, labels: Sequence[int]) -> Congruence:
    if len(labels) != A.size:
        raise CongruenceError("label vector length does not match the algebra")
    labels = canonical_labels(labels)
    if not is_compatible(A, labels):
        raise CongruenceError("partition is not compatible with join, meet and g")
    return Congruence(A, labels)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.classes = n

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, x: int, y: int) -> bool:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return False
        if rx < ry:
            self.parent[ry] = rx
        else:
            self.parent[rx] = ry
        self.classes -= 1
        return True

    def labels(self) -> tuple[int, ...]:
        return canonical_labels([self.find(x) for x in range(len(self.parent))])


def _generated(A: RotationalLattice, pairs: Iterable[tuple[int, int]]) -> tuple[int, ...]:
    J, M = A.lattice.join_rows, A.lattice.meet_rows
    g = A.g
    uf = _UnionFind(A.size)
    work = list(pairs)
    while work:
        x, y = work.pop()
        if not uf.union(x, y):
            continue
        if uf.classes == 1:
            break
        Jx, Jy, Mx, My = J[x], J[y], M[x], M[y]
        work.append((g[x], g[y]))
        for c in range(A.size):
            work.append((Jx[c], Jy[c]))
            work.append((Mx[c], My[c]))
    return uf.labels()


def principal_congruence(A: RotationalLattice, a: int, b: int) -> Congruence:
    """Least congruence identifying ``a`` and ``b``.

    Each newly merged pair pushes its images under ``x -> x | c``,
    ``x -> x & c`` and ``g``; the union-find fixpoint is closed under all
    unary polynomials since these translations generate them.
    """
    return Congruence(A, _generated(A, [(a, b)]))


def join_congruences(A: RotationalLattice, thetas: Iterable[Congruence]) -> Congruence:
    uf = _UnionFind(A.size)
    for theta in thetas:
        for x, lab in enumerate(theta.labels):
            uf.union(x, lab)
    return Congruence(A, uf.labels())


def meet_congruences(A: RotationalLattice, a: Congruence, b: Congruence) -> Congruence:
    return Congruence(A, canonical_labels(list(zip(a.labels, b.labels))))


def cover_principals(A: RotationalLattice) -> list[Congruence]:
    """Distinct principal congruences of covering pairs, canonically sorted.

    Every congruence of a lattice-based algebra is a join of these.
    """
    seen = {principal_congruence(A, x, y).labels for x, y in A.lattice.cover_pairs}
    return [Congruence(A, lab) for lab in sorted(seen)]


@dataclass(frozen=True, eq=False)
class ConLattice:
    algebra: RotationalLattice = field(repr=False)
    congruences: tuple[Congruence, ...]

    @cached_property
    def leq(self) -> np.ndarray:
        n = len(self.congruences)
        out = np.zeros((n, n), dtype=bool)
        for i, a in enumerate(self.congruences):
            for j, b in enumerate(self.congruences):
                out[i, j] = a <= b
        return out

    @cached_property
    def upper_covers(self) -> list[list[int]]:
        lt = self.leq.copy()
        np.fill_diagonal(lt, False)
        n = len(lt)
        return [
            [int(j) for j in np.flatnonzero(lt[i]) if not (lt[i] & lt[:, j]).any()]
            for i in range(n)
        ]

    def __len__(self) -> int:
        return len(self.congruences)

    def __iter__(self) -> Iterator[Congruence]:
        return iter(self.congruences)

    def index(self, theta: Congruence) -> int:
        return self.congruences.index(theta)

    def meet_irreducibles(self) -> list[Congruence]:
        return [c for c, up in zip(self.congruences, self.upper_covers) if len(up) == 1]


_con_cache: "weakref.WeakKeyDictionary[RotationalLattice, ConLattice]" = weakref.WeakKeyDictionary()


def all_congruences(A: RotationalLattice, cap: int = CON_CAP) -> ConLattice:
    """Every congruence, as the join-closure of the cover principal congruences."""
    if A.size > cap:
        raise CapExceeded(f"{A.size} elements exceeds the Con cap {cap}")
    cached = _con_cache.get(A)
    if cached is None:
        cached = _con_cache[A] = _all_congruences(A)
    return cached


def _all_congruences(A: RotationalLattice) -> ConLattice:
    found = {tuple(range(A.size))}
    frontier = [c.labels for c in cover_principals(A)]
    generators = list(frontier)
    while frontier:
        nxt = []
        for lab in frontier:
            if lab in found:
                continue
            found.add(lab)
            for gen in generators:
                if not contained(gen, lab):
                    nxt.append(join_congruences(A, [Congruence(A, lab), Congruence(A, gen)]).labels)
        frontier = nxt
    ordered = sorted(found, key=lambda lab: (-len(set(lab)), lab))
    return ConLattice(A, tuple(Congruence(A, lab) for lab in ordered))


def compatible_partitions(A: RotationalLattice, cap: int = PARTITION_ORACLE_CAP) -> list[tuple[int, ...]]:
    """Exhaustive search over all partitions, keeping the compatible ones.

    Elements are labelled in index order (restricted growth strings). Each
    constraint "x ~ y implies u ~ v" is tested once, when the largest of its
    four indices receives a label, so a branch is cut only on a definite
    violation and no compatible partition is skipped.
    """
    n = A.size
    if n > cap:
        raise CapExceeded(f"{n} elements exceeds the partition oracle cap {cap}")
    J, M = A.lattice.join_rows, A.lattice.meet_rows
    g = A.g
    due: list[set[tuple[int, int, int, int]]] = [set() for _ in range(n)]
    for x, y in itertools.combinations(range(n), 2):
        images = {(g[x], g[y])}
        for c in range(n):
            images.add((J[x][c], J[y][c]))
            images.add((M[x][c], M[y][c]))
        for u, v in images:
            if u != v:
                due[max(x, y, u, v)].add((x, y, u, v))
    checks = [sorted(d) for d in due]
    labels = [-1] * n
    out = []

    def extend(k: int, blocks: int) -> None:
        if k == n:
            out.append(tuple(labels))
            return
        for lab in range(blocks + 1):
            labels[k] = lab
            if all(labels[x] != labels[y] or labels[u] == labels[v] for x, y, u, v in checks[k]):
                extend(k + 1, max(blocks, lab + 1))
        labels[k] = -1

    extend(0, 0)
    return sorted(canonical_labels(lab) for lab in out)


def is_simple(A: RotationalLattice) -> bool:
    if A.size < 2:
        return False
    return all(principal_congruence(A, x, y).is_full for x, y in A.lattice.cover_pairs)


def monolith(A: RotationalLattice) -> Congruence | None:
    """Least nonzero congruence, if there is one."""
    if A.size < 2:
        return None
    principals = cover_principals(A)
    for c in principals:
        if all(c <= d for d in principals):
            return c
    return None


def is_subdirectly_irreducible(A: RotationalLattice) -> bool:
    return monolith(A) is not None


def quotient(A: RotationalLattice, theta: Congruence) -> tuple[RotationalLattice, AlgebraMap]:
    """Quotient algebra; block ``k`` is the ``k``-th block by least member."""
    if not is_compatible(A, theta.labels):
        raise CongruenceError("not a congruence of this algebra")
    reps = sorted(set(theta.labels))
    index = {r: i for i, r in enumerate(reps)}
    proj = np.asarray([index[lab] for lab in theta.labels])
    ra = np.asarray(reps)
    L = A.lattice
    join = proj[L.join[np.ix_(ra, ra)]].astype(np.int32)
    meet = proj[L.meet[np.ix_(ra, ra)]].astype(np.int32)
    leq = join == np.arange(len(reps))[None, :]
    Q = _lattice_from_tables(leq, join, meet)
    g = tuple(int(proj[A.g[r]]) for r in reps)
    B = RotationalLattice(Q, g, permutation_order(g))
    return B, AlgebraMap(A, B, tuple(int(p) for p in proj))


def subdirect_factors(A: RotationalLattice, cap: int = CON_CAP) -> list[tuple[Congruence, RotationalLattice]]:
    """Quotients by the meet-irreducible congruences other than the full one.

    Sorted by factor size, then by label vector.
    """
    con = all_congruences(A, cap)
    out = [(c, quotient(A, c)[0]) for c in con.meet_irreducibles() if not c.is_full]
    return sorted(out, key=lambda pair: (pair[1].size, pair[0].labels))


def subdirect_embedding(A: RotationalLattice, thetas: Sequence[Congruence]) -> list[tuple[int, ...]]:
    """Image of each element in the product of the quotients by ``thetas``."""
    return [tuple(theta.labels[x] for theta in thetas) for x in range(A.size)]


def stable_split_congruences(A: RotationalLattice, a: int) -> tuple[Congruence, Congruence]:
    """The pair (x ~ y iff a|x = a|y, x ~ y iff a&x = a&y) for a stable ``a``."""
    if A.g[a] != a:
        raise CongruenceError(f"element {a} is not stable")
    if not A.lattice.distributive:
        raise LatticeError("stable split requires a distributive lattice")
    J, M = A.lattice.join_rows, A.lattice.meet_rows
    alpha = congruence(A, J[a])
    beta = congruence(A, M[a])
    return alpha, beta


def all_quotient_algebras(A: RotationalLattice, cap: int = CON_CAP) -> list[tuple[Congruence, RotationalLattice]]:
    return [(c, quotient(A, c)[0]) for c in all_congruences(A, cap)]
