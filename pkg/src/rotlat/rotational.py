"""Lattices with an automorphism of finite order.

The algebra signature is (join, meet, g) with no constants, so a subuniverse
is any nonempty subset closed under the three operations. In particular the
singleton of a stable element is a subuniverse.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property, reduce
from typing import Iterable, Sequence

import numpy as np

from .lattice import (
    ELEMENT_CAP,
    CapExceeded,
    FiniteLattice,
    Poset,
    _lattice_from_tables,
    antichain,
    downset_lattice,
    lattice_from_masks,
)

ORACLE_CAP = 16
FREE_CAP = 4


class AutomorphismError(ValueError):
    pass


class SubuniverseError(ValueError):
    pass


def permutation_order(perm: Sequence[int]) -> int:
    return reduce(math.lcm, (len(c) for c in cycles(perm)), 1)


def cycles(perm: Sequence[int]) -> list[list[int]]:
    seen = [False] * len(perm)
    out = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x)
            x = perm[x]
        out.append(cyc)
    return out


@dataclass(frozen=True, eq=False)
class RotationalLattice:
    lattice: FiniteLattice
    g: tuple[int, ...]
    order: int

    @property
    def size(self) -> int:
        return self.lattice.size

    @property
    def zero(self) -> int:
        return self.lattice.zero

    @property
    def one(self) -> int:
        return self.lattice.one

    @cached_property
    def orbit_sizes(self) -> list[int]:
        sizes = [0] * self.size
        for cyc in cycles(self.g):
            for x in cyc:
                sizes[x] = len(cyc)
        return sizes

    @cached_property
    def fingerprint(self) -> tuple:
        L = self.lattice
        return (
            self.size,
            L.length,
            len(L.atoms),
            tuple(sorted(zip(L.heights, self.orbit_sizes))),
        )

    def __repr__(self) -> str:
        return f"RotationalLattice(size={self.size}, order={self.order})"


def make_rotational(L: FiniteLattice, g: Sequence[int]) -> RotationalLattice:
    """Validate ``g`` as an automorphism of ``L`` and compute its order."""
    g = tuple(int(x) for x in g)
    if sorted(g) != list(range(L.size)):
        raise AutomorphismError("g is not a permutation of the elements")
    ga = np.asarray(g)
    if not np.array_equal(L.join[np.ix_(ga, ga)], ga[L.join]):
        raise AutomorphismError("g does not preserve joins")
    if not np.array_equal(L.meet[np.ix_(ga, ga)], ga[L.meet]):
        raise AutomorphismError("g does not preserve meets")
    return RotationalLattice(L, g, permutation_order(g))


def _rotate(mask: int, n: int) -> int:
    return ((mask << 1) | (mask >> (n - 1))) & ((1 << n) - 1)


def rotational_cube(n: int) -> RotationalLattice:
    """Boolean lattice of length ``n``; element ``i`` is the atom set with bitmask ``i``."""
    if n < 1:
        raise ValueError("cube dimension must be at least 1")
    if 2**n > ELEMENT_CAP:
        raise CapExceeded(f"2^{n} elements exceeds cap {ELEMENT_CAP}")
    L = downset_lattice(antichain(n))
    return make_rotational(L, [_rotate(m, n) for m in range(2**n)])


def lift_automorphism(P: Poset, sigma: Sequence[int], L: FiniteLattice | None = None) -> RotationalLattice:
    """The automorphism of the down-set lattice induced by a poset automorphism."""
    if L is None:
        L = downset_lattice(P)
    assert L.elements is not None
    index = {m: i for i, m in enumerate(L.elements)}
    g = []
    for m in L.elements:
        image = 0
        for p in range(P.size):
            if m >> p & 1:
                image |= 1 << sigma[p]
        if image not in index:
            raise AutomorphismError("sigma is not a poset automorphism")
        g.append(index[image])
    return make_rotational(L, g)


def orbit(A: RotationalLattice, a: int) -> list[int]:
    out = [a]
    x = A.g[a]
    while x != a:
        out.append(x)
        x = A.g[x]
    return out


def stable_elements(A: RotationalLattice) -> list[int]:
    return [x for x in range(A.size) if A.g[x] == x]


# --- subalgebras ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class AlgebraMap:
    source: RotationalLattice
    target: RotationalLattice
    map: tuple[int, ...]

    @property
    def injective(self) -> bool:
        return len(set(self.map)) == len(self.map)

    @property
    def surjective(self) -> bool:
        return len(set(self.map)) == self.target.size

    @property
    def kind(self) -> str:
        if self.injective and self.surjective:
            return "isomorphism"
        if self.injective:
            return "embedding"
        if self.surjective:
            return "quotient"
        return "homomorphism"

    def is_homomorphism(self) -> bool:
        return is_homomorphism(self.source, self.target, self.map)


def is_homomorphism(A: RotationalLattice, B: RotationalLattice, f: Sequence[int]) -> bool:
    fa = np.asarray(f)
    ga, gb = np.asarray(A.g), np.asarray(B.g)
    LA, LB = A.lattice, B.lattice
    return (
        np.array_equal(fa[LA.join], LB.join[np.ix_(fa, fa)])
        and np.array_equal(fa[LA.meet], LB.meet[np.ix_(fa, fa)])
        and np.array_equal(fa[ga], gb[fa])
    )


def closure(A: RotationalLattice, S: Iterable[int], use_g: bool = True) -> list[int]:
    """Least subset containing ``S`` closed under join, meet (and g)."""
    J, M = A.lattice.join_rows, A.lattice.meet_rows
    members: set[int] = set()
    frontier = list(dict.fromkeys(S))
    while frontier:
        fresh = []
        for x in frontier:
            if x in members:
                continue
            members.add(x)
            fresh.append(x)
        frontier = []
        for x in fresh:
            Jx, Mx = J[x], M[x]
            for y in members:
                for z in (Jx[y], Mx[y]):
                    if z not in members:
                        frontier.append(z)
            if use_g and A.g[x] not in members:
                frontier.append(A.g[x])
    return sorted(members)


def is_closed(A: RotationalLattice, M: Iterable[int]) -> bool:
    M = set(M)
    if not M:
        return False
    J, Me = A.lattice.join_rows, A.lattice.meet_rows
    return all(A.g[x] in M for x in M) and all(
        J[x][y] in M and Me[x][y] in M for x in M for y in M
    )


def subalgebra(A: RotationalLattice, universe: Sequence[int]) -> tuple[RotationalLattice, AlgebraMap]:
    """The subalgebra on a closed ``universe`` plus its inclusion map."""
    U = sorted(set(universe))
    if not is_closed(A, U):
        raise SubuniverseError("universe is not closed under join, meet and g")
    pos = {x: i for i, x in enumerate(U)}
    ua = np.asarray(U)
    L = A.lattice
    lookup = np.full(A.size, -1, dtype=np.int32)
    lookup[ua] = np.arange(len(U), dtype=np.int32)
    join = lookup[L.join[np.ix_(ua, ua)]]
    meet = lookup[L.meet[np.ix_(ua, ua)]]
    leq = L.leq[np.ix_(ua, ua)].copy()
    elements = None
    if L.elements is not None:
        elements = tuple(L.elements[x] for x in U)
    sub = _lattice_from_tables(leq, join, meet, elements)
    g = tuple(pos[A.g[x]] for x in U)
    B = RotationalLattice(sub, g, permutation_order(g))
    return B, AlgebraMap(B, A, tuple(U))


def generated_subalgebra(A: RotationalLattice, S: Iterable[int]) -> tuple[RotationalLattice, AlgebraMap]:
    S = list(S)
    if not S:
        raise SubuniverseError("generating set must be nonempty")
    return subalgebra(A, closure(A, S))


def is_spanning(A: RotationalLattice, M: Iterable[int]) -> bool:
    M = set(M)
    if not is_closed(A, M):
        raise SubuniverseError("not a subuniverse")
    return A.zero in M and A.one in M


def all_subuniverses(A: RotationalLattice, cap: int = ORACLE_CAP) -> list[frozenset[int]]:
    """Every nonempty subuniverse, sorted by (size, members)."""
    if A.size > cap:
        raise CapExceeded(f"{A.size} elements exceeds the subuniverse oracle cap {cap}")
    found: set[frozenset[int]] = set()
    frontier = [frozenset(closure(A, [x])) for x in range(A.size)]
    while frontier:
        nxt = []
        for S in frontier:
            if S in found:
                continue
            found.add(S)
            for x in range(A.size):
                if x not in S:
                    nxt.append(frozenset(closure(A, list(S) + [x])))
        frontier = nxt
    return sorted(found, key=lambda S: (len(S), sorted(S)))


# --- products ---------------------------------------------------------------------


def _product2(A: RotationalLattice, B: RotationalLattice) -> RotationalLattice:
    n, m = A.size, B.size
    LA, LB = A.lattice, B.lattice

    def combine(ta: np.ndarray, tb: np.ndarray) -> np.ndarray:
        t = ta[:, None, :, None].astype(np.int32) * m + tb[None, :, None, :]
        return t.reshape(n * m, n * m)

    leq = (LA.leq[:, None, :, None] & LB.leq[None, :, None, :]).reshape(n * m, n * m)
    join = combine(LA.join, LB.join)
    meet = combine(LA.meet, LB.meet)
    L = _lattice_from_tables(leq, join, meet)
    g = [A.g[i] * m + B.g[j] for i in range(n) for j in range(m)]
    return RotationalLattice(L, tuple(g), math.lcm(A.order, B.order))


def direct_product(factors: Sequence[RotationalLattice]) -> RotationalLattice:
    """Componentwise product; element ``(i, j, ...)`` gets the mixed-radix index."""
    if not factors:
        raise ValueError("product of an empty list")
    total = math.prod(F.size for F in factors)
    if total > ELEMENT_CAP:
        raise CapExceeded(f"product has {total} elements, cap is {ELEMENT_CAP}")
    out = reduce(_product2, factors)
    # order is recomputed from g rather than trusted from the lcm
    return RotationalLattice(out.lattice, out.g, permutation_order(out.g))


# --- free algebra on one generator -------------------------------------------------


def _minimal(sets: Iterable[int]) -> frozenset[int]:
    sets = set(sets)
    return frozenset(s for s in sets if not any(t != s and t & s == t for t in sets))


def antichain_join(f: frozenset[int], h: frozenset[int]) -> frozenset[int]:
    return _minimal(f | h)


def antichain_meet(f: frozenset[int], h: frozenset[int]) -> frozenset[int]:
    return _minimal(s | t for s in f for t in h)


@dataclass(frozen=True, eq=False)
class FreeAlgebra:
    """Free algebra of order dividing ``n`` on one generator.

    ``terms[i]`` is element ``i`` as an antichain of variable subsets
    (bitmasks over ``x, g(x), ..., g^(n-1)(x)``), read as a join of meets.
    """

    algebra: RotationalLattice
    terms: tuple[frozenset[int], ...]
    generator: int
    n: int


def free_one_generated(n: int, cap: int = FREE_CAP) -> FreeAlgebra:
    if n < 1:
        raise ValueError("n must be positive")
    if n > cap:
        raise CapExceeded(f"free algebra for n={n} exceeds cap {cap}")
    variables = [frozenset([1 << i]) for i in range(n)]
    terms: set[frozenset[int]] = set()
    frontier = list(variables)
    while frontier:
        fresh = [t for t in dict.fromkeys(frontier) if t not in terms]
        terms.update(fresh)
        frontier = []
        for t in fresh:
            for u in list(terms):
                for v in (antichain_join(t, u), antichain_meet(t, u)):
                    if v not in terms:
                        frontier.append(v)

    def truth_table(t: frozenset[int]) -> int:
        tt = 0
        for assignment in range(2**n):
            if any(s & assignment == s for s in t):
                tt |= 1 << assignment
        return tt

    # truth tables are a lattice embedding into a powerset, giving the order
    tables = {t: truth_table(t) for t in terms}
    ordered = sorted(terms, key=lambda t: tables[t])
    L = lattice_from_masks([tables[t] for t in ordered])
    index = {t: i for i, t in enumerate(ordered)}

    def shift(t: frozenset[int]) -> frozenset[int]:
        return frozenset(_rotate(s, n) for s in t)

    A = make_rotational(L, [index[shift(t)] for t in ordered])
    return FreeAlgebra(A, tuple(ordered), index[variables[0]], n)


# --- isomorphism ------------------------------------------------------------------


def find_isomorphism(A: RotationalLattice, B: RotationalLattice) -> tuple[int, ...] | None:
    """First isomorphism in ascending search order, or ``None``.

    Elements of ``A`` are assigned in height order; fixing the image of
    ``x`` forces the image of its whole orbit.
    """
    if A.fingerprint != B.fingerprint:
        return None
    n = A.size
    LA, LB = A.lattice, B.lattice
    la, lb = LA.leq_rows, LB.leq_rows
    key_a = list(zip(LA.heights, A.orbit_sizes))
    key_b = list(zip(LB.heights, B.orbit_sizes))
    order = sorted(range(n), key=lambda x: (LA.heights[x], x))
    image = [-1] * n
    used = [False] * n

    def consistent(x: int, y: int, done: list[int]) -> bool:
        ax, by = la[x], lb[y]
        for u in done:
            v = image[u]
            if ax[u] != by[v] or la[u][x] != lb[v][y]:
                return False
        return True

    assigned: list[int] = []

    def assign_orbit(x: int, y: int) -> list[int] | None:
        placed = []
        while image[x] == -1:
            if used[y] or key_a[x] != key_b[y] or not consistent(x, y, assigned):
                for u in placed:
                    used[image[u]] = False
                    image[u] = -1
                    assigned.pop()
                return None
            image[x] = y
            used[y] = True
            assigned.append(x)
            placed.append(x)
            x, y = A.g[x], B.g[y]
        if image[x] != y:
            for u in placed:
                used[image[u]] = False
                image[u] = -1
                assigned.pop()
            return None
        return placed

    def search(k: int) -> bool:
        while k < n and image[order[k]] != -1:
            k += 1
        if k == n:
            return True
        x = order[k]
        for y in range(n):
            if used[y] or key_a[x] != key_b[y]:
                continue
            placed = assign_orbit(x, y)
            if placed is None:
                continue
            if search(k + 1):
                return True
            for u in placed:
                used[image[u]] = False
                image[u] = -1
                assigned.pop()
        return False

    if search(0):
        return tuple(image)
    return None


def is_isomorphic(A: RotationalLattice, B: RotationalLattice) -> AlgebraMap | None:
    f = find_isomorphism(A, B)
    return None if f is None else AlgebraMap(A, B, f)


def atom_masks(A: RotationalLattice) -> list[int]:
    """Bitmask over atom positions of the atoms below each element."""
    L = A.lattice
    atoms = L.atoms
    rows = L.leq_rows
    return [sum(1 << k for k, a in enumerate(atoms) if rows[a][x]) for x in range(L.size)]


def recognize_cube(A: RotationalLattice) -> int | None:
    """``n`` if ``A`` is the rotational cube of dimension ``n``, else ``None``."""
    L = A.lattice
    atoms = L.atoms
    n = len(atoms)
    if n == 0 or L.size != 2**n:
        return None
    masks = atom_masks(A)
    if sorted(masks) != list(range(2**n)):
        return None
    ma = np.asarray(masks)
    if not (
        np.array_equal(ma[L.join], ma[:, None] | ma[None, :])
        and np.array_equal(ma[L.meet], ma[:, None] & ma[None, :])
    ):
        return None
    if len(orbit(A, atoms[0])) != n:
        return None
    return n


def singleton_algebra() -> RotationalLattice:
    return make_rotational(lattice_from_masks([0]), [0])


def homomorphisms(A: RotationalLattice, B: RotationalLattice) -> list[tuple[int, ...]]:
    """Every homomorphism A -> B, by backtracking over element images.

    Each equation f(x|y) = f(x)|f(y), f(x&y) = f(x)&f(y), f(g x) = g f(x)
    is checked as soon as all elements it mentions have an image.
    """
    n = A.size
    JA, MA = A.lattice.join_rows, A.lattice.meet_rows
    JB, MB = B.lattice.join_rows, B.lattice.meet_rows
    due: list[list[tuple[int, int, int, int]]] = [[] for _ in range(n)]
    for x in range(n):
        for y in range(x, n):
            for kind, z in ((0, JA[x][y]), (1, MA[x][y])):
                due[max(x, y, z)].append((kind, x, y, z))
        due[max(x, A.g[x])].append((2, x, x, A.g[x]))
    f = [-1] * n
    out = []

    def ok(k: int) -> bool:
        for kind, x, y, z in due[k]:
            if kind == 0:
                if JB[f[x]][f[y]] != f[z]:
                    return False
            elif kind == 1:
                if MB[f[x]][f[y]] != f[z]:
                    return False
            elif B.g[f[x]] != f[z]:
                return False
        return True

    def extend(k: int) -> None:
        if k == n:
            out.append(tuple(f))
            return
        for y in range(B.size):
            f[k] = y
            if ok(k):
                extend(k + 1)
        f[k] = -1

    extend(0)
    return out


def lattice_automorphisms_bruteforce(L: FiniteLattice) -> list[tuple[int, ...]]:
    """All lattice automorphisms by trying every permutation (tiny lattices only)."""
    if L.size > 8:
        raise CapExceeded("brute-force automorphism search is limited to 8 elements")
    out = []
    for perm in itertools.permutations(range(L.size)):
        try:
            make_rotational(L, perm)
        except AutomorphismError:
            continue
        out.append(perm)
    return out
