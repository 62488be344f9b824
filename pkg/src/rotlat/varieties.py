"""Varieties of distributive rotational lattices, named by divisor-closed sets.

A finite set ``X`` of positive integers closed under divisors names the
variety generated by the cubes ``B_n`` with ``n`` in ``X``. Membership of a
concrete finite algebra is decided from its subdirect factors.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .congruence import CON_CAP, Congruence, all_congruences, quotient, subdirect_factors
from .lattice import LatticeError, check_poset, downset_lattice
from .rotational import (
    AlgebraMap,
    RotationalLattice,
    all_subuniverses,
    closure,
    is_spanning,
    recognize_cube,
    rotational_cube,
    subalgebra,
)

IDEAL_CAP = 16


class IdealError(ValueError):
    pass


class TheoremViolation(RuntimeError):
    """An SI factor that is not a cube: contradicts the classification."""


@dataclass(frozen=True)
class OrderIdeal:
    members: frozenset[int] = field(default_factory=frozenset)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, n: object) -> bool:
        return n in self.members

    def __len__(self) -> int:
        return len(self.members)

    def __le__(self, other: "OrderIdeal") -> bool:
        return self.members <= other.members

    def __lt__(self, other: "OrderIdeal") -> bool:
        return self.members < other.members

    def __repr__(self) -> str:
        return f"OrderIdeal({sorted(self.members)})"


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def validate_ideal(members: Iterable[int]) -> OrderIdeal:
    members = frozenset(int(m) for m in members)
    if any(m < 1 for m in members):
        raise IdealError("members must be positive integers")
    for m in members:
        missing = [d for d in divisors(m) if d not in members]
        if missing:
            raise IdealError(f"{m} is present but its divisor {missing[0]} is not")
    return OrderIdeal(members)


def divisors_ideal(n: int) -> OrderIdeal:
    if n < 1:
        raise IdealError("n must be positive")
    return OrderIdeal(frozenset(divisors(n)))


def ideals_upto(N: int) -> list[OrderIdeal]:
    """All ideals inside ``{1..N}``, by (size, sorted members).

    These are the down-sets of the divisibility order on ``{1..N}``.
    """
    if N > IDEAL_CAP:
        raise IdealError(f"N={N} exceeds cap {IDEAL_CAP}")
    P = check_poset(N, [(d - 1, m - 1) for m in range(1, N + 1) for d in divisors(m)])
    L = downset_lattice(P)
    assert L.elements is not None
    ideals = [
        OrderIdeal(frozenset(i + 1 for i in range(N) if mask >> i & 1))
        for mask in L.elements
    ]
    return sorted(ideals, key=lambda X: (len(X), sorted(X.members)))


def hs_cube(m: int, n: int) -> bool:
    """Whether ``B_m`` is a homomorphic image of a subalgebra of ``B_n``."""
    if m < 1 or n < 1:
        raise ValueError("cube dimensions must be positive")
    return n % m == 0


def embed_cube(m: int, n: int) -> AlgebraMap:
    """Embedding of ``B_m`` into ``B_n`` sending atom j to the join of atoms i = j mod m."""
    if not hs_cube(m, n):
        raise ValueError(f"{m} does not divide {n}: B_{m} does not embed in B_{n}")
    Bm, Bn = rotational_cube(m), rotational_cube(n)
    block = [sum(1 << i for i in range(j, n, m)) for j in range(m)]
    image = []
    for mask in range(2**m):
        out = 0
        for j in range(m):
            if mask >> j & 1:
                out |= block[j]
        image.append(out)
    f = AlgebraMap(Bm, Bn, tuple(image))
    if not (f.is_homomorphism() and f.injective and is_spanning(Bn, image)):
        raise AssertionError("constructed map is not a spanning embedding")
    return f


def si_members(X: OrderIdeal) -> list[int]:
    """Dimensions of the cubes that are the SI members of V(X)."""
    return sorted(X.members)


@dataclass(frozen=True)
class Membership:
    member: bool
    factors: list[tuple[Congruence, int]]


def variety_contains_algebra(X: OrderIdeal, A: RotationalLattice, cap: int = CON_CAP) -> Membership:
    """Decide A in V(X) from the subdirect factors of A.

    Raises :class:`TheoremViolation` if an SI factor is not a rotational
    cube, since the classification rules that out.
    """
    if not A.lattice.distributive:
        raise LatticeError("membership is decided for distributive algebras only")
    if A.size == 1:
        return Membership(True, [])
    certificate = []
    for theta, factor in subdirect_factors(A, cap):
        k = recognize_cube(factor)
        if k is None:
            raise TheoremViolation(
                f"subdirectly irreducible factor of size {factor.size} is not a rotational cube"
            )
        certificate.append((theta, k))
    return Membership(all(k in X for _, k in certificate), certificate)


def variety_leq(X: OrderIdeal, Y: OrderIdeal) -> bool:
    return X.members <= Y.members


def satisfies_order_identity(A: RotationalLattice, t: int) -> bool:
    """Whether g^t(x) = x holds identically in ``A``."""
    if t < 1:
        raise ValueError("t must be positive")
    return t % A.order == 0


def power_is_identity(A: RotationalLattice, t: int) -> bool:
    """Direct check of g^t = id by composing the permutation."""
    images = list(range(A.size))
    for _ in range(t):
        images = [A.g[x] for x in images]
    return images == list(range(A.size))


def hs_oracle(m: int, n: int) -> bool:
    """Brute-force HS test: some quotient of some subalgebra of B_n is B_m."""
    Bn = rotational_cube(n)
    for S in all_subuniverses(Bn):
        sub, _ = subalgebra(Bn, sorted(S))
        for theta in all_congruences(sub):
            if recognize_cube(quotient(sub, theta)[0]) == m:
                return True
    return False


def hs_oracle_generated(m: int, n: int) -> bool:
    """HS test over the subalgebras of B_n generated by at most two elements.

    Two generators are needed: {0, 1}, whose quotient B_1 sits in every
    HS(B_n), is not generated by a single element when n > 1.
    """
    Bn = rotational_cube(n)
    seen = set()
    for x in range(Bn.size):
        for y in range(x, Bn.size):
            S = tuple(closure(Bn, [x, y]))
            if S in seen:
                continue
            seen.add(S)
            sub, _ = subalgebra(Bn, list(S))
            for theta in all_congruences(sub):
                if recognize_cube(quotient(sub, theta)[0]) == m:
                    return True
    return False
