"""Exhaustive verification of the classification over a corpus of small algebras.

The corpus holds every distributive rotational lattice whose join-irreducible
poset has at most ``max_poset_size`` points, one per isomorphism class.
Automorphisms of a down-set lattice are exactly the lifts of automorphisms of
its poset, and two lifts give isomorphic algebras iff the poset automorphisms
are conjugate, so the corpus keeps one lift per conjugacy class.
"""

from __future__ import annotations

import itertools
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Any, Iterable

from .congruence import (
    identity,
    is_simple,
    is_subdirectly_irreducible,
    meet_congruences,
    stable_split_congruences,
)
from .lattice import POSET_CAP, CapExceeded, Poset, downset_lattice, enumerate_posets, poset_automorphisms
from .rotational import (
    RotationalLattice,
    all_subuniverses,
    closure,
    direct_product,
    generated_subalgebra,
    lift_automorphism,
    orbit,
    recognize_cube,
    rotational_cube,
    stable_elements,
)
from .varieties import (
    divisors_ideal,
    hs_cube,
    ideals_upto,
    power_is_identity,
    satisfies_order_identity,
    si_members,
    variety_contains_algebra,
    variety_leq,
)

log = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class CorpusItem:
    name: str
    poset: Poset
    sigma: tuple[int, ...]
    algebra: RotationalLattice


@dataclass(frozen=True)
class Corpus:
    max_poset_size: int
    items: list[CorpusItem]

    def __len__(self) -> int:
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


def conjugacy_representatives(perms: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """First member, in the given order, of each conjugacy class of the group ``perms``."""
    covered: set[tuple[int, ...]] = set()
    reps = []
    for sigma in perms:
        if sigma in covered:
            continue
        reps.append(sigma)
        for tau in perms:
            inv = [0] * len(tau)
            for i, t in enumerate(tau):
                inv[t] = i
            covered.add(tuple(tau[sigma[inv[i]]] for i in range(len(tau))))
    return reps


def build_corpus(max_poset_size: int, include_trivial: bool = True) -> Corpus:
    if max_poset_size > POSET_CAP:
        raise CapExceeded(f"max_poset_size {max_poset_size} exceeds cap {POSET_CAP}")
    items = []
    counter = itertools.count()
    for P in enumerate_posets(max_poset_size, 0 if include_trivial else 1):
        p_index = next(counter)
        L = downset_lattice(P)
        for k, sigma in enumerate(conjugacy_representatives(poset_automorphisms(P))):
            A = lift_automorphism(P, sigma, L)
            items.append(CorpusItem(f"P{P.size}.{p_index}/s{k}", P, sigma, A))
    log.info("corpus(%d): %d algebras", max_poset_size, len(items))
    return Corpus(max_poset_size, items)


@dataclass
class VerificationReport:
    check: str
    instances: int = 0
    counterexamples: list[dict[str, Any]] = field(default_factory=list)
    wall_time: float = 0.0
    details: dict[str, int] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def to_dict(self) -> dict[str, Any]:
        return {
            "check": self.check,
            "instances": self.instances,
            "counterexamples": self.counterexamples,
            "wall_time": round(self.wall_time, 3),
            "details": self.details,
            "ok": self.ok,
        }


class _Recorder:
    def __init__(self, report: VerificationReport):
        self.report = report

    def case(self, check: str, passed: bool, **info: Any) -> None:
        self.report.instances += 1
        self.report.details[check] = self.report.details.get(check, 0) + 1
        if not passed:
            self.report.counterexamples.append({"check": check, **info})


def verify_si_classification(corpus: Iterable[CorpusItem]) -> VerificationReport:
    """SI iff isomorphic to a rotational cube; every cube is simple."""
    report = VerificationReport("si_classification")
    rec = _Recorder(report)
    start = time.perf_counter()
    for item in corpus:
        A = item.algebra
        si = is_subdirectly_irreducible(A)
        n = recognize_cube(A)
        rec.case("si_iff_cube", si == (n is not None), algebra=item.name, si=si, cube=n)
        if n is not None:
            rec.case("cube_simple", is_simple(A), algebra=item.name, cube=n)
    report.wall_time = time.perf_counter() - start
    return report


def spanning_boolean_families(A: RotationalLattice) -> list[list[int]]:
    """Sets of pairwise disjoint nonzero elements whose join is one.

    Each such set is the atom set of a spanning boolean sublattice.
    """
    L = A.lattice
    J, M = L.join_rows, L.meet_rows
    zero, one = L.zero, L.one
    nonzero = [x for x in range(L.size) if x != zero]
    out = []

    def extend(chosen: list[int], acc: int, start: int) -> None:
        if acc == one and chosen:
            out.append(list(chosen))
            return
        for i in range(start, len(nonzero)):
            x = nonzero[i]
            if M[acc][x] != zero:
                continue
            chosen.append(x)
            extend(chosen, J[acc][x], i + 1)
            chosen.pop()

    extend([], zero, 0)
    return out


def _subuniverses_for_sweep(A: RotationalLattice) -> list[list[int]]:
    if A.size <= 16:
        return [sorted(S) for S in all_subuniverses(A)]
    found = {tuple(closure(A, [x, y])) for x in range(A.size) for y in range(x, A.size)}
    return [list(S) for S in sorted(found)]


def verify_lemmas(corpus: Iterable[CorpusItem], max_cube: int = 4) -> VerificationReport:
    """Executable forms of the auxiliary lemmas, swept over the corpus.

    Checks recorded under ``details``: order, atom_boolean, height_sum,
    stable_split, and for SI members stable_is_bound, spanning,
    orbit_cube, max_orbit; plus product_lcm over cube pairs.
    """
    report = VerificationReport("lemmas")
    rec = _Recorder(report)
    start = time.perf_counter()
    for item in corpus:
        A, name = item.algebra, item.name
        L = A.lattice
        n = A.order
        rec.case(
            "order",
            power_is_identity(A, n) and not any(power_is_identity(A, d) for d in range(1, n) if n % d == 0),
            algebra=name,
        )
        # a lone atom generates only itself; the boolean claim starts at two atoms
        for t in range(2, len(L.atoms) + 1):
            for atoms in itertools.combinations(L.atoms, t):
                size = len(closure(A, atoms, use_g=False))
                rec.case("atom_boolean", size == 2**t, algebra=name, atoms=list(atoms), size=size)
        for family in spanning_boolean_families(A):
            total = sum(L.heights[a] for a in family)
            size = len(closure(A, family + [L.zero], use_g=False))
            rec.case(
                "height_sum",
                total == L.length and size == 2 ** len(family),
                algebra=name, atoms=family, height_sum=total, length=L.length,
            )
        for a in stable_elements(A):
            alpha, beta = stable_split_congruences(A, a)
            trivial = a in (A.zero, A.one)
            passed = meet_congruences(A, alpha, beta) == identity(A) and (
                trivial or not (alpha.is_identity or beta.is_identity)
            )
            rec.case("stable_split", passed, algebra=name, element=a)

        if not is_subdirectly_irreducible(A):
            continue
        stable = stable_elements(A)
        rec.case("stable_is_bound", set(stable) <= {A.zero, A.one}, algebra=name, stable=stable)
        for S in _subuniverses_for_sweep(A):
            if all(A.g[x] == x for x in S):
                continue
            rec.case("spanning", A.zero in S and A.one in S, algebra=name, subuniverse=S)
        for a in range(A.size):
            k = len(orbit(A, a))
            if k == 1:
                continue
            sub, _ = generated_subalgebra(A, [a])
            rec.case("orbit_cube", recognize_cube(sub) == k, algebra=name, element=a, orbit=k)
        rec.case("max_orbit", recognize_cube(A) == max(A.orbit_sizes), algebra=name)

    for m, n in itertools.product(range(1, max_cube + 1), repeat=2):
        P = direct_product([rotational_cube(m), rotational_cube(n)])
        lcm = math.lcm(m, n)
        ok = P.order == lcm and power_is_identity(P, lcm) and all(
            not power_is_identity(P, d) for d in range(1, lcm)
        )
        rec.case("product_lcm", ok, factors=[m, n], order=P.order)
    report.wall_time = time.perf_counter() - start
    return report


def verify_variety_lattice(N: int = 6, identity_bound: int = 12) -> VerificationReport:
    """Variety inclusion and membership against the ideal calculus.

    Inclusion V(X) <= V(Y) is decided semantically: every generator B_n
    (n in X) must be a member of V(Y) by subdirect decomposition.
    """
    if N > 8:
        raise CapExceeded("verify_variety_lattice supports N <= 8")
    report = VerificationReport("variety_lattice")
    rec = _Recorder(report)
    start = time.perf_counter()
    ideals = ideals_upto(N)
    cubes = {k: rotational_cube(k) for k in range(1, N + 1)}
    membership: dict[tuple[frozenset[int], int], bool] = {}
    for X in ideals:
        for k, B in cubes.items():
            member = variety_contains_algebra(X, B).member
            membership[X.members, k] = member
            rec.case("cube_membership", member == (k in X), ideal=sorted(X.members), cube=k)
        rec.case("si_members", si_members(X) == [k for k in cubes if membership[X.members, k]],
                 ideal=sorted(X.members))
    for X, Y in itertools.product(ideals, repeat=2):
        semantic = all(membership[Y.members, k] for k in X.members)
        leq = variety_leq(X, Y)
        rec.case("inclusion", leq == semantic == (X.members <= Y.members),
                 x=sorted(X.members), y=sorted(Y.members))
    for m in range(1, identity_bound + 1):
        B = cubes[m] if m in cubes else rotational_cube(m)
        for t in range(1, identity_bound + 1):
            stated = satisfies_order_identity(B, t)
            rec.case(
                "order_identity",
                stated == power_is_identity(B, t) == hs_cube(m, t) == (m in divisors_ideal(t)),
                m=m, t=t, satisfied=stated,
            )
    report.wall_time = time.perf_counter() - start
    return report


def run_all(max_poset: int = 5, lemma_poset: int = 4, max_ideal: int = 6) -> list[VerificationReport]:
    corpus = build_corpus(max_poset)
    small = [item for item in corpus if item.poset.size <= lemma_poset]
    return [
        verify_si_classification(corpus),
        verify_lemmas(small),
        verify_variety_lattice(max_ideal),
    ]
