import itertools

import numpy as np
import pytest

from oracles import poset_classes
from rotlat.lattice import (
    CapExceeded,
    LatticeError,
    PosetError,
    antichain,
    chain,
    check_poset,
    downset_lattice,
    enumerate_posets,
    is_distributive,
    join_irreducibles,
    lattice_from_leq,
    poset_automorphisms,
    poset_isomorphism,
    posets_of_size,
    structure,
)

M3 = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]
N5 = [(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]


def is_chain(L):
    return all(L.leq[i, j] or L.leq[j, i] for i in range(L.size) for j in range(L.size))


def test_check_poset_chain_closure():
    P = check_poset(3, [(0, 1), (1, 2)])
    assert P.leq[0, 2]
    assert P.covers == [(0, 1), (1, 2)]


def test_check_poset_rejects_cycle():
    with pytest.raises(PosetError, match="cycle"):
        check_poset(2, [(0, 1), (1, 0)])


def test_check_poset_antichain():
    P = check_poset(4, [])
    assert np.array_equal(P.leq, np.eye(4, dtype=bool))


def test_check_poset_rejects_out_of_range():
    with pytest.raises(PosetError):
        check_poset(2, [(0, 5)])


@pytest.mark.parametrize("P, size, chainlike", [
    (antichain(1), 2, True),
    (antichain(3), 8, False),
    (chain(2), 3, True),
])
def test_downset_lattice_examples(P, size, chainlike):
    L = downset_lattice(P)
    assert L.size == size
    assert is_chain(L) == chainlike
    assert L.length == P.size


def test_downset_lattice_cap():
    with pytest.raises(CapExceeded):
        downset_lattice(antichain(13))
    with pytest.raises(CapExceeded):
        downset_lattice(antichain(5), cap=16)


def test_join_irreducibles_examples():
    assert join_irreducibles(downset_lattice(antichain(3))) == antichain(3)
    J = join_irreducibles(downset_lattice(chain(2)))
    assert J == chain(2)


def test_join_irreducibles_rejects_nondistributive():
    with pytest.raises(LatticeError):
        join_irreducibles(lattice_from_leq(5, M3))


def test_birkhoff_round_trip_up_to_5():
    for P in enumerate_posets(5):
        L = downset_lattice(P)
        Q = join_irreducibles(L)
        assert poset_isomorphism(P, Q) is not None
        # length = height(one) = number of join-irreducibles
        assert L.length == L.heights[L.one] == Q.size


def test_is_distributive_examples():
    assert is_distributive(downset_lattice(antichain(3)))
    assert not is_distributive(lattice_from_leq(5, M3))
    assert not is_distributive(lattice_from_leq(5, N5))


def test_generic_distributivity_agrees_on_downset_lattices():
    for P in enumerate_posets(4):
        L = downset_lattice(P)
        pairs = [(int(i), int(j)) for i, j in zip(*np.nonzero(L.leq))]
        generic = lattice_from_leq(L.size, pairs)
        assert generic.elements is None
        assert is_distributive(generic)
        assert np.array_equal(generic.join, L.join)
        assert np.array_equal(generic.meet, L.meet)


def test_lattice_from_leq_rejects_non_lattice():
    with pytest.raises(LatticeError, match="no join"):
        lattice_from_leq(4, [(0, 2), (0, 3), (1, 2), (1, 3)])


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_structure_boolean(n):
    report = structure(downset_lattice(antichain(n)))
    assert report.length == n
    assert len(report.atoms) == n
    assert report.distributive


def test_structure_chain_and_pair():
    report = structure(downset_lattice(chain(2)))
    assert report.length == 2 and len(report.atoms) == 1
    L = downset_lattice(antichain(2))
    report = structure(L)
    assert [L.elements[a] for a in report.atoms] == [0b01, 0b10]
    assert report.length == 2
    assert report.heights[L.zero] == 0


def test_structure_generic_heights():
    report = structure(lattice_from_leq(5, N5))
    assert report.heights == [0, 1, 2, 1, 3]
    assert not report.distributive


def test_graded_covers():
    for P in enumerate_posets(4):
        L = downset_lattice(P)
        assert all(L.heights[y] == L.heights[x] + 1 for x, y in L.cover_pairs)


def test_cancellation_rule():
    for P in enumerate_posets(3):
        L = downset_lattice(P)
        J, M = L.join_rows, L.meet_rows
        for a, x, y in itertools.product(range(L.size), repeat=3):
            if J[a][x] == J[a][y] and M[a][x] == M[a][y]:
                assert x == y


def test_poset_counts_match_bruteforce_oracle():
    # oracle: labelled strict orders deduplicated over all relabellings
    assert [poset_classes(n) for n in (3, 4, 5)] == [5, 16, 63]


@pytest.mark.parametrize("n, count", [(3, 5), (4, 16), (5, 63)])
def test_enumerate_posets_counts(n, count):
    assert len(posets_of_size(n)) == count


def test_enumerated_posets_pairwise_non_isomorphic():
    reps = list(posets_of_size(4))
    for P, Q in itertools.combinations(reps, 2):
        assert poset_isomorphism(P, Q) is None


def test_enumerate_posets_cap_and_determinism():
    with pytest.raises(CapExceeded):
        list(enumerate_posets(7))
    assert list(enumerate_posets(4)) == list(enumerate_posets(4))


def test_poset_automorphisms():
    assert len(poset_automorphisms(antichain(4))) == 24
    assert poset_automorphisms(chain(3)) == [(0, 1, 2)]
