import itertools

import pytest

from oracles import divisor_closed_subsets
from rotlat.lattice import LatticeError, lattice_from_leq
from rotlat.rotational import direct_product, is_spanning, make_rotational, rotational_cube, singleton_algebra
from rotlat.varieties import (
    IdealError,
    OrderIdeal,
    TheoremViolation,
    divisors_ideal,
    embed_cube,
    hs_cube,
    hs_oracle,
    hs_oracle_generated,
    ideals_upto,
    power_is_identity,
    satisfies_order_identity,
    si_members,
    validate_ideal,
    variety_contains_algebra,
    variety_leq,
)


def ideal(*xs):
    return validate_ideal(xs)


def test_validate_ideal():
    assert ideal(1, 2, 4).members == {1, 2, 4}
    assert ideal().members == frozenset()
    with pytest.raises(IdealError):
        ideal(2)
    with pytest.raises(IdealError):
        ideal(0, 1)


def test_ideals_upto_matches_subset_filter():
    for N in range(1, 9):
        assert {X.members for X in ideals_upto(N)} == set(divisor_closed_subsets(N))
    assert len(ideals_upto(6)) == 17
    with pytest.raises(IdealError):
        ideals_upto(17)


def test_ideals_form_distributive_lattice_under_union_and_intersection():
    ideals = {X.members for X in ideals_upto(6)}
    for X, Y in itertools.product(ideals, repeat=2):
        assert X | Y in ideals and X & Y in ideals


def test_divisors_ideal():
    assert divisors_ideal(1).members == {1}
    assert divisors_ideal(6).members == {1, 2, 3, 6}
    assert divisors_ideal(8).members == {1, 2, 4, 8}
    with pytest.raises(IdealError):
        divisors_ideal(0)


def test_hs_cube_examples():
    assert hs_cube(2, 6) and not hs_cube(4, 6)
    assert all(hs_cube(1, n) for n in range(1, 13))
    with pytest.raises(ValueError):
        hs_cube(0, 3)


def test_hs_oracle_small():
    for m, n in itertools.product(range(1, 5), repeat=2):
        assert hs_oracle(m, n) == hs_cube(m, n), (m, n)


@pytest.mark.parametrize("m,n", [(1, 5), (2, 5), (5, 5), (2, 6), (3, 6), (4, 6), (5, 6)])
def test_hs_oracle_generated_sampled(m, n):
    assert hs_oracle_generated(m, n) == hs_cube(m, n)


def test_embed_cube_examples():
    f = embed_cube(2, 6)
    assert f.map[0b01] == 0b010101 and f.map[0b10] == 0b101010
    assert embed_cube(3, 3).map == tuple(range(8))
    assert embed_cube(1, 4).map == (0, 15)
    with pytest.raises(ValueError):
        embed_cube(4, 6)


def test_embed_cube_all_divisor_pairs():
    for n in range(1, 8):
        for m in range(1, n + 1):
            if n % m:
                continue
            f = embed_cube(m, n)
            assert f.is_homomorphism() and f.injective
            assert is_spanning(f.target, f.map)


def test_si_members():
    assert si_members(ideal(1, 2, 3, 6)) == [1, 2, 3, 6]
    assert si_members(ideal()) == []
    assert si_members(ideal(1)) == [1]


def test_membership_examples():
    P = direct_product([rotational_cube(2), rotational_cube(3)])
    yes = variety_contains_algebra(ideal(1, 2, 3), P)
    assert yes.member and sorted(k for _, k in yes.factors) == [2, 3]
    assert not variety_contains_algebra(ideal(1, 2), P).member
    B1 = rotational_cube(1)
    for X in ideals_upto(6):
        assert variety_contains_algebra(X, B1).member == bool(X.members)


def test_empty_ideal_holds_only_singletons():
    assert variety_contains_algebra(ideal(), singleton_algebra()).member
    assert not variety_contains_algebra(ideal(), rotational_cube(1)).member


def test_membership_b4():
    B4 = rotational_cube(4)
    assert variety_contains_algebra(ideal(1, 2, 4), B4).member
    assert not variety_contains_algebra(ideal(1, 2, 3, 6), B4).member


def test_membership_requires_distributive():
    M3 = lattice_from_leq(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
    with pytest.raises(LatticeError):
        variety_contains_algebra(ideal(1), make_rotational(M3, range(5)))


def test_membership_is_monotone(corpus4):
    ideals = ideals_upto(4)
    for item in corpus4:
        member = {X.members: variety_contains_algebra(X, item.algebra).member for X in ideals}
        for X, Y in itertools.product(ideals, repeat=2):
            if X.members <= Y.members and member[X.members]:
                assert member[Y.members]


def test_corpus_membership_never_violates_classification(corpus4):
    for item in corpus4:
        try:
            variety_contains_algebra(ideal(1, 2, 3, 4), item.algebra)
        except TheoremViolation as exc:  # pragma: no cover
            pytest.fail(f"{item.name}: {exc}")


def test_variety_leq_examples():
    assert variety_leq(ideal(1, 2), ideal(1, 2, 4))
    assert not variety_leq(ideal(1, 3), ideal(1, 2, 4))
    assert all(variety_leq(ideal(), X) for X in ideals_upto(6))


def test_variety_leq_is_subset_order():
    for X, Y in itertools.product(ideals_upto(6), repeat=2):
        assert variety_leq(X, Y) == (X.members <= Y.members) == (X <= Y)


def test_order_identity_examples():
    assert satisfies_order_identity(rotational_cube(2), 6)
    assert not satisfies_order_identity(rotational_cube(4), 6)
    P = direct_product([rotational_cube(2), rotational_cube(3)])
    assert satisfies_order_identity(P, P.order)
    with pytest.raises(ValueError):
        satisfies_order_identity(P, 0)


def test_order_identity_matches_direct_power():
    for m in range(1, 13):
        Bm = rotational_cube(m)
        for t in range(1, 13):
            assert satisfies_order_identity(Bm, t) == power_is_identity(Bm, t) == hs_cube(m, t)


def test_order_ideal_repr_and_iteration():
    X = OrderIdeal(frozenset({4, 1, 2}))
    assert list(X) == [1, 2, 4] and 2 in X and len(X) == 3
    assert repr(X) == "OrderIdeal([1, 2, 4])"
