import pytest
from hypothesis import given, settings, strategies as st

from cayleykit.perm import (BRUTE_FORCE_CAP, CapExceededError, PermGroup,
                            Permutation, closure_of_subset,
                            element_mapping_points, is_normal_in,
                            minimal_normal_subgroups, normal_closure,
                            normalizer, pointwise_stabilizer, prime_factors,
                            socle, sylow_subgroup)


def perm(*cycles, n):
    return Permutation.from_cycles(n, cycles)


class TestPermutation:
    def test_identity_and_apply(self):
        p = Permutation([1, 2, 0])
        assert p(0) == 1 and p(2) == 0
        assert Permutation.identity(3).is_identity()

    def test_compose_left_action(self):
        # (p*q)(x) = p(q(x))
        p = Permutation([1, 0, 2])
        q = Permutation([2, 1, 0])
        assert (p * q).images == (2, 0, 1)

    def test_inverse(self):
        p = Permutation([2, 0, 3, 1])
        assert (p * p.inverse()).is_identity()
        assert (p.inverse() * p).is_identity()

    def test_from_cycles_roundtrip(self):
        p = perm((0, 1, 2), (3, 4), n=6)
        assert p.cycles() == [(0, 1, 2), (3, 4)]
        assert p.order() == 6

    def test_pow(self):
        p = perm((0, 1, 2, 3, 4), n=5)
        assert (p ** 5).is_identity()
        assert p ** -1 == p.inverse()

    def test_json_roundtrip(self):
        p = perm((0, 3), (1, 2), n=5)
        assert Permutation.from_json(p.to_json()) == p

    def test_malformed(self):
        with pytest.raises(ValueError):
            Permutation([0, 0, 1])


class TestPermGroup:
    def test_symmetric_order(self):
        assert PermGroup.symmetric(4).order == 24
        assert PermGroup.symmetric(5).order == 120

    def test_alternating_order(self):
        A4 = PermGroup(4, [perm((0, 1, 2), n=4), perm((1, 2, 3), n=4)])
        assert A4.order == 12

    def test_contains(self):
        G = PermGroup(4, [perm((0, 1, 2, 3), n=4)])
        assert G.contains(perm((0, 2), (1, 3), n=4))
        assert not G.contains(perm((0, 1), n=4))

    def test_deterministic_generators_order_independent(self):
        a, b = perm((0, 1, 2, 3), n=4), perm((0, 1), n=4)
        g1 = PermGroup(4, [a, b])
        g2 = PermGroup(4, [b, a])
        assert g1.order == g2.order == 24
        assert sorted(p.images for p in g1.elements()) \
            == sorted(p.images for p in g2.elements())

    def test_orbits_and_transitivity(self):
        G = PermGroup(5, [perm((0, 1), (2, 3), n=5)])
        assert G.orbits() == [[0, 1], [2, 3], [4]]
        assert not G.is_transitive()

    def test_regular_profile(self):
        G = PermGroup(4, [perm((0, 1, 2, 3), n=4)])
        assert G.transitivity_profile() == {
            "transitive": True, "semiregular": True, "regular": True}

    def test_conjugate_preserves_order(self):
        G = PermGroup.symmetric(3)
        c = Permutation([2, 0, 1])
        assert G.conjugate(c).order == 6

    def test_elements_cap(self):
        with pytest.raises(CapExceededError):
            PermGroup.symmetric(12).elements(1000)

    def test_json_roundtrip(self):
        G = PermGroup(4, [perm((0, 1, 2, 3), n=4), perm((0, 1), n=4)])
        H = PermGroup.from_json(G.to_json())
        assert H.order == G.order and H.degree == G.degree


class TestSubgroupMachinery:
    def test_pointwise_stabilizer(self):
        S4 = PermGroup.symmetric(4)
        st = pointwise_stabilizer(S4, [0])
        assert st.order == 6
        assert all(g(0) == 0 for g in st.generators)
        assert pointwise_stabilizer(S4, [0, 1]).order == 2

    def test_element_mapping_points(self):
        S4 = PermGroup.symmetric(4)
        g = element_mapping_points(S4, [0, 1], [2, 3])
        assert g(0) == 2 and g(1) == 3
        A4 = PermGroup(4, [perm((0, 1, 2), n=4), perm((1, 2, 3), n=4)])
        # odd assignments can still be completed inside A4
        assert element_mapping_points(A4, [0, 1, 2, 3], [1, 0, 2, 3]) is None

    def test_normal_closure(self):
        S4 = PermGroup.symmetric(4)
        N = normal_closure(S4, [perm((0, 1), (2, 3), n=4)])
        assert N.order == 4  # the Klein subgroup

    def test_is_normal(self):
        S4 = PermGroup.symmetric(4)
        V4 = PermGroup(4, [perm((0, 1), (2, 3), n=4),
                           perm((0, 2), (1, 3), n=4)])
        assert is_normal_in(V4, S4)
        st = pointwise_stabilizer(S4, [0])
        assert not is_normal_in(st, S4)

    def test_normalizer(self):
        S4 = PermGroup.symmetric(4)
        C4 = PermGroup(4, [perm((0, 1, 2, 3), n=4)])
        assert normalizer(S4, C4).order == 8  # dihedral

    def test_sylow_orders(self):
        S4 = PermGroup.symmetric(4)
        assert sylow_subgroup(S4, 2).order == 8
        assert sylow_subgroup(S4, 3).order == 3

    def test_socle_of_s4(self):
        assert socle(PermGroup.symmetric(4)).order == 4

    def test_minimal_normals_of_a5(self):
        A5 = PermGroup(5, [perm((0, 1, 2), n=5), perm((0, 1, 2, 3, 4), n=5)])
        mins = minimal_normal_subgroups(A5)
        assert len(mins) == 1 and mins[0].order == 60

    def test_closure_of_subset(self):
        elems = closure_of_subset(3, [Permutation([1, 0, 2])])
        assert len(elems) == 2
        assert closure_of_subset(4, [perm((0, 1, 2, 3), n=4)], limit=3) is None


def test_prime_factors():
    assert prime_factors(360) == [2, 2, 2, 3, 3, 5]
    assert prime_factors(1) == []


@settings(max_examples=25, deadline=None)
@given(st.permutations(list(range(6))), st.permutations(list(range(6))))
def test_group_order_divides_factorial(a, b):
    G = PermGroup(6, [Permutation(a), Permutation(b)])
    assert 720 % G.order == 0
    assert G.contains(Permutation(a) * Permutation(b))


@settings(max_examples=25, deadline=None)
@given(st.permutations(list(range(7))))
def test_order_of_element_matches_cycle_lcm(images):
    import math
    p = Permutation(images)
    lcm = 1
    for c in p.cycles():
        lcm = math.lcm(lcm, len(c))
    assert p.order() == (lcm if lcm > 1 else 1)
