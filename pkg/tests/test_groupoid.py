"""Finite groupoids: equivalences, invariant profiles, iso-comma squares."""
import itertools

import pytest

from spanlab.fincat import Functor
from spanlab.groupoid import (
    cyclic_group_groupoid,
    discrete_groupoid,
    full_subgroupoid,
    groupoids_equivalent,
    groups_isomorphic,
    equivalent,
    iso_comma,
    one_object_group,
    pi0_aut_profile,
)
from spanlab.fincat import core, finset
from spanlab.verdict import SpanlabError


def codiscrete_groupoid(labels):
    """Exactly one morphism between every ordered pair of objects."""
    from spanlab.fincat import FinCategory
    from spanlab.groupoid import FinGroupoid

    morphs = {(x, y): (x, y) for x in labels for y in labels}
    ident = {x: (x, x) for x in labels}
    comp = {
        (((y, z)), ((x, y2))): (x, z)
        for x in labels
        for y in labels
        for y2 in labels
        for z in labels
        if y == y2
    }
    inv = {(x, y): (y, x) for x in labels for y in labels}
    return FinGroupoid(FinCategory(list(labels), morphs, ident, comp), inv)


def klein_four():
    els = [(0, 0), (0, 1), (1, 0), (1, 1)]
    mul = {
        (g, f): ((g[0] + f[0]) % 2, (g[1] + f[1]) % 2) for g in els for f in els
    }
    return one_object_group(els, mul, (0, 0), {g: g for g in els})


class TestBuilders:
    def test_discrete_validates(self):
        G = discrete_groupoid(["a", "b", "c"])
        assert G.validate()
        assert len(G.components()) == 3

    def test_cyclic_validates(self):
        for n in (1, 2, 3, 4):
            G = cyclic_group_groupoid(n)
            assert G.validate()
            assert len(G.aut("*")) == n

    def test_klein_four_validates(self):
        assert klein_four().validate()

    def test_core_of_finset_validates(self):
        assert core(finset(3)).validate()


class TestEquivalent:
    def test_skeleton_inclusion_is_equivalence(self):
        """Including one object of a two-object contractible groupoid."""
        G = codiscrete_groupoid([0, 1])
        H = full_subgroupoid(G, lambda x: x == 0)
        F = Functor(
            H, G, {x: x for x in H.objects}, {m: m for m in H.all_morphisms()}
        )
        assert equivalent(F)

    def test_collapse_bz2_to_bz3_refuted(self):
        A = cyclic_group_groupoid(2)
        B = cyclic_group_groupoid(3)
        F = Functor(A, B, {"*": "*"}, {0: 0, 1: 0})
        v = equivalent(F)
        assert not v
        assert v.witness["reason"] in ("not faithful", "hom sizes differ")

    def test_collapse_two_points_refuted(self):
        A = discrete_groupoid([0, 1])
        B = discrete_groupoid([0])
        F = Functor(A, B, {0: 0, 1: 0}, {("id", 0): ("id", 0), ("id", 1): ("id", 0)})
        v = equivalent(F)
        assert not v

    def test_missing_object_refuted(self):
        A = discrete_groupoid([0])
        B = discrete_groupoid([0, 1])
        F = Functor(A, B, {0: 0}, {("id", 0): ("id", 0)})
        v = equivalent(F)
        assert not v
        assert v.witness["reason"] == "not in essential image"


def _point_into(G):
    x = G.objects[0]
    pt = discrete_groupoid(["pt"])
    return Functor(pt, G, {"pt": x}, {("id", "pt"): G.identity(x)})


class TestIsoComma:
    def test_point_point_over_bz2(self):
        """Loop space of the delooping of Z/2 has two points."""
        G = cyclic_group_groupoid(2)
        C, _, _ = iso_comma(_point_into(G), _point_into(G))
        assert len(C.objects) == 2
        assert C.validate()
        # and it is discrete: everything is connected only to itself trivially
        assert pi0_aut_profile(C) == [(1, 1), (1, 1)]

    def test_along_identity_recovers_source(self):
        G = core(finset(2))
        idG = Functor(
            G, G, {x: x for x in G.objects}, {m: m for m in G.all_morphisms()}
        )
        C, pa, _ = iso_comma(idG, idG)
        assert groupoids_equivalent(C, G)

    def test_discrete_target_is_strict_pullback(self):
        K = discrete_groupoid([0, 1])
        A = discrete_groupoid(["a0", "a1"])
        B = discrete_groupoid(["b0"])
        FA = Functor(A, K, {"a0": 0, "a1": 1}, {("id", "a0"): ("id", 0), ("id", "a1"): ("id", 1)})
        FB = Functor(B, K, {"b0": 0}, {("id", "b0"): ("id", 0)})
        C, _, _ = iso_comma(FA, FB)
        # only (a0, b0) match over 0
        assert len(C.objects) == 1

    def test_projections_are_functorial(self):
        G = cyclic_group_groupoid(2)
        C, pa, pb = iso_comma(_point_into(G), _point_into(G))
        assert pa.validate()
        assert pb.validate()


class TestProfiles:
    def test_core_finset3_profile(self):
        assert pi0_aut_profile(core(finset(3))) == [(1, 1), (1, 1), (2, 2), (6, 6)]

    def test_profile_of_cyclic(self):
        assert pi0_aut_profile(cyclic_group_groupoid(4)) == [(4, 4)]

    def test_bz4_vs_klein_four(self):
        """Same profile, inequivalent groupoids: the profile alone cannot
        distinguish them but the group-isomorphism matching can."""
        A = cyclic_group_groupoid(4)
        B = klein_four()
        assert pi0_aut_profile(A) == pi0_aut_profile(B)
        v = groupoids_equivalent(A, B)
        assert not v


class TestGroupsIsomorphic:
    def test_cyclic_self(self):
        els = list(range(6))
        mul = {(g, f): (g + f) % 6 for g in els for f in els}
        assert groups_isomorphic(els, mul, 0, els, mul, 0)

    def test_z6_vs_s3(self):
        els = list(range(6))
        mul6 = {(g, f): (g + f) % 6 for g in els for f in els}
        perms = list(itertools.permutations(range(3)))
        muls3 = {
            (g, f): tuple(g[f[i]] for i in range(3)) for g in perms for f in perms
        }
        assert not groups_isomorphic(els, mul6, 0, perms, muls3, (0, 1, 2))

    def test_order_mismatch(self):
        els2 = [0, 1]
        mul2 = {(g, f): (g + f) % 2 for g in els2 for f in els2}
        els3 = [0, 1, 2]
        mul3 = {(g, f): (g + f) % 3 for g in els3 for f in els3}
        assert not groups_isomorphic(els2, mul2, 0, els3, mul3, 0)

    def test_bound_enforced(self):
        els = list(range(30))
        mul = {(g, f): (g + f) % 30 for g in els for f in els}
        with pytest.raises(SpanlabError):
            groups_isomorphic(els, mul, 0, els, mul, 0)


class TestGroupoidsEquivalent:
    def test_reflexive_and_symmetric(self):
        samples = [
            discrete_groupoid([0, 1]),
            cyclic_group_groupoid(3),
            core(finset(2)),
            klein_four(),
        ]
        for G in samples:
            assert groupoids_equivalent(G, G)
        for G in samples:
            for H in samples:
                assert bool(groupoids_equivalent(G, H)) == bool(
                    groupoids_equivalent(H, G)
                )

    def test_component_count_mismatch(self):
        v = groupoids_equivalent(discrete_groupoid([0]), discrete_groupoid([0, 1]))
        assert not v
        assert v.witness["reason"] == "component counts differ"

    def test_full_subgroupoid_skeleton(self):
        G = discrete_groupoid([0, 1, 2])
        H = full_subgroupoid(G, lambda x: x < 2)
        assert len(H.objects) == 2
        assert H.validate()
