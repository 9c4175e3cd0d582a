"""Labeled spans: internal coefficient categories, composition, levels,
classification of invertibles, duals, and mapping fibers."""
import pytest

from spanlab.fincat import FinFunction, FinSetCategory
from spanlab.locsys import (
    InternalCategory,
    LocalSystemSpan,
    all_locsys_spans,
    comma_set,
    compose_labeled_bij,
    compose_locsys,
    cyclic_internal,
    discrete_internal,
    identity_labeled_bij,
    identity_locsys,
    invert_labeled_bij,
    labeled_bijections,
    locsys_adjunction_check,
    locsys_battery_check,
    locsys_dual,
    locsys_equivalence_check,
    locsys_invertible_predicate,
    locsys_invertible_search,
    locsys_level,
    locsys_mapping_fiber_check,
    locsys_spans_isomorphic,
    validate_internal,
    walking_arrow_internal,
)
from spanlab.spans import Span, span_level
from spanlab.groupoid import groupoids_equivalent
from spanlab.verdict import FootMismatchError, SpanlabError


BZ2 = cyclic_internal(2)
BZ3 = cyclic_internal(3)
ARROW = walking_arrow_internal()
POINT = discrete_internal(1)


def point_span(base, label, C=BZ2, xi=(0,), eta=(0,)):
    return LocalSystemSpan(
        Span(1, base.identity(1), 1, base.identity(1), 1), xi, eta, (label,)
    )


class TestInternalCategories:
    @pytest.mark.parametrize(
        "C", [POINT, discrete_internal(3), BZ2, BZ3, ARROW, cyclic_internal(5)]
    )
    def test_stock_coefficients_validate(self, C):
        assert validate_internal(C)

    def test_non_associative_table_refuted(self):
        # one object, three endomorphisms with a unital but non-associative
        # multiplication
        comp = {
            (0, 0): 0, (0, 1): 1, (0, 2): 2,
            (1, 0): 1, (2, 0): 2,
            (1, 1): 2, (1, 2): 1, (2, 1): 2, (2, 2): 0,
        }
        C = InternalCategory(1, 3, [0, 0, 0], [0, 0, 0], [0], comp)
        v = validate_internal(C)
        assert not v
        assert v.witness["reason"] == "associativity"

    def test_missing_composite_refuted(self):
        C = InternalCategory(1, 2, [0, 0], [0, 0], [0], {(0, 0): 0, (0, 1): 1, (1, 0): 1})
        v = validate_internal(C)
        assert not v
        assert v.witness["reason"] == "missing composite"

    def test_bad_inverse_table_refuted(self):
        C = InternalCategory(
            1, 2, [0, 0], [0, 0], [0],
            {(0, 0): 0, (0, 1): 1, (1, 0): 1, (1, 1): 0},
            inv=[0, 0],
        )
        v = validate_internal(C)
        assert not v
        assert v.witness["reason"] == "inverse law"

    def test_invertibility_in_walking_arrow(self):
        assert ARROW.is_invertible(0) and ARROW.is_invertible(1)
        assert not ARROW.is_invertible(2)
        with pytest.raises(SpanlabError):
            ARROW.inverse(2)

    def test_json_roundtrip(self):
        for C in (BZ3, ARROW):
            D = InternalCategory.from_json(C.to_json())
            assert validate_internal(D)
            assert D.src == C.src and D.comp == C.comp and D.inv == C.inv

    def test_malformed_json(self):
        with pytest.raises(SpanlabError):
            InternalCategory.from_json({"C0": 1})


class TestComposition:
    def test_group_labels_multiply(self):
        base = FinSetCategory(1)
        g = point_span(base, 1)
        gg = compose_locsys(BZ2, base, g, g)
        assert gg.a == (0,)  # g . g = e in Z/2

    def test_identity_units(self):
        base = FinSetCategory(1)
        s = point_span(base, 1)
        lid = identity_locsys(BZ2, base, 1, s.xi)
        assert compose_locsys(BZ2, base, lid, s).a == s.a
        assert compose_locsys(BZ2, base, s, lid).a == s.a

    def test_discrete_coefficients_are_plain_composition(self):
        base = FinSetCategory(1)
        C = discrete_internal(2)
        s = point_span(base, 1, C=C, xi=(1,), eta=(1,))
        t = compose_locsys(C, base, s, s)
        assert t.span.apex == 1 and t.a == (1,)

    def test_foot_label_mismatch(self):
        base = FinSetCategory(1)
        C = discrete_internal(2)
        s = point_span(base, 0, C=C, xi=(0,), eta=(0,))
        t = point_span(base, 1, C=C, xi=(1,), eta=(1,))
        with pytest.raises(FootMismatchError):
            compose_locsys(C, base, s, t)

    def test_validate_labels(self):
        base = FinSetCategory(1)
        bad = point_span(base, 2, C=ARROW, xi=(1,), eta=(1,))  # 2: 0 -> 1
        assert not bad.validate(ARROW)
        good = point_span(base, 2, C=ARROW, xi=(0,), eta=(1,))
        assert good.validate(ARROW)


class TestLabeledBijections:
    def test_group_and_inverse_laws(self):
        base = FinSetCategory(2)
        bijs = labeled_bijections(BZ3, base, 2, (0, 0), 2, (0, 0))
        assert len(bijs) == 2 * 9  # 2 permutations x 3^2 label families
        e = identity_labeled_bij(BZ3, base, 2, (0, 0))
        for b in bijs:
            binv = invert_labeled_bij(BZ3, base, b)
            assert compose_labeled_bij(BZ3, base, binv, b) == e
            assert compose_labeled_bij(BZ3, base, b, binv) == e

    def test_walking_arrow_restricts_to_invertibles(self):
        base = FinSetCategory(1)
        # no internal isomorphism 0 -> 1, so no labeled bijection between
        # differently labeled points
        assert labeled_bijections(ARROW, base, 1, (0,), 1, (1,)) == []
        assert len(labeled_bijections(ARROW, base, 1, (0,), 1, (0,))) == 1


class TestLevels:
    def test_labeled_sets_level_count(self):
        G = locsys_level(FinSetCategory(1), discrete_internal(2), (0,), 1)
        assert len(G.objects) == 3  # empty set plus two labeled points
        assert G.validate()

    def test_trivial_coefficients_match_plain_level(self):
        base = FinSetCategory(1)
        G = locsys_level(base, POINT, (1,), 1)
        plain = span_level(base, (1,))
        assert len(G.objects) == len(plain.objects) == 5
        assert groupoids_equivalent(G, plain)

    def test_bz2_span_level_count(self):
        G = locsys_level(FinSetCategory(1), BZ2, (1,), 1)
        assert len(G.objects) == 6
        assert G.validate()

    def test_unshipped_arities_rejected(self):
        with pytest.raises(SpanlabError):
            locsys_level(FinSetCategory(1), BZ2, (2,), 1)


class TestBatteries:
    @pytest.mark.parametrize("C", [POINT, discrete_internal(2), BZ2, BZ3])
    def test_unit_and_associativity(self, C):
        v = locsys_battery_check(C, bound=1)
        assert v
        assert v.details["triples_checked"] > 0

    def test_corrupted_coefficients_refuted(self):
        C = InternalCategory(1, 2, [0, 0], [0, 0], [0], {(0, 0): 0, (0, 1): 1, (1, 0): 1})
        v = locsys_battery_check(C, bound=1)
        assert not v
        assert v.witness["stage"] == "coefficients"


class TestInvertibles:
    @pytest.mark.parametrize("C", [POINT, BZ2, BZ3, ARROW, discrete_internal(2)])
    def test_classification(self, C):
        v = locsys_equivalence_check(C, bound=1)
        assert v
        assert v.details["spans_checked"] > 0

    def test_noninvertible_label_detected(self):
        base = FinSetCategory(1)
        s = point_span(base, 2, C=ARROW, xi=(0,), eta=(1,))
        assert not locsys_invertible_predicate(ARROW, base, s)
        assert not locsys_invertible_search(ARROW, base, s, 1)

    def test_group_label_invertible(self):
        base = FinSetCategory(1)
        s = point_span(base, 1, C=BZ3, xi=(0,), eta=(0,))
        assert locsys_invertible_predicate(BZ3, base, s)
        assert locsys_invertible_search(BZ3, base, s, 1)


class TestDuals:
    def test_self_inverse_label(self):
        base = FinSetCategory(1)
        s = point_span(base, 1)
        assert locsys_dual(BZ2, s).a == (1,)

    def test_bz3_label_inverts(self):
        base = FinSetCategory(1)
        s = point_span(base, 1, C=BZ3)
        assert locsys_dual(BZ3, s).a == (2,)

    def test_needs_internal_groupoid(self):
        base = FinSetCategory(1)
        s = point_span(base, 0, C=ARROW, xi=(0,), eta=(0,))
        with pytest.raises(SpanlabError):
            locsys_dual(ARROW, s)

    def test_adjunction_battery_bz2(self):
        base = FinSetCategory(1)
        for s in all_locsys_spans(BZ2, base, 1):
            assert locsys_adjunction_check(BZ2, base, s, 1)

    def test_dual_composite_collapses(self):
        base = FinSetCategory(1)
        s = point_span(base, 1, C=BZ3)
        d = locsys_dual(BZ3, s)
        assert compose_locsys(BZ3, base, s, d).a == (0,)
        assert locsys_spans_isomorphic(
            BZ3, base, compose_locsys(BZ3, base, s, d), identity_locsys(BZ3, base, 1, (0,))
        )


class TestMappingFibers:
    def test_comma_set_bz2(self):
        assert comma_set(BZ2, 1, (0,), 1, (0,)) == [(0, 0, 0), (0, 0, 1)]

    def test_fiber_over_bz2_points(self):
        v = locsys_mapping_fiber_check(BZ2, 1, (0,), 1, (0,), bound=1)
        assert v
        assert v.details["fiber_objects"] == 3
        assert v.details["comma_size"] == 2

    def test_fiber_walking_arrow_mixed_feet(self):
        v = locsys_mapping_fiber_check(ARROW, 1, (0,), 1, (1,), bound=1)
        assert v
        assert v.details["comma_size"] == 1

    def test_fiber_empty_feet(self):
        v = locsys_mapping_fiber_check(BZ2, 0, (), 0, (), bound=1)
        assert v
        assert v.details["comma_size"] == 0
