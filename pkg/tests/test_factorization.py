import pytest

from absorder.absolute import build_absolute_order, claw_product
from absorder.factorization import (
    FactorizationError, bumps, degrees_match_tiers, embed_claw_product, factorize,
    factorize_exhaustive, format_factorization, phi, reflection_tiers, tier_tuples,
    verify_length_formula,
)
from absorder.groups import (
    GroupId, elements, format_element, identity, parse_element, reflections,
)
from absorder.poset import is_spanning_subposet

A2, B2 = GroupId.parse("a2"), GroupId.parse("b2")
GROUPS = [GroupId.parse(s) for s in ("a1", "a2", "a3", "a4", "b1", "b2", "b3", "i2:3", "i2:6")]


def tier_text(g):
    return [[format_element(t) for t in tier] for tier in reflection_tiers(g)]


class TestTiers:
    def test_a2(self):
        assert tier_text(A2) == [["(1 2)"], ["(1 3)", "(2 3)"]]

    def test_b2(self):
        assert [sorted(t) for t in tier_text(B2)] == [["[1]"], sorted(["[2]", "((1,2))", "((1,-2))"])]

    def test_b3_sizes(self):
        assert [len(t) for t in reflection_tiers(GroupId.parse("b3"))] == [1, 3, 5]

    @pytest.mark.parametrize("g", GROUPS, ids=str)
    def test_partition_of_reflections(self, g):
        tiers = reflection_tiers(g)
        flat = [t for tier in tiers for t in tier]
        assert len(flat) == len(set(flat)) and set(flat) == set(reflections(g))
        assert degrees_match_tiers(g)

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_unique_reflection_type_a(self, n):
        g = GroupId.parse(f"a{n}")
        top = reflection_tiers(g)[-1]
        for j in range(1, n + 1):
            assert sum(t(j) == n + 1 for t in top) == 1

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_unique_reflection_type_b(self, n):
        g = GroupId.parse(f"b{n}")
        top = reflection_tiers(g)[-1]
        for v in [x for i in range(1, n + 1) for x in (i, -i)]:
            if v != n:
                assert sum(t(v) == n for t in top) == 1


class TestFactorize:
    def test_identity(self):
        assert factorize(identity(A2)) == (identity(A2), identity(A2))

    def test_three_cycle(self):
        w = parse_element("(1 3 2)", A2)
        expected = (parse_element("(2 3)", A2), parse_element("(1 2)", A2))
        assert factorize_exhaustive(w) == expected
        assert factorize(w) == expected

    def test_b2_sign_flip(self):
        assert factorize(parse_element("[2]", B2)) == (parse_element("[2]", B2), identity(B2))

    @pytest.mark.parametrize("g", [GroupId.parse(s) for s in ("a1", "a2", "a3", "b1", "b2", "b3", "i2:5")], ids=str)
    def test_matches_exhaustive(self, g):
        for w in elements(g):
            assert factorize(w) == factorize_exhaustive(w)

    @pytest.mark.parametrize("g", GROUPS, ids=str)
    def test_round_trips(self, g):
        for w in elements(g):
            assert phi(factorize(w)) == w
        tuples = list(tier_tuples(g))
        assert len(tuples) == g.order
        for f in tuples:
            assert factorize(phi(f)) == f

    @pytest.mark.parametrize("g", GROUPS, ids=str)
    def test_length_formula(self, g):
        assert verify_length_formula(g)

    def test_format(self):
        assert format_factorization(factorize(parse_element("(1 3 2)", A2))) == "(2 3)(1 2)"
        assert format_factorization(factorize(identity(A2))) == "ee"
        assert format_factorization(factorize(parse_element("[2]", B2))) == "[2]e"


class TestPhi:
    def test_examples(self):
        e = identity(A2)
        assert phi((e, e)) == e
        assert phi((parse_element("(2 3)", A2), parse_element("(1 2)", A2))) == parse_element("(1 3 2)", A2)
        r = reflection_tiers(A2)[-1][0]
        assert phi((r, e)) == r

    def test_rejects_wrong_tier(self):
        e = identity(A2)
        with pytest.raises(FactorizationError):
            phi((e, parse_element("(1 3)", A2)))
        with pytest.raises(FactorizationError):
            phi((e,))


class TestEmbedding:
    def test_a2_figure(self):
        image, mapping = embed_claw_product(A2)
        t23, t12 = parse_element("(2 3)", A2), parse_element("(1 2)", A2)
        e = identity(A2)
        assert mapping[(t23, t12)] == parse_element("(1 3 2)", A2)
        assert mapping[(e, t12)] == t12
        assert image.less(image.index[t12], image.index[parse_element("(1 3 2)", A2)])
        assert len(image.covers) == 7 and len(build_absolute_order(A2).covers) == 9

    def test_a1_isomorphism(self):
        g = GroupId.parse("a1")
        image, _ = embed_claw_product(g)
        absolute = build_absolute_order(g)
        assert is_spanning_subposet(image, absolute) and is_spanning_subposet(absolute, image)

    def test_b2(self):
        image, mapping = embed_claw_product(B2)
        assert len(set(mapping.values())) == 8
        absolute = build_absolute_order(B2)
        abs_covers = {(absolute.labels[x], absolute.labels[y]) for x, y in absolute.covers}
        img_covers = {(image.labels[x], image.labels[y]) for x, y in image.covers}
        assert len(claw_product(B2).covers) == len(img_covers) == 10
        assert img_covers <= abs_covers

    @pytest.mark.parametrize("g", GROUPS, ids=str)
    def test_cover_transport(self, g):
        absolute = build_absolute_order(g)
        covers = {(absolute.labels[x], absolute.labels[y]) for x, y in absolute.covers}
        for f in tier_tuples(g):
            for bumped in bumps(f):
                assert (phi(f), phi(bumped)) in covers
