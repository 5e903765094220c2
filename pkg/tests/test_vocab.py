from fractions import Fraction

import pytest

from superpattern_tools.vocab import (
    GROUP_HEADS,
    RELATIONS,
    Base,
    Comparison,
    Modality,
    Qualifier,
    RelationGroup,
    UnknownQualifierError,
    UnknownRelationError,
    canonical_phrase,
    group_head,
    parse_qualifier,
    parse_relation,
    qualifier_params,
    relation_subsumes,
)

F = Fraction

QUALIFIER_TABLE = [
    ("always", F(1), Comparison.EQUAL),
    ("generally", F(9, 10), Comparison.AT_LEAST),
    ("mostly", F(1, 2), Comparison.AT_LEAST),
    ("frequently", F(1, 10), Comparison.AT_LEAST),
    ("sometimes", F(1, 1000), Comparison.AT_LEAST),
    ("never", F(0), Comparison.EQUAL),
    ("generally not", F(1, 10), Comparison.AT_MOST),
    ("mostly not", F(1, 2), Comparison.AT_MOST),
    ("frequently not", F(9, 10), Comparison.AT_MOST),
    ("sometimes not", F(999, 1000), Comparison.AT_MOST),
]


@pytest.mark.parametrize("phrase,threshold,comparison", QUALIFIER_TABLE)
@pytest.mark.parametrize("modal", [False, True])
def test_qualifier_params_table(phrase, threshold, comparison, modal):
    q = parse_qualifier(("can " if modal else "") + phrase)
    params = qualifier_params(q)
    assert params.threshold == threshold
    assert params.comparison is comparison
    assert params.modality is (Modality.POSSIBLE if modal else Modality.ACTUAL)


def test_exactly_twenty_qualifiers():
    qualifiers = Qualifier.all()
    assert len(set(qualifiers)) == 20
    params = {(p.threshold, p.comparison, p.modality) for p in map(qualifier_params, qualifiers)}
    assert len(params) == 20


def test_threshold_domain():
    allowed = {F(0), F(1, 1000), F(1, 10), F(1, 2), F(9, 10), F(999, 1000), F(1)}
    for q in Qualifier.all():
        p = qualifier_params(q)
        assert p.threshold in allowed
        if q.negated:
            assert p.comparison in (Comparison.EQUAL, Comparison.AT_MOST)
        else:
            assert p.comparison in (Comparison.EQUAL, Comparison.AT_LEAST)


@pytest.mark.parametrize(
    "text,expected",
    [
        ("generally", Qualifier(Base.GENERALLY)),
        ("never", Qualifier(Base.ALWAYS, negated=True)),
        ("can generally not", Qualifier(Base.GENERALLY, negated=True, modal=True)),
        ("Can  Never", Qualifier(Base.ALWAYS, negated=True, modal=True)),
        ("SOMETIMES", Qualifier(Base.SOMETIMES)),
    ],
)
def test_parse_qualifier(text, expected):
    assert parse_qualifier(text) == expected


def test_unknown_qualifier_suggests_nearest():
    with pytest.raises(UnknownQualifierError) as e:
        parse_qualifier("often")
    assert e.value.suggestion in {canonical_phrase(q) for q in Qualifier.all()}

    with pytest.raises(UnknownQualifierError) as e:
        parse_qualifier("generaly")
    assert e.value.suggestion == "generally"


def test_parenthesized_can_rejected():
    with pytest.raises(UnknownQualifierError):
        parse_qualifier("(can) generally")


def test_qualifier_round_trip():
    for q in Qualifier.all():
        assert parse_qualifier(canonical_phrase(q)) == q
        assert parse_qualifier(q.slug) == q


def test_interpretation():
    assert parse_qualifier("generally").interpretation() == "at least 90%"
    assert parse_qualifier("always").interpretation() == "100%"
    assert parse_qualifier("sometimes not").interpretation() == "at most 99.9%"
    assert parse_qualifier("sometimes").interpretation() == "at least 0.1%"


def test_relation_inventory():
    assert len(RELATIONS) == 25
    assert len({r.name for r in RELATIONS}) == 25
    sizes = {g: sum(1 for r in RELATIONS if r.group is g) for g in RelationGroup}
    assert sizes == {
        RelationGroup.SAMENESS: 1,
        RelationGroup.NUMERICAL_COMPARISON: 6,
        RelationGroup.CAUSALITY: 12,
        RelationGroup.SPATIO_TEMPORALITY: 6,
    }
    for r in RELATIONS:
        heads = [h for h in GROUP_HEADS.values() if relation_subsumes(h, r)]
        assert heads == [group_head(r)]


def test_parse_relation():
    r = parse_relation("co-occurs with")
    assert (r.name, r.group, r.is_head) == ("co-occurs-with", RelationGroup.SPATIO_TEMPORALITY, False)

    r = parse_relation("Is Same As")
    assert (r.name, r.group, r.is_head) == ("is-same-as", RelationGroup.SAMENESS, True)

    assert parse_relation("co occurs with") == parse_relation("co-occurs-with")
    assert parse_relation("includes").description == "spatio-temporally or conceptually includes"


def test_unknown_relation_lists_heads():
    with pytest.raises(UnknownRelationError) as e:
        parse_relation("correlates with")
    assert "has causal relationship with" in e.value.heads
    assert len(e.value.heads) == 4


def test_relation_round_trip():
    for r in RELATIONS:
        assert parse_relation(r.display) == r
        assert parse_relation(r.name) == r


def test_relation_subsumes():
    causal = parse_relation("has causal relationship with")
    causes = parse_relation("causes")
    assert relation_subsumes(causal, causes)
    assert not relation_subsumes(causes, causal)
    assert not relation_subsumes(parse_relation("compares to"), parse_relation("includes"))
    for r in RELATIONS:
        assert relation_subsumes(r, r)
        for s in RELATIONS:
            if r != s and relation_subsumes(r, s):
                assert not relation_subsumes(s, r)
