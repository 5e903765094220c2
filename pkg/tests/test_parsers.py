import os
import re

import pytest

from superpattern_tools.classes import Atomic, Intersection, TermSource
from superpattern_tools.parsers.claims import ClaimSyntaxError, VocabularyError, parse_claims
from superpattern_tools.parsers.model import ModelSyntaxError, parse_model
from superpattern_tools.vocab import UnknownQualifierError, UnknownRelationError, parse_qualifier, parse_relation
from superpattern_tools.worlds import InvalidModelError

from .conftest import read_fixture

KOA_BLOCK = """\
CONTEXT: person
SUBJECT: obesity + metabolic abnormality
QUALIFIER: generally
RELATION: co-occurs with
OBJECT: knee osteoarthritis
"""


def test_koa_block():
    (inst,) = parse_claims(KOA_BLOCK).claims
    assert inst.claim_id == "c1"
    assert inst.context == Atomic("person")
    assert inst.subject == Intersection((Atomic("obesity"), Atomic("metabolic abnormality")))
    assert inst.qualifier == parse_qualifier("generally")
    assert inst.relation == parse_relation("co-occurs with")
    assert inst.object == Atomic("knee osteoarthritis")


def test_context_is_optional():
    (inst,) = parse_claims(KOA_BLOCK.split("\n", 1)[1]).claims
    assert inst.context is None


def test_missing_subject_names_slot():
    src = KOA_BLOCK.replace("SUBJECT: obesity + metabolic abnormality\n", "")
    with pytest.raises(ClaimSyntaxError) as e:
        parse_claims(src)
    assert "SUBJECT" in str(e.value)
    assert e.value.line == 1


def test_unknown_qualifier_reports_line():
    src = KOA_BLOCK.replace("QUALIFIER: generally", "QUALIFIER: often")
    with pytest.raises(VocabularyError) as e:
        parse_claims(src)
    assert e.value.line == 3
    assert isinstance(e.value.cause, UnknownQualifierError)


def test_unknown_relation_reports_line():
    src = "# relations are a closed list\n" + KOA_BLOCK.replace("co-occurs with", "correlates with")
    with pytest.raises(VocabularyError) as e:
        parse_claims(src)
    assert e.value.line == 5
    assert isinstance(e.value.cause, UnknownRelationError)


def test_syntax_error_position():
    with pytest.raises(ClaimSyntaxError) as e:
        parse_claims("SUBJECT: a\nFOO: b\n")
    assert e.value.line == 2
    assert e.value.expected


def test_duplicate_line():
    with pytest.raises(ClaimSyntaxError, match="duplicate SUBJECT"):
        parse_claims(KOA_BLOCK + "SUBJECT: again\n")


def test_iris_and_comments():
    src = """\
# leading comment
ID: c7
SUBJECT: aspirin <http://www.wikidata.org/entity/Q18216>
# comment inside a block
QUALIFIER: Can Generally
RELATION: prevents
OBJECT: [stroke + relapse] <https://example.org/mint/relapse_and_stroke>
"""
    (inst,) = parse_claims(src, minted_namespace="https://example.org/mint/").claims
    assert inst.claim_id == "c7"
    assert inst.subject.term.source is TermSource.WIKIDATA
    assert inst.object.term.source is TermSource.MINTED
    assert inst.object.parts == (Atomic("stroke"), Atomic("relapse"))
    assert inst.qualifier == parse_qualifier("can generally")


def test_inexpressible_block():
    (inst,) = parse_claims("ID: z\nEXPRESSIBLE: no\nAIDA: Ten people took part.\n").claims
    assert not inst.expressible
    assert inst.subject is None
    assert inst.meta.aida == "Ten people took part."


def test_blocks_and_crlf():
    src = (KOA_BLOCK + "\n\n" + KOA_BLOCK.replace("person", "adult")).replace("\n", "\r\n")
    doc = parse_claims(src)
    assert [c.claim_id for c in doc] == ["c1", "c2"]
    assert doc.claims[1].context == Atomic("adult")


def test_empty_input():
    assert len(parse_claims("")) == 0
    assert len(parse_claims("# nothing here\n\n")) == 0


def test_corpus_fixture(corpus):
    assert len(corpus) == 28
    assert len(corpus.expressible()) == 26


def test_parse_three_person_model(three_person_model):
    m = three_person_model
    assert m.worlds == {"w0"}
    assert m.accessibility == {("w0", "w0")}
    assert m.class_ext[("w0", "metabolic-abnormality")] == {"o1", "o2", "o3"}
    assert m.rel_ext[("w0", "co-occurs-with")] == {("o1", "k1"), ("o2", "k2")}
    assert ("k2", "p2") in m.context_of["w0"]


def test_parse_two_world_model(two_world_model):
    m = two_world_model
    assert m.actual == "w1"
    assert m.successors("w1") == ["w1", "w2"]
    assert m.rel_ext[("w2", "prevents")] == {("a", "b")}


def readme_blocks():
    readme = os.path.join(os.path.dirname(os.path.dirname(__file__)), "README.md")
    with open(readme, "r", encoding="utf-8") as fl:
        return re.findall(r"^```\n(.*?)^```", fl.read(), re.M | re.S)


def test_readme_examples_parse():
    claim_block, model_block = readme_blocks()[:2]
    (inst,) = parse_claims(claim_block).claims
    assert inst.relation == parse_relation("co-occurs with")
    assert inst.object == Intersection((Atomic("pain"), Atomic("swelling")))
    assert inst.context.term.source is TermSource.WIKIDATA

    m = parse_model(model_block)
    assert m.rel_ext[("w1", "co-occurs-with")] == {("p1", "o1")}
    assert ("w0", "w1") in m.accessibility


def test_model_reflexivity_defaults():
    src = "WORLDS: w1 w2\nACTUAL: w1\nINDIVIDUALS: a\n"
    assert parse_model(src).accessibility == {("w1", "w1"), ("w2", "w2")}
    assert parse_model(src, reflexive=False).accessibility == frozenset()
    assert not parse_model(src + "REFLEXIVE: no\n").reflexive


def test_model_unknown_individual():
    src = "WORLDS: w\nACTUAL: w\nINDIVIDUALS: a\nCLASS w drug: a b\n"
    with pytest.raises(InvalidModelError) as e:
        parse_model(src)
    assert [v.code for v in e.value.violations] == ["unknown-individual"]


def test_model_syntax_errors():
    with pytest.raises(ModelSyntaxError):
        parse_model("WORLDS: w\nACTUAL w\n")
    with pytest.raises(ModelSyntaxError, match="ACTUAL"):
        parse_model("WORLDS: w\nINDIVIDUALS: a\n")
    with pytest.raises(ModelSyntaxError):
        parse_model("WORLDS: w\nACTUAL: w\nREL w correlates with: a a\n")
