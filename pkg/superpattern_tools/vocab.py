"""
Closed vocabularies of the super-pattern: the 20 qualifiers and the 25 relations.
"""

import difflib
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Tuple

from .errors import SuperPatternError


class UnknownQualifierError(SuperPatternError):
    def __init__(self, text: str, suggestion: str):
        self.text = text
        self.suggestion = suggestion
        super().__init__(f"Unknown qualifier {text!r}; did you mean {suggestion!r}?")


class UnknownRelationError(SuperPatternError):
    def __init__(self, text: str):
        self.text = text
        self.heads = [r.display for r in RELATIONS if r.is_head]
        super().__init__(
            f"Unknown relation {text!r}; relations belong to one of: "
            + ", ".join(self.heads)
        )


def _normalize(text: str) -> str:
    return re.sub(r"\s+", " ", text.strip().lower().replace("-", " "))


### Qualifiers


class Base(Enum):
    SOMETIMES = "sometimes"
    FREQUENTLY = "frequently"
    MOSTLY = "mostly"
    GENERALLY = "generally"
    ALWAYS = "always"


class Comparison(Enum):
    EQUAL = "equal"
    AT_LEAST = "at-least"
    AT_MOST = "at-most"


class Modality(Enum):
    ACTUAL = "actual"
    POSSIBLE = "possible"


@dataclass(frozen=True)
class QualifierParams:
    threshold: Fraction
    comparison: Comparison
    modality: Modality

    def satisfied_by(self, ratio: Fraction) -> bool:
        if self.comparison is Comparison.EQUAL:
            return ratio == self.threshold
        if self.comparison is Comparison.AT_LEAST:
            return ratio >= self.threshold
        return ratio <= self.threshold

    def interval(self) -> Tuple[Fraction, Fraction]:
        """
        Closed interval of ratios satisfying the comparison.
        """
        if self.comparison is Comparison.EQUAL:
            return self.threshold, self.threshold
        if self.comparison is Comparison.AT_LEAST:
            return self.threshold, Fraction(1)
        return Fraction(0), self.threshold

    @property
    def upward_closed(self) -> bool:
        return self.interval()[1] == 1

    @property
    def downward_closed(self) -> bool:
        return self.interval()[0] == 0


# (threshold, comparison) for the positive and the negated form of each base.
_THRESHOLDS: Dict[Base, Tuple[Tuple[Fraction, Comparison], Tuple[Fraction, Comparison]]] = {
    Base.ALWAYS: (
        (Fraction(1), Comparison.EQUAL),
        (Fraction(0), Comparison.EQUAL),
    ),
    Base.GENERALLY: (
        (Fraction(9, 10), Comparison.AT_LEAST),
        (Fraction(1, 10), Comparison.AT_MOST),
    ),
    Base.MOSTLY: (
        (Fraction(1, 2), Comparison.AT_LEAST),
        (Fraction(1, 2), Comparison.AT_MOST),
    ),
    Base.FREQUENTLY: (
        (Fraction(1, 10), Comparison.AT_LEAST),
        (Fraction(9, 10), Comparison.AT_MOST),
    ),
    Base.SOMETIMES: (
        (Fraction(1, 1000), Comparison.AT_LEAST),
        (Fraction(999, 1000), Comparison.AT_MOST),
    ),
}


@dataclass(frozen=True)
class Qualifier:
    base: Base
    negated: bool = False
    modal: bool = False

    @classmethod
    def all(cls) -> List["Qualifier"]:
        return [
            cls(base, negated, modal)
            for modal in (False, True)
            for negated in (False, True)
            for base in Base
        ]

    @property
    def params(self) -> QualifierParams:
        return qualifier_params(self)

    @property
    def phrase(self) -> str:
        return canonical_phrase(self)

    @property
    def slug(self) -> str:
        return self.phrase.replace(" ", "-")

    def interpretation(self) -> str:
        """
        Percentage reading, e.g. "at least 90%".
        """
        p = qualifier_params(self)
        pct = f"{float(p.threshold * 100):g}%"
        if p.comparison is Comparison.EQUAL:
            return pct
        if p.comparison is Comparison.AT_LEAST:
            return f"at least {pct}"
        return f"at most {pct}"

    def __str__(self) -> str:
        return self.phrase


def canonical_phrase(q: Qualifier) -> str:
    if q.negated and q.base is Base.ALWAYS:
        phrase = "never"
    elif q.negated:
        phrase = f"{q.base.value} not"
    else:
        phrase = q.base.value
    return f"can {phrase}" if q.modal else phrase


_QUALIFIERS_BY_PHRASE: Dict[str, Qualifier] = {
    canonical_phrase(q): q for q in Qualifier.all()
}


def parse_qualifier(text: str) -> Qualifier:
    key = _normalize(text)
    try:
        return _QUALIFIERS_BY_PHRASE[key]
    except KeyError:
        nearest = difflib.get_close_matches(key, _QUALIFIERS_BY_PHRASE, n=1, cutoff=0)
        raise UnknownQualifierError(text, nearest[0] if nearest else "generally")


def qualifier_params(q: Qualifier) -> QualifierParams:
    threshold, comparison = _THRESHOLDS[q.base][1 if q.negated else 0]
    return QualifierParams(
        threshold,
        comparison,
        Modality.POSSIBLE if q.modal else Modality.ACTUAL,
    )


### Relations


class RelationGroup(Enum):
    SAMENESS = "sameness"
    NUMERICAL_COMPARISON = "numerical-comparison"
    CAUSALITY = "causality"
    SPATIO_TEMPORALITY = "spatio-temporality"


@dataclass(frozen=True)
class RelationType:
    name: str
    display: str
    group: RelationGroup
    is_head: bool = False
    description: str = ""

    def __str__(self) -> str:
        return self.display


def _rel(display: str, group: RelationGroup, is_head=False, description="") -> RelationType:
    return RelationType(
        display.replace(" ", "-"), display, group, is_head, description or display
    )


_S, _N, _C, _T = (
    RelationGroup.SAMENESS,
    RelationGroup.NUMERICAL_COMPARISON,
    RelationGroup.CAUSALITY,
    RelationGroup.SPATIO_TEMPORALITY,
)

# Grouped, each group head first.
RELATIONS: Tuple[RelationType, ...] = (
    _rel("is same as", _S, True),
    _rel("compares to", _N, True),
    _rel("has similar value as", _N),
    _rel("has same value as", _N),
    _rel("has different value from", _N),
    _rel("has smaller value than", _N),
    _rel("has larger value than", _N),
    _rel("has causal relationship with", _C, True),
    _rel("affects", _C),
    _rel("contributes to", _C),
    _rel("enables", _C),
    _rel("inhibits", _C),
    _rel("prevents", _C),
    _rel("increases", _C),
    _rel("decreases", _C),
    _rel("requires", _C),
    _rel("causes", _C),
    _rel("is necessary and sufficient for", _C),
    _rel("is caused by", _C),
    _rel("has spatio-temporal relationship with", _T, True),
    _rel("includes", _T, description="spatio-temporally or conceptually includes"),
    _rel("is included in", _T),
    _rel("co-occurs with", _T),
    _rel("is followed by", _T),
    _rel("follows", _T),
)

_RELATIONS_BY_KEY: Dict[str, RelationType] = {_normalize(r.display): r for r in RELATIONS}

GROUP_HEADS: Dict[RelationGroup, RelationType] = {r.group: r for r in RELATIONS if r.is_head}


def parse_relation(text: str) -> RelationType:
    try:
        return _RELATIONS_BY_KEY[_normalize(text)]
    except KeyError:
        raise UnknownRelationError(text)


def group_head(r: RelationType) -> RelationType:
    return GROUP_HEADS[r.group]


def relation_subsumes(general: RelationType, specific: RelationType) -> bool:
    return general == specific or (
        general.is_head and general.group == specific.group
    )


def sub_relations(head: RelationType) -> List[RelationType]:
    return [r for r in RELATIONS if r.group == head.group and not r.is_head]
