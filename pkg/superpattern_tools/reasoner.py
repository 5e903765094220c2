"""
Single-premise entailment and contradiction between super-pattern instances.

Every rule is sound for the ratio semantics of `worlds.evaluate` under the
assumptions it records in its verdict.
"""

import itertools
import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, List, Tuple

from .classes import canonical_key
from .claims import SuperPatternInstance, check_unique_ids
from .vocab import Qualifier, qualifier_params, relation_subsumes

logger = logging.getLogger(__name__)


class Verdict(Enum):
    ENTAILS = "entails"
    CONTRADICTS = "contradicts"
    INDEPENDENT = "independent"


class Assumption(Enum):
    NON_EMPTY_CONDITION = "non-empty-condition"
    REFLEXIVE_ACCESSIBILITY = "reflexive-accessibility"
    TAXONOMY_CLOSED = "taxonomy-closed"


@dataclass(frozen=True)
class ReasoningVerdict:
    kind: Verdict
    assumptions: FrozenSet[Assumption] = frozenset()
    rule_trace: Tuple[str, ...] = field(default_factory=tuple)

    def __str__(self) -> str:
        text = self.kind.value
        if self.rule_trace:
            text += f" [{', '.join(self.rule_trace)}]"
        if self.assumptions:
            text += " assuming " + ", ".join(sorted(a.value for a in self.assumptions))
        return text


INDEPENDENT = ReasoningVerdict(Verdict.INDEPENDENT)


def _contains(outer, inner) -> bool:
    return outer[0] <= inner[0] and inner[1] <= outer[1]


def qualifier_entails(a: Qualifier, b: Qualifier, cross_modality: bool = False) -> bool:
    """
    True iff every ratio satisfying a also satisfies b. Across modalities this only
    holds for plain-positive => can-positive and can-negative => plain-negative,
    which callers may only use under reflexive accessibility.
    """
    pa, pb = qualifier_params(a), qualifier_params(b)
    if not _contains(pb.interval(), pa.interval()):
        return False
    if a.modal == b.modal:
        return True
    if not cross_modality:
        return False
    if not a.modal:
        return pa.upward_closed and pb.upward_closed
    return pa.downward_closed and pb.downward_closed


def qualifiers_conflict(a: Qualifier, b: Qualifier) -> bool:
    (lo_a, hi_a), (lo_b, hi_b) = qualifier_params(a).interval(), qualifier_params(b).interval()
    return max(lo_a, lo_b) > min(hi_a, hi_b)


def _same_classes(a: SuperPatternInstance, b: SuperPatternInstance) -> bool:
    return (
        canonical_key(a.context) == canonical_key(b.context)
        and canonical_key(a.subject) == canonical_key(b.subject)
        and canonical_key(a.object) == canonical_key(b.object)
    )


def check_pair(a: SuperPatternInstance, b: SuperPatternInstance) -> ReasoningVerdict:
    """
    Does a entail b, contradict b, or neither.
    """
    a.require_expressible()
    b.require_expressible()

    if not _same_classes(a, b):
        return INDEPENDENT

    if a.relation == b.relation:
        if a.qualifier.modal == b.qualifier.modal and qualifier_entails(a.qualifier, b.qualifier):
            return ReasoningVerdict(Verdict.ENTAILS, rule_trace=("qualifier-weakening",))

        if qualifier_entails(a.qualifier, b.qualifier, cross_modality=True):
            return ReasoningVerdict(
                Verdict.ENTAILS,
                frozenset({Assumption.REFLEXIVE_ACCESSIBILITY}),
                ("modal-weakening",),
            )

        if a.qualifier.modal == b.qualifier.modal and qualifiers_conflict(a.qualifier, b.qualifier):
            return ReasoningVerdict(
                Verdict.CONTRADICTS,
                frozenset({Assumption.NON_EMPTY_CONDITION}),
                ("disjoint-ratio-ranges",),
            )

        return INDEPENDENT

    if a.qualifier == b.qualifier:
        params = qualifier_params(a.qualifier)
        # Growing the relation can only add events, shrinking it can only remove them.
        if params.upward_closed and relation_subsumes(b.relation, a.relation):
            return ReasoningVerdict(
                Verdict.ENTAILS,
                frozenset({Assumption.TAXONOMY_CLOSED}),
                ("relation-generalization",),
            )
        if params.downward_closed and relation_subsumes(a.relation, b.relation):
            return ReasoningVerdict(
                Verdict.ENTAILS,
                frozenset({Assumption.TAXONOMY_CLOSED}),
                ("relation-specialization",),
            )

    return INDEPENDENT


@dataclass(frozen=True)
class Finding:
    premise: str
    conclusion: str
    verdict: ReasoningVerdict

    def __str__(self) -> str:
        return f"{self.premise} {self.conclusion}: {self.verdict}"


def corpus_consistency(claims: List[SuperPatternInstance]) -> List[Finding]:
    """
    All non-independent verdicts over unordered pairs of expressible claims, ordered by
    their sorted id pair. Entailments are reported in their direction (premise first).
    """
    check_unique_ids(claims)
    ordered = sorted((c for c in claims if c.expressible), key=lambda c: c.claim_id)

    findings = []
    for a, b in itertools.combinations(ordered, 2):
        verdict = check_pair(a, b)
        if verdict.kind is Verdict.INDEPENDENT:
            reverse = check_pair(b, a)
            if reverse.kind is Verdict.ENTAILS:
                findings.append(Finding(b.claim_id, a.claim_id, reverse))
            continue
        findings.append(Finding(a.claim_id, b.claim_id, verdict))

    logger.info("checked %d claims, %d findings", len(ordered), len(findings))
    return findings
