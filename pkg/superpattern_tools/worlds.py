"""
Finite possible-world models and exact evaluation of super-pattern instances on them.

The conditional probability of the logic form is read as a ratio over the finite set
of condition tuples (x, y) at the actual world. The modal operator reads the event
side at the worlds accessible from the actual world; the condition side is always
read at the actual world.
"""

import dataclasses
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Tuple

from .classes import Atomic, ClassExpr, slugify
from .claims import SuperPatternInstance
from .errors import SuperPatternError
from .vocab import GROUP_HEADS, Modality, qualifier_params, sub_relations

logger = logging.getLogger(__name__)

Pair = Tuple[str, str]


@dataclass(frozen=True)
class Violation:
    code: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}: {self.message}"


class InvalidModelError(SuperPatternError):
    def __init__(self, violations: List[Violation]):
        self.violations = violations
        super().__init__(
            "Invalid model:\n" + "\n".join(f"  {v}" for v in violations)
        )


@dataclass(frozen=True)
class FiniteModel:
    """
    Constant-domain Kripke model. Class extensions are keyed by (world, class slug),
    relation extensions by (world, relation name) and context-of pairs (a, b) read
    "a is in the context of b".
    """

    worlds: FrozenSet[str]
    actual: str
    domain: FrozenSet[str]
    accessibility: FrozenSet[Pair] = frozenset()
    class_ext: Mapping[Pair, FrozenSet[str]] = field(default_factory=dict)
    rel_ext: Mapping[Pair, FrozenSet[Pair]] = field(default_factory=dict)
    context_of: Mapping[str, FrozenSet[Pair]] = field(default_factory=dict)
    reflexive: bool = True

    def __post_init__(self):
        def set_(name, value):
            object.__setattr__(self, name, value)

        set_("worlds", frozenset(self.worlds))
        set_("domain", frozenset(self.domain))
        set_("accessibility", frozenset(tuple(p) for p in self.accessibility))
        set_(
            "class_ext",
            {(w, slugify(label)): frozenset(ext) for (w, label), ext in self.class_ext.items()},
        )
        set_(
            "rel_ext",
            {key: frozenset(tuple(p) for p in ext) for key, ext in self.rel_ext.items()},
        )
        set_(
            "context_of",
            {w: frozenset(tuple(p) for p in ext) for w, ext in self.context_of.items()},
        )

    def successors(self, w: str) -> List[str]:
        return sorted(v for (u, v) in self.accessibility if u == w)

    def with_reflexive_closure(self) -> "FiniteModel":
        return dataclasses.replace(
            self, accessibility=self.accessibility | {(w, w) for w in self.worlds}
        )


class Status(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class EvaluationResult:
    status: Status
    ratio: Optional[Fraction]
    condition_count: int
    event_count: int

    def __str__(self) -> str:
        if self.ratio is None:
            return f"{self.status.value}, empty condition set"
        return f"{self.status.value}, ratio {self.ratio.numerator}/{self.ratio.denominator}"


def validate_model(m: FiniteModel) -> List[Violation]:
    violations = []

    def check_world(w: str, where: str):
        if w not in m.worlds:
            violations.append(Violation("unknown-world", f"{where} mentions unknown world {w!r}"))

    def check_individuals(ids: Iterable[str], where: str):
        for a in sorted(set(ids) - m.domain):
            violations.append(
                Violation("unknown-individual", f"{where} mentions unknown individual {a!r}")
            )

    if not m.worlds:
        violations.append(Violation("no-worlds", "model has no worlds"))
    if m.actual not in m.worlds:
        violations.append(Violation("unknown-actual-world", f"actual world {m.actual!r} is not a world"))

    for u, v in sorted(m.accessibility):
        check_world(u, "accessibility")
        check_world(v, "accessibility")

    if m.reflexive:
        for w in sorted(m.worlds):
            if (w, w) not in m.accessibility:
                violations.append(
                    Violation("non-reflexive", f"accessibility lacks ({w}, {w})")
                )

    for (w, label), ext in sorted(m.class_ext.items()):
        check_world(w, f"class {label!r}")
        check_individuals(ext, f"class {label!r} at {w}")

    for (w, rel), ext in sorted(m.rel_ext.items()):
        check_world(w, f"relation {rel!r}")
        check_individuals((a for pair in ext for a in pair), f"relation {rel!r} at {w}")

    for w, ext in sorted(m.context_of.items()):
        check_world(w, "context-of")
        check_individuals((a for pair in ext for a in pair), f"context-of at {w}")

    return violations


def class_extension(m: FiniteModel, w: str, c: ClassExpr) -> FrozenSet[str]:
    if isinstance(c, Atomic):
        return m.class_ext.get((w, c.canonical_name), frozenset())
    result = class_extension(m, w, c.parts[0])
    for part in c.parts[1:]:
        result = result & class_extension(m, w, part)
    return result


def _condition_tuples(m: FiniteModel, inst: SuperPatternInstance) -> List[Tuple[Optional[str], str]]:
    subjects = class_extension(m, m.actual, inst.subject)
    if inst.context is None:
        return [(None, y) for y in sorted(subjects)]

    contexts = class_extension(m, m.actual, inst.context)
    return sorted(
        (x, y)
        for (y, x) in m.context_of.get(m.actual, frozenset())
        if y in subjects and x in contexts
    )


def _event_holds_at(
    m: FiniteModel, w: str, inst: SuperPatternInstance, x: Optional[str], y: str
) -> bool:
    objects = class_extension(m, w, inst.object)
    related = m.rel_ext.get((w, inst.relation.name), frozenset())
    context_of = m.context_of.get(w, frozenset())
    return any(
        a == y and z in objects and (x is None or (z, x) in context_of)
        for (a, z) in related
    )


def evaluate(m: FiniteModel, inst: SuperPatternInstance) -> EvaluationResult:
    inst.require_expressible()
    if violations := validate_model(m):
        raise InvalidModelError(violations)

    params = qualifier_params(inst.qualifier)
    event_worlds = (
        m.successors(m.actual) if params.modality is Modality.POSSIBLE else [m.actual]
    )

    condition = _condition_tuples(m, inst)
    events = sum(
        1
        for (x, y) in condition
        if any(_event_holds_at(m, w, inst, x, y) for w in event_worlds)
    )

    logger.debug(
        "claim %s: %d of %d condition tuples satisfy the event",
        inst.claim_id,
        events,
        len(condition),
    )

    if not condition:
        return EvaluationResult(Status.INDETERMINATE, None, 0, 0)

    ratio = Fraction(events, len(condition))
    status = Status.HOLDS if params.satisfied_by(ratio) else Status.FAILS
    return EvaluationResult(status, ratio, len(condition), events)


### Relation taxonomy


def close_relations(m: FiniteModel) -> FiniteModel:
    """
    Copy of the model in which every group head's extension includes the extensions
    of its sub-relations, at every world.
    """
    rel_ext: Dict[Pair, FrozenSet[Pair]] = dict(m.rel_ext)
    for w in m.worlds:
        for head in GROUP_HEADS.values():
            closed = set(rel_ext.get((w, head.name), frozenset()))
            for sub in sub_relations(head):
                closed |= rel_ext.get((w, sub.name), frozenset())
            if closed:
                rel_ext[(w, head.name)] = frozenset(closed)
    return dataclasses.replace(m, rel_ext=rel_ext)


def is_taxonomy_closed(m: FiniteModel) -> bool:
    closed = close_relations(m).rel_ext
    return all(
        closed[key] == m.rel_ext.get(key, frozenset()) for key in closed
    )
