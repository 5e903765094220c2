"""
Higher-order-logic reading of an instantiated super-pattern:

    P( m( ∃z( o(z) ∧ i(z,x) ∧ r(y,z) ) ) | s(y) ∧ c(x) ∧ i(y,x) ) ⪋ q

and the English gloss sentence of the same instance.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from .classes import Atomic, ClassExpr
from .claims import SuperPatternInstance
from .errors import SuperPatternError
from .vocab import Comparison, Qualifier, qualifier_params

CONTEXT_OF = "i"
X, Y, Z = "x", "y", "z"


@dataclass(frozen=True)
class UnaryAtom:
    predicate: str
    arg: str


@dataclass(frozen=True)
class BinaryAtom:
    predicate: str
    arg1: str
    arg2: str


@dataclass(frozen=True)
class Conj:
    parts: Tuple["Formula", ...]


@dataclass(frozen=True)
class Exists:
    variable: str
    body: "Formula"


@dataclass(frozen=True)
class Possibly:
    body: "Formula"


@dataclass(frozen=True)
class CondProbCmp:
    event: "Formula"
    condition: "Formula"
    comparison: Comparison
    threshold: Fraction


# Only produced by implication_form.
@dataclass(frozen=True)
class Forall:
    variables: Tuple[str, ...]
    body: "Formula"


@dataclass(frozen=True)
class Implies:
    antecedent: "Formula"
    consequent: "Formula"


Formula = Union[UnaryAtom, BinaryAtom, Conj, Exists, Possibly, CondProbCmp, Forall, Implies]


def _build(
    qualifier: Qualifier,
    c: Optional[str],
    s: str,
    o: str,
    r: str,
) -> CondProbCmp:
    params = qualifier_params(qualifier)

    if c is None:
        event: Formula = Exists(Z, Conj((UnaryAtom(o, Z), BinaryAtom(r, Y, Z))))
        condition: Formula = UnaryAtom(s, Y)
    else:
        event = Exists(
            Z,
            Conj((UnaryAtom(o, Z), BinaryAtom(CONTEXT_OF, Z, X), BinaryAtom(r, Y, Z))),
        )
        condition = Conj(
            (UnaryAtom(s, Y), UnaryAtom(c, X), BinaryAtom(CONTEXT_OF, Y, X))
        )

    if qualifier.modal:
        event = Possibly(event)

    return CondProbCmp(event, condition, params.comparison, params.threshold)


def build_formula(inst: SuperPatternInstance) -> CondProbCmp:
    inst.require_expressible()
    return _build(
        inst.qualifier,
        inst.context.canonical_name if inst.context is not None else None,
        inst.subject.canonical_name,
        inst.object.canonical_name,
        inst.relation.name,
    )


def build_template(qualifier: Qualifier, with_context: bool = True) -> CondProbCmp:
    """
    Schematic formula with the placeholder predicates c, s, o and r.
    """
    return _build(qualifier, "c" if with_context else None, "s", "o", "r")


def implication_form(f: CondProbCmp) -> Forall:
    """
    Derived reading of a non-modal formula with probability 1: every condition tuple
    satisfies the event. Quantification is universal over the condition's free
    variables.
    """
    if (
        f.comparison is not Comparison.EQUAL
        or f.threshold != 1
        or isinstance(f.event, Possibly)
    ):
        raise SuperPatternError(
            "The implication form only exists for the non-modal 'always' qualifier"
        )
    variables = (X, Y) if isinstance(f.condition, Conj) else (Y,)
    return Forall(variables, Implies(f.condition, f.event))


### Gloss


def _pluralize(text: str) -> str:
    if text.endswith(("s", "x", "z", "ch", "sh")):
        return text + "es"
    if len(text) > 1 and text.endswith("y") and text[-2] not in "aeiou":
        return text[:-1] + "ies"
    return text + "s"


def _plural_class(c: ClassExpr) -> str:
    if isinstance(c, Atomic):
        return _pluralize(c.label)
    return " together with ".join(_plural_class(p) for p in c.parts)


def render_gloss(inst: SuperPatternInstance) -> str:
    inst.require_expressible()
    body = (
        f"things of type {inst.subject.display()} {inst.qualifier.phrase} "
        f"have a relation of type {inst.relation.display} "
        f"to things of type {inst.object.display()}"
    )
    if inst.context is None:
        return body[0].upper() + body[1:] + "."
    return (
        f"In the context of all {_plural_class(inst.context)}, "
        f"{body} that are in the same context."
    )
