from typing import Dict, List, Optional

from lark.lexer import Token
from lark.visitors import Transformer

from ..classes import Atomic, ClassExprError, Intersection, TermRef
from ..claims import ClaimMeta, SuperPatternInstance
from ..errors import SuperPatternError
from ..vocab import parse_qualifier, parse_relation
from .utils import Located, position, text


TRUE_WORDS = {"yes", "true", "1"}
FALSE_WORDS = {"no", "false", "0"}
_BLANK = object()


class ClaimTransformer(Transformer):
    """
    Turns the flat line sequence of a claim file into claim instances.

    Blocks are maximal runs of field lines; blank lines separate them. Errors are
    raised as (message, line, column) triples through `self.error`, which the parser
    wrapper maps onto its public exception types.
    """

    def __init__(self, error, vocabulary_error, minted_namespace: Optional[str] = None):
        super().__init__()
        self.error = error
        self.vocabulary_error = vocabulary_error
        self.minted_namespace = minted_namespace

    def start(self, lines) -> List[SuperPatternInstance]:
        blocks: List[List[Located]] = [[]]
        for line in lines:
            if line is _BLANK:
                if blocks[-1]:
                    blocks.append([])
            else:
                blocks[-1].append(line)
        if not blocks[-1]:
            blocks.pop()

        return [self._instance(block, n) for n, block in enumerate(blocks, start=1)]

    def _instance(self, block: List[Located], n: int) -> SuperPatternInstance:
        fields: Dict[str, Located] = {}
        for f in block:
            if f.key in fields:
                raise self.error(
                    f"duplicate {f.key.upper()} line in claim block", f.line, f.column
                )
            fields[f.key] = f

        expressible = True
        if "expressible" in fields:
            f = fields["expressible"]
            word = f.value.lower()
            if word not in TRUE_WORDS | FALSE_WORDS:
                raise self.error(f"EXPRESSIBLE must be yes or no, not {f.value!r}", f.line, f.column)
            expressible = word in TRUE_WORDS

        first = block[0]
        if expressible:
            for slot in ("subject", "qualifier", "relation", "object"):
                if slot not in fields:
                    raise self.error(
                        f"claim block is missing the mandatory {slot.upper()} line",
                        first.line,
                        first.column,
                        [slot.upper()],
                    )

        def value(key):
            return fields[key].value if key in fields else None

        def vocabulary(key, parse):
            if key not in fields:
                return None
            f = fields[key]
            try:
                return parse(f.value)
            except SuperPatternError as e:
                raise self.vocabulary_error(e, f.line, f.column)

        qualifier = vocabulary("qualifier", parse_qualifier)
        relation = vocabulary("relation", parse_relation)

        meta = ClaimMeta(
            claim_id=value("claim_id") or f"c{n}",
            aida=value("aida"),
            source=value("source"),
            expressible=expressible,
        )
        return SuperPatternInstance(
            subject=value("subject"),
            qualifier=qualifier,
            relation=relation,
            object=value("object"),
            meta=meta,
            context=value("context"),
        )

    ### Lines

    def blank(self, _):
        return _BLANK

    def _text_field(key):
        def field(self, children):
            (tok,) = children
            return Located(key, text(tok), *position(tok))

        return field

    claim_id = _text_field("claim_id")
    qualifier = _text_field("qualifier")
    relation = _text_field("relation")
    aida = _text_field("aida")
    source = _text_field("source")
    expressible = _text_field("expressible")

    def _class_field(key):
        def field(self, children):
            (located,) = children
            return Located(key, located.value, located.line, located.column)

        return field

    context = _class_field("context")
    subject = _class_field("subject")
    object = _class_field("object")

    del _text_field, _class_field

    ### Class expressions

    def _term(self, iri: Token) -> TermRef:
        try:
            return TermRef.from_iri(str(iri)[1:-1], self.minted_namespace)
        except ClassExprError as e:
            raise self.error(str(e), *position(iri))

    def class_term(self, children) -> Located:
        label, iri = children[0], children[1] if len(children) > 1 else None
        term = self._term(iri) if iri is not None else None
        return Located("class", Atomic(text(label), term), *position(label))

    def intersection(self, children) -> Located:
        first = children[0]
        return Located(
            "class",
            Intersection(tuple(c.value for c in children)),
            first.line,
            first.column,
        )

    def bound_intersection(self, children) -> Located:
        *parts, iri = children
        first = parts[0]
        return Located(
            "class",
            Intersection(tuple(c.value for c in parts), self._term(iri)),
            first.line,
            first.column,
        )
