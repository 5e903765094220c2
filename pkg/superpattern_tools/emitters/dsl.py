from typing import List

from ..classes import Atomic, ClassExpr, canonicalize
from ..claims import ClaimDocument, SuperPatternInstance


def emit_class(c: ClassExpr) -> str:
    c = canonicalize(c)
    if isinstance(c, Atomic):
        return c.label + (f" <{c.term.iri}>" if c.term else "")
    parts = " + ".join(emit_class(p) for p in c.parts)
    if c.term is not None:
        return f"[{parts}] <{c.term.iri}>"
    return parts


def _one_line(value: str) -> str:
    return " ".join(value.split())


def emit_claim(inst: SuperPatternInstance) -> str:
    lines: List[str] = [f"ID: {inst.claim_id}"]
    if not inst.expressible:
        lines.append("EXPRESSIBLE: no")
    if inst.context is not None:
        lines.append(f"CONTEXT: {emit_class(inst.context)}")
    if inst.subject is not None:
        lines.append(f"SUBJECT: {emit_class(inst.subject)}")
    if inst.qualifier is not None:
        lines.append(f"QUALIFIER: {inst.qualifier.phrase}")
    if inst.relation is not None:
        lines.append(f"RELATION: {inst.relation.display}")
    if inst.object is not None:
        lines.append(f"OBJECT: {emit_class(inst.object)}")
    if inst.meta.aida:
        lines.append(f"AIDA: {_one_line(inst.meta.aida)}")
    if inst.meta.source:
        lines.append(f"SOURCE: {_one_line(inst.meta.source)}")
    return "\n".join(lines) + "\n"


def emit_claims(doc: ClaimDocument) -> str:
    """
    Canonical claim-file text; intersection parts are emitted in sorted order.
    """
    return "\n".join(emit_claim(c) for c in doc.claims)
