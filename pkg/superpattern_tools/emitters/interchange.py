"""
Structured interchange form of claim documents (JSON). Field names are the slot
names of the claim DSL.
"""

import json
from typing import Any, Dict, Optional

from ..classes import Atomic, ClassExpr, canonicalize
from ..claims import ClaimDocument, SuperPatternInstance


def class_to_data(c: Optional[ClassExpr]) -> Optional[Dict[str, Any]]:
    if c is None:
        return None
    c = canonicalize(c)
    data: Dict[str, Any]
    if isinstance(c, Atomic):
        data = {"label": c.label}
    else:
        data = {"intersection": [class_to_data(p) for p in c.parts]}
    if c.term is not None:
        data["iri"] = c.term.iri
    return data


def claim_to_data(inst: SuperPatternInstance) -> Dict[str, Any]:
    return {
        "id": inst.claim_id,
        "expressible": inst.expressible,
        "context": class_to_data(inst.context),
        "subject": class_to_data(inst.subject),
        "qualifier": inst.qualifier.phrase if inst.qualifier else None,
        "relation": inst.relation.display if inst.relation else None,
        "object": class_to_data(inst.object),
        "aida": inst.meta.aida,
        "source": inst.meta.source,
    }


def emit_claims_json(doc: ClaimDocument) -> str:
    return json.dumps(
        {"claims": [claim_to_data(c) for c in doc.claims]},
        indent=2,
        ensure_ascii=False,
    )
