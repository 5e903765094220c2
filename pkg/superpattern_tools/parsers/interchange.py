import json
from typing import Any, Dict, Optional

from ..classes import Atomic, ClassExpr, Intersection, TermRef
from ..claims import ClaimDocument, ClaimMeta, SuperPatternInstance
from ..errors import SuperPatternError
from ..vocab import parse_qualifier, parse_relation
from . import SourceSyntaxError


class InterchangeError(SourceSyntaxError):
    ...


_KINDS = {dict: "an object", list: "an array", str: "a string", bool: "a boolean"}


def _expect(value: Any, kind: type, what: str) -> Any:
    if not isinstance(value, kind):
        raise InterchangeError(f"{what} must be {_KINDS[kind]}, not {type(value).__name__}")
    return value


def _optional_str(data: Dict[str, Any], key: str) -> Optional[str]:
    value = data.get(key)
    return None if value is None else _expect(value, str, repr(key))


def class_from_data(data: Optional[Dict[str, Any]], minted_namespace=None) -> Optional[ClassExpr]:
    if data is None:
        return None
    _expect(data, dict, "class expression")
    iri = _optional_str(data, "iri")
    term = TermRef.from_iri(iri, minted_namespace) if iri else None
    if "intersection" in data:
        parts = _expect(data["intersection"], list, "'intersection'")
        return Intersection(
            tuple(class_from_data(p, minted_namespace) for p in parts),
            term,
        )
    return Atomic(_expect(data["label"], str, "'label'"), term)


def claim_from_data(data: Dict[str, Any], minted_namespace=None) -> SuperPatternInstance:
    _expect(data, dict, "claim")
    qualifier = _optional_str(data, "qualifier")
    relation = _optional_str(data, "relation")
    return SuperPatternInstance(
        subject=class_from_data(data.get("subject"), minted_namespace),
        qualifier=parse_qualifier(qualifier) if qualifier else None,
        relation=parse_relation(relation) if relation else None,
        object=class_from_data(data.get("object"), minted_namespace),
        context=class_from_data(data.get("context"), minted_namespace),
        meta=ClaimMeta(
            claim_id=_expect(data["id"], str, "'id'"),
            aida=_optional_str(data, "aida"),
            source=_optional_str(data, "source"),
            expressible=_expect(data.get("expressible", True), bool, "'expressible'"),
        ),
    )


def parse_claims_json(
    src: str, source_path: str = "<string>", minted_namespace: Optional[str] = None
) -> ClaimDocument:
    try:
        data = json.loads(src)
    except json.JSONDecodeError as e:
        raise InterchangeError(e.msg, e.lineno, e.colno)

    _expect(data, dict, "top level")
    claims = []
    for n, item in enumerate(_expect(data.get("claims", []), list, "'claims'"), start=1):
        try:
            claims.append(claim_from_data(item, minted_namespace))
        except KeyError as e:
            raise InterchangeError(f"claim #{n} lacks field {e.args[0]!r}")
        except SuperPatternError as e:
            raise InterchangeError(f"claim #{n}: {e}")
    return ClaimDocument(claims, source_path)
