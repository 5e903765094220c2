import logging
from typing import Optional

from lark import Lark
from lark.exceptions import UnexpectedInput, VisitError

from ..claims import ClaimDocument
from ..errors import SuperPatternError
from ..visitors.claims import ClaimTransformer
from . import SourceSyntaxError, from_lark_error, load_parser, normalize_source

logger = logging.getLogger(__name__)


class ClaimSyntaxError(SourceSyntaxError):
    ...


class VocabularyError(SourceSyntaxError):
    def __init__(self, cause: SuperPatternError, line: int, column: int):
        self.cause = cause
        super().__init__(str(cause), line, column)


_parser: Lark = load_parser("claims.lark")


def parse_claims(
    src: str,
    source_path: str = "<string>",
    minted_namespace: Optional[str] = None,
) -> ClaimDocument:
    """
    Parse the text of a claim file into a document of super-pattern instances.
    """
    try:
        tree = _parser.parse(normalize_source(src))
    except UnexpectedInput as e:
        raise from_lark_error(ClaimSyntaxError, e)

    transformer = ClaimTransformer(ClaimSyntaxError, VocabularyError, minted_namespace)
    try:
        claims = transformer.transform(tree)
    except VisitError as e:
        raise e.orig_exc

    logger.debug("parsed %d claims from %s", len(claims), source_path)
    return ClaimDocument(claims, source_path)


def parse_claims_file(fname: str, minted_namespace: Optional[str] = None) -> ClaimDocument:
    with open(fname, "r", encoding="utf-8") as fl:
        return parse_claims(fl.read(), fname, minted_namespace)
