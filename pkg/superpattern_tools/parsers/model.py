import logging

from lark import Lark
from lark.exceptions import UnexpectedInput, VisitError

from ..visitors.model import ModelTransformer
from ..worlds import FiniteModel, InvalidModelError, validate_model
from . import SourceSyntaxError, from_lark_error, load_parser, normalize_source

logger = logging.getLogger(__name__)


class ModelSyntaxError(SourceSyntaxError):
    ...


_parser: Lark = load_parser("model.lark")


def parse_model(src: str, reflexive: bool = True) -> FiniteModel:
    """
    Parse a model file and validate the result.

    `reflexive` is the default accessibility setting; a REFLEXIVE line in the file
    overrides it.
    """
    try:
        tree = _parser.parse(normalize_source(src))
    except UnexpectedInput as e:
        raise from_lark_error(ModelSyntaxError, e)

    try:
        model = ModelTransformer(ModelSyntaxError, reflexive).transform(tree)
    except VisitError as e:
        raise e.orig_exc

    if violations := validate_model(model):
        raise InvalidModelError(violations)

    logger.debug(
        "parsed model with %d worlds and %d individuals",
        len(model.worlds),
        len(model.domain),
    )
    return model


def parse_model_file(fname: str, reflexive: bool = True) -> FiniteModel:
    with open(fname, "r", encoding="utf-8") as fl:
        return parse_model(fl.read(), reflexive)
