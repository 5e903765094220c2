from collections import defaultdict
from typing import Dict, List, Set, Tuple

from lark.visitors import Transformer

from ..errors import SuperPatternError
from ..vocab import parse_relation
from ..worlds import FiniteModel
from .claims import FALSE_WORDS, TRUE_WORDS
from .utils import Located, pairs, position, text


class ModelTransformer(Transformer):
    """
    Collects model statements into a FiniteModel. Statements may come in any order;
    WORLDS and INDIVIDUALS lines accumulate.
    """

    def __init__(self, error, reflexive: bool = True):
        super().__init__()
        self.error = error
        self.default_reflexive = reflexive

    def start(self, statements: List[Located]) -> FiniteModel:
        worlds: Set[str] = set()
        domain: Set[str] = set()
        actual = None
        reflexive = self.default_reflexive
        accessibility = None
        class_ext: Dict[Tuple[str, str], Set[str]] = defaultdict(set)
        rel_ext: Dict[Tuple[str, str], Set[Tuple[str, str]]] = defaultdict(set)
        context_of: Dict[str, Set[Tuple[str, str]]] = defaultdict(set)

        for st in statements:
            if st.key == "worlds":
                worlds.update(st.value)
            elif st.key == "individuals":
                domain.update(st.value)
            elif st.key == "actual":
                if actual is not None:
                    raise self.error("ACTUAL given more than once", st.line, st.column)
                actual = st.value
            elif st.key == "reflexive":
                reflexive = st.value
            elif st.key == "accessibility":
                accessibility = (accessibility or set()) | set(st.value)
            elif st.key == "class":
                world, label, members = st.value
                class_ext[(world, label)].update(members)
            elif st.key == "rel":
                world, rel, ext = st.value
                rel_ext[(world, rel)].update(ext)
            elif st.key == "context":
                world, ext = st.value
                context_of[world].update(ext)

        if actual is None:
            raise self.error("model has no ACTUAL line", 1, 1, ["ACTUAL"])

        if accessibility is None:
            accessibility = {(w, w) for w in worlds} if reflexive else set()

        return FiniteModel(
            worlds=frozenset(worlds),
            actual=actual,
            domain=frozenset(domain),
            accessibility=frozenset(accessibility),
            class_ext=dict(class_ext),
            rel_ext=dict(rel_ext),
            context_of=dict(context_of),
            reflexive=reflexive,
        )

    def _located(self, key, value, tok) -> Located:
        return Located(key, value, *position(tok))

    def worlds(self, names):
        return Located("worlds", [str(n) for n in names], 0, 0)

    def individuals(self, names):
        return Located("individuals", [str(n) for n in names], 0, 0)

    def actual(self, children):
        (name,) = children
        return self._located("actual", str(name), name)

    def reflexive(self, children):
        (word,) = children
        if str(word).lower() not in TRUE_WORDS | FALSE_WORDS:
            raise self.error(f"REFLEXIVE must be yes or no, not {str(word)!r}", *position(word))
        return self._located("reflexive", str(word).lower() in TRUE_WORDS, word)

    def accessibility(self, children):
        return Located("accessibility", pairs(children), 0, 0)

    def class_line(self, children):
        world, label, *members = children
        return self._located(
            "class", (str(world), text(label), [str(m) for m in members]), world
        )

    def rel_line(self, children):
        world, label, *ext = children
        try:
            relation = parse_relation(text(label))
        except SuperPatternError as e:
            raise self.error(str(e), *position(label))
        return self._located("rel", (str(world), relation.name, pairs(ext)), world)

    def context_line(self, children):
        world, *ext = children
        return self._located("context", (str(world), pairs(ext)), world)

    def pair(self, children):
        a, b = children
        return str(a), str(b)
