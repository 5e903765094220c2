"""
Class expressions filling the context, subject and object slots.
"""

import re
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union
from urllib.parse import urlparse

from .errors import SuperPatternError


class ClassExprError(SuperPatternError):
    ...


class TermSource(Enum):
    WIKIDATA = "wikidata"
    OBO = "obo"
    EVS = "evs"
    LOV = "lov"
    MINTED = "minted"
    OTHER = "other"


KNOWN_NAMESPACES = {
    TermSource.WIKIDATA: "http://www.wikidata.org/entity/",
    TermSource.OBO: "http://purl.obolibrary.org/obo/",
    TermSource.EVS: "http://ncicb.nci.nih.gov/xml/owl/EVS/Thesaurus.owl",
}


def is_absolute_iri(iri: str) -> bool:
    parsed = urlparse(iri)
    return bool(parsed.scheme) and bool(parsed.netloc or parsed.path) and not re.search(
        r"[\s<>\"{}|\\^`]", iri
    )


def slugify(label: str) -> str:
    """
    Canonical kebab-case name of a label. Class extensions in models and predicate
    names in formulas are keyed by this.
    """
    return re.sub(r"[^\w]+", "-", label.strip().lower()).strip("-")


@dataclass(frozen=True)
class TermRef:
    iri: str
    source: TermSource = TermSource.OTHER

    def __post_init__(self):
        if not is_absolute_iri(self.iri):
            raise ClassExprError(f"Not an absolute IRI: {self.iri!r}")

    @classmethod
    def from_iri(cls, iri: str, minted_namespace: Optional[str] = None) -> "TermRef":
        if minted_namespace and iri.startswith(minted_namespace):
            return cls(iri, TermSource.MINTED)
        for source, ns in KNOWN_NAMESPACES.items():
            if iri.startswith(ns):
                return cls(iri, source)
        return cls(iri, TermSource.OTHER)

    @classmethod
    def minted(cls, c: "ClassExpr", minted_namespace: str) -> "TermRef":
        return cls(minted_namespace + c.canonical_name, TermSource.MINTED)

    @property
    def is_existing(self) -> bool:
        """
        True for identifiers taken from an existing ontology (not minted locally).
        """
        return self.source is not TermSource.MINTED


@dataclass(frozen=True)
class Atomic:
    label: str
    term: Optional[TermRef] = None

    def __post_init__(self):
        if not self.label or not self.label.strip():
            raise ClassExprError("Class label must be non-empty")

    @property
    def canonical_name(self) -> str:
        return slugify(self.label)

    def display(self) -> str:
        return self.label

    def __str__(self) -> str:
        return self.label


@dataclass(frozen=True)
class Intersection:
    parts: Tuple["ClassExpr", ...]
    term: Optional[TermRef] = None

    def __post_init__(self):
        if len(self.parts) < 2:
            raise ClassExprError("An intersection needs at least two parts")
        for part in self.parts:
            if not isinstance(part, (Atomic, Intersection)):
                raise ClassExprError(f"Unsupported class connective: {part!r}")

    @property
    def canonical_name(self) -> str:
        return "_and_".join(sorted(p.canonical_name for p in atoms(self)))

    def display(self) -> str:
        return " together with ".join(p.display() for p in self.parts)

    def __str__(self) -> str:
        return " + ".join(map(str, self.parts))


ClassExpr = Union[Atomic, Intersection]


def atoms(c: ClassExpr) -> Tuple[Atomic, ...]:
    if isinstance(c, Atomic):
        return (c,)
    return tuple(a for part in c.parts for a in atoms(part))


def canonical_key(c: Optional[ClassExpr]) -> Optional[frozenset]:
    """
    Key under which two class expressions are considered the same class: the set of
    atomic slugs, so nested intersections flatten and part order is irrelevant.
    """
    if c is None:
        return None
    return frozenset(a.canonical_name for a in atoms(c))


def canonicalize(c: ClassExpr) -> ClassExpr:
    """
    Flatten nested intersections and sort parts by slug. Terms are kept.
    """
    if isinstance(c, Atomic):
        return c
    seen = {}
    for a in atoms(c):
        seen.setdefault(a.canonical_name, a)
    parts = tuple(seen[k] for k in sorted(seen))
    if len(parts) == 1:
        return parts[0]
    return Intersection(parts, c.term)
