from dataclasses import dataclass, field
from typing import Iterator, List, Optional

from .classes import ClassExpr
from .errors import NotExpressibleError, SuperPatternError
from .vocab import Qualifier, RelationType


class DuplicateClaimError(SuperPatternError):
    ...


SLOTS = ("context", "subject", "qualifier", "relation", "object")
CLASS_SLOTS = ("context", "subject", "object")


@dataclass(frozen=True)
class ClaimMeta:
    claim_id: str
    aida: Optional[str] = None
    source: Optional[str] = None
    expressible: bool = True


@dataclass(frozen=True)
class SuperPatternInstance:
    """
    One formalized claim. Only the context slot is optional; inexpressible claims
    (too simple for the pattern) are kept with expressible=False and may leave any
    slot empty so that corpus totals can still count them.
    """

    subject: Optional[ClassExpr]
    qualifier: Optional[Qualifier]
    relation: Optional[RelationType]
    object: Optional[ClassExpr]
    meta: ClaimMeta
    context: Optional[ClassExpr] = None

    def __post_init__(self):
        if not self.meta.expressible:
            return
        missing = [
            slot
            for slot in ("subject", "qualifier", "relation", "object")
            if getattr(self, slot) is None
        ]
        if missing:
            raise SuperPatternError(
                f"Claim {self.meta.claim_id!r} is missing mandatory slot(s): "
                + ", ".join(missing)
            )

    @property
    def claim_id(self) -> str:
        return self.meta.claim_id

    @property
    def expressible(self) -> bool:
        return self.meta.expressible

    def require_expressible(self) -> "SuperPatternInstance":
        if not self.meta.expressible:
            raise NotExpressibleError(
                f"Claim {self.meta.claim_id!r} is marked as not expressible"
            )
        return self


@dataclass(frozen=True)
class ClaimDocument:
    claims: List[SuperPatternInstance] = field(default_factory=list)
    source_path: str = "<string>"

    def __post_init__(self):
        check_unique_ids(self.claims)

    def __iter__(self) -> Iterator[SuperPatternInstance]:
        return iter(self.claims)

    def __len__(self) -> int:
        return len(self.claims)

    def expressible(self) -> List[SuperPatternInstance]:
        return [c for c in self.claims if c.expressible]

    def by_id(self, claim_id: str) -> SuperPatternInstance:
        for c in self.claims:
            if c.claim_id == claim_id:
                return c
        raise KeyError(claim_id)


def check_unique_ids(claims: List[SuperPatternInstance]) -> None:
    seen = set()
    for c in claims:
        if c.claim_id in seen:
            raise DuplicateClaimError(f"Duplicate claim id {c.claim_id!r}")
        seen.add(c.claim_id)
