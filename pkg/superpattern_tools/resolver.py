"""
Term lookup: suggests identifiers from existing ontologies for class labels.

Each source is queried through its public full-text search endpoint. Responses are
cached on disk per (source, normalized label) so that corpus re-runs are
reproducible, and offline mode answers from the cache only.
"""

import dataclasses
import hashlib
import json
import logging
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, Iterable, List, Optional, Tuple

import requests

from .classes import Atomic, TermRef, TermSource
from .claims import CLASS_SLOTS, SuperPatternInstance
from .config import ResolverConfig
from .errors import SuperPatternError

logger = logging.getLogger(__name__)

SEARCH_SOURCES = ("wikidata", "bioportal", "lov")


class SearchError(SuperPatternError):
    ...


class SlotNotAtomicError(SuperPatternError):
    ...


@dataclass(frozen=True)
class TermCandidate:
    iri: str
    label: str
    source: str
    rank: int
    description: Optional[str] = None

    def __post_init__(self):
        if not self.iri:
            raise SearchError("Candidate IRI must be non-empty")
        if self.rank < 1:
            raise SearchError(f"Candidate rank must be at least 1, got {self.rank}")

    def term_ref(self) -> TermRef:
        if self.source == "lov":
            return TermRef(self.iri, TermSource.LOV)
        return TermRef.from_iri(self.iri)


@dataclass
class SearchResult:
    candidates: List[TermCandidate] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.warnings


def normalize_label(label: str) -> str:
    return " ".join(label.lower().split())


### Cache


class ResponseCache:
    """
    Raw search payloads keyed by (source, normalized label). With no directory the
    cache lives in memory only. All access goes through one lock.
    """

    def __init__(self, directory: Optional[str], ttl: float, clock: Callable[[], float] = time.time):
        self.directory = directory
        self.ttl = ttl
        self.clock = clock
        self._memory: Dict[str, Dict[str, Any]] = {}
        self._lock = threading.Lock()
        if directory:
            os.makedirs(directory, exist_ok=True)

    @staticmethod
    def key(source: str, label: str) -> str:
        return hashlib.sha256(f"{source}\n{normalize_label(label)}".encode("utf-8")).hexdigest()

    def _path(self, key: str) -> str:
        return os.path.join(self.directory, key + ".json")

    def lookup(self, source: str, label: str) -> Tuple[Optional[Any], bool]:
        """
        Returns (payload, fresh). The payload is None on a miss.
        """
        key = self.key(source, label)
        with self._lock:
            entry = self._memory.get(key)
            if entry is None and self.directory and os.path.exists(self._path(key)):
                try:
                    with open(self._path(key), "r", encoding="utf-8") as fl:
                        entry = json.load(fl)
                except (OSError, ValueError) as e:
                    logger.warning("Ignoring unreadable cache entry %s: %s", key, e)
                    entry = None
                if entry is not None:
                    self._memory[key] = entry
        if entry is None:
            return None, False
        return entry["payload"], self.clock() - entry["fetched_at"] <= self.ttl

    def store(self, source: str, label: str, payload: Any) -> None:
        key = self.key(source, label)
        entry = {
            "source": source,
            "label": normalize_label(label),
            "fetched_at": self.clock(),
            "payload": payload,
        }
        with self._lock:
            self._memory[key] = entry
            if self.directory:
                tmp = self._path(key) + ".tmp"
                with open(tmp, "w", encoding="utf-8") as fl:
                    json.dump(entry, fl, ensure_ascii=False)
                os.replace(tmp, self._path(key))


class RateLimiter:
    def __init__(
        self,
        per_second: float,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.interval = 1.0 / per_second if per_second > 0 else 0.0
        self.clock = clock
        self.sleep = sleep
        self._last: Dict[str, float] = {}
        self._lock = threading.Lock()

    def wait(self, source: str) -> None:
        with self._lock:
            now = self.clock()
            last = self._last.get(source)
            delay = 0.0 if last is None else max(0.0, last + self.interval - now)
            self._last[source] = now + delay
        if delay:
            self.sleep(delay)


### Payload readers


def _first(value: Any) -> Optional[str]:
    if isinstance(value, list):
        return str(value[0]) if value else None
    return None if value is None else str(value)


def _wikidata_candidates(payload: Dict[str, Any]) -> Iterable[Tuple[str, str, Optional[str]]]:
    for item in payload.get("search", []):
        iri = item.get("concepturi") or f"http://www.wikidata.org/entity/{item['id']}"
        yield iri, item.get("label", item.get("id", "")), item.get("description")


def _bioportal_candidates(payload: Dict[str, Any]) -> Iterable[Tuple[str, str, Optional[str]]]:
    for item in payload.get("collection", []):
        yield item["@id"], item.get("prefLabel", ""), _first(item.get("definition"))


def _lov_candidates(payload: Dict[str, Any]) -> Iterable[Tuple[str, str, Optional[str]]]:
    for item in payload.get("results", []):
        iri = _first(item.get("uri"))
        if iri:
            label = _first(item.get("prefixedName")) or iri.rsplit("/", 1)[-1]
            yield iri, label, _first(item.get("vocabulary.prefix"))


READERS = {
    "wikidata": _wikidata_candidates,
    "bioportal": _bioportal_candidates,
    "lov": _lov_candidates,
}


### Resolver


class TermResolver:
    def __init__(
        self,
        config: ResolverConfig = ResolverConfig(),
        cache_dir: Optional[str] = None,
        offline: bool = False,
        session: Optional[requests.Session] = None,
        clock: Callable[[], float] = time.time,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.config = config
        self.offline = offline
        self.cache = ResponseCache(cache_dir, config.cache_ttl, clock)
        self.limiter = RateLimiter(config.requests_per_second, sleep=sleep)
        if session is None:
            session = requests.Session()
            session.headers["User-Agent"] = config.user_agent
        self.session = session

    def _request(self, source: str, label: str) -> Tuple[str, Dict[str, str], Dict[str, str]]:
        endpoint = self.config.endpoints[source]
        size = self.config.page_size
        headers = {"Accept": "application/json", "User-Agent": self.config.user_agent}
        params: Dict[str, Any]
        if source == "wikidata":
            params = {
                "action": "wbsearchentities",
                "language": "en",
                "type": "item",
                "format": "json",
                "limit": size,
            }
        elif source == "bioportal":
            if not self.config.bioportal_api_key:
                raise SearchError("BioPortal needs an API key (BIOPORTAL_API_KEY)")
            params = {"pagesize": size}
            headers["Authorization"] = f"apikey token={self.config.bioportal_api_key}"
        else:
            params = {"type": "class", "page_size": size}
        params[endpoint.query_param] = label
        return endpoint.url, params, headers

    def _payload(self, source: str, label: str) -> Tuple[Optional[Any], Optional[str]]:
        payload, fresh = self.cache.lookup(source, label)
        if payload is not None and fresh:
            logger.debug("cache hit for %s in %s", label, source)
            return payload, None
        if self.offline:
            if payload is not None:
                logger.warning("Serving stale cache entry for %r from %s", label, source)
                return payload, f"{source}: stale cached result (offline)"
            logger.warning("No cached result for %r from %s in offline mode", label, source)
            return None, f"{source}: not cached (offline)"

        try:
            url, params, headers = self._request(source, label)
            self.limiter.wait(source)
            response = self.session.get(
                url, params=params, headers=headers, timeout=self.config.timeout
            )
            response.raise_for_status()
            payload = response.json()
        except (requests.RequestException, ValueError) as e:
            logger.warning("Search for %r in %s failed: %s", label, source, e)
            return None, f"{source}: {e}"
        self.cache.store(source, label, payload)
        return payload, None

    def _search_source(self, source: str, label: str, limit: int) -> Tuple[List[TermCandidate], Optional[str]]:
        payload, warning = self._payload(source, label)
        if payload is None:
            return [], warning
        candidates = []
        try:
            for rank, (iri, text, description) in enumerate(READERS[source](payload), start=1):
                if rank > limit:
                    break
                candidates.append(TermCandidate(iri, text, source, rank, description))
        except (KeyError, TypeError, AttributeError, SearchError) as e:
            return candidates, f"{source}: malformed response ({e})"
        return candidates, warning

    def search(
        self, label: str, sources: Iterable[str] = SEARCH_SOURCES, limit: int = 10
    ) -> SearchResult:
        """
        At most `limit` candidates from all sources, interleaved by their source-native rank.
        A failing source adds a warning and does not affect the others.
        """
        if not label or not label.strip():
            raise SearchError("Search label must be non-empty")
        if limit < 1:
            raise SearchError(f"Limit must be at least 1, got {limit}")
        sources = list(dict.fromkeys(sources))
        for source in sources:
            if source not in READERS:
                raise SearchError(f"Unknown search source {source!r}")

        with ThreadPoolExecutor(max_workers=len(sources) or 1) as pool:
            futures = [pool.submit(self._search_source, s, label, limit) for s in sources]
            outcomes = [f.result() for f in futures]

        result = SearchResult()
        order = {s: n for n, s in enumerate(sources)}
        for candidates, warning in outcomes:
            result.candidates.extend(candidates)
            if warning:
                result.warnings.append(warning)
        result.candidates.sort(key=lambda c: (c.rank, order[c.source]))
        del result.candidates[limit:]
        logger.info("%d candidates for %r", len(result.candidates), label)
        return result


def bind(inst: SuperPatternInstance, slot: str, candidate: TermCandidate) -> SuperPatternInstance:
    """
    Copy of `inst` whose class in `slot` carries the candidate's identifier.
    """
    if slot not in CLASS_SLOTS:
        raise SlotNotAtomicError(f"{slot!r} is not a class slot")
    filler = getattr(inst, slot)
    if filler is None:
        raise SlotNotAtomicError(f"Claim {inst.claim_id!r} has no {slot}")
    if not isinstance(filler, Atomic):
        raise SlotNotAtomicError(
            f"The {slot} of claim {inst.claim_id!r} is an intersection; bind its parts"
        )
    return dataclasses.replace(inst, **{slot: Atomic(filler.label, candidate.term_ref())})
