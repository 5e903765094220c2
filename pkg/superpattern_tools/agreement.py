"""
Agreement measures for formalization studies: several participants mark each
candidate formalization of a claim as best, as containing a mistake, or neither.
"""

import csv
import io
import logging
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from itertools import permutations
from typing import Dict, Iterable, List, Optional, Tuple

from .errors import SuperPatternError
from .stats import ratio_text

logger = logging.getLogger(__name__)


class MarksError(SuperPatternError):
    ...


class UnknownClaimError(SuperPatternError):
    ...


class Mark(Enum):
    BEST = "best"
    MISTAKE = "mistake"
    NONE = "none"


class AgreementLevel(Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"


class Stage(Enum):
    BEFORE = "before-discussion"
    AFTER = "after-discussion"


Triple = Tuple[str, str, str]


@dataclass(frozen=True)
class StudyMarks:
    """
    Marks keyed by (claim, candidate, participant). Triples without an entry read as
    Mark.NONE. Confidence ratings are kept but not used by any measure.
    """

    claims: Tuple[str, ...]
    candidates: Dict[str, Tuple[str, ...]]
    participants: Tuple[str, ...]
    marks: Dict[Triple, Mark]
    stage: Stage = Stage.BEFORE
    confidence: Dict[Triple, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.participants:
            raise MarksError("A study needs at least one participant")
        for claim, candidate, participant in self.marks:
            if claim not in self.candidates or candidate not in self.candidates[claim]:
                raise MarksError(f"Mark for unknown candidate {claim}/{candidate}")
            if participant not in self.participants:
                raise MarksError(f"Mark by unknown participant {participant!r}")

    def mark(self, claim: str, candidate: str, participant: str) -> Mark:
        return self.marks.get((claim, candidate, participant), Mark.NONE)

    def candidates_of(self, claim: str) -> Tuple[str, ...]:
        try:
            return self.candidates[claim]
        except KeyError:
            raise UnknownClaimError(f"Unknown claim id {claim!r}")

    def data_points(self) -> List[Tuple[str, str]]:
        return [(c, f) for c in self.claims for f in self.candidates[c]]

    def count(self, claim: str, candidate: str, mark: Mark) -> int:
        return sum(1 for p in self.participants if self.mark(claim, candidate, p) == mark)


def claim_level(marks: StudyMarks, claim: str) -> AgreementLevel:
    candidates = marks.candidates_of(claim)
    n = len(marks.participants)
    best = {f: marks.count(claim, f, Mark.BEST) for f in candidates}
    mistakes = {f: marks.count(claim, f, Mark.MISTAKE) for f in candidates}

    if any(best[f] == n for f in candidates):
        return AgreementLevel.A
    if any(2 * best[f] > n and mistakes[f] == 0 for f in candidates):
        return AgreementLevel.B
    if any(mistakes[f] == 0 for f in candidates):
        return AgreementLevel.C
    return AgreementLevel.D


def level_distribution(marks: StudyMarks) -> Dict[AgreementLevel, Tuple[int, Fraction]]:
    counts = {level: 0 for level in AgreementLevel}
    for claim in marks.claims:
        counts[claim_level(marks, claim)] += 1
    total = len(marks.claims)
    return {
        level: (n, Fraction(n, total) if total else Fraction(0))
        for level, n in counts.items()
    }


def _score(a: Mark, b: Mark) -> Fraction:
    if a == b:
        return Fraction(1)
    if {a, b} == {Mark.BEST, Mark.MISTAKE}:
        return Fraction(0)
    return Fraction(1, 2)


def pairwise_agreement(marks: StudyMarks) -> Dict[Tuple[str, str], Fraction]:
    """
    Mean score per ordered participant pair over all (claim, candidate) data points.
    Identical marks score 1, best against mistake scores 0, anything else 1/2.
    """
    points = marks.data_points()
    result = {}
    for p, q in permutations(marks.participants, 2):
        if not points:
            result[p, q] = Fraction(1)
            continue
        total = sum(
            (_score(marks.mark(c, f, p), marks.mark(c, f, q)) for c, f in points),
            Fraction(0),
        )
        result[p, q] = total / len(points)
    return result


def mistake_statistics(marks: StudyMarks) -> Tuple[Fraction, Fraction]:
    """
    Fractions of candidate formalizations with at least one mistake mark, and with
    both a best and a mistake mark.
    """
    points = marks.data_points()
    if not points:
        return Fraction(0), Fraction(0)
    with_mistake = [
        (c, f) for c, f in points if marks.count(c, f, Mark.MISTAKE) > 0
    ]
    both = [(c, f) for c, f in with_mistake if marks.count(c, f, Mark.BEST) > 0]
    return Fraction(len(with_mistake), len(points)), Fraction(len(both), len(points))


### Ingestion


HEADER_NAMES = {"claim", "claim-id", "claim_id", "claim id"}
MARK_WORDS = {
    "best": Mark.BEST,
    "mistake": Mark.MISTAKE,
    "none": Mark.NONE,
    "": Mark.NONE,
}


def _dialect(text: str) -> str:
    first = next((line for line in text.splitlines() if line.strip()), "")
    return "\t" if "\t" in first else ","


def parse_marks(
    text: str, stage: Stage = Stage.BEFORE, source_path: str = "<string>"
) -> StudyMarks:
    """
    Reads rows of claim-id, candidate-id, participant-id, mark and an optional
    confidence rating. A header row is recognized by its first field.
    """
    claims: List[str] = []
    candidates: Dict[str, List[str]] = {}
    participants: List[str] = []
    marks: Dict[Triple, Mark] = {}
    confidence: Dict[Triple, int] = {}

    reader = csv.reader(io.StringIO(text), delimiter=_dialect(text))
    for line, row in enumerate(reader, start=1):
        row = [cell.strip() for cell in row]
        if not any(row):
            continue
        if line == 1 and row[0].lower() in HEADER_NAMES:
            continue
        if len(row) not in (4, 5):
            raise MarksError(
                f"{source_path}:{line}: expected 4 or 5 fields, got {len(row)}"
            )

        claim, candidate, participant, word = row[:4]
        if not (claim and candidate and participant):
            raise MarksError(f"{source_path}:{line}: empty identifier")
        try:
            mark = MARK_WORDS[word.lower()]
        except KeyError:
            raise MarksError(f"{source_path}:{line}: unknown mark {word!r}")

        if claim not in candidates:
            claims.append(claim)
            candidates[claim] = []
        if candidate not in candidates[claim]:
            candidates[claim].append(candidate)
        if participant not in participants:
            participants.append(participant)

        key = (claim, candidate, participant)
        if key in marks and marks[key] != mark:
            raise MarksError(
                f"{source_path}:{line}: {participant} marked {claim}/{candidate} "
                f"both {marks[key].value} and {mark.value}"
            )
        marks[key] = mark

        if len(row) == 5 and row[4]:
            try:
                rating = int(row[4])
            except ValueError:
                rating = 0
            if not 1 <= rating <= 5:
                raise MarksError(f"{source_path}:{line}: confidence must be 1-5")
            confidence[key] = rating

    logger.info(
        "Read %d marks for %d claims from %s", len(marks), len(claims), source_path
    )
    return StudyMarks(
        claims=tuple(claims),
        candidates={c: tuple(fs) for c, fs in candidates.items()},
        participants=tuple(participants),
        marks={k: m for k, m in marks.items() if m != Mark.NONE},
        stage=stage,
        confidence=confidence,
    )


### Rendering


def render_levels(studies: Iterable[StudyMarks]) -> str:
    studies = list(studies)
    dists = [level_distribution(s) for s in studies]
    lines = [
        "level".ljust(8) + "".join(s.stage.value.rjust(24) for s in studies),
        "".ljust(8) + "".join(("abs." + "rel.".rjust(8)).rjust(24) for _ in studies),
    ]
    for level in AgreementLevel:
        cells = []
        for d in dists:
            n, frac = d[level]
            cells.append((str(n) + ratio_text(frac).rjust(8)).rjust(24))
        lines.append(level.value.ljust(8) + "".join(cells))
    return "\n".join(lines)


def render_pairwise(marks: StudyMarks, matrix: Optional[Dict[Tuple[str, str], Fraction]] = None) -> str:
    matrix = matrix if matrix is not None else pairwise_agreement(marks)
    people = marks.participants
    width = max(6, max(len(p) for p in people) + 2)
    lines = ["".ljust(width) + "".join(p.rjust(width) for p in people)]
    for p in people:
        cells = [
            ("-" if p == q else ratio_text(matrix[p, q])).rjust(width) for q in people
        ]
        lines.append(p.ljust(width) + "".join(cells))
    return "\n".join(lines)


def render_mistakes(marks: StudyMarks) -> str:
    with_mistake, both = mistake_statistics(marks)
    return (
        f"Formalizations with a mistake mark: {ratio_text(with_mistake * 100, 0)}%\n"
        f"Formalizations marked both best and mistake: {ratio_text(both * 100, 0)}%"
    )
