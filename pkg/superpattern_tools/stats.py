"""
Usage and vocabulary-coverage statistics over claim corpora.
"""

from collections import Counter
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .classes import TermSource
from .claims import CLASS_SLOTS, ClaimDocument
from .vocab import GROUP_HEADS, RELATIONS, Base, Qualifier, RelationGroup, RelationType


def percent(part: int, whole: int, places: int = 1) -> str:
    """
    Exact percentage rounded half-up to a fixed number of decimals.
    """
    if whole == 0:
        return "n/a"
    value = Fraction(part * 100, whole)
    exact = Decimal(value.numerator) / Decimal(value.denominator)
    return str(exact.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP))


def percent_text(part: int, whole: int, places: int = 1) -> str:
    value = percent(part, whole, places)
    return value if whole == 0 else value + "%"


def ratio_text(q: Fraction, places: int = 2) -> str:
    exact = Decimal(q.numerator) / Decimal(q.denominator)
    return str(exact.quantize(Decimal(1).scaleb(-places), rounding=ROUND_HALF_UP))


### Usage


QUALIFIER_ROWS = (
    ("positive", False, False),
    ("negative", True, False),
    ("can positive", False, True),
    ("can negative", True, True),
)


@dataclass(frozen=True)
class UsageReport:
    qualifier_counts: Dict[Qualifier, int]
    relation_counts: Dict[RelationType, int]
    expressible_count: int
    context_used_count: int
    total_claims: int

    @property
    def qualifier_rows(self) -> Dict[str, int]:
        return {
            name: sum(
                n
                for q, n in self.qualifier_counts.items()
                if q.negated == negated and q.modal == modal
            )
            for name, negated, modal in QUALIFIER_ROWS
        }

    @property
    def group_totals(self) -> Dict[RelationGroup, int]:
        totals = {group: 0 for group in RelationGroup}
        for r, n in self.relation_counts.items():
            totals[r.group] += n
        return totals

    @property
    def no_context_count(self) -> int:
        return self.expressible_count - self.context_used_count


def usage_report(doc: ClaimDocument) -> UsageReport:
    claims = doc.expressible()
    qualifiers = Counter(c.qualifier for c in claims)
    relations = Counter(c.relation for c in claims)
    return UsageReport(
        qualifier_counts={q: qualifiers[q] for q in Qualifier.all()},
        relation_counts={r: relations[r] for r in RELATIONS},
        expressible_count=len(claims),
        context_used_count=sum(1 for c in claims if c.context is not None),
        total_claims=len(doc),
    )


def usage_to_data(report: UsageReport) -> Dict[str, Any]:
    return {
        "total_claims": report.total_claims,
        "expressible": report.expressible_count,
        "context_used": report.context_used_count,
        "no_context": report.no_context_count,
        "qualifiers": {q.phrase: n for q, n in report.qualifier_counts.items()},
        "qualifier_rows": report.qualifier_rows,
        "relations": {r.display: n for r, n in report.relation_counts.items()},
        "relation_groups": {
            GROUP_HEADS[g].display: n for g, n in report.group_totals.items()
        },
    }


def render_usage(report: UsageReport) -> str:
    total = report.total_claims
    bases = list(Base)
    width = max(len(b.value) for b in bases) + 2

    lines = [
        f"Expressible claims: {report.expressible_count} of {total} "
        f"({percent_text(report.expressible_count, total)})",
        f"Claims with context: {report.context_used_count} of {total} "
        f"({percent_text(report.context_used_count, total)})",
        f"Claims without context: {report.no_context_count}",
        "",
        "qualifier".ljust(14) + "".join(b.value.rjust(width) for b in bases) + "total".rjust(8),
    ]
    for name, negated, modal in QUALIFIER_ROWS:
        counts = [report.qualifier_counts[Qualifier(b, negated, modal)] for b in bases]
        lines.append(
            name.ljust(14)
            + "".join((str(n) if n else "").rjust(width) for n in counts)
            + str(sum(counts)).rjust(8)
        )

    lines += ["", "relation".ljust(40) + "count".rjust(7) + "group total".rjust(13)]
    totals = report.group_totals
    for r in RELATIONS:
        group_total = str(totals[r.group]) if r.is_head else ""
        name = r.display.upper() if r.is_head else "  " + r.display
        lines.append(
            name.ljust(40) + str(report.relation_counts[r]).rjust(7) + group_total.rjust(13)
        )
    return "\n".join(lines)


### Coverage


COVERAGE_SOURCES = (TermSource.WIKIDATA, TermSource.OBO, TermSource.EVS, TermSource.LOV, TermSource.OTHER)


@dataclass(frozen=True)
class SlotCoverage:
    total: int
    by_source: Dict[TermSource, int]

    @property
    def resolved(self) -> int:
        return sum(self.by_source.values())

    @property
    def coverage(self) -> Optional[Fraction]:
        return Fraction(self.resolved, self.total) if self.total else None


@dataclass(frozen=True)
class CoverageReport:
    slots: Dict[str, SlotCoverage]

    @property
    def total(self) -> int:
        return sum(s.total for s in self.slots.values())

    @property
    def resolved(self) -> int:
        return sum(s.resolved for s in self.slots.values())

    @property
    def coverage(self) -> Optional[Fraction]:
        return Fraction(self.resolved, self.total) if self.total else None


def coverage_report(doc: ClaimDocument) -> CoverageReport:
    """
    Counts only the direct slot fillers. An intersection is one top-level class,
    resolved only when it carries its own identifier; minted identifiers do not count.
    """
    slots = {}
    for slot in CLASS_SLOTS:
        fillers = [getattr(c, slot) for c in doc.expressible()]
        fillers = [f for f in fillers if f is not None]
        by_source = Counter(
            f.term.source for f in fillers if f.term is not None and f.term.is_existing
        )
        slots[slot] = SlotCoverage(
            len(fillers), {source: by_source[source] for source in COVERAGE_SOURCES}
        )
    return CoverageReport(slots)


def coverage_to_data(report: CoverageReport) -> Dict[str, Any]:
    def slot_data(s: SlotCoverage) -> Dict[str, Any]:
        return {
            "total": s.total,
            "resolved": s.resolved,
            "by_source": {src.value: n for src, n in s.by_source.items()},
            "coverage_percent": percent(s.resolved, s.total, 2),
        }

    return {
        "slots": {name: slot_data(s) for name, s in report.slots.items()},
        "total": report.total,
        "resolved": report.resolved,
        "coverage_percent": percent(report.resolved, report.total, 2),
    }


def render_coverage(report: CoverageReport) -> str:
    columns: List[Tuple[str, Any]] = [
        (name.capitalize(), s) for name, s in report.slots.items()
    ]
    header = "".ljust(26) + "".join(name.rjust(10) for name, _ in columns) + "Total".rjust(10)

    def row(label: str, values: List[Any], total: Any) -> str:
        return label.ljust(26) + "".join(str(v).rjust(10) for v in values) + str(total).rjust(10)

    lines = [
        header,
        row("Total top-level classes", [s.total for _, s in columns], report.total),
    ]
    for source in COVERAGE_SOURCES:
        counts = [s.by_source[source] for _, s in columns]
        if any(counts):
            lines.append(row(source.value, counts, sum(counts)))
    lines.append(
        row(
            "Coverage:",
            [percent_text(s.resolved, s.total, 2) for _, s in columns],
            percent_text(report.resolved, report.total, 2),
        )
    )
    return "\n".join(lines)
