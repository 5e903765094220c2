import datetime
import json
import logging
import sys
from dataclasses import dataclass
from typing import Any, Iterator, List, Optional

import typer

from .agreement import (
    Stage,
    level_distribution,
    mistake_statistics,
    pairwise_agreement,
    parse_marks,
    render_levels,
    render_mistakes,
    render_pairwise,
)
from .classes import Atomic
from .claims import CLASS_SLOTS, ClaimDocument
from .config import CliConfig, load_config
from .emitters.dsl import emit_claims
from .emitters.nanopub import claim_base, to_nanopub
from .errors import SuperPatternError
from .logic import build_formula, implication_form, render_gloss
from .parsers.claims import ClaimSyntaxError, VocabularyError, parse_claims
from .parsers.interchange import parse_claims_json
from .parsers.model import parse_model
from .reasoner import Verdict, corpus_consistency
from .resolver import SEARCH_SOURCES, SearchResult, TermResolver, bind
from .stats import (
    coverage_report,
    coverage_to_data,
    render_coverage,
    render_usage,
    usage_report,
    usage_to_data,
)
from .visitors.formula import RenderStyle, render_formula
from .worlds import Status, close_relations, evaluate

logger = logging.getLogger(__name__)

app = typer.Typer(help="Scientific claims as super-pattern instances.")

FINDINGS = 1
USAGE = 2


@dataclass
class State:
    config: CliConfig

    @property
    def structured(self) -> bool:
        return self.config.output_format == "structured"


def _state(ctx: typer.Context) -> State:
    return ctx.find_root().obj


def _fail(message: str, code: int = USAGE) -> typer.Exit:
    typer.echo(f"error: {message}", err=True)
    return typer.Exit(code)


def _emit_json(data: Any) -> None:
    typer.echo(json.dumps(data, indent=2, ensure_ascii=False))


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fl:
            return fl.read()
    except OSError as e:
        raise _fail(f"{path}: {e.strerror or e}")
    except UnicodeDecodeError as e:
        raise _fail(f"{path}: not valid UTF-8 ({e.reason} at byte {e.start})")


def _load_claims(path: str, config: CliConfig) -> ClaimDocument:
    src = _read(path)
    if path.endswith(".json"):
        return parse_claims_json(src, path, config.minted_namespace)
    return parse_claims(src, path, config.minted_namespace)


def _claims_or_exit(path: str, config: CliConfig) -> ClaimDocument:
    try:
        return _load_claims(path, config)
    except SuperPatternError as e:
        raise _fail(f"{path}: {e}")


def _select(doc: ClaimDocument, claim_id: Optional[str]) -> Iterator:
    if claim_id is None:
        yield from doc.expressible()
        return
    try:
        yield doc.by_id(claim_id).require_expressible()
    except KeyError:
        raise _fail(f"no claim {claim_id!r} in {doc.source_path}")
    except SuperPatternError as e:
        raise _fail(str(e))


@app.callback()
def main(
    ctx: typer.Context,
    config: Optional[str] = typer.Option(None, "--config", help="TOML configuration file."),
    output_format: Optional[str] = typer.Option(
        None, "--format", help="Output format: text or structured (JSON)."
    ),
    verbose: bool = typer.Option(False, "--verbose", "-v"),
    debug: bool = typer.Option(False, "--debug"),
):
    """
    Represent, render, check and analyse scientific claims.
    """
    logging.basicConfig(
        level=logging.DEBUG if debug else logging.INFO if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        cfg = load_config(config).override(output_format=output_format)
    except SuperPatternError as e:
        raise _fail(str(e))
    ctx.obj = State(cfg)


@app.command()
def validate(ctx: typer.Context, files: List[str]):
    """
    Parse claim files and report errors.
    """
    config = _state(ctx).config
    failed = False
    for path in files:
        try:
            doc = _load_claims(path, config)
        except (ClaimSyntaxError, VocabularyError) as e:
            typer.echo(f"{path}:{e.line}:{e.column}: {e.message}")
            failed = True
            continue
        except SuperPatternError as e:
            typer.echo(f"{path}: {e}")
            failed = True
            continue
        typer.echo(f"{path}: {len(doc)} claims, {len(doc.expressible())} expressible")
    if failed:
        raise typer.Exit(FINDINGS)


@app.command()
def gloss(ctx: typer.Context, file: str, claim: Optional[str] = typer.Option(None, "--id")):
    """
    Print the English reading of each claim.
    """
    doc = _claims_or_exit(file, _state(ctx).config)
    for inst in _select(doc, claim):
        typer.echo(f"{inst.claim_id}: {render_gloss(inst)}")


@app.command()
def formula(
    ctx: typer.Context,
    file: str,
    claim: Optional[str] = typer.Option(None, "--id"),
    style: RenderStyle = typer.Option(RenderStyle.UNICODE, "--style"),
    implication: bool = typer.Option(
        False, "--implication", help="Universal implication form (always-claims only)."
    ),
):
    """
    Print the logical formula of each claim.
    """
    doc = _claims_or_exit(file, _state(ctx).config)
    for inst in _select(doc, claim):
        f = build_formula(inst)
        if implication:
            try:
                f = implication_form(f)
            except SuperPatternError as e:
                raise _fail(f"{inst.claim_id}: {e}")
        typer.echo(f"{inst.claim_id}: {render_formula(f, style)}")


@app.command("eval")
def eval_(
    ctx: typer.Context,
    file: str,
    model: str = typer.Option(..., "--model", help="Model file."),
    no_reflexive: bool = typer.Option(False, "--no-reflexive"),
    close_taxonomy: bool = typer.Option(
        False, "--close-taxonomy", help="Extend relation group heads by their sub-relations."
    ),
    claim: Optional[str] = typer.Option(None, "--id"),
):
    """
    Evaluate claims against a finite possible-world model. Exits with 1 if a claim fails.
    """
    state = _state(ctx)
    doc = _claims_or_exit(file, state.config)
    reflexive = state.config.reflexive_accessibility and not no_reflexive
    try:
        m = parse_model(_read(model), reflexive)
    except SuperPatternError as e:
        raise _fail(f"{model}: {e}")
    if close_taxonomy:
        m = close_relations(m)

    results = [(inst, evaluate(m, inst)) for inst in _select(doc, claim)]
    if state.structured:
        _emit_json(
            [
                {
                    "id": inst.claim_id,
                    "status": r.status.value,
                    "ratio": None if r.ratio is None else str(r.ratio),
                    "condition_count": r.condition_count,
                    "event_count": r.event_count,
                }
                for inst, r in results
            ]
        )
    else:
        for inst, r in results:
            typer.echo(f"{inst.claim_id}: {r}")
    if any(r.status is Status.FAILS for _, r in results):
        raise typer.Exit(FINDINGS)


@app.command()
def check(ctx: typer.Context, file: str):
    """
    Report entailments and contradictions between claims. Exits with 1 on a contradiction.
    """
    state = _state(ctx)
    doc = _claims_or_exit(file, state.config)
    findings = corpus_consistency(doc.claims)
    if state.structured:
        _emit_json(
            [
                {
                    "premise": f.premise,
                    "conclusion": f.conclusion,
                    "verdict": f.verdict.kind.value,
                    "assumptions": sorted(a.value for a in f.verdict.assumptions),
                    "rules": list(f.verdict.rule_trace),
                }
                for f in findings
            ]
        )
    else:
        for f in findings:
            typer.echo(str(f))
        contradictions = sum(1 for f in findings if f.verdict.kind is Verdict.CONTRADICTS)
        typer.echo(f"{len(findings)} findings, {contradictions} contradictions")
    if any(f.verdict.kind is Verdict.CONTRADICTS for f in findings):
        raise typer.Exit(FINDINGS)


@app.command()
def stats(ctx: typer.Context, file: str):
    """
    Qualifier and relation usage.
    """
    state = _state(ctx)
    report = usage_report(_claims_or_exit(file, state.config))
    if state.structured:
        _emit_json(usage_to_data(report))
    else:
        typer.echo(render_usage(report))


@app.command()
def coverage(ctx: typer.Context, file: str):
    """
    Share of top-level classes bound to identifiers of existing ontologies.
    """
    state = _state(ctx)
    report = coverage_report(_claims_or_exit(file, state.config))
    if state.structured:
        _emit_json(coverage_to_data(report))
    else:
        typer.echo(render_coverage(report))


@app.command()
def agreement(
    ctx: typer.Context,
    marks: List[str] = typer.Option(
        ..., "--marks", help="Marks file; give two to compare before and after discussion."
    ),
    stage: Optional[Stage] = typer.Option(None, "--stage", help="Stage of a single marks file."),
):
    """
    Agreement levels, mistake statistics and pairwise agreement of a formalization study.
    """
    state = _state(ctx)
    if len(marks) > 2:
        raise _fail("at most two marks files (before and after discussion)")
    if len(marks) == 2 and stage is not None:
        raise _fail("--stage applies to a single marks file")
    stages = [stage or Stage.BEFORE] if len(marks) == 1 else [Stage.BEFORE, Stage.AFTER]

    studies = []
    for path, st in zip(marks, stages):
        try:
            studies.append(parse_marks(_read(path), st, path))
        except SuperPatternError as e:
            raise _fail(f"{path}: {e}")

    if state.structured:
        data = []
        for s in studies:
            with_mistake, both = mistake_statistics(s)
            data.append(
                {
                    "stage": s.stage.value,
                    "levels": {
                        level.value: {"count": n, "fraction": str(frac)}
                        for level, (n, frac) in level_distribution(s).items()
                    },
                    "with_mistake": str(with_mistake),
                    "best_and_mistake": str(both),
                    "pairwise": {
                        f"{p} {q}": str(v) for (p, q), v in pairwise_agreement(s).items()
                    },
                }
            )
        _emit_json(data)
        return

    typer.echo(render_levels(studies))
    for s in studies:
        typer.echo(f"\n[{s.stage.value}]")
        typer.echo(render_mistakes(s))
        typer.echo(render_pairwise(s))


def _print_result(label: str, result: SearchResult) -> None:
    typer.echo(f"{label}:")
    for n, c in enumerate(result.candidates, start=1):
        description = f" - {c.description}" if c.description else ""
        typer.echo(f"  {n}. [{c.source} #{c.rank}] {c.label} <{c.iri}>{description}")
    for warning in result.warnings:
        typer.echo(f"  warning: {warning}")


@app.command()
def resolve(
    ctx: typer.Context,
    labels: Optional[List[str]] = typer.Argument(None),
    claims: Optional[str] = typer.Option(None, "--claims", help="Look up the unbound classes of a claim file."),
    interactive: bool = typer.Option(False, "--interactive", help="Pick a candidate per class."),
    output: Optional[str] = typer.Option(None, "--output", help="Where to write the bound claims."),
    source: Optional[List[str]] = typer.Option(None, "--source"),
    limit: int = typer.Option(5, "--limit"),
    offline: bool = typer.Option(False, "--offline"),
    cache_dir: Optional[str] = typer.Option(None, "--cache-dir"),
):
    """
    Search ontologies for identifiers of class labels.
    """
    if interactive and not claims:
        raise _fail("--interactive needs --claims")
    if output and not interactive:
        raise _fail("--output needs --interactive")
    if not labels and not claims:
        raise _fail("give labels or --claims")

    config = _state(ctx).config.override(cache_dir=cache_dir)
    resolver = TermResolver(
        config.resolver,
        cache_dir=config.cache_path,
        offline=config.offline or offline,
    )
    sources = source or list(SEARCH_SOURCES)

    try:
        for label in labels or []:
            _print_result(label, resolver.search(label, sources, limit))
        if not claims:
            return

        doc = _claims_or_exit(claims, config)
        bound = []
        for inst in doc.claims:
            for slot in CLASS_SLOTS if inst.expressible else ():
                filler = getattr(inst, slot)
                if not isinstance(filler, Atomic) or filler.term is not None:
                    continue
                result = resolver.search(filler.label, sources, limit)
                _print_result(f"{inst.claim_id} {slot} {filler.label!r}", result)
                if interactive and result.candidates:
                    choice = typer.prompt("Candidate number (0 to skip)", type=int, default=0)
                    if 1 <= choice <= len(result.candidates):
                        inst = bind(inst, slot, result.candidates[choice - 1])
            bound.append(inst)
    except SuperPatternError as e:
        raise _fail(str(e))

    if interactive:
        text = emit_claims(ClaimDocument(bound, doc.source_path))
        if output:
            with open(output, "w", encoding="utf-8") as fl:
                fl.write(text)
        else:
            typer.echo(text)


@app.command()
def export(
    ctx: typer.Context,
    file: str,
    base_iri: Optional[str] = typer.Option(None, "--base-iri"),
    claim: Optional[str] = typer.Option(None, "--id"),
    creator: Optional[str] = typer.Option(None, "--creator"),
    created: Optional[datetime.datetime] = typer.Option(None, "--created"),
    output: Optional[str] = typer.Option(None, "--output"),
):
    """
    Write claims as nanopublications in TriG, one per claim under <base-iri><claim id>/.
    """
    config = _state(ctx).config.override(base_iri=base_iri, creator=creator)
    if not config.base_iri:
        raise _fail("--base-iri is required for export")
    doc = _claims_or_exit(file, config)

    chunks = []
    try:
        for inst in _select(doc, claim):
            pub = to_nanopub(
                inst,
                claim_base(config.base_iri, inst.claim_id),
                creator=config.creator,
                created=created,
                vocab_namespace=config.vocab_namespace,
                minted_namespace=config.minted_namespace,
            )
            chunks.append(pub.serialize())
    except SuperPatternError as e:
        raise _fail(str(e))

    text = "\n".join(chunks)
    if output:
        with open(output, "w", encoding="utf-8") as fl:
            fl.write(text)
    else:
        typer.echo(text)
