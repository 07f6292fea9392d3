"""Command line entry points.

Subcommands mirror the library surface: ingest documents into a store,
summarize a stored case or a loose file, train and evaluate the supervised
scorer, and serve the HTTP API. The store location comes from --store or
the LEXSUMM_STORE environment variable, defaulting to ./store.
"""

from __future__ import annotations

import json
import sys
from datetime import date
from pathlib import Path

import click

from .errors import LexsummError, ValidationError
from .evaluation import evaluate_corpus
from .scorer import (
    fit,
    load_labeled_sentences,
    load_model,
    model_accuracy,
    save_model,
    training_examples,
)
from .sections import parse_judgment
from .store import CaseMetadata, CaseStore, content_id
from .summarize import SummaryConfig, SummaryMethod, resolve_config, summarize_document
from .text import normalize_text

_STORE_OPTION = click.option(
    "--store",
    "store_dir",
    envvar="LEXSUMM_STORE",
    default="store",
    show_default=True,
    help="Case store directory.",
)


@click.group()
@click.version_option(package_name="lexsumm")
def main() -> None:
    """Summarization toolkit for Vietnamese court judgments."""


# ---------------------------------------------------------------------------
# ingest
# ---------------------------------------------------------------------------


@main.command()
@click.argument("source", type=click.Path(exists=True, path_type=Path))
@click.option(
    "--meta",
    "meta_spec",
    default=None,
    help="Metadata as inline JSON or a path to a JSON file, applied to every document.",
)
@_STORE_OPTION
def ingest(source: Path, meta_spec: str | None, store_dir: str) -> None:
    """Ingest a text file, or every *.txt file in a directory."""
    store = CaseStore(Path(store_dir))
    shared = _load_meta_spec(meta_spec)
    paths = sorted(source.glob("*.txt")) if source.is_dir() else [source]
    if not paths:
        raise click.ClickException(f"no *.txt files under {source}")
    for path in paths:
        try:
            metadata = _metadata_for(path, shared)
            case_id = store.ingest(path.read_text(encoding="utf-8"), metadata)
        except LexsummError as exc:
            raise click.ClickException(f"{path}: {exc}") from exc
        click.echo(f"{case_id}  {path}")


def _load_meta_spec(spec: str | None) -> dict | None:
    if spec is None:
        return None
    candidate = Path(spec)
    if candidate.is_file():
        text = candidate.read_text(encoding="utf-8")
    else:
        text = spec
    try:
        parsed = json.loads(text)
    except json.JSONDecodeError as exc:
        raise click.ClickException(f"--meta is not valid JSON: {exc}") from exc
    if not isinstance(parsed, dict):
        raise click.ClickException("--meta must be a JSON object")
    return parsed


def _metadata_for(path: Path, shared: dict | None) -> CaseMetadata:
    """Sidecar <name>.meta.json wins over --meta; both fall back to defaults."""
    sidecar = path.with_suffix(path.suffix + ".meta.json")
    raw: dict = {}
    if sidecar.is_file():
        raw = json.loads(sidecar.read_text(encoding="utf-8"))
    elif shared is not None:
        raw = dict(shared)
    raw.setdefault("title", path.stem)
    raw.setdefault("court", "")
    raw.setdefault("jurisdiction", "")
    raw.setdefault("subject_matter", "")
    raw.setdefault("decision_date", date(1970, 1, 1).isoformat())
    return CaseMetadata.from_dict(raw)


# ---------------------------------------------------------------------------
# summarize
# ---------------------------------------------------------------------------


@main.command()
@click.argument("target")
@click.option("--method", default="auto", show_default=True, help="textrank, lexrank, supervised, or auto.")
@click.option("--ratio", type=float, default=None, help="Fraction of sentences to keep per section.")
@click.option("--include-introduction", is_flag=True, help="Also summarize the introduction block.")
@click.option("--json", "as_json", is_flag=True, help="Emit the full summary as JSON.")
@click.option(
    "--model",
    "model_path",
    type=click.Path(exists=True, path_type=Path),
    default=None,
    help="Scoring model file for the supervised and auto methods.",
)
@_STORE_OPTION
def summarize(
    target: str,
    method: str,
    ratio: float | None,
    include_introduction: bool,
    as_json: bool,
    model_path: Path | None,
    store_dir: str,
) -> None:
    """Summarize a stored case id or a judgment text file."""
    try:
        chosen = SummaryMethod.from_label(method)
        model = load_model(model_path) if model_path else None
        if ratio is not None and not 0.0 < ratio <= 1.0:
            raise ValidationError("--ratio must be in (0, 1]")
        cfg = resolve_config(
            SummaryConfig(),
            ratio=ratio,
            include_introduction=include_introduction or None,
        )
        case_id, raw_text = _resolve_target(target, Path(store_dir))
        parsed = parse_judgment(normalize_text(raw_text))
        summary = summarize_document(parsed, chosen, cfg, model, case_id=case_id)
    except LexsummError as exc:
        raise click.ClickException(str(exc)) from exc
    if as_json:
        from .api import summary_response

        click.echo(json.dumps(summary_response(summary, cfg), ensure_ascii=False, indent=2))
    else:
        click.echo(summary.combined_text)


def _resolve_target(target: str, store_dir: Path) -> tuple[str, str]:
    path = Path(target)
    if path.is_file():
        raw = path.read_text(encoding="utf-8")
        return content_id(raw), raw
    store = CaseStore(store_dir)
    document = store.get(target)
    return document.id, document.raw_text


# ---------------------------------------------------------------------------
# train
# ---------------------------------------------------------------------------


@main.command()
@click.option(
    "--data",
    "data_path",
    type=click.Path(exists=True, path_type=Path),
    required=True,
    help="JSONL file of labeled sentences.",
)
@click.option("--corpus", "corpus_dir", type=click.Path(exists=True, path_type=Path), required=True)
@click.option("--out", "out_path", type=click.Path(path_type=Path), required=True)
@click.option("--epochs", type=int, default=500, show_default=True)
@click.option("--lr", type=float, default=0.1, show_default=True)
@click.option("--l2", type=float, default=1e-3, show_default=True)
def train(
    data_path: Path,
    corpus_dir: Path,
    out_path: Path,
    epochs: int,
    lr: float,
    l2: float,
) -> None:
    """Train the supervised sentence scorer and write it to a model file."""
    try:
        store = CaseStore(corpus_dir)
        labels = load_labeled_sentences(data_path)
        parsed = {
            case_id: parse_judgment(normalize_text(store.get(case_id).raw_text))
            for case_id in sorted({lab.case_id for lab in labels})
        }
        examples = training_examples(parsed, labels)
        run = fit(examples, learning_rate=lr, l2=l2, epochs=epochs)
        save_model(run.model, out_path)
    except LexsummError as exc:
        raise click.ClickException(str(exc)) from exc
    accuracy = model_accuracy(run.model, examples)
    click.echo(f"examples={len(examples)} loss={run.losses[-1]:.6f} accuracy={accuracy:.4f}")
    click.echo(f"model written to {out_path}")


# ---------------------------------------------------------------------------
# evaluate
# ---------------------------------------------------------------------------


@main.command()
@click.option("--corpus", "corpus_dir", type=click.Path(exists=True, path_type=Path), required=True)
@click.option(
    "--methods",
    default="textrank,lexrank",
    show_default=True,
    help="Comma separated list of methods to score.",
)
@click.option("--model", "model_path", type=click.Path(exists=True, path_type=Path), default=None)
@click.option("--ratio", type=float, default=None)
@click.option("--out", "out_path", type=click.Path(path_type=Path), default=None, help="Write the full report as JSON.")
def evaluate(
    corpus_dir: Path,
    methods: str,
    model_path: Path | None,
    ratio: float | None,
    out_path: Path | None,
) -> None:
    """Score summaries against gold files in the corpus store."""
    try:
        chosen = [SummaryMethod.from_label(part.strip()) for part in methods.split(",") if part.strip()]
        if not chosen:
            raise ValidationError("--methods must name at least one method")
        model = load_model(model_path) if model_path else None
        cfg = resolve_config(SummaryConfig(), ratio=ratio)
        report = evaluate_corpus(CaseStore(corpus_dir), chosen, cfg, model)
    except LexsummError as exc:
        raise click.ClickException(str(exc)) from exc
    for method in chosen:
        means = report.means[method.value]
        click.echo(
            f"{method.value:10s} rouge1={means['rouge1'].f1:.4f} "
            f"rouge2={means['rouge2'].f1:.4f} rougeL={means['rougeL'].f1:.4f}"
        )
    if report.skipped:
        click.echo(f"skipped {report.skipped} case(s) without gold summaries", err=True)
    if out_path is not None:
        report.save(out_path)
        click.echo(f"report written to {out_path}")


# ---------------------------------------------------------------------------
# serve
# ---------------------------------------------------------------------------


@main.command()
@click.option("--addr", default="127.0.0.1:8080", show_default=True, help="host:port to bind.")
@click.option("--model", "model_path", type=click.Path(exists=True, path_type=Path), default=None)
@_STORE_OPTION
def serve(addr: str, model_path: Path | None, store_dir: str) -> None:
    """Run the HTTP API."""
    import uvicorn

    from .api import create_app

    host, _, port_text = addr.rpartition(":")
    if not host or not port_text.isdigit():
        raise click.ClickException(f"--addr must look like host:port, got {addr!r}")
    try:
        model = load_model(model_path) if model_path else None
        app = create_app(CaseStore(Path(store_dir)), model)
    except LexsummError as exc:
        raise click.ClickException(str(exc)) from exc
    uvicorn.run(app, host=host, port=int(port_text))


if __name__ == "__main__":
    sys.exit(main())
