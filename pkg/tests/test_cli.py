import json

import pytest
from click.testing import CliRunner

from lexsumm.cli import main
from lexsumm.scorer import load_model
from lexsumm.store import CaseStore, content_id
from lexsumm.summarize import SummaryMethod, summarize_document


@pytest.fixture()
def runner():
    return CliRunner()


JUDGMENT = (
    "TÒA ÁN NHÂN DÂN TỈNH CLI\n"
    "NỘI DUNG VỤ ÁN\n"
    "Nguyên đơn yêu cầu trả nợ gốc và lãi.\n"
    "Bị đơn thừa nhận khoản nợ.\n"
    "Hai bên không thỏa thuận được.\n"
    "QUYẾT ĐỊNH\n"
    "Chấp nhận yêu cầu trả nợ.\n"
    "Bác yêu cầu về lãi.\n"
)


def write_judgment(tmp_path, name="case.txt", text=JUDGMENT):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


# ---------------------------------------------------------------------------
# ingest
# ---------------------------------------------------------------------------


def test_ingest_single_file(runner, tmp_path):
    path = write_judgment(tmp_path)
    store_dir = tmp_path / "db"
    result = runner.invoke(main, ["ingest", str(path), "--store", str(store_dir)])
    assert result.exit_code == 0, result.output
    case_id = content_id(JUDGMENT)
    assert result.output.startswith(case_id)
    store = CaseStore(store_dir)
    assert store.count() == 1
    # defaults fill the metadata gaps
    doc = store.get(case_id)
    assert doc.metadata.title == "case"
    assert doc.metadata.decision_date.isoformat() == "1970-01-01"


def test_ingest_directory(runner, tmp_path):
    docs = tmp_path / "docs"
    docs.mkdir()
    write_judgment(docs, "a.txt", JUDGMENT)
    write_judgment(docs, "b.txt", JUDGMENT.replace("CLI", "KHÁC"))
    (docs / "notes.md").write_text("bỏ qua", encoding="utf-8")
    store_dir = tmp_path / "db"
    result = runner.invoke(main, ["ingest", str(docs), "--store", str(store_dir)])
    assert result.exit_code == 0, result.output
    assert len(result.output.strip().splitlines()) == 2
    assert CaseStore(store_dir).count() == 2


def test_ingest_inline_meta(runner, tmp_path):
    path = write_judgment(tmp_path)
    store_dir = tmp_path / "db"
    meta = {"title": "Bản án CLI", "jurisdiction": "Test", "decision_date": "2022-03-04"}
    result = runner.invoke(
        main,
        ["ingest", str(path), "--store", str(store_dir), "--meta", json.dumps(meta)],
    )
    assert result.exit_code == 0, result.output
    doc = CaseStore(store_dir).get(content_id(JUDGMENT))
    assert doc.metadata.title == "Bản án CLI"
    assert doc.metadata.jurisdiction == "Test"


def test_ingest_sidecar_beats_shared_meta(runner, tmp_path):
    docs = tmp_path / "docs"
    docs.mkdir()
    path = write_judgment(docs, "a.txt")
    sidecar = {"title": "Từ sidecar", "decision_date": "2021-01-01"}
    (docs / "a.txt.meta.json").write_text(json.dumps(sidecar), encoding="utf-8")
    store_dir = tmp_path / "db"
    result = runner.invoke(
        main,
        [
            "ingest",
            str(docs),
            "--store",
            str(store_dir),
            "--meta",
            '{"title": "Từ meta chung", "decision_date": "2000-01-01"}',
        ],
    )
    assert result.exit_code == 0, result.output
    doc = CaseStore(store_dir).get(content_id(JUDGMENT))
    assert doc.metadata.title == "Từ sidecar"


def test_ingest_bad_meta_json(runner, tmp_path):
    path = write_judgment(tmp_path)
    result = runner.invoke(
        main, ["ingest", str(path), "--store", str(tmp_path / "db"), "--meta", "{oops"]
    )
    assert result.exit_code != 0
    assert "not valid JSON" in result.output


def test_ingest_missing_source(runner, tmp_path):
    result = runner.invoke(main, ["ingest", str(tmp_path / "nope.txt")])
    assert result.exit_code != 0


# ---------------------------------------------------------------------------
# summarize
# ---------------------------------------------------------------------------


def test_summarize_file_prints_bullets(runner, tmp_path):
    path = write_judgment(tmp_path)
    result = runner.invoke(main, ["summarize", str(path), "--method", "textrank"])
    assert result.exit_code == 0, result.output
    lines = result.output.strip().splitlines()
    assert all(line.startswith("- ") or line == "" for line in lines)
    assert any("yêu cầu" in line for line in lines)


def test_summarize_stored_case_by_id(runner, tmp_path):
    path = write_judgment(tmp_path)
    store_dir = tmp_path / "db"
    runner.invoke(main, ["ingest", str(path), "--store", str(store_dir)])
    case_id = content_id(JUDGMENT)
    by_id = runner.invoke(
        main, ["summarize", case_id, "--method", "textrank", "--store", str(store_dir)]
    )
    by_file = runner.invoke(main, ["summarize", str(path), "--method", "textrank"])
    assert by_id.exit_code == 0, by_id.output
    assert by_id.output == by_file.output


def test_summarize_store_from_environment(runner, tmp_path):
    path = write_judgment(tmp_path)
    store_dir = tmp_path / "db"
    runner.invoke(main, ["ingest", str(path), "--store", str(store_dir)])
    result = runner.invoke(
        main,
        ["summarize", content_id(JUDGMENT), "--method", "textrank"],
        env={"LEXSUMM_STORE": str(store_dir)},
    )
    assert result.exit_code == 0, result.output


def test_summarize_json_output(runner, tmp_path):
    path = write_judgment(tmp_path)
    result = runner.invoke(
        main, ["summarize", str(path), "--method", "lexrank", "--json"]
    )
    assert result.exit_code == 0, result.output
    body = json.loads(result.output)
    assert body["method_used"] == "lexrank"
    assert body["case_id"] == content_id(JUDGMENT)
    assert {s["kind"] for s in body["sections"]} == {"content", "assessment", "decision"}


def test_summarize_ratio_validation(runner, tmp_path):
    path = write_judgment(tmp_path)
    result = runner.invoke(main, ["summarize", str(path), "--ratio", "1.5"])
    assert result.exit_code != 0
    assert "ratio" in result.output


def test_summarize_unknown_method(runner, tmp_path):
    path = write_judgment(tmp_path)
    result = runner.invoke(main, ["summarize", str(path), "--method", "best"])
    assert result.exit_code != 0
    assert "unknown summary method" in result.output


def test_summarize_unknown_case_id(runner, tmp_path):
    result = runner.invoke(
        main, ["summarize", "0" * 64, "--store", str(tmp_path / "db")]
    )
    assert result.exit_code != 0
    assert "no case" in result.output


def test_summarize_supervised_needs_model(runner, tmp_path):
    path = write_judgment(tmp_path)
    result = runner.invoke(main, ["summarize", str(path), "--method", "supervised"])
    assert result.exit_code != 0
    assert "model" in result.output


# ---------------------------------------------------------------------------
# train
# ---------------------------------------------------------------------------


def seed_training_corpus(runner, tmp_path):
    docs = tmp_path / "docs"
    docs.mkdir()
    write_judgment(docs, "a.txt", JUDGMENT)
    write_judgment(docs, "b.txt", JUDGMENT.replace("CLI", "HAI"))
    store_dir = tmp_path / "db"
    runner.invoke(main, ["ingest", str(docs), "--store", str(store_dir)])
    ids = [content_id(JUDGMENT), content_id(JUDGMENT.replace("CLI", "HAI"))]
    labels = []
    for cid in ids:
        labels.append({"case_id": cid, "section": "content", "sentence_index": 0, "label": 1})
        labels.append({"case_id": cid, "section": "content", "sentence_index": 2, "label": 0})
        labels.append({"case_id": cid, "section": "decision", "sentence_index": 0, "label": 1})
    data = tmp_path / "labels.jsonl"
    data.write_text("\n".join(json.dumps(l) for l in labels) + "\n", encoding="utf-8")
    return store_dir, data


def test_train_writes_model(runner, tmp_path):
    store_dir, data = seed_training_corpus(runner, tmp_path)
    out = tmp_path / "model.json"
    result = runner.invoke(
        main,
        ["train", "--data", str(data), "--corpus", str(store_dir), "--out", str(out), "--epochs", "50"],
    )
    assert result.exit_code == 0, result.output
    assert "examples=6" in result.output
    assert "loss=" in result.output and "accuracy=" in result.output
    model = load_model(out)
    assert len(model.weights) == 6


def test_trained_model_drives_supervised_summaries(runner, tmp_path):
    store_dir, data = seed_training_corpus(runner, tmp_path)
    out = tmp_path / "model.json"
    runner.invoke(
        main,
        ["train", "--data", str(data), "--corpus", str(store_dir), "--out", str(out)],
    )
    path = write_judgment(tmp_path)
    result = runner.invoke(
        main,
        ["summarize", str(path), "--method", "supervised", "--model", str(out)],
    )
    assert result.exit_code == 0, result.output
    assert result.output.strip()


def test_train_rejects_labels_for_missing_case(runner, tmp_path):
    store_dir, data = seed_training_corpus(runner, tmp_path)
    data.write_text(
        json.dumps({"case_id": "0" * 64, "section": "content", "sentence_index": 0, "label": 1}),
        encoding="utf-8",
    )
    result = runner.invoke(
        main,
        ["train", "--data", str(data), "--corpus", str(store_dir), "--out", str(tmp_path / "m.json")],
    )
    assert result.exit_code != 0


# ---------------------------------------------------------------------------
# evaluate
# ---------------------------------------------------------------------------


def test_evaluate_prints_mean_scores(runner, tmp_path, seeded_store_dir):
    result = runner.invoke(main, ["evaluate", "--corpus", str(seeded_store_dir)])
    assert result.exit_code == 0, result.output
    lines = result.output.strip().splitlines()
    assert any(line.startswith("textrank") for line in lines)
    assert any(line.startswith("lexrank") for line in lines)
    assert "rouge1=" in lines[0] and "rougeL=" in lines[0]
    # the two fixture cases without gold files are reported, not scored
    assert "skipped 2 case(s)" in result.output


def test_evaluate_writes_report(runner, tmp_path, seeded_store_dir):
    out = tmp_path / "report.json"
    result = runner.invoke(
        main,
        ["evaluate", "--corpus", str(seeded_store_dir), "--methods", "textrank", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    report = json.loads(out.read_text(encoding="utf-8"))
    assert report["skipped"] == 2
    assert "textrank" in report["means"]


def test_evaluate_supervised_requires_model(runner, seeded_store_dir):
    result = runner.invoke(
        main,
        ["evaluate", "--corpus", str(seeded_store_dir), "--methods", "supervised"],
    )
    assert result.exit_code != 0
    assert "model" in result.output


def test_evaluate_rejects_unknown_method(runner, seeded_store_dir):
    result = runner.invoke(
        main, ["evaluate", "--corpus", str(seeded_store_dir), "--methods", "bleu"]
    )
    assert result.exit_code != 0


# ---------------------------------------------------------------------------
# serve
# ---------------------------------------------------------------------------


def test_serve_validates_addr(runner, tmp_path):
    result = runner.invoke(
        main, ["serve", "--addr", "nonsense", "--store", str(tmp_path / "db")]
    )
    assert result.exit_code != 0
    assert "host:port" in result.output


def test_help_lists_subcommands(runner):
    result = runner.invoke(main, ["--help"])
    assert result.exit_code == 0
    for name in ("ingest", "summarize", "train", "evaluate", "serve"):
        assert name in result.output
