import json

import pytest

from helpers import write_manifest
from phishsyntax.analysis import AnalysisReport, ArgAnalysis, ArgRow, SimilarityCell, analyze
from phishsyntax.corpus import load_manifest
from phishsyntax.errors import UnwritableOutput
from phishsyntax.report import render, render_json, render_markdown, render_tsv
from phishsyntax.stats import FreqDist


def _one_cell_report():
    a = ArgAnalysis(["confirm"], ["phish", "legit"], [("phish", "legit")])
    a.occurrences = {"confirm": {"phish": 6802, "legit": 10}}
    a.subjects = {"confirm": {"phish": FreqDist({"you": 4263, "we": 737}), "legit": FreqDist({"i": 2})}}
    a.objects = {"confirm": {"phish": FreqDist(), "legit": FreqDist()}}
    a.subject_tables = {
        "confirm": {
            "phish": [ArgRow(1, "you", 4263, 85.26, 62.67, "We need you to confirm your identity .")],
            "legit": [ArgRow(1, "i", 2, 100.0, 20.0, "I just want to confirm the trades .")],
        }
    }
    a.object_tables = {"confirm": {"phish": [], "legit": []}}
    a.subject_cells = [SimilarityCell("confirm", ("phish", "legit"), 0.29225)]
    a.object_cells = [SimilarityCell("confirm", ("phish", "legit"), None)]
    return AnalysisReport({"verbs": ["confirm"], "encoding": "gj", "path_target": "preterminal", "top_k": 1},
                          [{"label": "phish", "kind": "phishing", "sentences": 1, "documents": None,
                            "unique_documents": None}], args=a)


def test_markdown_formats():
    md = render_markdown(_one_cell_report())
    assert "| confirm | phish | 1 | you (85.26%) We need you to confirm your identity . |" in md
    assert "| Verb | Subject: phish vs legit | Object: phish vs legit |" in md
    assert "| confirm | 0.2923 | n/a |" in md


def test_tsv_and_json():
    files = render_tsv(_one_cell_report())
    assert files["args_cosine.tsv"].splitlines()[1:] == [
        "subject\tconfirm\tphish\tlegit\t0.2923",
        "object\tconfirm\tphish\tlegit\tn/a",
    ]
    row = files["args_top.tsv"].splitlines()[1].split("\t")
    assert row[:9] == ["subject", "confirm", "phish", "1", "you", "4263", "85.26", "62.67", "6802"]
    data = json.loads(render_json(_one_cell_report()))
    sub = data["arguments"]["subjects"]["confirm"]["phish"]
    assert (sub["occurrences"], sub["with_argument"]) == (6802, 5000)
    assert data["arguments"]["object_cosine"][0]["cosine"] is None


def test_markdown_escapes_pipes():
    rep = _one_cell_report()
    rep.args.subject_tables["confirm"]["phish"] = [ArgRow(1, "a|b", 1, 100.0, 100.0, "x | y")]
    assert "a\\|b (100.00%) x \\| y" in render_markdown(rep)


def test_render_is_byte_identical(tmp_path, fixtures):
    corpora = {
        "phish": {"trees": (fixtures / "args.mrg").read_text(), "deps": (fixtures / "args.sd").read_text()},
        "legit": {"trees": (fixtures / "update_legit.mrg").read_text(),
                  "deps": "root(ROOT-0, update-4)\n\nroot(ROOT-0, update-14)\n\nroot(ROOT-0, update-3)\n"},
    }
    m = load_manifest(write_manifest(tmp_path / "in", corpora))
    outs = []
    for n in range(2):
        out = tmp_path / f"out{n}"
        written = render(analyze(m, ["click", "update"]), out, ("md", "tsv", "json"), figures=True, snapshots=True)
        outs.append({p.relative_to(out): p.read_bytes() for p in written})
    assert outs[0] == outs[1]
    names = {str(p) for p in outs[0]}
    assert {"report.md", "report.json", "paths_top.tsv", "paths_cosine.tsv", "args_top.tsv", "args_cosine.tsv",
            "figures/paths_cosine.png", "figures/subjects_cosine.png", "figures/objects_cosine.png"} <= names
    assert "counters/paths.click.phish.tsv" in names
    assert outs[0][next(p for p in outs[0] if str(p) == "figures/paths_cosine.png")][:8] == b"\x89PNG\r\n\x1a\n"


def test_unknown_format(tmp_path):
    with pytest.raises(ValueError):
        render(_one_cell_report(), tmp_path, ("xml",))


def test_unwritable_output(tmp_path):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    with pytest.raises(UnwritableOutput):
        render(_one_cell_report(), blocker / "sub", ("md",), figures=False)
