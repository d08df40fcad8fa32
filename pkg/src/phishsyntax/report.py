"""Render an ``AnalysisReport`` as Markdown, TSV or JSON files.

Table layouts follow the usual shape for this analysis: ranked paths per
verb and corpus with an example, a verb-by-pair cosine grid for paths, the
most frequent subjects and objects as ``form (pct%)`` with an example, and
a verb-by-pair grid for subject and object cosines. Similarities print to
4 decimals and percentages to 2, both rounded half-up.
"""

from __future__ import annotations

import json
from pathlib import Path

from phishsyntax.analysis import AnalysisReport
from phishsyntax.errors import UnwritableOutput
from phishsyntax.stats import format_similarity, round_half_up

FORMATS = ("md", "tsv", "json")


def _pct(value: float) -> str:
    return f"{round_half_up(value, 2)}%"


def _pair_name(pair) -> str:
    return f"{pair[0]} vs {pair[1]}"


def _md_cell(text) -> str:
    return str(text).replace("|", "\\|").replace("\n", " ")


def _tsv_cell(text) -> str:
    if text is None:
        return ""
    return str(text).replace("\t", " ").replace("\r", " ").replace("\n", " ")


def _md_table(header, rows) -> list[str]:
    out = ["| " + " | ".join(_md_cell(h) for h in header) + " |"]
    out.append("|" + "|".join("---" for _ in header) + "|")
    out += ["| " + " | ".join(_md_cell(c) for c in row) + " |" for row in rows]
    return out


def _cell_grid(cells):
    by_key = {(c.verb, c.pair): c.score for c in cells}
    verbs = list(dict.fromkeys(c.verb for c in cells))
    return verbs, by_key


def render_markdown(report: AnalysisReport) -> str:
    lines = ["# Syntactic feature comparison", ""]
    s = report.settings
    lines += [
        f"- verbs: {', '.join(s['verbs'])}",
        f"- path encoding: {s['encoding']} (targets: {s['path_target']})",
        f"- top-k: {s['top_k']}",
        "",
        "## Corpora",
        "",
    ]
    lines += _md_table(
        ["Corpus", "Kind", "Sentences", "Documents", "Unique documents"],
        [
            [c["label"], c["kind"], c["sentences"], _dash(c["documents"]), _dash(c["unique_documents"])]
            for c in report.corpora
        ],
    )
    if report.paths is not None:
        p = report.paths
        lines += ["", "## Most frequent parse tree paths", ""]
        rows = []
        for verb in p.verbs:
            for label in p.corpora:
                for row in p.tables[verb][label]:
                    target = f" [{row.verb_form} → {row.end_form}]" if row.end_form else ""
                    rows.append(
                        [verb, row.rank, label, f"{row.path} ({row.count}){target} : {row.example}"]
                    )
        lines += _md_table(["Verb", "Rank", "Corpus", "Parse tree path & example"], rows)
        lines += ["", "## Cosine similarity of parse tree paths", ""]
        verbs, grid = _cell_grid(p.cells)
        lines += _md_table(
            ["Verb"] + [_pair_name(pair) for pair in p.pairs],
            [[v] + [format_similarity(grid[(v, pair)]) for pair in p.pairs] for v in verbs],
        )
    if report.args is not None:
        a = report.args
        for title, tables in (("subject", a.subject_tables), ("object", a.object_tables)):
            lines += ["", f"## Most frequent {title}s", ""]
            rows = []
            for verb in a.verbs:
                for label in a.corpora:
                    for row in tables[verb][label]:
                        rows.append([verb, label, row.rank, f"{row.argument} ({_pct(row.percentage)}) {row.example}"])
            lines += _md_table(["Verb", "Corpus", "Rank", f"The most frequent {title} (percentage) & example"], rows)
        lines += ["", "## Cosine similarity of subjects and objects", ""]
        verbs, subj = _cell_grid(a.subject_cells)
        _, obj = _cell_grid(a.object_cells)
        header = ["Verb"]
        header += [f"Subject: {_pair_name(pair)}" for pair in a.pairs]
        header += [f"Object: {_pair_name(pair)}" for pair in a.pairs]
        lines += _md_table(
            header,
            [
                [v]
                + [format_similarity(subj[(v, pair)]) for pair in a.pairs]
                + [format_similarity(obj[(v, pair)]) for pair in a.pairs]
                for v in verbs
            ],
        )
    return "\n".join(lines) + "\n"


def _dash(value):
    return "-" if value is None else value


def _tsv(header, rows) -> str:
    out = ["\t".join(header)]
    out += ["\t".join(_tsv_cell(c) for c in row) for row in rows]
    return "\n".join(out) + "\n"


def render_tsv(report: AnalysisReport) -> dict[str, str]:
    files = {}
    if report.paths is not None:
        p = report.paths
        files["paths_top.tsv"] = _tsv(
            ["verb", "corpus", "rank", "path", "count", "percentage", "verb_form", "end_form", "example"],
            [
                [verb, label, r.rank, r.path, r.count, round_half_up(r.percentage, 2), r.verb_form, r.end_form, r.example]
                for verb in p.verbs
                for label in p.corpora
                for r in p.tables[verb][label]
            ],
        )
        files["paths_cosine.tsv"] = _tsv(
            ["verb", "corpus_a", "corpus_b", "cosine"],
            [[c.verb, c.pair[0], c.pair[1], format_similarity(c.score)] for c in p.cells],
        )
    if report.args is not None:
        a = report.args
        rows = []
        for role, tables in (("subject", a.subject_tables), ("object", a.object_tables)):
            for verb in a.verbs:
                for label in a.corpora:
                    for r in tables[verb][label]:
                        rows.append(
                            [role, verb, label, r.rank, r.argument, r.count,
                             round_half_up(r.percentage, 2), round_half_up(r.percentage_of_occurrences, 2),
                             a.occurrences[verb][label], r.example]
                        )
        files["args_top.tsv"] = _tsv(
            ["role", "verb", "corpus", "rank", "argument", "count", "percentage",
             "percentage_of_occurrences", "occurrences", "example"],
            rows,
        )
        files["args_cosine.tsv"] = _tsv(
            ["role", "verb", "corpus_a", "corpus_b", "cosine"],
            [["subject", c.verb, c.pair[0], c.pair[1], format_similarity(c.score)] for c in a.subject_cells]
            + [["object", c.verb, c.pair[0], c.pair[1], format_similarity(c.score)] for c in a.object_cells],
        )
    return files


def _cells_json(cells):
    return [
        {"verb": c.verb, "pair": list(c.pair), "cosine": c.score, "display": format_similarity(c.score)}
        for c in cells
    ]


def report_to_dict(report: AnalysisReport) -> dict:
    out = {"settings": report.settings, "corpora": report.corpora}
    if report.paths is not None:
        p = report.paths
        out["paths"] = {
            "tables": {
                verb: {
                    label: [
                        {
                            "rank": r.rank,
                            "path": r.path,
                            "count": r.count,
                            "percentage": r.percentage,
                            "verb_form": r.verb_form,
                            "end_form": r.end_form,
                            "example": r.example,
                        }
                        for r in p.tables[verb][label]
                    ]
                    for label in p.corpora
                }
                for verb in p.verbs
            },
            "totals": {verb: {label: p.vectors[verb][label].total for label in p.corpora} for verb in p.verbs},
            "cosine": _cells_json(p.cells),
        }
    if report.args is not None:
        a = report.args

        def table(tables, dists):
            return {
                verb: {
                    label: {
                        "occurrences": a.occurrences[verb][label],
                        "with_argument": dists[verb][label].total,
                        "rows": [
                            {
                                "rank": r.rank,
                                "argument": r.argument,
                                "count": r.count,
                                "percentage": r.percentage,
                                "percentage_of_occurrences": r.percentage_of_occurrences,
                                "example": r.example,
                            }
                            for r in tables[verb][label]
                        ],
                    }
                    for label in a.corpora
                }
                for verb in a.verbs
            }

        out["arguments"] = {
            "subjects": table(a.subject_tables, a.subjects),
            "objects": table(a.object_tables, a.objects),
            "subject_cosine": _cells_json(a.subject_cells),
            "object_cosine": _cells_json(a.object_cells),
        }
    return out


def render_json(report: AnalysisReport) -> str:
    return json.dumps(report_to_dict(report), ensure_ascii=False, indent=2) + "\n"


def snapshot_files(report: AnalysisReport) -> dict[str, str]:
    """Raw counters as sorted ``key<TAB>count`` text, one file per verb/corpus/feature."""
    files = {}
    if report.paths is not None:
        for verb, per_corpus in report.paths.vectors.items():
            for label, vec in per_corpus.items():
                files[f"counters/paths.{verb}.{label}.tsv"] = vec.dumps()
    if report.args is not None:
        for role, dists in (("subjects", report.args.subjects), ("objects", report.args.objects)):
            for verb, per_corpus in dists.items():
                for label, dist in per_corpus.items():
                    files[f"counters/{role}.{verb}.{label}.tsv"] = dist.dumps()
    return files


def render(report: AnalysisReport, out_dir, formats=("md",), figures: bool = True, snapshots: bool = False) -> list[Path]:
    """Write the requested formats (plus figures and counter snapshots) under ``out_dir``."""
    unknown = set(formats) - set(FORMATS)
    if unknown:
        raise ValueError(f"unknown report format(s): {', '.join(sorted(unknown))}")
    files: dict[str, str] = {}
    if "md" in formats:
        files["report.md"] = render_markdown(report)
    if "tsv" in formats:
        files.update(render_tsv(report))
    if "json" in formats:
        files["report.json"] = render_json(report)
    if snapshots:
        files.update(snapshot_files(report))
    out_dir = Path(out_dir)
    written = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for name, text in files.items():
            path = out_dir / name
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, "w", encoding="utf-8", newline="\n") as f:
                f.write(text)
            written.append(path)
        if figures:
            from phishsyntax.figures import write_figures

            written += write_figures(report, out_dir / "figures")
    except OSError as exc:
        raise UnwritableOutput(f"cannot write report to {out_dir}: {exc}") from None
    return written
