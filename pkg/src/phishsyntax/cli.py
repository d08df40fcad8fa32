"""Command line interface: ``dedup``, ``paths``, ``args`` and ``analyze``.

Exit codes: 0 success, 1 input error, 2 alignment or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from phishsyntax.analysis import analyze
from phishsyntax.corpus import dedup, language_filter, load_bodies, load_manifest, write_bodies
from phishsyntax.depargs import DEFAULT_OBJECT_RELATIONS, DEFAULT_SUBJECT_RELATIONS, RelationConfig
from phishsyntax.errors import InputError, PhishSyntaxError
from phishsyntax.pathex import ALL_TARGETS, GJ_FULL, PRETERMINAL_TARGETS, SG_RECODED, PathEncoding
from phishsyntax.report import FORMATS, render, render_json, render_markdown, render_tsv
from phishsyntax.treebank import DEFAULT_VERBS

log = logging.getLogger("phishsyntax")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _csv(value: str) -> list[str]:
    return [v.strip() for v in value.split(",") if v.strip()]


def _add_analysis_options(p: argparse.ArgumentParser, paths=True, args=True):
    p.add_argument("--manifest", required=True, help="JSON manifest mapping corpus labels to files")
    p.add_argument("--verbs", type=_csv, default=list(DEFAULT_VERBS), help="comma-separated target verb lemmas")
    p.add_argument("--inflections", help="JSON file mapping lemma -> list of surface forms")
    p.add_argument("--top-k", type=int, default=3)
    p.add_argument("--format", type=_csv, default=["md"], help="comma-separated subset of md,tsv,json")
    p.add_argument("--out", help="output directory; without it the report goes to stdout")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--no-figures", action="store_true", help="skip PNG figures")
    p.add_argument("--snapshots", action="store_true", help="also write raw counters as sorted TSV")
    if paths:
        p.add_argument("--encoding", choices=[GJ_FULL, SG_RECODED], default=GJ_FULL)
        p.add_argument("--path-target", choices=[PRETERMINAL_TARGETS, ALL_TARGETS], default=PRETERMINAL_TARGETS)
        p.add_argument("--prps-compat", action="store_true", help="print PRP$ as PRPS")
        p.add_argument("--ascii", action="store_true", help="ASCII arrow prefixes instead of glyphs")
    if args:
        p.add_argument("--subject-relations", type=_csv, default=list(DEFAULT_SUBJECT_RELATIONS))
        p.add_argument("--object-relations", type=_csv, default=list(DEFAULT_OBJECT_RELATIONS))
        p.add_argument("--no-passive", action="store_true", help="drop nsubjpass from subject relations")
        p.add_argument("--lemma", action="store_true", help="count arguments by lemma instead of form")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="phishsyntax", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    d = sub.add_parser("dedup", help="drop duplicate (and optionally non-English) email bodies")
    d.add_argument("--input", required=True, help="JSONL file or directory of .txt bodies")
    d.add_argument("--out", help="write retained bodies as JSONL")
    d.add_argument("--label", default="")
    d.add_argument("--language-filter", action="store_true")
    d.add_argument("--min-ascii", type=float, default=0.80)
    d.add_argument("--min-stopword-rate", type=float, default=0.02)
    d.add_argument("--flagged", help="write language-flagged bodies as JSONL")
    d.add_argument("--expected", type=int, help="reference count to compare the retained count against")

    _add_analysis_options(sub.add_parser("paths", help="parse tree path analysis"), args=False)
    _add_analysis_options(sub.add_parser("args", help="subject/object analysis"), paths=False)
    _add_analysis_options(sub.add_parser("analyze", help="both analyses"))
    return parser


def _run_dedup(ns) -> int:
    docs = load_bodies(ns.input, ns.label)
    kept = dedup(docs)
    print(f"input\t{len(docs)}")
    print(f"unique\t{len(kept)}")
    if ns.language_filter:
        kept, flagged = language_filter(kept, ns.min_ascii, ns.min_stopword_rate)
        print(f"non_english\t{len(flagged)}")
        print(f"retained\t{len(kept)}")
        if ns.flagged:
            write_bodies(flagged, ns.flagged)
    if ns.expected is not None:
        print(f"expected\t{ns.expected}")
        print(f"difference\t{len(kept) - ns.expected}")
    if ns.out:
        write_bodies(kept, ns.out)
    return 0


def _run_analysis(ns) -> int:
    unknown = set(ns.format) - set(FORMATS)
    if unknown:
        raise InputError(f"unknown format(s): {', '.join(sorted(unknown))}")
    if ns.top_k < 1 or ns.workers < 1:
        raise InputError("--top-k and --workers must be positive")
    manifest = load_manifest(ns.manifest)
    inflections = None
    if ns.inflections:
        try:
            with open(ns.inflections, encoding="utf-8") as f:
                inflections = json.load(f)
        except (OSError, ValueError) as exc:
            raise InputError(f"cannot read inflection table: {exc}") from None
    do_paths = ns.command in ("paths", "analyze")
    do_args = ns.command in ("args", "analyze")
    encoding = None
    if do_paths:
        encoding = PathEncoding(ns.encoding, ascii=ns.ascii, prps_compat=ns.prps_compat)
    relations = None
    if do_args:
        subj = [r for r in ns.subject_relations if not (ns.no_passive and r == "nsubjpass")]
        relations = RelationConfig(tuple(subj), tuple(ns.object_relations))
    report = analyze(
        manifest,
        verbs=ns.verbs,
        encoding=encoding,
        k=ns.top_k,
        target=getattr(ns, "path_target", PRETERMINAL_TARGETS),
        relations=relations,
        workers=ns.workers,
        inflections=inflections,
        use_lemma=getattr(ns, "lemma", False),
        do_paths=do_paths,
        do_args=do_args,
    )
    if ns.out:
        for path in render(report, ns.out, ns.format, figures=not ns.no_figures, snapshots=ns.snapshots):
            log.info("wrote %s", path)
        return 0
    for fmt in ns.format:
        if fmt == "md":
            sys.stdout.write(render_markdown(report))
        elif fmt == "json":
            sys.stdout.write(render_json(report))
        else:
            for name, text in render_tsv(report).items():
                sys.stdout.write(f"# {name}\n{text}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if ns.command == "dedup":
            return _run_dedup(ns)
        return _run_analysis(ns)
    except PhishSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
