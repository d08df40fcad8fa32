"""End-to-end per-verb analyses over a set of corpora.

Per-sentence work is split into contiguous chunks that may run in worker
processes. Partial counters are merged in chunk order and each example is
the one with the smallest corpus position, so results do not depend on the
number of workers.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from contextlib import nullcontext
from dataclasses import dataclass, field

from phishsyntax.corpus import CorpusManifest, LoadedCorpus, load_corpus
from phishsyntax.depargs import RelationConfig, collect_arg_records
from phishsyntax.errors import ZeroVector
from phishsyntax.pathex import PRETERMINAL_TARGETS, PathEncoding, canonical_string, extract_all_paths
from phishsyntax.stats import FreqDist, PathVector, cosine, merge, percentage, top_k
from phishsyntax.treebank import DEFAULT_VERBS, find_target_occurrences, inflection_table


@dataclass(frozen=True)
class SimilarityCell:
    verb: str
    pair: tuple[str, str]
    score: float | None  # None when either side has no counts


@dataclass(frozen=True)
class PathRow:
    rank: int
    path: str
    count: int
    percentage: float
    verb_form: str
    end_form: str | None
    example: str


@dataclass(frozen=True)
class ArgRow:
    rank: int
    argument: str
    count: int
    percentage: float
    percentage_of_occurrences: float
    example: str


@dataclass
class PathAnalysis:
    verbs: list[str]
    corpora: list[str]
    pairs: list[tuple[str, str]]
    vectors: dict = field(default_factory=dict)
    tables: dict = field(default_factory=dict)
    cells: list[SimilarityCell] = field(default_factory=list)


@dataclass
class ArgAnalysis:
    verbs: list[str]
    corpora: list[str]
    pairs: list[tuple[str, str]]
    occurrences: dict = field(default_factory=dict)
    subjects: dict = field(default_factory=dict)
    objects: dict = field(default_factory=dict)
    subject_tables: dict = field(default_factory=dict)
    object_tables: dict = field(default_factory=dict)
    subject_cells: list[SimilarityCell] = field(default_factory=list)
    object_cells: list[SimilarityCell] = field(default_factory=list)


@dataclass
class AnalysisReport:
    settings: dict
    corpora: list[dict]
    paths: PathAnalysis | None = None
    args: ArgAnalysis | None = None


def _chunks(items, n):
    n = max(1, min(n, len(items)))
    size, extra = divmod(len(items), n)
    out, start = [], 0
    for i in range(n):
        end = start + size + (1 if i < extra else 0)
        out.append(items[start:end])
        start = end
    return out


def _map(func, jobs, pool):
    if pool is None or len(jobs) <= 1:
        return [func(job) for job in jobs]
    return list(pool.map(func, jobs))


def _pool(workers):
    return ProcessPoolExecutor(max_workers=workers) if workers > 1 else nullcontext()


def _run_per_corpus(func, per_corpus_items, params, workers):
    """Run ``func`` over contiguous chunks of every corpus; one list of chunk results per corpus."""
    with _pool(workers) as pool:
        return [
            _map(func, [(chunk,) + params for chunk in _chunks(items, workers)], pool)
            for items in per_corpus_items
        ]


def _keep_first(examples: dict, key, ordinal, value):
    old = examples.get(key)
    if old is None or ordinal < old[0]:
        examples[key] = (ordinal, value)


def _path_job(job):
    items, verbs, table, encoding, target = job
    vectors = {v: PathVector() for v in verbs}
    examples = {v: {} for v in verbs}
    for pos, tree, text, doc_id in items:
        for occ_no, occ in enumerate(find_target_occurrences(tree, verbs, table, doc_id)):
            tokens = None
            for path_no, path in enumerate(extract_all_paths(tree, occ, target)):
                key = canonical_string(path, encoding)
                vectors[occ.target_lemma].increment(key)
                seen = examples[occ.target_lemma]
                # items arrive in corpus order, so the first hit is the earliest
                if key not in seen:
                    if tokens is None:
                        tokens = tree.tokens()
                    end = tokens[path.end_token_index - 1] if path.end_token_index else None
                    seen[key] = ((pos, occ_no, path_no), (occ.surface_form, end, text))
    return vectors, examples


def _arg_key(token, use_lemma):
    if use_lemma and token.lemma:
        return token.lemma.lower()
    return token.form.lower()


def _arg_job(job):
    items, verbs, table, relations, use_lemma = job
    occurrences = {v: 0 for v in verbs}
    subjects = {v: FreqDist() for v in verbs}
    objects = {v: FreqDist() for v in verbs}
    subj_ex = {v: {} for v in verbs}
    obj_ex = {v: {} for v in verbs}
    for pos, tree, graph, text, doc_id in items:
        occs = find_target_occurrences(tree, verbs, table, doc_id)
        for occ_no, rec in enumerate(collect_arg_records([graph], occs, relations)):
            verb = rec.occurrence.target_lemma
            occurrences[verb] += 1
            for token, dist, examples in ((rec.subject, subjects, subj_ex), (rec.object, objects, obj_ex)):
                if token is None:
                    continue
                key = _arg_key(token, use_lemma)
                dist[verb].increment(key)
                _keep_first(examples[verb], key, (pos, occ_no), text)
    return occurrences, subjects, objects, subj_ex, obj_ex


def _merge_examples(parts):
    out = {}
    for part in parts:
        for key, (ordinal, value) in part.items():
            _keep_first(out, key, ordinal, value)
    return out


def _cells(verbs, pairs, vectors):
    cells = []
    for verb in verbs:
        for a, b in pairs:
            try:
                score = cosine(vectors[verb][a], vectors[verb][b])
            except ZeroVector:
                score = None
            cells.append(SimilarityCell(verb, (a, b), score))
    return cells


def _load(source, need_deps):
    if isinstance(source, tuple):
        return source
    if isinstance(source, CorpusManifest):
        return [load_corpus(e, need_deps=need_deps) for e in source.corpora], source.resolved_pairs()
    corpora = list(source)
    labels = [c.entry.label for c in corpora]
    return corpora, [(a, b) for i, a in enumerate(labels) for b in labels[i + 1:]]


def run_path_analysis(
    source,
    verbs=DEFAULT_VERBS,
    encoding: PathEncoding | None = None,
    k: int = 3,
    target: str = PRETERMINAL_TARGETS,
    workers: int = 1,
    pairs=None,
    inflections=None,
) -> PathAnalysis:
    """Per-verb path vectors, top-k tables and pairwise cosine cells.

    ``source`` is a manifest, a sequence of loaded corpora, or a
    ``(corpora, pairs)`` tuple.
    """
    corpora, default_pairs = _load(source, need_deps=False)
    verbs = [v.lower() for v in verbs]
    table = inflection_table(verbs, inflections)
    encoding = encoding or PathEncoding()
    result = PathAnalysis(verbs, [c.entry.label for c in corpora], list(pairs or default_pairs))
    for verb in verbs:
        result.vectors[verb] = {}
        result.tables[verb] = {}
    parts_by_corpus = _run_per_corpus(
        _path_job,
        [[(i, s.tree, s.text, s.doc_id) for i, s in enumerate(c.sentences)] for c in corpora],
        (verbs, table, encoding, target),
        workers,
    )
    for corpus, parts in zip(corpora, parts_by_corpus):
        label = corpus.entry.label
        for verb in verbs:
            vec = PathVector()
            for vectors, _ in parts:
                vec = merge(vec, vectors[verb])
            examples = _merge_examples(ex[verb] for _, ex in parts)
            result.vectors[verb][label] = vec
            rows = []
            if vec.total:
                for rank, entry in enumerate(top_k(vec, k), start=1):
                    verb_form, end_form, text = examples[entry.key][1]
                    rows.append(PathRow(rank, entry.key, entry.count, entry.percentage, verb_form, end_form, text))
            result.tables[verb][label] = rows
    result.cells = _cells(verbs, result.pairs, result.vectors)
    return result


def _arg_rows(dist, examples, occurrences, k):
    if not dist.total:
        return []
    return [
        ArgRow(
            rank,
            e.key,
            e.count,
            e.percentage,
            float(percentage(e.count, occurrences)),
            examples[e.key][1],
        )
        for rank, e in enumerate(top_k(dist, k), start=1)
    ]


def run_arg_analysis(
    source,
    verbs=DEFAULT_VERBS,
    relations: RelationConfig | None = None,
    k: int = 3,
    workers: int = 1,
    pairs=None,
    inflections=None,
    use_lemma: bool = False,
) -> ArgAnalysis:
    """Per-verb subject/object distributions and pairwise cosine cells.

    Percentages use occurrences with an extracted argument as denominator;
    ``percentage_of_occurrences`` uses all occurrences of the verb.
    """
    corpora, default_pairs = _load(source, need_deps=True)
    verbs = [v.lower() for v in verbs]
    table = inflection_table(verbs, inflections)
    relations = relations or RelationConfig()
    result = ArgAnalysis(verbs, [c.entry.label for c in corpora], list(pairs or default_pairs))
    for d in (result.occurrences, result.subjects, result.objects, result.subject_tables, result.object_tables):
        for verb in verbs:
            d[verb] = {}
    parts_by_corpus = _run_per_corpus(
        _arg_job,
        [[(i, s.tree, s.graph, s.text, s.doc_id) for i, s in enumerate(c.sentences)] for c in corpora],
        (verbs, table, relations, use_lemma),
        workers,
    )
    for corpus, parts in zip(corpora, parts_by_corpus):
        label = corpus.entry.label
        for verb in verbs:
            n_occ = sum(p[0][verb] for p in parts)
            subj, obj = FreqDist(), FreqDist()
            for p in parts:
                subj = merge(subj, p[1][verb])
                obj = merge(obj, p[2][verb])
            result.occurrences[verb][label] = n_occ
            result.subjects[verb][label] = subj
            result.objects[verb][label] = obj
            result.subject_tables[verb][label] = _arg_rows(subj, _merge_examples(p[3][verb] for p in parts), n_occ, k)
            result.object_tables[verb][label] = _arg_rows(obj, _merge_examples(p[4][verb] for p in parts), n_occ, k)
    result.subject_cells = _cells(verbs, result.pairs, result.subjects)
    result.object_cells = _cells(verbs, result.pairs, result.objects)
    return result


def corpus_summary(corpora) -> list[dict]:
    return [
        {
            "label": c.entry.label,
            "kind": c.entry.kind,
            "sentences": len(c.sentences),
            "documents": c.doc_count,
            "unique_documents": c.unique_doc_count,
        }
        for c in corpora
    ]


def analyze(
    manifest: CorpusManifest,
    verbs=DEFAULT_VERBS,
    encoding: PathEncoding | None = None,
    k: int = 3,
    target: str = PRETERMINAL_TARGETS,
    relations: RelationConfig | None = None,
    workers: int = 1,
    inflections=None,
    use_lemma: bool = False,
    do_paths: bool = True,
    do_args: bool = True,
) -> AnalysisReport:
    corpora = [load_corpus(e, need_deps=do_args) for e in manifest.corpora]
    pairs = manifest.resolved_pairs()
    encoding = encoding or PathEncoding()
    relations = relations or RelationConfig()
    settings = {
        "verbs": [v.lower() for v in verbs],
        "encoding": encoding.variant,
        "ascii": encoding.ascii,
        "prps_compat": encoding.prps_compat,
        "path_target": target,
        "top_k": k,
        "subject_relations": list(relations.subject_relations),
        "object_relations": list(relations.object_relations),
        "argument_key": "lemma" if use_lemma else "form",
        "pairs": [list(p) for p in pairs],
    }
    report = AnalysisReport(settings, corpus_summary(corpora))
    if do_paths:
        report.paths = run_path_analysis(
            (corpora, pairs), verbs, encoding, k, target, workers, pairs, inflections
        )
    if do_args:
        report.args = run_arg_analysis(
            (corpora, pairs), verbs, relations, k, workers, pairs, inflections, use_lemma
        )
    return report
