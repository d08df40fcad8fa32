"""Corpus inputs: plain-text bodies, dedup, language filtering and manifests."""

from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from pathlib import Path

from phishsyntax.depargs import CONLL_X, SD_TEXT, DepGraph, parse_deps
from phishsyntax.errors import DataError, ManifestError, SentenceAlignmentMismatch
from phishsyntax.treebank import ParseTree, load_trees, read_sentence_ids

PHISHING = "phishing"
LEGITIMATE = "legitimate"
OTHER = "other"

_WS_RUN = re.compile(r"\s+")
_WORD = re.compile(r"[^\W\d_]+(?:'[^\W\d_]+)?")

ENGLISH_STOPWORDS = frozenset(
    """
    a about above after again against all am an and any are as at be because been before being
    below between both but by can could did do does doing down during each few for from further
    had has have having he her here hers herself him himself his how i if in into is it its itself
    just me more most my myself no nor not now of off on once only or other our ours ourselves out
    over own please same she should so some such than that the their theirs them themselves then
    there these they this those through to too under until up very was we were what when where
    which while who whom why will with would you your yours yourself yourselves
    """.split()
)


@dataclass(frozen=True)
class CorpusDoc:
    doc_id: str
    body: str
    label: str = ""


def normalize_body(body: str) -> str:
    return _WS_RUN.sub(" ", body.lower()).strip()


def body_digest(body: str) -> str:
    return hashlib.sha256(normalize_body(body).encode("utf-8")).hexdigest()


def dedup(docs):
    """Keep the first document for each normalized body, preserving order."""
    seen = set()
    kept = []
    for doc in docs:
        digest = body_digest(doc.body)
        if digest not in seen:
            seen.add(digest)
            kept.append(doc)
    return kept


@dataclass(frozen=True)
class LanguageStats:
    ascii_letter_fraction: float
    stopword_rate: float


def language_stats(body: str) -> LanguageStats:
    letters = [c for c in body if c.isalpha()]
    ascii_letters = sum(1 for c in letters if c.isascii())
    words = _WORD.findall(body.lower())
    hits = sum(1 for w in words if w in ENGLISH_STOPWORDS)
    return LanguageStats(
        ascii_letters / len(letters) if letters else 0.0,
        hits / len(words) if words else 0.0,
    )


def language_filter(docs, min_ascii_fraction: float = 0.80, min_stopword_rate: float = 0.02):
    """Split docs into (kept, flagged).

    A document is flagged when the share of its letters that are ASCII is
    below ``min_ascii_fraction`` or when fewer than ``min_stopword_rate``
    of its word tokens are English stopwords. Documents with no letters are
    flagged.
    """
    kept, flagged = [], []
    for doc in docs:
        s = language_stats(doc.body)
        if s.ascii_letter_fraction < min_ascii_fraction or s.stopword_rate < min_stopword_rate:
            flagged.append(doc)
        else:
            kept.append(doc)
    return kept, flagged


def load_bodies(path, label: str = "") -> list[CorpusDoc]:
    """Read documents from a JSONL file (``doc_id``, ``body``) or a directory of ``*.txt`` files."""
    path = Path(path)
    if path.is_dir():
        return [
            CorpusDoc(p.stem, p.read_text(encoding="utf-8", errors="replace"), label)
            for p in sorted(path.glob("*.txt"))
        ]
    docs = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
                docs.append(CorpusDoc(str(rec.get("doc_id", lineno)), rec["body"], rec.get("label", label)))
            except (ValueError, KeyError, AttributeError) as exc:
                raise ManifestError(f"{path}:{lineno}: bad body record ({exc})") from None
    return docs


def write_bodies(docs, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for doc in docs:
            rec = {"doc_id": doc.doc_id, "body": doc.body}
            if doc.label:
                rec["label"] = doc.label
            f.write(json.dumps(rec, ensure_ascii=False) + "\n")


def infer_kind(label: str) -> str:
    low = label.lower()
    if low.startswith("phish"):
        return PHISHING
    if low.startswith("legit"):
        return LEGITIMATE
    return OTHER


@dataclass(frozen=True)
class CorpusEntry:
    label: str
    trees: Path
    deps: Path | None = None
    bodies: Path | None = None
    ids: Path | None = None
    sentences: Path | None = None
    deps_format: str = SD_TEXT
    kind: str = OTHER


@dataclass(frozen=True)
class CorpusManifest:
    corpora: tuple[CorpusEntry, ...]
    pairs: tuple[tuple[str, str], ...] | None = None

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.corpora]

    def entry(self, label: str) -> CorpusEntry:
        for c in self.corpora:
            if c.label == label:
                return c
        raise ManifestError(f"no corpus labelled {label!r}")

    def default_pairs(self) -> list[tuple[str, str]]:
        """Each phishing corpus against each legitimate one, then phishing against phishing."""
        phish = [c.label for c in self.corpora if c.kind == PHISHING]
        legit = [c.label for c in self.corpora if c.kind == LEGITIMATE]
        pairs = [(p, l) for p in phish for l in legit]
        pairs += [(a, b) for i, a in enumerate(phish) for b in phish[i + 1:]]
        if not pairs:
            labels = self.labels
            pairs = [(a, b) for i, a in enumerate(labels) for b in labels[i + 1:]]
        return pairs

    def resolved_pairs(self) -> list[tuple[str, str]]:
        return list(self.pairs) if self.pairs is not None else self.default_pairs()


_PATH_KEYS = ("trees", "deps", "bodies", "ids", "sentences")


def manifest_from_dict(data: dict, base_dir=".") -> CorpusManifest:
    base = Path(base_dir)
    if not isinstance(data, dict) or not isinstance(data.get("corpora"), list) or not data["corpora"]:
        raise ManifestError("manifest needs a nonempty 'corpora' list")
    entries = []
    seen = set()
    for raw in data["corpora"]:
        if not isinstance(raw, dict) or not raw.get("label") or not raw.get("trees"):
            raise ManifestError(f"corpus entry needs 'label' and 'trees': {raw!r}")
        label = str(raw["label"])
        if label in seen:
            raise ManifestError(f"duplicate corpus label {label!r}")
        seen.add(label)
        paths = {}
        for key in _PATH_KEYS:
            if raw.get(key):
                p = Path(raw[key])
                p = p if p.is_absolute() else base / p
                if not p.exists():
                    raise ManifestError(f"corpus {label!r}: {key} path {p} does not exist")
                paths[key] = p
        fmt = raw.get("deps_format", SD_TEXT)
        if fmt not in (SD_TEXT, CONLL_X):
            raise ManifestError(f"corpus {label!r}: unknown deps_format {fmt!r}")
        kind = raw.get("kind") or infer_kind(label)
        if kind not in (PHISHING, LEGITIMATE, OTHER):
            raise ManifestError(f"corpus {label!r}: unknown kind {kind!r}")
        entries.append(CorpusEntry(label=label, deps_format=fmt, kind=kind, **paths))
    pairs = None
    if data.get("pairs") is not None:
        pairs = []
        for pair in data["pairs"]:
            if len(pair) != 2 or not all(p in seen for p in pair):
                raise ManifestError(f"bad corpus pair {pair!r}")
            pairs.append((pair[0], pair[1]))
        pairs = tuple(pairs)
    return CorpusManifest(tuple(entries), pairs)


def load_manifest(path) -> CorpusManifest:
    path = Path(path)
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from None
    except ValueError as exc:
        raise ManifestError(f"manifest {path} is not valid JSON: {exc}") from None
    return manifest_from_dict(data, path.parent)


@dataclass
class Sentence:
    sentence_id: object
    doc_id: object
    tree: ParseTree
    text: str
    graph: DepGraph | None = None


@dataclass
class LoadedCorpus:
    entry: CorpusEntry
    sentences: list[Sentence] = field(default_factory=list)
    doc_count: int | None = None
    unique_doc_count: int | None = None


def _split_id(raw: str):
    doc, tab, sent = raw.partition("\t")
    return (doc, sent) if tab else (None, raw)


def load_corpus(entry: CorpusEntry, need_deps: bool = False) -> LoadedCorpus:
    """Read trees (and dependencies, if present) for one corpus.

    Sentence-id sidecar lines are either ``sentence_id`` or
    ``doc_id<TAB>sentence_id``. Example text comes from the optional
    sentences file, else from the tree's tokens joined by spaces.
    """
    ids = doc_ids = None
    if entry.ids:
        split = [_split_id(r) for r in read_sentence_ids(entry.ids)]
        doc_ids = [d for d, _ in split]
        ids = [s for _, s in split]
    try:
        trees = load_trees(entry.trees)
    except DataError as exc:
        exc.args = (f"corpus {entry.label!r}, {entry.trees}: {exc}",)
        raise
    if ids is None:
        ids = list(range(1, len(trees) + 1))
        doc_ids = [None] * len(trees)
    elif len(ids) != len(trees):
        raise SentenceAlignmentMismatch(f"corpus {entry.label!r}: {len(ids)} sentence ids for {len(trees)} trees")
    trees = [ParseTree(t.root, sid, t.token_count) for t, sid in zip(trees, ids)]

    texts = [t.text() for t in trees]
    if entry.sentences:
        lines = entry.sentences.read_text(encoding="utf-8").splitlines()
        if len(lines) != len(trees):
            raise SentenceAlignmentMismatch(
                f"corpus {entry.label!r}: {len(lines)} sentence lines for {len(trees)} trees"
            )
        texts = lines

    graphs = [None] * len(trees)
    if entry.deps:
        try:
            graphs = parse_deps(entry.deps.read_text(encoding="utf-8"), entry.deps_format, ids)
        except DataError as exc:
            exc.args = (f"corpus {entry.label!r}, {entry.deps}: {exc}",)
            raise
        if len(graphs) != len(trees):
            raise SentenceAlignmentMismatch(
                f"corpus {entry.label!r}: {len(trees)} trees but {len(graphs)} dependency graphs"
            )
        for tree, graph in zip(trees, graphs):
            if graph.max_index > tree.token_count:
                raise SentenceAlignmentMismatch(
                    f"corpus {entry.label!r}, sentence {tree.sentence_id!r}: dependency token "
                    f"{graph.max_index} beyond {tree.token_count} tree tokens"
                )
    elif need_deps:
        raise ManifestError(f"corpus {entry.label!r} has no 'deps' file")

    corpus = LoadedCorpus(
        entry,
        [Sentence(t.sentence_id, d, t, text, g) for t, d, text, g in zip(trees, doc_ids, texts, graphs)],
    )
    if entry.bodies:
        docs = load_bodies(entry.bodies, entry.label)
        corpus.doc_count = len(docs)
        corpus.unique_doc_count = len(dedup(docs))
    return corpus
