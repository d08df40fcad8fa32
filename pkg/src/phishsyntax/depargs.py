"""Typed-dependency input and subject/object lookup for verb occurrences.

Two input formats are read: Stanford-dependency text, one
``rel(gov-GIDX, dep-DIDX)`` edge per line with blank lines between
sentences, and 10-column CoNLL-X.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from phishsyntax.errors import IndexMismatch, IndexOutOfRange, MalformedLine, UnknownSentenceId
from phishsyntax.treebank import VerbOccurrence

SD_TEXT = "sd-text"
CONLL_X = "conll-x"

# Priority order matters: earlier relations win ties.
DEFAULT_SUBJECT_RELATIONS = ("nsubj", "xsubj", "nsubjpass")
DEFAULT_OBJECT_RELATIONS = ("dobj", "obj")

_SD_LINE = re.compile(r"^([^\s(]+)\((.+?)-(\d+)('*), (.+)-(\d+)('*)\)$")


@dataclass(frozen=True)
class DepToken:
    index: int
    form: str
    pos: str | None = None
    lemma: str | None = None


@dataclass(frozen=True)
class DepEdge:
    relation: str
    governor: int
    dependent: int


@dataclass
class DepGraph:
    sentence_id: object
    tokens: list[DepToken] = field(default_factory=list)
    edges: list[DepEdge] = field(default_factory=list)

    def __post_init__(self):
        self._by_index = {t.index: t for t in self.tokens}

    @property
    def max_index(self) -> int:
        return max(self._by_index, default=0)

    def token(self, index: int) -> DepToken:
        try:
            return self._by_index[index]
        except KeyError:
            raise IndexOutOfRange(f"no token {index} in sentence {self.sentence_id!r}") from None

    def has_token(self, index: int) -> bool:
        return index in self._by_index


@dataclass(frozen=True)
class RelationConfig:
    subject_relations: tuple[str, ...] = DEFAULT_SUBJECT_RELATIONS
    object_relations: tuple[str, ...] = DEFAULT_OBJECT_RELATIONS


@dataclass(frozen=True)
class ArgRecord:
    occurrence: VerbOccurrence
    subject: DepToken | None = None
    object: DepToken | None = None


def _parse_sd_block(lines, sentence_id) -> DepGraph:
    forms: dict[int, str] = {}
    edges = []
    for lineno, line in lines:
        m = _SD_LINE.match(line)
        if m is None:
            raise MalformedLine(lineno, line)
        rel, gform, gidx, gcopy, dform, didx, dcopy = m.groups()
        gidx, didx = int(gidx), int(didx)
        if didx < 1:
            raise MalformedLine(lineno, line)
        for idx, form, copy in ((gidx, gform, gcopy), (didx, dform, dcopy)):
            if idx == 0:
                continue
            # copy nodes (word-3') share their source index
            if idx in forms and forms[idx] != form and not copy:
                raise IndexMismatch(f"line {lineno}: token {idx} is {forms[idx]!r} and {form!r}")
            forms.setdefault(idx, form)
        edges.append(DepEdge(rel, gidx, didx))
    tokens = [DepToken(i, forms[i]) for i in sorted(forms)]
    return DepGraph(sentence_id, tokens, edges)


def _parse_conll_block(lines, sentence_id) -> DepGraph:
    tokens = []
    edges = []
    for lineno, line in lines:
        cols = line.split("\t")
        if len(cols) != 10:
            raise MalformedLine(lineno, line)
        idx, form, lemma, _cpos, pos, _feats, head, rel = cols[:8]
        if "-" in idx or "." in idx:
            continue
        try:
            idx_i, head_i = int(idx), int(head)
        except ValueError:
            raise MalformedLine(lineno, line) from None
        if tokens and tokens[-1].index >= idx_i:
            raise IndexMismatch(f"line {lineno}: token index {idx_i} out of order")
        tokens.append(DepToken(idx_i, form, None if pos == "_" else pos, None if lemma == "_" else lemma))
        edges.append(DepEdge(rel, head_i, idx_i))
    return DepGraph(sentence_id, tokens, edges)


def _blocks(text: str):
    block = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            if block:
                yield block
                block = []
            continue
        if line.startswith("#"):
            continue
        block.append((lineno, raw.rstrip("\r\n") if "\t" in raw else line))
    if block:
        yield block


def parse_deps(text: str, format: str = SD_TEXT, sentence_ids: Sequence | None = None) -> list[DepGraph]:
    if format == SD_TEXT:
        parse_block = _parse_sd_block
    elif format == CONLL_X:
        parse_block = _parse_conll_block
    else:
        raise ValueError(f"unknown dependency format {format!r}")
    graphs = []
    for n, block in enumerate(_blocks(text)):
        sid = sentence_ids[n] if sentence_ids is not None and n < len(sentence_ids) else n + 1
        graphs.append(parse_block(block, sid))
    for g in graphs:
        for e in g.edges:
            if e.governor and not g.has_token(e.governor):
                raise IndexMismatch(f"sentence {g.sentence_id!r}: edge governor {e.governor} missing")
            if not g.has_token(e.dependent):
                raise IndexMismatch(f"sentence {g.sentence_id!r}: edge dependent {e.dependent} missing")
    return graphs


def _first_argument(graph: DepGraph, verb_index: int, relations: Iterable[str]) -> DepToken | None:
    if not graph.has_token(verb_index):
        raise IndexOutOfRange(f"no token {verb_index} in sentence {graph.sentence_id!r}")
    for rel in relations:
        deps = [e.dependent for e in graph.edges if e.governor == verb_index and e.relation == rel]
        if deps:
            return graph.token(min(deps))
    return None


def subject_of(graph: DepGraph, verb_index: int, subject_relations=DEFAULT_SUBJECT_RELATIONS) -> DepToken | None:
    return _first_argument(graph, verb_index, subject_relations)


def object_of(graph: DepGraph, verb_index: int, object_relations=DEFAULT_OBJECT_RELATIONS) -> DepToken | None:
    return _first_argument(graph, verb_index, object_relations)


def collect_arg_records(
    graphs: Sequence[DepGraph],
    occurrences: Iterable[VerbOccurrence],
    config: RelationConfig | None = None,
) -> list[ArgRecord]:
    """One record per occurrence; repeated sentences are counted each time.

    A verb index with no token in its graph (the parser emitted no edge
    touching it) yields a record with both arguments absent.
    """
    config = config or RelationConfig()
    by_id = {}
    for g in graphs:
        by_id.setdefault(g.sentence_id, g)
    records = []
    for occ in occurrences:
        graph = by_id.get(occ.sentence_id)
        if graph is None:
            raise UnknownSentenceId(f"no dependency graph for sentence {occ.sentence_id!r}")
        if not graph.has_token(occ.token_index):
            records.append(ArgRecord(occ))
            continue
        records.append(
            ArgRecord(
                occ,
                subject_of(graph, occ.token_index, config.subject_relations),
                object_of(graph, occ.token_index, config.object_relations),
            )
        )
    return records
