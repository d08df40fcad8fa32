"""Reading and writing bracketed (Penn Treebank style) constituency trees.

Trees are immutable. Terminals are ``TreeNode`` objects with no children
whose ``label`` equals their surface ``token``; each carries a 1-based
``index``. Escape tokens such as ``-LRB-`` are kept as-is.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from phishsyntax.errors import (
    EmptyTree,
    IndexOutOfRange,
    SentenceAlignmentMismatch,
    TerminalWithChildren,
    UnbalancedBrackets,
)

DEFAULT_VERBS = ("access", "click", "confirm", "enter", "follow", "protect", "update", "use")

_TOKEN_RE = re.compile(r"\(|\)|[^()\s]+")


@dataclass(frozen=True)
class TreeNode:
    label: str
    children: tuple[TreeNode, ...] = ()
    token: str | None = None
    index: int | None = None

    def __post_init__(self):
        if not self.label:
            raise ValueError("node label must be nonempty")
        if (self.token is None) == (not self.children):
            raise ValueError("token must be present iff the node has no children")

    @classmethod
    def terminal(cls, token: str, index: int) -> TreeNode:
        return cls(token, (), token, index)

    def __repr__(self):
        return f"TreeNode({print_ptb(self)!r})"

    @property
    def is_terminal(self) -> bool:
        return self.token is not None

    @property
    def is_preterminal(self) -> bool:
        return len(self.children) == 1 and self.children[0].is_terminal


@dataclass(frozen=True)
class ParseTree:
    root: TreeNode
    sentence_id: object = field(default=1, compare=False)
    token_count: int = 0

    @cached_property
    def preterminal_positions(self) -> tuple[tuple[int, ...], ...]:
        """Tree positions (child-index tuples) of preterminals, in token order."""
        out = []
        stack = [(self.root, ())]
        while stack:
            node, pos = stack.pop()
            if node.is_preterminal:
                out.append(pos)
                continue
            for i in range(len(node.children) - 1, -1, -1):
                stack.append((node.children[i], pos + (i,)))
        return tuple(out)

    def node_at(self, position: Iterable[int]) -> TreeNode:
        node = self.root
        for i in position:
            node = node.children[i]
        return node

    def preterminal_position(self, token_index: int) -> tuple[int, ...]:
        if not 1 <= token_index <= self.token_count:
            raise IndexOutOfRange(f"token index {token_index} outside 1..{self.token_count}")
        return self.preterminal_positions[token_index - 1]

    def tokens(self) -> list[str]:
        return [self.node_at(p).children[0].token for p in self.preterminal_positions]

    def text(self) -> str:
        return " ".join(self.tokens())

    def __str__(self):
        return print_ptb(self)


@dataclass(frozen=True)
class VerbOccurrence:
    doc_id: object
    sentence_id: object
    token_index: int
    surface_form: str
    target_lemma: str


class _Frame:
    __slots__ = ("label", "items", "start")

    def __init__(self, label, start):
        self.label = label
        self.items = []
        self.start = start


def _iter_trees(text: str) -> Iterator[TreeNode]:
    stack: list[_Frame] = []
    counter = 0
    tokens = [(m.group(), m.start()) for m in _TOKEN_RE.finditer(text)]
    i = 0
    while i < len(tokens):
        tok, pos = tokens[i]
        if tok == "(":
            label = "ROOT"
            if i + 1 < len(tokens) and tokens[i + 1][0] not in "()":
                label = tokens[i + 1][0]
                i += 1
            elif i + 1 < len(tokens) and tokens[i + 1][0] == ")":
                raise EmptyTree(f"empty brackets at offset {pos}")
            if not stack:
                counter = 0
            stack.append(_Frame(label, pos))
        elif tok == ")":
            if not stack:
                raise UnbalancedBrackets(pos, "unmatched ')'")
            frame = stack.pop()
            node = _close(frame)
            if stack:
                stack[-1].items.append(node)
            else:
                yield node
        else:
            if not stack:
                raise UnbalancedBrackets(pos, f"token {tok!r} outside brackets")
            counter += 1
            stack[-1].items.append(TreeNode.terminal(tok, counter))
        i += 1
    if stack:
        raise UnbalancedBrackets(stack[0].start, "unclosed '('")


def _close(frame: _Frame) -> TreeNode:
    if not frame.items:
        raise EmptyTree(f"node {frame.label!r} at offset {frame.start} has no children")
    words = [n for n in frame.items if n.is_terminal]
    if words and len(frame.items) > 1:
        raise TerminalWithChildren(
            f"node {frame.label!r} at offset {frame.start} mixes a word with other children"
        )
    return TreeNode(frame.label, tuple(frame.items))


def _count_terminals(node: TreeNode) -> int:
    if node.is_terminal:
        return 1
    return sum(_count_terminals(c) for c in node.children)


def parse_ptb(text: str, sentence_ids: Iterable | None = None) -> list[ParseTree]:
    """Parse every top-level bracketed tree in ``text``.

    A root written with an empty label, ``( (S ...))``, is labelled ``ROOT``.
    Missing sentence ids default to 1-based ordinals.
    """
    ids = list(sentence_ids) if sentence_ids is not None else None
    trees = []
    for n, root in enumerate(_iter_trees(text)):
        sid = ids[n] if ids is not None and n < len(ids) else n + 1
        trees.append(ParseTree(root, sid, _count_terminals(root)))
    if ids is not None and len(ids) != len(trees):
        raise SentenceAlignmentMismatch(f"{len(ids)} sentence ids for {len(trees)} trees")
    return trees


def _print_node(node: TreeNode, out: list[str]) -> None:
    if node.is_terminal:
        out.append(node.token)
        return
    out.append("(")
    out.append(node.label)
    for child in node.children:
        out.append(" ")
        _print_node(child, out)
    out.append(")")


def print_ptb(tree: ParseTree | TreeNode) -> str:
    root = tree.root if isinstance(tree, ParseTree) else tree
    out: list[str] = []
    _print_node(root, out)
    return "".join(out)


def preterminals(tree: ParseTree) -> list[tuple[TreeNode, int]]:
    return [(tree.node_at(p), i) for i, p in enumerate(tree.preterminal_positions, start=1)]


def read_sentence_ids(path) -> list[str]:
    with open(path, encoding="utf-8") as f:
        return [line.rstrip("\r\n") for line in f if line.strip()]


def load_trees(path, ids_path=None) -> list[ParseTree]:
    text = Path(path).read_text(encoding="utf-8")
    ids = read_sentence_ids(ids_path) if ids_path else None
    return parse_ptb(text, ids)


def default_inflections() -> dict[str, frozenset[str]]:
    raw = json.loads(resources.files("phishsyntax.data").joinpath("inflections.json").read_text("utf-8"))
    return {lemma: frozenset(f.lower() for f in forms) for lemma, forms in raw.items()}


def regular_inflections(lemma: str) -> frozenset[str]:
    """Base, third-person, past and progressive forms by the regular rules (no doubling)."""
    lemma = lemma.lower()
    if lemma.endswith(("s", "x", "z", "ch", "sh")):
        third = lemma + "es"
    elif lemma.endswith("y") and len(lemma) > 1 and lemma[-2] not in "aeiou":
        third = lemma[:-1] + "ies"
    else:
        third = lemma + "s"
    if lemma.endswith("e"):
        past, prog = lemma + "d", lemma[:-1] + "ing"
    elif lemma.endswith("y") and len(lemma) > 1 and lemma[-2] not in "aeiou":
        past, prog = lemma[:-1] + "ied", lemma + "ing"
    else:
        past, prog = lemma + "ed", lemma + "ing"
    return frozenset({lemma, third, past, prog})


def inflection_table(
    targets: Iterable[str], overrides: Mapping[str, Iterable[str]] | None = None
) -> dict[str, frozenset[str]]:
    """Surface forms for each target; shipped table first, regular rules as fallback."""
    shipped = default_inflections()
    table = {}
    for lemma in targets:
        lemma = lemma.lower()
        if overrides and lemma in overrides:
            table[lemma] = frozenset(f.lower() for f in overrides[lemma])
        else:
            table[lemma] = shipped.get(lemma) or regular_inflections(lemma)
    return table


def find_target_occurrences(
    tree: ParseTree,
    targets: Iterable[str],
    inflections: Mapping[str, Iterable[str]] | None = None,
    doc_id=None,
) -> list[VerbOccurrence]:
    targets = [t.lower() for t in targets]
    if inflections is None:
        table = inflection_table(targets)
    else:
        table = {t: frozenset(f.lower() for f in inflections.get(t, ())) for t in targets}
    form_to_lemma = {}
    for lemma in targets:
        for form in sorted(table[lemma]):
            form_to_lemma.setdefault(form, lemma)
    found = []
    for node, index in preterminals(tree):
        if not node.label.startswith("VB"):
            continue
        word = node.children[0].token
        lemma = form_to_lemma.get(word.lower())
        if lemma is not None:
            found.append(VerbOccurrence(doc_id, tree.sentence_id, index, word, lemma))
    return found
