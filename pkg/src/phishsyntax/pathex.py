"""Parse tree paths anchored at a verb token.

A path climbs from the verb's terminal into its preterminal, on up to the
lowest common ancestor with the target node, then descends to the target.
By default targets are the preterminals of every other token.

Two renderings are supported: the full-label form (``↑VB↑VP↓NP↓PRP$``),
and the recoded form that drops the verb's tag, replaces a preterminal end
label with ``T`` and uses diagonal arrows (``↗VP↖S↙NP``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from phishsyntax.errors import IndexOutOfRange, OccurrenceNotInTree, SameToken
from phishsyntax.treebank import ParseTree, VerbOccurrence

GJ_FULL = "gj"
SG_RECODED = "sg"

PRETERMINAL_TARGETS = "preterminal"
ALL_TARGETS = "all"

ASCII_ARROWS = {"↑": "u", "↓": "d", "↗": "UR", "↖": "UL", "↙": "DL", "↘": "DR"}
PRPS_COMPAT = {"PRP$": "PRPS", "WP$": "WPS"}


class Direction(enum.Enum):
    UP = "up"
    DOWN = "down"


@dataclass(frozen=True)
class PathStep:
    direction: Direction
    label: str

    def __post_init__(self):
        if not self.label:
            raise ValueError("path step label must be nonempty")


@dataclass(frozen=True)
class ParseTreePath:
    steps: tuple[PathStep, ...]
    end_token_index: int | None = None
    end_is_preterminal: bool = True

    def __post_init__(self):
        if not self.steps:
            raise ValueError("path must be nonempty")
        if self.steps[0].direction is not Direction.UP:
            raise ValueError("path must start with an upward step")
        seen_down = False
        for step in self.steps:
            if step.direction is Direction.DOWN:
                seen_down = True
            elif seen_down:
                raise ValueError("upward step after a downward step")

    @classmethod
    def from_pairs(cls, pairs, end_token_index=None, end_is_preterminal=True):
        """Build from ``[("up", "VB"), ("down", "NP"), ...]``."""
        steps = tuple(PathStep(Direction(d), label) for d, label in pairs)
        return cls(steps, end_token_index, end_is_preterminal)


@dataclass(frozen=True)
class SGArrows:
    first_up: str = "↗"
    up: str = "↖"
    down: str = "↙"
    first_down: str = "↙"


@dataclass(frozen=True)
class PathEncoding:
    variant: str = GJ_FULL
    ascii: bool = False
    prps_compat: bool = False
    arrows: SGArrows = field(default_factory=SGArrows)

    def __post_init__(self):
        if self.variant not in (GJ_FULL, SG_RECODED):
            raise ValueError(f"unknown path encoding {self.variant!r}")


def _path_between(tree: ParseTree, verb_pos, target_pos, end_token_index=None) -> ParseTreePath:
    common = 0
    while common < min(len(verb_pos), len(target_pos)) and verb_pos[common] == target_pos[common]:
        common += 1
    steps = [
        PathStep(Direction.UP, tree.node_at(verb_pos[:depth]).label)
        for depth in range(len(verb_pos), common - 1, -1)
    ]
    steps += [
        PathStep(Direction.DOWN, tree.node_at(target_pos[:depth]).label)
        for depth in range(common + 1, len(target_pos) + 1)
    ]
    end = tree.node_at(target_pos)
    return ParseTreePath(tuple(steps), end_token_index, end.is_preterminal)


def tree_path(tree: ParseTree, from_token: int, to_preterminal: int) -> ParseTreePath:
    if from_token == to_preterminal:
        raise SameToken(f"path endpoints coincide at token {from_token}")
    for index in (from_token, to_preterminal):
        if not 1 <= index <= tree.token_count:
            raise IndexOutOfRange(f"token index {index} outside 1..{tree.token_count}")
    return _path_between(
        tree,
        tree.preterminal_position(from_token),
        tree.preterminal_position(to_preterminal),
        to_preterminal,
    )


def _check_occurrence(tree: ParseTree, verb: VerbOccurrence) -> None:
    if verb.sentence_id != tree.sentence_id:
        raise OccurrenceNotInTree(f"occurrence from sentence {verb.sentence_id!r}, tree is {tree.sentence_id!r}")
    if not 1 <= verb.token_index <= tree.token_count:
        raise OccurrenceNotInTree(f"token {verb.token_index} not in sentence {tree.sentence_id!r}")
    node = tree.node_at(tree.preterminal_position(verb.token_index))
    if node.children[0].token != verb.surface_form:
        raise OccurrenceNotInTree(
            f"token {verb.token_index} is {node.children[0].token!r}, occurrence says {verb.surface_form!r}"
        )


def extract_all_paths(tree: ParseTree, verb: VerbOccurrence, target: str = PRETERMINAL_TARGETS) -> list[ParseTreePath]:
    """Paths from ``verb`` to every other token's preterminal, in token order.

    With ``target="all"`` every nonterminal node except the verb's own
    preterminal is a target (preorder), including the verb's ancestors.
    """
    _check_occurrence(tree, verb)
    if target == PRETERMINAL_TARGETS:
        return [
            tree_path(tree, verb.token_index, i)
            for i in range(1, tree.token_count + 1)
            if i != verb.token_index
        ]
    if target != ALL_TARGETS:
        raise ValueError(f"unknown path target mode {target!r}")
    verb_pos = tree.preterminal_position(verb.token_index)
    token_of = {p: i for i, p in enumerate(tree.preterminal_positions, start=1)}
    paths = []
    stack = [(tree.root, ())]
    while stack:
        node, pos = stack.pop()
        if node.is_terminal:
            continue
        if pos != verb_pos:
            paths.append(_path_between(tree, verb_pos, pos, token_of.get(pos)))
        for i in range(len(node.children) - 1, -1, -1):
            stack.append((node.children[i], pos + (i,)))
    return paths


def canonical_string(path: ParseTreePath, enc: PathEncoding | None = None) -> str:
    enc = enc or PathEncoding()
    labels = [s.label for s in path.steps]
    if enc.prps_compat:
        labels = [PRPS_COMPAT.get(label, label) for label in labels]

    if enc.variant == GJ_FULL:
        arrows = ["↑" if s.direction is Direction.UP else "↓" for s in path.steps]
    else:
        steps = path.steps[1:]
        labels = labels[1:]
        if path.end_is_preterminal and labels:
            labels[-1] = "T"
        arrows = []
        for n, s in enumerate(steps):
            if s.direction is Direction.UP:
                arrows.append(enc.arrows.first_up if n == 0 else enc.arrows.up)
            else:
                arrows.append(enc.arrows.first_down if n == 0 else enc.arrows.down)
    if enc.ascii:
        arrows = [ASCII_ARROWS.get(a, a) for a in arrows]
    return "".join(a + label for a, label in zip(arrows, labels))
