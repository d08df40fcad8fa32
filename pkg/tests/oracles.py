"""Independent reference implementations used only by the tests."""

import math
import random
from collections import deque

from phishsyntax.treebank import ParseTree, TreeNode

POS_TAGS = ["NN", "NNS", "PRP", "PRP$", "DT", "JJ", "IN", "TO", "RB", ".", "VB", "VBD", "VBZ", "VBG", "VBN", "VBP"]
PHRASES = ["S", "NP", "VP", "PP", "SBAR", "ADVP", "ADJP", "NP-SBJ", "S-TPC"]
WORDS = ["update", "your", "records", "click", "here", "-LRB-", "-RRB-", "$", "'s", "café", "e-mail", "I", "."]


def random_tree(rng: random.Random, max_tokens=12, max_depth=6, sentence_id=1) -> ParseTree:
    """Random tree with at most ``max_tokens`` terminals and ``max_depth`` node levels above them.

    At least one preterminal carries a VB* tag.
    """
    counter = [0]

    def build(depth, budget):
        if depth == max_depth or budget == 1 and rng.random() < 0.7:
            counter[0] += 1
            word = rng.choice(WORDS)
            return TreeNode(rng.choice(POS_TAGS), (TreeNode.terminal(word, counter[0]),))
        n_children = 1 if budget == 1 else rng.randint(1, min(3, budget))
        cuts = sorted(rng.sample(range(1, budget), n_children - 1)) if n_children > 1 else []
        sizes = [b - a for a, b in zip([0] + cuts, cuts + [budget])]
        return TreeNode(rng.choice(PHRASES), tuple(build(depth + 1, s) for s in sizes))

    n = rng.randint(2, max_tokens)
    root = build(1, n)
    tree = ParseTree(root, sentence_id, counter[0])
    if not any(tree.node_at(p).label.startswith("VB") for p in tree.preterminal_positions):
        pos = rng.choice(tree.preterminal_positions)
        root = _relabel(root, pos, "VB")
        tree = ParseTree(root, sentence_id, counter[0])
    return tree


def _relabel(node, pos, label):
    if not pos:
        return TreeNode(label, node.children, node.token, node.index)
    children = list(node.children)
    children[pos[0]] = _relabel(children[pos[0]], pos[1:], label)
    return TreeNode(node.label, tuple(children), node.token, node.index)


def tree_depth(node) -> int:
    if node.is_terminal:
        return 0
    return 1 + max(tree_depth(c) for c in node.children)


def _graph(tree):
    labels, parent, children, terminal_id, preterm = [], {}, {}, {}, set()

    def walk(node, par):
        nid = len(labels)
        labels.append(node.label)
        children[nid] = []
        if par is not None:
            parent[nid] = par
            children[par].append(nid)
        if node.is_terminal:
            terminal_id[node.index] = nid
        if node.is_preterminal:
            preterm.add(nid)
        for c in node.children:
            walk(c, nid)

    walk(tree.root, None)
    return labels, parent, children, terminal_id, preterm


def _bfs_route(start, goal, parent, children):
    prev = {start: None}
    queue = deque([start])
    while queue:
        cur = queue.popleft()
        if cur == goal:
            break
        nbrs = list(children[cur]) + ([parent[cur]] if cur in parent else [])
        for nb in nbrs:
            if nb not in prev:
                prev[nb] = cur
                queue.append(nb)
    route = [goal]
    while prev[route[-1]] is not None:
        route.append(prev[route[-1]])
    return route[::-1]


def _moves(route, labels, parent):
    return [("up" if parent.get(a) == b else "down", labels[b]) for a, b in zip(route, route[1:])]


def brute_force_paths(tree, verb_index, target="preterminal"):
    """Set of (steps, end_token_index) found by breadth-first search over explicit parent links."""
    labels, parent, children, terminal_id, preterm = _graph(tree)
    start = terminal_id[verb_index]
    out = []
    if target == "preterminal":
        for idx, tid in sorted(terminal_id.items()):
            if idx == verb_index:
                continue
            route = _bfs_route(start, tid, parent, children)[:-1]  # stop at the preterminal
            out.append((tuple(_moves(route, labels, parent)), idx))
        return out
    verb_pre = parent[start]
    term_of = {parent[tid]: idx for idx, tid in terminal_id.items()}
    for nid in range(len(labels)):
        if nid in terminal_id.values() or nid == verb_pre:
            continue
        route = _bfs_route(start, nid, parent, children)
        out.append((tuple(_moves(route, labels, parent)), term_of.get(nid)))
    return out


def naive_cosine(a: dict, b: dict) -> float:
    keys = sorted(set(a) | set(b))
    va = [a.get(k, 0) for k in keys]
    vb = [b.get(k, 0) for k in keys]
    dot = sum(x * y for x, y in zip(va, vb))
    return dot / (math.sqrt(sum(x * x for x in va)) * math.sqrt(sum(y * y for y in vb)))
