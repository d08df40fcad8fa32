"""Compare email corpora by verb-anchored syntactic features.

Parse tree paths from target verbs and the subjects/objects those verbs
take are counted per corpus and compared with cosine similarity.
"""

from phishsyntax.errors import PhishSyntaxError
from phishsyntax.treebank import ParseTree, TreeNode, VerbOccurrence, parse_ptb, print_ptb
from phishsyntax.pathex import PathEncoding, ParseTreePath, PathStep, canonical_string, extract_all_paths, tree_path
from phishsyntax.depargs import DepGraph, parse_deps, subject_of, object_of
from phishsyntax.stats import FreqDist, PathVector, cosine, top_k

__version__ = "0.1.0"

__all__ = [
    "PhishSyntaxError",
    "ParseTree",
    "TreeNode",
    "VerbOccurrence",
    "parse_ptb",
    "print_ptb",
    "PathEncoding",
    "ParseTreePath",
    "PathStep",
    "canonical_string",
    "extract_all_paths",
    "tree_path",
    "DepGraph",
    "parse_deps",
    "subject_of",
    "object_of",
    "FreqDist",
    "PathVector",
    "cosine",
    "top_k",
]
