import pytest

from phishsyntax.depargs import (
    CONLL_X,
    ArgRecord,
    DepGraph,
    DepEdge,
    DepToken,
    RelationConfig,
    collect_arg_records,
    object_of,
    parse_deps,
    subject_of,
)
from phishsyntax.errors import IndexMismatch, IndexOutOfRange, MalformedLine, UnknownSentenceId
from phishsyntax.treebank import VerbOccurrence, find_target_occurrences, load_trees


@pytest.fixture(scope="module")
def sd_graphs():
    from conftest import FIXTURES

    ids = (FIXTURES / "args.ids").read_text().split()
    return parse_deps((FIXTURES / "args.sd").read_text(), sentence_ids=ids)


def _verb_index(graph, form):
    return next(t.index for t in graph.tokens if t.form == form)


def test_single_edge():
    [g] = parse_deps("nsubj(run-2, I-1)\n")
    assert [(t.index, t.form) for t in g.tokens] == [(1, "I"), (2, "run")]
    assert g.edges == [DepEdge("nsubj", 2, 1)]


@pytest.mark.parametrize(
    "line",
    ["nsubj(run-2 I-1)", "nsubj run-2, I-1", "nsubj(run, I-1)", "nsubj(run-2, I-0)"],
)
def test_malformed_lines(line):
    with pytest.raises(MalformedLine) as info:
        parse_deps(f"root(ROOT-0, run-2)\n{line}\n")
    assert info.value.line_number == 2


def test_conflicting_forms():
    with pytest.raises(IndexMismatch):
        parse_deps("nsubj(run-2, I-1)\ndobj(run-2, you-1)\n")


def test_hyphenated_forms_and_copies():
    [g] = parse_deps("dobj(re-send-2, e-mail-4)\nconj(re-send-2', e-mail-4)\n")
    assert g.token(4).form == "e-mail"
    assert g.token(2).form == "re-send"


def test_blank_lines_separate_sentences(sd_graphs):
    assert len(sd_graphs) == 5
    assert sd_graphs[0].sentence_id == "sec1-identity"
    assert sd_graphs[3].max_index == 2


def test_intro_sentence_arguments(sd_graphs):
    g = sd_graphs[0]
    confirm = _verb_index(g, "confirm")
    assert subject_of(g, confirm).form == "you"
    assert object_of(g, confirm).form == "identity"
    assert any(e.relation == "xsubj" and g.token(e.dependent).form == "you" for e in g.edges)


def test_table3_click_subject(sd_graphs):
    g = sd_graphs[1]
    assert subject_of(g, _verb_index(g, "click")).form == "You"


def test_table4_click_object(sd_graphs):
    g = sd_graphs[2]
    click = _verb_index(g, "click")
    assert object_of(g, click).form == "link"
    assert subject_of(g, click) is None


def test_imperative_has_no_subject(sd_graphs):
    g = sd_graphs[3]
    assert subject_of(g, _verb_index(g, "Click")) is None


def test_intransitive_has_no_object(sd_graphs):
    g = sd_graphs[4]
    assert object_of(g, _verb_index(g, "follow")) is None


def test_index_out_of_range(sd_graphs):
    with pytest.raises(IndexOutOfRange):
        subject_of(sd_graphs[0], 99)


def test_relation_priority_then_lowest_index():
    g = DepGraph(
        1,
        [DepToken(1, "a"), DepToken(2, "b"), DepToken(3, "v"), DepToken(4, "c")],
        [DepEdge("nsubjpass", 3, 1), DepEdge("nsubj", 3, 4), DepEdge("nsubj", 3, 2)],
    )
    assert subject_of(g, 3).form == "b"
    assert subject_of(g, 3, ("nsubjpass", "nsubj")).form == "a"
    assert subject_of(g, 3, ("nsubj",)).index == 2


def test_passive_toggle():
    [g] = parse_deps("nsubjpass(updated-3, records-1)\nauxpass(updated-3, were-2)\n")
    assert subject_of(g, 3).form == "records"
    assert subject_of(g, 3, ("nsubj", "xsubj")) is None


def test_conll_reader(fixtures):
    graphs = parse_deps((fixtures / "click.conll").read_text(), CONLL_X)
    assert len(graphs) == 2
    g = graphs[0]
    assert g.token(3).lemma == "click" and g.token(3).pos == "VB"
    assert subject_of(g, 3).form == "You"
    assert object_of(g, 3).form == "link"
    assert subject_of(graphs[1], 1) is None


def test_conll_malformed():
    with pytest.raises(MalformedLine):
        parse_deps("1\tYou\tyou\tPRP\n", CONLL_X)
    with pytest.raises(MalformedLine):
        parse_deps("x\tYou\tyou\tPRP\tPRP\t_\t0\troot\t_\t_\n", CONLL_X)


def test_collect_records(fixtures, sd_graphs):
    trees = load_trees(fixtures / "args.mrg", fixtures / "args.ids")
    occs = [o for t in trees for o in find_target_occurrences(t, ["confirm", "click", "follow"])]
    records = collect_arg_records(sd_graphs, occs)
    assert len(records) == len(occs) == 5
    got = [(r.occurrence.surface_form, r.subject and r.subject.form, r.object and r.object.form) for r in records]
    assert got == [
        ("confirm", "you", "identity"),
        ("click", "You", "link"),
        ("click", None, "link"),
        ("Click", None, None),
        ("follow", None, None),
    ]


def test_collect_counts_repeated_sentences(sd_graphs):
    g = sd_graphs[0]
    occ = VerbOccurrence(None, g.sentence_id, 5, "confirm", "confirm")
    records = collect_arg_records([g], [occ, occ, occ])
    assert len(records) == 3
    assert all(r.subject.form == "you" for r in records)


def test_collect_unknown_sentence(sd_graphs):
    with pytest.raises(UnknownSentenceId):
        collect_arg_records(sd_graphs, [VerbOccurrence(None, "nope", 1, "x", "x")])


def test_collect_verb_without_edges():
    g = DepGraph(1, [DepToken(1, "x")], [DepEdge("root", 0, 1)])
    [rec] = collect_arg_records([g], [VerbOccurrence(None, 1, 3, "use", "use")], RelationConfig())
    assert rec == ArgRecord(VerbOccurrence(None, 1, 3, "use", "use"))
