import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crisis_corpus.docalign import (
    BREAK_PATTERNS,
    RatioBounds,
    document_stem,
    is_break_line,
    pair_documents,
    restructure,
)
from crisis_corpus.document import Document
from crisis_corpus.errors import DuplicateDocumentId


def doc(doc_id, lang, *lengths):
    # each length becomes one sentence-terminated line, so restructure is a no-op
    return Document.from_texts(doc_id, lang, ["x" * (n - 1) + "." for n in lengths])


@pytest.mark.parametrize("line, expected", [
    ("(a) wash hands", True),
    ("3. stay at home", True),
    ("and then continue", False),
    ("(B) upper case", True),
    ("(é) accented letter", True),
    ("(ab) two letters", False),
    ("(1) digit", False),
    ("12.no space", True),
    ("3 . spaced", False),
    (" (a) leading space", False),
    ("3) bracket", False),
])
def test_is_break_line(line, expected):
    assert is_break_line(line) is expected


def test_extra_patterns_are_configurable():
    assert not is_break_line("- bullet")
    assert is_break_line("- bullet", BREAK_PATTERNS + (r"^- ",))


@pytest.mark.parametrize("lines, expected", [
    (["The clinic is", "(a) open daily"], ["The clinic is", "(a) open daily"]),
    (["Take the", "medicine now."], ["Take the medicine now."]),
    (["Stay home.", "Wash hands."], ["Stay home.", "Wash hands."]),
    (["Note:", "boil water"], ["Note:", "boil water"]),
    (["one", "two", "three"], ["one two three"]),
    (["Steps", "1. wash", "2. dry"], ["Steps", "1. wash", "2. dry"]),
    ([], []),
])
def test_restructure(lines, expected):
    assert restructure(Document.from_texts("d", "en", lines)).texts == expected


lines_strategy = st.lists(
    st.text(alphabet="ab.(1) :;!?", min_size=1, max_size=8).map(str.strip).filter(bool),
    max_size=12,
)


@settings(max_examples=300)
@given(lines_strategy)
def test_restructure_conserves_letters(lines):
    before = Document.from_texts("d", "en", lines)
    after = restructure(before)
    assert re.sub(r"\s", "", "".join(after.texts)) == re.sub(r"\s", "", "".join(before.texts))
    assert restructure(after).texts == after.texts
    assert len(after.texts) <= len(before.texts)


@pytest.mark.parametrize("doc_id, lang, stem", [
    ("notice.ga.txt", "ga", "notice"),
    ("notice.en.txt", "en", "notice"),
    ("sub/notice.en.txt", "en", "sub/notice"),
    ("notice.txt", "en", "notice"),
    ("notice.en", "en", "notice"),
    ("english.txt", "en", "english"),
])
def test_document_stem(doc_id, lang, stem):
    assert document_stem(doc_id, lang) == stem


def test_pair_iteration_one():
    pairs, unpaired = pair_documents([doc("a.en.txt", "en", 1000)], [doc("a.ga.txt", "ga", 1100)])
    assert unpaired == []
    (pair,) = pairs
    assert pair.ratio == pytest.approx(1000 / 1100)
    assert round(pair.ratio, 3) == 0.909
    assert pair.accepted_iteration == 1


def test_pair_out_of_bounds_everywhere():
    src, tgt = doc("a.en.txt", "en", 700), doc("a.ga.txt", "ga", 1000)
    pairs, unpaired = pair_documents([src], [tgt])
    assert pairs == []
    assert [(u.side, u.document.id, u.last_ratio) for u in unpaired] == [
        ("source", "a.en.txt", 0.7), ("target", "a.ga.txt", 0.7)]


def test_empty_target_list():
    sources = [doc("a.en.txt", "en", 10), doc("b.en.txt", "en", 20)]
    pairs, unpaired = pair_documents(sources, [])
    assert pairs == []
    assert [u.document.id for u in unpaired] == ["a.en.txt", "b.en.txt"]
    assert all(u.last_ratio is None for u in unpaired)


def test_pair_iteration_two_restructure():
    # six unterminated lines of 745 chars total merge into one line of 750 chars
    texts = ["w" * 124] * 5 + ["w" * 125]
    src = Document.from_texts("a.en.txt", "en", texts)
    tgt = doc("a.ga.txt", "ga", 1000)
    assert src.size_chars == 745
    pairs, unpaired = pair_documents([src], [tgt])
    assert unpaired == []
    assert pairs[0].accepted_iteration == 2
    assert pairs[0].ratio == 0.75
    assert pairs[0].source.size_chars == 750


def test_pair_iteration_three_nearest_size():
    sources = [doc("a.en.txt", "en", 700)]
    targets = [doc("a.ga.txt", "ga", 1000), doc("z.ga.txt", "ga", 800), doc("y.ga.txt", "ga", 500)]
    pairs, unpaired = pair_documents(sources, targets)
    assert [(p.source.id, p.target.id, p.accepted_iteration) for p in pairs] == [("a.en.txt", "z.ga.txt", 3)]
    assert [u.document.id for u in unpaired] == ["a.ga.txt", "y.ga.txt"]


def test_iteration_three_size_tie_goes_to_smaller_id():
    sources = [doc("a.en.txt", "en", 700)]
    targets = [doc("a.ga.txt", "ga", 1000), doc("c.ga.txt", "ga", 800), doc("b.ga.txt", "ga", 600)]
    pairs, _ = pair_documents(sources, targets)
    assert pairs[0].target.id == "b.ga.txt"


def test_max_iterations_limits_passes():
    sources = [doc("a.en.txt", "en", 700)]
    targets = [doc("a.ga.txt", "ga", 1000), doc("z.ga.txt", "ga", 800)]
    assert pair_documents(sources, targets, max_iterations=2)[0] == []
    with pytest.raises(ValueError):
        pair_documents(sources, targets, max_iterations=4)


def test_duplicate_ids_and_stems():
    with pytest.raises(DuplicateDocumentId):
        pair_documents([doc("a.en.txt", "en", 5), doc("a.en.txt", "en", 5)], [])
    with pytest.raises(DuplicateDocumentId):
        pair_documents([], [doc("a.ga.txt", "ga", 5), doc("a.ga.md", "ga", 5)])


@pytest.mark.parametrize("src, tgt, ok", [
    (750, 1000, True), (1330, 1000, True), (7499, 10000, False), (13301, 10000, False),
    (3, 4, True), (133, 100, True), (1, 0, False), (0, 5, False),
])
def test_ratio_bounds_exact(src, tgt, ok):
    assert RatioBounds().accepts(src, tgt) is ok


sizes = st.integers(min_value=0, max_value=60)


@settings(max_examples=200)
@given(st.lists(sizes, max_size=6), st.lists(sizes, max_size=6), st.integers(0, 6))
def test_partial_matching(src_sizes, tgt_sizes, shared):
    sources = [doc(f"d{i}.en.txt", "en", *([n] if n else [])) for i, n in enumerate(src_sizes)]
    targets = [doc(f"d{i + len(src_sizes) - min(shared, len(src_sizes))}.ga.txt", "ga", *([n] if n else []))
               for i, n in enumerate(tgt_sizes)]
    pairs, unpaired = pair_documents(sources, targets)
    seen_src = [p.source.id for p in pairs] + [u.document.id for u in unpaired if u.side == "source"]
    seen_tgt = [p.target.id for p in pairs] + [u.document.id for u in unpaired if u.side == "target"]
    assert sorted(seen_src) == sorted(d.id for d in sources)
    assert sorted(seen_tgt) == sorted(d.id for d in targets)
    for p in pairs:
        assert 1 <= p.accepted_iteration <= 3
        assert 0.75 * p.target.size_chars <= p.source.size_chars <= 1.33 * p.target.size_chars
    assert [p.source.id for p in pairs] == sorted(p.source.id for p in pairs)
