import unicodedata

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crisis_corpus.errors import InvalidEncoding
from crisis_corpus.normalize import (
    NormalizedText,
    RawText,
    decode_bytes,
    merge_whitespace,
    normalize_document,
    normalize_text,
    normalize_unicode,
    read_raw,
)


def test_nfc_composes_combining_acute():
    assert normalize_unicode("e\u0301") == "\u00e9"


def test_leading_bom_removed():
    assert normalize_unicode("\ufeffabc") == "abc"


def test_bom_removed_at_each_line_start():
    assert normalize_unicode("\ufeffa\n\ufeffb") == "a\nb"


def test_nfc_input_unchanged():
    assert normalize_unicode("d\u00e9j\u00e0") == "d\u00e9j\u00e0"


@pytest.mark.parametrize("raw, expected", [("a\r\nb", "a\nb"), ("a\rb", "a\nb"), ("a\r\n\r\nb", "a\n\nb")])
def test_line_endings_become_lf(raw, expected):
    assert normalize_unicode(raw) == expected


@pytest.mark.parametrize("raw, expected", [
    ("a \t  b", "a b"),
    ("Dublin", "Dublin"),
    ("  x  y  \n z ", "x y\nz"),
    ("a\u00a0\u00a0b", "a b"),
    ("a\u3000b", "a b"), ("a\u00a0b", "a b"),
])
def test_merge_whitespace(raw, expected):
    assert merge_whitespace(raw) == expected


def test_merge_keeps_case_and_tokens():
    text = "Don't  truecase: iPhone,NASA ,rte"
    assert merge_whitespace(text) == "Don't truecase: iPhone,NASA ,rte"


def test_document_drops_blank_lines():
    doc = normalize_document(RawText("one\n\nthree\n"), doc_id="d")
    assert doc.texts == ["one", "three"]


def test_whitespace_only_document_is_empty():
    doc = normalize_document(RawText(" \t\n\u00a0\n  \n"))
    assert doc.segments == ()
    assert doc.size_chars == 0


def test_document_example():
    doc = normalize_document(RawText("A.\n\nB  C.\n"), doc_id="x", language="en")
    assert doc.texts == ["A.", "B C."]
    assert doc.size_chars == 6
    assert doc.language == "en"


def test_line_count():
    assert NormalizedText("a\nb").line_count == 2
    assert NormalizedText("a\nb\n").line_count == 2
    assert NormalizedText("").line_count == 0


def test_invalid_utf8_is_an_error_with_position():
    with pytest.raises(InvalidEncoding) as info:
        decode_bytes(b"abc\xff\xfe-ok", origin="f.txt")
    assert info.value.position == 3
    assert "f.txt" in str(info.value)


@pytest.mark.parametrize("encoding", ["utf-8-sig", "utf-16", "utf-32"])
def test_bom_selects_encoding(encoding):
    data = "Fáilte\n".encode(encoding)
    assert normalize_text(decode_bytes(data).content).content == "Fáilte\n"


def test_declared_encoding(tmp_path):
    path = tmp_path / "latin.txt"
    path.write_bytes("Fáilte".encode("latin-1"))
    with pytest.raises(InvalidEncoding):
        read_raw(path)
    assert read_raw(path, "latin-1").content == "Fáilte"


def test_unknown_encoding_name():
    with pytest.raises(InvalidEncoding):
        decode_bytes(b"abc", "no-such-codec")


# whitespace-heavy text, so the merge rules actually get exercised
_SPACES = st.sampled_from([" ", "\t", "\n", "\r", "\r\n", "\u00a0", "\u2003", "\u3000", "\ufeff",
                           "\x0b", "\x0c", "\u2028", "\x85", "\u0301", "e", "E", "\u00e9", "\u0130"])
texts = st.lists(st.one_of(_SPACES, st.text(max_size=4)), max_size=25).map("".join)


@settings(max_examples=300)
@given(texts)
def test_composition_is_idempotent(text):
    once = normalize_text(text).content
    assert normalize_text(once).content == once
    assert normalize_unicode(normalize_unicode(text)) == normalize_unicode(text)
    assert merge_whitespace(merge_whitespace(text)) == merge_whitespace(text)


@settings(max_examples=300)
@given(texts)
def test_merge_never_grows(text):
    assert len(merge_whitespace(text)) <= len(text)


@settings(max_examples=300)
@given(texts)
def test_output_is_nfc_and_clean(text):
    out = normalize_text(text).content
    assert unicodedata.is_normalized("NFC", out)
    for ch in ("\ufeff", "\t", "\r"):
        assert ch not in out
    for line in out.split("\n"):
        assert all(not c.isspace() or c == " " for c in line)
        assert "  " not in line
