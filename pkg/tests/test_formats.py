import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crisis_corpus.errors import IoError
from crisis_corpus.formats import read_moses, read_tmx, read_tsv, write_moses, write_tmx, write_tsv
from oracles import check_tmx14
from oracles import read_tsv as oracle_read_tsv


def test_moses_two_pairs(tmp_path):
    write_moses([("a b", "c"), ("d", "e f")], tmp_path / "s", tmp_path / "t")
    assert (tmp_path / "s").read_bytes() == b"a b\nd\n"
    assert (tmp_path / "t").read_bytes() == b"c\ne f\n"


def test_moses_empty(tmp_path):
    write_moses([], tmp_path / "s", tmp_path / "t")
    assert (tmp_path / "s").read_bytes() == b""
    assert (tmp_path / "t").read_bytes() == b""


def test_tsv_line(tmp_path):
    write_tsv([("a b", "c")], tmp_path / "x.tsv")
    assert (tmp_path / "x.tsv").read_bytes() == b"a b\tc\n"


def test_tsv_empty(tmp_path):
    write_tsv([], tmp_path / "x.tsv")
    assert (tmp_path / "x.tsv").read_bytes() == b""


def test_tab_or_newline_rejected(tmp_path):
    with pytest.raises(IoError):
        write_tsv([("a\tb", "c")], tmp_path / "x.tsv")
    with pytest.raises(IoError):
        write_moses([("a\nb", "c")], tmp_path / "s", tmp_path / "t")


def test_tmx_one_unit_and_escaping(tmp_path):
    path = tmp_path / "x.tmx"
    write_tmx([("Salt & water <now>", "Salann & uisce")], path, "en", "ga")
    raw = path.read_text(encoding="utf-8")
    assert raw.count("<tu>") == 1
    assert "Salt &amp; water &lt;now&gt;" in raw
    assert check_tmx14(path) == []
    assert read_tmx(path) == ("en", [("Salt & water <now>", "Salann & uisce")])


def test_tmx_rejects_control_chars(tmp_path):
    with pytest.raises(IoError):
        write_tmx([("a\x01", "b")], tmp_path / "x.tmx", "en", "ga")


def test_check_tmx14_catches_problems(tmp_path):
    path = tmp_path / "bad.tmx"
    path.write_text('<tmx version="1.1"><header/><body><tu><tuv><seg>a</seg></tuv></tu></body></tmx>')
    assert len(check_tmx14(path)) >= 3


side = st.text(
    alphabet=st.characters(blacklist_categories=("Cs", "Cc", "Zl", "Zp"), blacklist_characters="\x85"),
    max_size=20,
)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.tuples(side, side), max_size=6))
def test_round_trips(tmp_path_factory, pairs):
    tmp = tmp_path_factory.mktemp("rt")
    write_tsv(pairs, tmp / "c.tsv")
    assert oracle_read_tsv(tmp / "c.tsv") == pairs
    assert read_tsv(tmp / "c.tsv") == pairs
    write_moses(pairs, tmp / "c.s", tmp / "c.t")
    assert read_moses(tmp / "c.s", tmp / "c.t") == pairs
    write_tmx(pairs, tmp / "c.tmx", "en", "ga")
    assert check_tmx14(tmp / "c.tmx") == []
    assert read_tmx(tmp / "c.tmx")[1] == pairs
