"""Corpus writers (Moses, TSV, TMX 1.4) and the matching readers."""
from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from pathlib import Path

from . import __version__
from .errors import IoError

XML_LANG = "{http://www.w3.org/XML/1998/namespace}lang"
# characters XML 1.0 cannot carry at all
_XML_ILLEGAL = re.compile("[\x00-\x08\x0b\x0c\x0e-\x1f\ufffe\uffff]")


def _as_tuples(pairs):
    out = []
    for pair in pairs:
        if hasattr(pair, "source_text"):
            out.append((pair.source_text, pair.target_text))
        else:
            src, tgt = pair
            out.append((src, tgt))
    return out


def _check_line(text, forbidden="\n\r"):
    bad = [ch for ch in forbidden if ch in text]
    if bad:
        raise IoError(f"segment contains {bad[0]!r}, which the output format cannot represent: {text[:60]!r}")


def _write_lines(path, lines):
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            for line in lines:
                fh.write(line + "\n")
    except OSError as exc:
        raise IoError(f"cannot write {str(path)!r}: {exc}") from exc


def write_moses(pairs, src_path, tgt_path) -> None:
    pairs = _as_tuples(pairs)
    for src, tgt in pairs:
        _check_line(src)
        _check_line(tgt)
    _write_lines(src_path, [p[0] for p in pairs])
    _write_lines(tgt_path, [p[1] for p in pairs])


def write_tsv(pairs, path) -> None:
    pairs = _as_tuples(pairs)
    for src, tgt in pairs:
        _check_line(src, "\n\r\t")
        _check_line(tgt, "\n\r\t")
    _write_lines(path, [f"{src}\t{tgt}" for src, tgt in pairs])


def read_tsv(path) -> list[tuple[str, str]]:
    pairs = []
    with open(path, encoding="utf-8", newline="") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            parts = line.split("\t")
            if len(parts) != 2:
                raise IoError(f"{path}:{lineno}: expected 2 tab-separated fields, got {len(parts)}")
            pairs.append((parts[0], parts[1]))
    return pairs


def read_moses(src_path, tgt_path) -> list[tuple[str, str]]:
    src = Path(src_path).read_text(encoding="utf-8").split("\n")[:-1]
    tgt = Path(tgt_path).read_text(encoding="utf-8").split("\n")[:-1]
    if len(src) != len(tgt):
        raise IoError(f"line count mismatch: {len(src)} vs {len(tgt)}")
    return list(zip(src, tgt))


def tmx_tree(pairs, src_lang: str, tgt_lang: str) -> ET.ElementTree:
    root = ET.Element("tmx", version="1.4")
    ET.SubElement(root, "header", {
        "creationtool": "crisis_corpus",
        "creationtoolversion": __version__,
        "datatype": "plaintext",
        "segtype": "sentence",
        "adminlang": "en",
        "srclang": src_lang,
        "o-tmf": "crisis_corpus",
    })
    body = ET.SubElement(root, "body")
    for src, tgt in _as_tuples(pairs):
        tu = ET.SubElement(body, "tu")
        for lang, text in ((src_lang, src), (tgt_lang, tgt)):
            if _XML_ILLEGAL.search(text):
                raise IoError(f"segment contains a character XML cannot encode: {text[:60]!r}")
            tuv = ET.SubElement(tu, "tuv", {XML_LANG: lang})
            ET.SubElement(tuv, "seg").text = text
    ET.indent(root, space=" ")
    return ET.ElementTree(root)


def write_tmx(pairs, path, src_lang: str, tgt_lang: str) -> None:
    tree = tmx_tree(pairs, src_lang, tgt_lang)
    try:
        with open(path, "wb") as fh:
            tree.write(fh, encoding="utf-8", xml_declaration=True)
            fh.write(b"\n")
    except OSError as exc:
        raise IoError(f"cannot write {str(path)!r}: {exc}") from exc


def read_tmx(path) -> tuple[str, list[tuple[str, str]]]:
    """Return (srclang, pairs) from a two-language TMX file."""
    root = ET.parse(path).getroot()
    srclang = root.find("header").get("srclang")
    pairs = []
    for tu in root.iter("tu"):
        by_lang = {}
        order = []
        for tuv in tu.findall("tuv"):
            lang = tuv.get(XML_LANG)
            by_lang[lang] = tuv.findtext("seg") or ""
            order.append(lang)
        tgt_lang = next(lang for lang in order if lang != srclang)
        pairs.append((by_lang[srclang], by_lang[tgt_lang]))
    return srclang, pairs
