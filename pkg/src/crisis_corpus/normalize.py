"""Character- and whitespace-level standardisation of raw text.

Newlines are structural and survive; every other whitespace run collapses
to one space. No tokenisation, no truecasing.
"""
from __future__ import annotations

import codecs
import re
import unicodedata
from dataclasses import dataclass
from pathlib import Path

from .document import Document, Segment
from .errors import InvalidEncoding

BOM = "\ufeff"

_NEWLINES = re.compile(r"\r\n?")
# any whitespace except the line feed
_HSPACE = re.compile(r"[^\S\n]+")

_BOMS = (
    (codecs.BOM_UTF32_LE, "utf-32"),
    (codecs.BOM_UTF32_BE, "utf-32"),
    (codecs.BOM_UTF8, "utf-8-sig"),
    (codecs.BOM_UTF16_LE, "utf-16"),
    (codecs.BOM_UTF16_BE, "utf-16"),
)


@dataclass(frozen=True)
class RawText:
    content: str
    origin: str = "<memory>"


@dataclass(frozen=True)
class NormalizedText:
    content: str

    @property
    def line_count(self) -> int:
        if not self.content:
            return 0
        return self.content.count("\n") + (0 if self.content.endswith("\n") else 1)


def sniff_encoding(data: bytes, default: str = "utf-8") -> str:
    # UTF-32 LE must be tested before UTF-16 LE: they share a prefix.
    for bom, name in _BOMS:
        if data.startswith(bom):
            return name
    return default


def decode_bytes(data: bytes, encoding: str | None = None, origin: str = "<memory>") -> RawText:
    """Decode strictly. A byte-order mark overrides ``encoding``."""
    enc = sniff_encoding(data, encoding or "utf-8")
    try:
        content = data.decode(enc)
    except UnicodeDecodeError as exc:
        raise InvalidEncoding(exc.start, enc, context=origin) from exc
    except LookupError as exc:
        raise InvalidEncoding(0, enc, context=origin) from exc
    return RawText(content, origin)


def read_raw(path, encoding: str | None = None) -> RawText:
    path = Path(path)
    return decode_bytes(path.read_bytes(), encoding, origin=str(path))


def normalize_unicode(text: str) -> str:
    """NFC-normalise, drop byte-order marks and convert CR/CRLF to LF."""
    if isinstance(text, RawText):
        text = text.content
    text = _NEWLINES.sub("\n", text)
    text = text.replace(BOM, "")
    return unicodedata.normalize("NFC", text)


def merge_whitespace(text: str) -> str:
    lines = _HSPACE.sub(" ", text).split("\n")
    return "\n".join(line.strip(" ") for line in lines)


def normalize_text(text: str) -> NormalizedText:
    return NormalizedText(merge_whitespace(normalize_unicode(text)))


def normalize_document(raw: RawText, doc_id: str | None = None, language: str = "und") -> Document:
    norm = normalize_text(raw.content).content
    segments = tuple(Segment(line) for line in norm.split("\n") if line)
    return Document(id=doc_id if doc_id is not None else raw.origin, language=language, segments=segments)
