"""Document pairing under a size-ratio bound.

Three passes at most:

1. candidates share a stem (relative path with the language marker removed);
2. rejected candidates are restructured on both sides and re-tested;
3. still-rejected sources take the nearest-size unmatched target.

Size is the post-normalisation character count. The ratio is
``source.size_chars / target.size_chars`` and the bounds are inclusive.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import PurePosixPath
from typing import Sequence

from .document import Document
from .errors import DuplicateDocumentId

RATIO_BOUNDS = (0.75, 1.33)
MAX_ITERATIONS = 3

# line opens with "(x)" for a single letter x, or with digits and a full stop
BREAK_PATTERNS = (r"^\([^\W\d_]\)", r"^\d+\.")

SENTENCE_FINAL = ".!?:;"


@dataclass(frozen=True)
class DocumentPair:
    source: Document
    target: Document
    ratio: float
    accepted_iteration: int


@dataclass(frozen=True)
class Unpaired:
    document: Document
    side: str
    last_ratio: float | None = None


class BreakMatcher:
    def __init__(self, patterns: Sequence[str] = BREAK_PATTERNS):
        self.patterns = tuple(patterns)
        self._compiled = [re.compile(p) for p in self.patterns]

    def __call__(self, line: str) -> bool:
        return any(rx.match(line) for rx in self._compiled)


_default_matcher = BreakMatcher()


def is_break_line(line: str, patterns: Sequence[str] | None = None) -> bool:
    if patterns is None:
        return _default_matcher(line)
    return BreakMatcher(patterns)(line)


def restructure(doc: Document, patterns: Sequence[str] | None = None) -> Document:
    """Re-join lines that a hard wrap split mid-sentence.

    A line starts a new segment when it is a break line or when the text
    before it ends with sentence-final punctuation; otherwise it is appended
    to the current segment with one space.
    """
    is_break = _default_matcher if patterns is None else BreakMatcher(patterns)
    merged: list[str] = []
    for text in doc.texts:
        if merged and not is_break(text) and merged[-1][-1:] not in tuple(SENTENCE_FINAL):
            merged[-1] = merged[-1] + " " + text
        else:
            merged.append(text)
    if merged == doc.texts:
        return doc
    return doc.with_texts(merged)


def document_stem(doc_id: str, language: str) -> str:
    """``dir/notice.ga.txt`` -> ``dir/notice`` for language ``ga``."""
    path = PurePosixPath(doc_id)
    name = path.name
    if path.suffix:
        name = name[: -len(path.suffix)]
    marker = "." + language
    if language and name.endswith(marker):
        name = name[: -len(marker)]
    return str(path.with_name(name)) if name else str(path)


def size_ratio(source: Document, target: Document) -> float | None:
    if target.size_chars == 0:
        return None
    return source.size_chars / target.size_chars


class RatioBounds:
    """Inclusive bounds compared in exact rational arithmetic."""

    def __init__(self, low: float = RATIO_BOUNDS[0], high: float = RATIO_BOUNDS[1]):
        if not 0 < low <= high:
            raise ValueError(f"invalid ratio bounds ({low}, {high})")
        self.low, self.high = low, high
        self._low = Fraction(str(low))
        self._high = Fraction(str(high))

    def accepts(self, source_chars: int, target_chars: int) -> bool:
        if target_chars <= 0:
            return False
        return self._low <= Fraction(source_chars, target_chars) <= self._high

    def accepts_pair(self, source: Document, target: Document) -> bool:
        return self.accepts(source.size_chars, target.size_chars)


def _index(docs, side):
    by_id, by_stem = {}, {}
    for doc in docs:
        if doc.id in by_id:
            raise DuplicateDocumentId(f"{side} document id {doc.id!r} occurs twice")
        stem = document_stem(doc.id, doc.language)
        if stem in by_stem:
            raise DuplicateDocumentId(
                f"{side} documents {by_stem[stem].id!r} and {doc.id!r} share the stem {stem!r}"
            )
        by_id[doc.id] = doc
        by_stem[stem] = doc
    return by_stem


def pair_documents(sources: Sequence[Document], targets: Sequence[Document], *,
                   ratio_bounds=RATIO_BOUNDS, max_iterations: int = MAX_ITERATIONS,
                   break_patterns: Sequence[str] | None = None):
    """Pair source documents with target documents.

    Returns ``(pairs, unpaired)``: pairs sorted by source id, unpaired sorted
    by (side, id). Each input document ends up in exactly one of the two.
    """
    if not 1 <= max_iterations <= MAX_ITERATIONS:
        raise ValueError(f"max_iterations must be in 1..{MAX_ITERATIONS}, got {max_iterations}")
    bounds = ratio_bounds if isinstance(ratio_bounds, RatioBounds) else RatioBounds(*ratio_bounds)
    src_by_stem = _index(sources, "source")
    tgt_by_stem = _index(targets, "target")

    pairs: list[DocumentPair] = []
    last_ratio: dict[tuple[str, str], float | None] = {}
    # current (possibly restructured) version of every document
    current_src = {d.id: d for d in sources}
    current_tgt = {d.id: d for d in targets}

    def attempt(src, tgt, iteration):
        ratio = size_ratio(src, tgt)
        last_ratio[("source", src.id)] = ratio
        last_ratio[("target", tgt.id)] = ratio
        if bounds.accepts_pair(src, tgt):
            pairs.append(DocumentPair(src, tgt, ratio, iteration))
            return True
        return False

    rejected = []
    for stem in sorted(set(src_by_stem) & set(tgt_by_stem)):
        src, tgt = src_by_stem[stem], tgt_by_stem[stem]
        if not attempt(src, tgt, 1):
            rejected.append((src.id, tgt.id))

    if max_iterations >= 2 and rejected:
        still = []
        for src_id, tgt_id in rejected:
            src = restructure(current_src[src_id], break_patterns)
            tgt = restructure(current_tgt[tgt_id], break_patterns)
            current_src[src_id], current_tgt[tgt_id] = src, tgt
            if not attempt(src, tgt, 2):
                still.append(src_id)
        rejected = still
    else:
        rejected = [src_id for src_id, _ in rejected]

    if max_iterations >= 3 and rejected:
        matched = {p.target.id for p in pairs}
        pool = sorted(tid for tid in current_tgt if tid not in matched)
        for src_id in rejected:
            if not pool:
                break
            src = current_src[src_id]
            tgt_id = min(pool, key=lambda tid: (abs(src.size_chars - current_tgt[tid].size_chars), tid))
            if attempt(src, current_tgt[tgt_id], 3):
                pool.remove(tgt_id)

    paired_src = {p.source.id for p in pairs}
    paired_tgt = {p.target.id for p in pairs}
    unpaired = [
        Unpaired(current_src[i], "source", last_ratio.get(("source", i)))
        for i in sorted(current_src) if i not in paired_src
    ] + [
        Unpaired(current_tgt[i], "target", last_ratio.get(("target", i)))
        for i in sorted(current_tgt) if i not in paired_tgt
    ]
    pairs.sort(key=lambda p: (p.source.id, p.target.id))
    return pairs, unpaired
