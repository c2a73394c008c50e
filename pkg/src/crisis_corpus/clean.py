"""Validation filters over sentence pairs.

A pair is removed when either side

a. is empty,
b. has no alphabetic character (``strict=True``: has no non-alphabetic character),
c. is at least ``min_chars`` long and detected as another language.

Each removal is attributed to the first rule that fires, in that order.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, Mapping

from .errors import MissingProfile
from .langdetect import MIN_SEGMENT_CHARS, classify


@dataclass(frozen=True)
class SentencePair:
    source_text: str
    target_text: str
    source_lang: str
    target_lang: str


@dataclass
class CleanReport:
    kept: int = 0
    removed_empty: int = 0
    removed_nonalpha: int = 0
    removed_wrong_language: int = 0
    skipped_langcheck_short: int = 0

    @property
    def total(self) -> int:
        return self.kept + self.removed_empty + self.removed_nonalpha + self.removed_wrong_language

    def __add__(self, other: CleanReport) -> CleanReport:
        return CleanReport(**{k: v + getattr(other, k) for k, v in asdict(self).items()})

    def as_dict(self) -> dict:
        return asdict(self)


def has_letter(text: str) -> bool:
    return any(ch.isalpha() for ch in text)


def only_letters(text: str) -> bool:
    return all(ch.isalpha() for ch in text)


def classify_pair(pair: SentencePair, profiles, *, strict: bool = False,
                  min_chars: int = MIN_SEGMENT_CHARS) -> tuple[str, int]:
    """Return (verdict, skipped) where verdict is ``kept`` or the removal reason."""
    src, tgt = pair.source_text.strip(), pair.target_text.strip()
    if not src or not tgt:
        return "removed_empty", 0
    fails_b = only_letters if strict else (lambda t: not has_letter(t))
    if fails_b(src) or fails_b(tgt):
        return "removed_nonalpha", 0
    skipped = 0
    wrong = False
    for text, lang in ((src, pair.source_lang), (tgt, pair.target_lang)):
        if len(text) < min_chars:
            skipped += 1
        elif classify(text, profiles).language != lang:
            wrong = True
    return ("removed_wrong_language" if wrong else "kept"), skipped


def clean_pairs(pairs: Iterable[SentencePair], profiles: Mapping, *, strict: bool = False,
                min_chars: int = MIN_SEGMENT_CHARS) -> tuple[list[SentencePair], CleanReport]:
    pairs = list(pairs)
    for lang in sorted({p.source_lang for p in pairs} | {p.target_lang for p in pairs}):
        if lang not in profiles:
            raise MissingProfile(lang)
    kept, report = [], CleanReport()
    for pair in pairs:
        verdict, skipped = classify_pair(pair, profiles, strict=strict, min_chars=min_chars)
        report.skipped_langcheck_short += skipped
        setattr(report, verdict, getattr(report, verdict) + 1)
        if verdict == "kept":
            kept.append(pair)
    return kept, report
