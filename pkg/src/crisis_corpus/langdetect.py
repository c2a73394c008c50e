"""Character n-gram language identification (Cavnar & Trenkle rank distance).

A profile is the top ``PROFILE_CUTOFF`` character 1..5-grams of a training
text, ranked by frequency. A text is assigned to the profile with the
smallest out-of-place distance between its own n-gram ranking and the
profile's.
"""
from __future__ import annotations

import json
import os
import re
from collections import Counter
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

from .document import Document
from .errors import EmptyDocument, InsufficientTrainingData, NoProfiles, TooShort

PROFILE_CUTOFF = 400
MAX_NGRAM = 5
MIN_TRAINING_CHARS = 1000
MIN_SEGMENT_CHARS = 40
FILE_SAMPLE_HEAD = 50
FILE_SAMPLE_STRIDE = 100

PROFILES_ENV = "CRISIS_CORPUS_PROFILES"

_WS = re.compile(r"\s+")


@dataclass(frozen=True)
class LanguageProfile:
    language: str
    ngram_ranks: dict[str, int] = field(hash=False)
    training_size: int = 0

    def __len__(self):
        return len(self.ngram_ranks)

    def to_json(self) -> dict:
        return {
            "language": self.language,
            "training_size": self.training_size,
            "ngrams": [[gram, rank] for gram, rank in self.ngram_ranks.items()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> LanguageProfile:
        pairs = sorted(((g, int(r)) for g, r in data["ngrams"]), key=lambda p: p[1])
        ranks = [r for _, r in pairs]
        if ranks != list(range(1, len(ranks) + 1)) or len(ranks) > PROFILE_CUTOFF:
            raise ValueError(f"profile {data.get('language')!r}: ranks must be 1..k with k <= {PROFILE_CUTOFF}")
        return cls(data["language"], dict(pairs), int(data.get("training_size", 0)))


@dataclass(frozen=True)
class Detection:
    language: str
    confidence: float
    sampled_chars: int
    distances: dict[str, int] = field(default_factory=dict, hash=False, compare=False)


def prepare(text: str) -> str:
    """Lowercase, collapse whitespace and pad with one space on each side."""
    return " " + _WS.sub(" ", text.lower()).strip() + " "


def ngram_counts(text: str, max_n: int = MAX_NGRAM) -> Counter:
    counts = Counter()
    for n in range(1, max_n + 1):
        counts.update(text[i:i + n] for i in range(len(text) - n + 1))
    return counts


def rank_ngrams(text: str, cutoff: int = PROFILE_CUTOFF) -> dict[str, int]:
    counts = ngram_counts(prepare(text))
    top = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))[:cutoff]
    return {gram: rank for rank, (gram, _) in enumerate(top, start=1)}


def build_profile(corpus_text: str, language: str) -> LanguageProfile:
    size = len(_WS.sub(" ", corpus_text).strip())
    if size < MIN_TRAINING_CHARS:
        raise InsufficientTrainingData(
            f"{language}: {size} characters of training text, need {MIN_TRAINING_CHARS}"
        )
    return LanguageProfile(language, rank_ngrams(corpus_text), size)


def out_of_place(ranking: Mapping[str, int], profile: LanguageProfile) -> int:
    ref = profile.ngram_ranks
    return sum(
        abs(rank - ref[gram]) if gram in ref else PROFILE_CUTOFF
        for gram, rank in ranking.items()
    )


def _as_list(profiles) -> list[LanguageProfile]:
    if isinstance(profiles, Mapping):
        profiles = profiles.values()
    return list(profiles)


def classify(text: str, profiles) -> Detection:
    """Detect without any minimum-length check."""
    profiles = _as_list(profiles)
    if not profiles:
        raise NoProfiles("no language profiles loaded")
    ranking = rank_ngrams(text)
    distances = {p.language: out_of_place(ranking, p) for p in profiles}
    ordered = sorted(distances.items(), key=lambda kv: (kv[1], kv[0]))
    best_lang, best = ordered[0]
    if len(ordered) == 1:
        confidence = 1.0
    elif ordered[1][1] == 0:
        confidence = 0.0
    else:
        confidence = min(1.0, max(0.0, 1.0 - best / ordered[1][1]))
    return Detection(best_lang, confidence, len(text), distances)


def detect_segment(text: str, profiles, min_chars: int = MIN_SEGMENT_CHARS) -> Detection:
    if len(text) < min_chars:
        raise TooShort(f"segment has {len(text)} characters, language detection needs {min_chars}")
    return classify(text, profiles)


def sample_indices(n_lines: int, head: int = FILE_SAMPLE_HEAD, stride: int = FILE_SAMPLE_STRIDE) -> list[int]:
    """1-based line numbers scanned for file-level detection."""
    picked = list(range(1, min(head, n_lines) + 1))
    picked.extend(i for i in range(stride, n_lines + 1, stride) if i > head)
    return picked


def detect_file_language(doc: Document, profiles, head: int = FILE_SAMPLE_HEAD,
                         stride: int = FILE_SAMPLE_STRIDE) -> Detection:
    if not doc.segments:
        raise EmptyDocument(f"document {doc.id!r} has no segments")
    sample = " ".join(doc.segments[i - 1].text for i in sample_indices(len(doc.segments), head, stride))
    return classify(sample, profiles)


def save_profile(profile: LanguageProfile, path) -> None:
    data = profile.to_json()
    rows = ",\n".join("  " + json.dumps(entry, ensure_ascii=False) for entry in data["ngrams"])
    text = (
        "{\n"
        f' "language": {json.dumps(data["language"])},\n'
        f' "training_size": {data["training_size"]},\n'
        f' "ngrams": [\n{rows}\n ]\n'
        "}\n"
    )
    Path(path).write_text(text, encoding="utf-8")


def load_profile(path) -> LanguageProfile:
    return LanguageProfile.from_json(json.loads(Path(path).read_text(encoding="utf-8")))


def default_profiles_dir() -> Path:
    override = os.environ.get(PROFILES_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("crisis_corpus") / "profiles"))


def load_profiles(directory=None, languages: Iterable[str] | None = None) -> dict[str, LanguageProfile]:
    directory = Path(directory) if directory is not None else default_profiles_dir()
    if not directory.is_dir():
        raise NoProfiles(f"profiles directory {str(directory)!r} does not exist")
    wanted = set(languages) if languages is not None else None
    profiles = {}
    for path in sorted(directory.glob("*.json")):
        profile = load_profile(path)
        if wanted is None or profile.language in wanted:
            profiles[profile.language] = profile
    if not profiles:
        raise NoProfiles(f"no profiles found in {str(directory)!r}")
    return profiles
