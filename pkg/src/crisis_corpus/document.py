from __future__ import annotations

from dataclasses import dataclass, field, replace


@dataclass(frozen=True)
class Segment:
    """One candidate sentence."""

    text: str
    language: str | None = None
    confidence: float | None = None

    @property
    def length(self) -> int:
        return len(self.text)


@dataclass(frozen=True)
class Document:
    """A monolingual text after normalisation.

    ``id`` is the document's path relative to its input directory, in POSIX form.
    """

    id: str
    language: str
    segments: tuple[Segment, ...] = field(default_factory=tuple)
    detected_language: str | None = None

    @property
    def size_chars(self) -> int:
        return sum(seg.length for seg in self.segments)

    @property
    def texts(self) -> list[str]:
        return [seg.text for seg in self.segments]

    def with_texts(self, texts) -> Document:
        return replace(self, segments=tuple(Segment(t) for t in texts))

    @classmethod
    def from_texts(cls, id: str, language: str, texts) -> Document:
        return cls(id=id, language=language, segments=tuple(Segment(t) for t in texts))
