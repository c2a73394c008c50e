"""Length-based sentence alignment with one-to-many beads.

Costs follow the Gale & Church (1993) model on character lengths. The DP
runs in a compiled kernel when it was built; otherwise in pure Python.
Set ``CRISIS_CORPUS_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Sequence

from . import _align_py
from ._cost import MEAN_RATIO, MOVES, NEG_LOG_PRIOR, PRIORS, VARIANCE, length_penalty
from .docalign import DocumentPair
from .document import Segment
from .errors import EmptyDocument, UnknownBeadType

try:
    if os.environ.get("CRISIS_CORPUS_PURE"):
        raise ImportError("pure-Python backend requested")
    from . import _align_core
except ImportError:
    _align_core = None

BACKENDS = {"python": _align_py.align_lengths}
if _align_core is not None:
    BACKENDS["cython"] = _align_core.align_lengths
BACKEND = "cython" if _align_core is not None else "python"

BEAD_TYPES = tuple(f"{a}-{b}" for a, b in MOVES)


def parse_bead_type(bead_type) -> tuple[int, int]:
    if isinstance(bead_type, str):
        try:
            a, b = bead_type.split("-")
            move = (int(a), int(b))
        except ValueError:
            raise UnknownBeadType(f"unknown bead type {bead_type!r}") from None
    else:
        move = tuple(bead_type)
    if move not in PRIORS:
        raise UnknownBeadType(f"unknown bead type {bead_type!r}")
    return move


def bead_cost(src_len_chars: int, tgt_len_chars: int, bead_type) -> float:
    move = parse_bead_type(bead_type)
    if src_len_chars < 0 or tgt_len_chars < 0:
        raise ValueError("lengths must be non-negative")
    return NEG_LOG_PRIOR[move] + length_penalty(src_len_chars, tgt_len_chars, MEAN_RATIO, VARIANCE)


@dataclass(frozen=True)
class AlignedBead:
    source_segments: tuple[Segment, ...]
    target_segments: tuple[Segment, ...]
    cost: float

    @property
    def bead_type(self) -> str:
        return f"{len(self.source_segments)}-{len(self.target_segments)}"

    @property
    def source_text(self) -> str:
        return " ".join(s.text for s in self.source_segments)

    @property
    def target_text(self) -> str:
        return " ".join(s.text for s in self.target_segments)


@dataclass(frozen=True)
class Alignment:
    beads: tuple[AlignedBead, ...]
    total_cost: float

    def counts(self) -> dict[str, int]:
        out = dict.fromkeys(BEAD_TYPES, 0)
        for bead in self.beads:
            out[bead.bead_type] += 1
        return out


def align_segments(source: Sequence[Segment], target: Sequence[Segment], *,
                   allow_22: bool = True, backend: str | None = None) -> Alignment:
    if not source or not target:
        raise EmptyDocument("sentence alignment needs segments on both sides")
    kernel = BACKENDS[backend or BACKEND]
    total, path = kernel([s.length for s in source], [t.length for t in target], allow_22)
    beads = []
    i = j = 0
    for ns, nt in path:
        src = tuple(source[i:i + ns])
        tgt = tuple(target[j:j + nt])
        cost = bead_cost(sum(s.length for s in src), sum(t.length for t in tgt), (ns, nt))
        beads.append(AlignedBead(src, tgt, cost))
        i, j = i + ns, j + nt
    return Alignment(tuple(beads), total)


def align_sentences(pair: DocumentPair, *, allow_22: bool = True, backend: str | None = None) -> Alignment:
    if not pair.source.segments or not pair.target.segments:
        raise EmptyDocument(f"cannot align {pair.source.id!r} with {pair.target.id!r}: empty document")
    return align_segments(pair.source.segments, pair.target.segments, allow_22=allow_22, backend=backend)


def flatten(alignment: Alignment) -> tuple[list[tuple[str, str]], int]:
    """Sentence pairs from beads with both sides present, plus the number of dropped 1-0/0-1 beads."""
    pairs, dropped = [], 0
    for bead in alignment.beads:
        if bead.source_segments and bead.target_segments:
            pairs.append((bead.source_text, bead.target_text))
        else:
            dropped += 1
    return pairs, dropped
