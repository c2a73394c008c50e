"""End-to-end corpus build: collection, pre-processing, alignment, validation.

Outputs are staged in a temporary directory inside ``out_dir`` and moved
into place only after every file has been written, so a failed run leaves
no partial corpus behind.
"""
from __future__ import annotations

import hashlib
import json
import os
import shutil
import tempfile
from dataclasses import replace
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .clean import CleanReport, SentencePair, clean_pairs
from .config import PipelineConfig
from .docalign import pair_documents
from .document import Document
from .errors import CorpusError, IoError
from .formats import write_moses, write_tmx, write_tsv
from .greenreport import estimate_emissions, load_intensity_table, track
from .langdetect import detect_file_language, load_profiles
from .normalize import normalize_document, read_raw
from .sentalign import BACKEND, BEAD_TYPES, align_sentences, flatten

MANIFEST_NAME = "manifest.json"
CORPUS_STEM = "corpus"
# manifest fields that legitimately differ between identical runs
VOLATILE_KEYS = ("started_at", "finished_at", "green_report")


def _stage(stage, exc, context=None):
    """Tag ``exc`` with the stage (and document) it came from."""
    if not isinstance(exc, CorpusError):
        exc = IoError(str(exc))
    exc.stage = stage
    if context and not exc.context:
        exc.context = context
    return exc


def list_documents(directory: Path) -> list[Path]:
    return sorted(
        (p for p in Path(directory).rglob("*") if p.is_file() and not p.name.startswith(".")),
        key=lambda p: p.relative_to(directory).as_posix(),
    )


def _has_marker(path: Path, lang: str) -> bool:
    return f".{lang}." in path.name or path.name.endswith(f".{lang}")


def collect(config: PipelineConfig) -> tuple[list[tuple[str, Path]], list[tuple[str, Path]]]:
    """(id, path) lists for the source and target side."""
    if config.mixed_dir is not None:
        root = Path(config.mixed_dir)
        if not root.is_dir():
            raise IoError(f"input directory {str(root)!r} does not exist")
        files = list_documents(root)
        src = [(p.relative_to(root).as_posix(), p) for p in files if _has_marker(p, config.source_lang)]
        tgt = [(p.relative_to(root).as_posix(), p) for p in files if _has_marker(p, config.target_lang)]
        return src, tgt
    sides = []
    for directory in (config.source_dir, config.target_dir):
        if directory is None:
            raise IoError("both source and target directories are required (or a mixed directory)")
        root = Path(directory)
        if not root.is_dir():
            raise IoError(f"input directory {str(root)!r} does not exist")
        sides.append([(p.relative_to(root).as_posix(), p) for p in list_documents(root)])
    return sides[0], sides[1]


def load_side(entries, language, encoding) -> list[Document]:
    docs = []
    for doc_id, path in entries:
        try:
            raw = read_raw(path, encoding)
        except (CorpusError, OSError) as exc:
            raise _stage("normalize", exc, doc_id) from exc
        docs.append(normalize_document(raw, doc_id=doc_id, language=language))
    return docs


def sha256_file(path: Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(1 << 16), b""):
            h.update(block)
    return h.hexdigest()


def output_names(config: PipelineConfig) -> dict[str, list[str]]:
    names = {}
    if "moses" in config.formats:
        names["moses"] = [f"{CORPUS_STEM}.{config.source_lang}", f"{CORPUS_STEM}.{config.target_lang}"]
    if "tsv" in config.formats:
        names["tsv"] = [f"{CORPUS_STEM}.tsv"]
    if "tmx" in config.formats:
        names["tmx"] = [f"{CORPUS_STEM}.tmx"]
    return names


def _write_outputs(pairs, config: PipelineConfig, out_dir: Path) -> dict:
    """Write every format into a staging dir, then move the files into ``out_dir``."""
    names = output_names(config)
    out_dir.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=".staging-", dir=out_dir))
    moved = []
    try:
        if "moses" in names:
            write_moses(pairs, staging / names["moses"][0], staging / names["moses"][1])
        if "tsv" in names:
            write_tsv(pairs, staging / names["tsv"][0])
        if "tmx" in names:
            write_tmx(pairs, staging / names["tmx"][0], config.source_lang, config.target_lang)
        outputs = {}
        for fmt in sorted(names):
            for name in names[fmt]:
                path = staging / name
                outputs[name] = {"format": fmt, "sha256": sha256_file(path)}
                if fmt != "tmx":
                    outputs[name]["lines"] = path.read_bytes().count(b"\n")
                else:
                    outputs[name]["units"] = len(pairs)
        for name in sorted(outputs):
            os.replace(staging / name, out_dir / name)
            moved.append(out_dir / name)
        return outputs
    except BaseException:
        for path in moved:
            path.unlink(missing_ok=True)
        raise
    finally:
        shutil.rmtree(staging, ignore_errors=True)


def combined_checksum(outputs: dict) -> str:
    h = hashlib.sha256()
    for name in sorted(outputs):
        h.update(f"{name}\0{outputs[name]['sha256']}\n".encode())
    return h.hexdigest()


def run(config: PipelineConfig, profiles=None) -> dict:
    """Run the whole pipeline and return the manifest (also written to ``out_dir``)."""
    started = datetime.now(timezone.utc)
    with track() as tracker:
        manifest = _run(config, profiles)
    try:
        table = load_intensity_table(config.intensity_table)
        green = estimate_emissions(tracker.duration, config.power, table)
    except CorpusError as exc:
        raise _stage("greenreport", exc) from exc
    manifest["green_report"] = green.as_dict()
    manifest["started_at"] = started.isoformat()
    manifest["finished_at"] = datetime.now(timezone.utc).isoformat()
    if config.out_dir is not None:
        out_dir = Path(config.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        tmp = out_dir / (MANIFEST_NAME + ".tmp")
        tmp.write_text(json.dumps(manifest, indent=2, sort_keys=True, ensure_ascii=False) + "\n", encoding="utf-8")
        os.replace(tmp, out_dir / MANIFEST_NAME)
    return manifest


def _run(config: PipelineConfig, profiles) -> dict:
    src_lang, tgt_lang = config.source_lang, config.target_lang
    warnings: list[str] = []

    src_entries, tgt_entries = collect(config)
    sources = load_side(src_entries, src_lang, config.encoding)
    targets = load_side(tgt_entries, tgt_lang, config.encoding)
    n_in = {"source": len(sources), "target": len(targets)}

    if profiles is None and (sources or targets):
        try:
            profiles = load_profiles(config.profiles_dir)
        except CorpusError as exc:
            raise _stage("langdetect", exc) from exc

    def detect(docs):
        out = []
        for doc in docs:
            if not doc.segments:
                warnings.append(f"{doc.id}: no text after normalisation")
                out.append(doc)
                continue
            try:
                found = detect_file_language(doc, profiles, config.file_sample_head, config.file_sample_stride)
            except CorpusError as exc:
                raise _stage("langdetect", exc, doc.id) from exc
            if found.language != doc.language:
                warnings.append(
                    f"{doc.id}: declared language {doc.language!r} but detected {found.language!r} "
                    f"(confidence {found.confidence:.3f})"
                )
            out.append(replace(doc, detected_language=found.language))
        return out

    sources, targets = detect(sources), detect(targets)

    try:
        pairs, unpaired = pair_documents(
            sources, targets,
            ratio_bounds=config.ratio_bounds,
            max_iterations=config.max_iterations,
            break_patterns=config.break_patterns,
        )
    except CorpusError as exc:
        raise _stage("docalign", exc) from exc

    bead_counts = dict.fromkeys(BEAD_TYPES, 0)
    dropped = 0
    sentence_pairs = []
    pair_records = []
    for pair in pairs:
        try:
            alignment = align_sentences(pair, allow_22=config.allow_22)
        except CorpusError as exc:
            raise _stage("sentalign", exc, f"{pair.source.id} / {pair.target.id}") from exc
        flat, n_dropped = flatten(alignment)
        dropped += n_dropped
        for kind, count in alignment.counts().items():
            bead_counts[kind] += count
        sentence_pairs.extend(SentencePair(s, t, src_lang, tgt_lang) for s, t in flat)
        pair_records.append({
            "source": pair.source.id,
            "target": pair.target.id,
            "ratio": round(pair.ratio, 6),
            "accepted_iteration": pair.accepted_iteration,
            "beads": len(alignment.beads),
            "alignment_cost": round(alignment.total_cost, 6),
        })

    if sentence_pairs:
        try:
            kept, report = clean_pairs(sentence_pairs, profiles, strict=config.strict_6b,
                                       min_chars=config.min_langdetect_chars)
        except CorpusError as exc:
            raise _stage("clean", exc) from exc
    else:
        kept, report = [], CleanReport()

    outputs = {}
    if config.out_dir is not None and (sources or targets):
        try:
            outputs = _write_outputs(kept, config, Path(config.out_dir))
        except CorpusError as exc:
            raise _stage("write", exc) from exc
        except OSError as exc:
            raise _stage("write", IoError(str(exc))) from exc

    by_iteration = {str(i): 0 for i in range(1, 4)}
    for pair in pairs:
        by_iteration[str(pair.accepted_iteration)] += 1

    return {
        "tool": "crisis_corpus",
        "version": __version__,
        "preset": config.preset,
        "config": config.snapshot(),
        "deviations": config.deviations(),
        "alignment_backend": BACKEND,
        "counts": {
            "documents_in": n_in,
            "documents_paired": len(pairs),
            "documents_unpaired": {
                "source": sum(1 for u in unpaired if u.side == "source"),
                "target": sum(1 for u in unpaired if u.side == "target"),
            },
            "pairs_by_iteration": by_iteration,
            "beads": bead_counts,
            "beads_total": sum(bead_counts.values()),
            "dropped_beads": dropped,
            "sentence_pairs": len(sentence_pairs),
            "clean": report.as_dict(),
            "kept": len(kept),
        },
        "document_pairs": pair_records,
        "unpaired": [
            {"id": u.document.id, "side": u.side,
             "last_ratio": None if u.last_ratio is None else round(u.last_ratio, 6)}
            for u in unpaired
        ],
        "warnings": warnings,
        "outputs": outputs,
        "checksum": combined_checksum(outputs) if outputs else None,
    }


def stable_view(manifest: dict) -> dict:
    """Manifest without wall-clock fields, for determinism checks."""
    return {k: v for k, v in manifest.items() if k not in VOLATILE_KEYS}
