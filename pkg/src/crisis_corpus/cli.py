"""Command-line entry point: ``crisis-corpus <subcommand>``."""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .clean import SentencePair, clean_pairs
from .config import FORMATS, PRESETS, build_config, load_config_file
from .docalign import pair_documents
from .errors import CorpusError, IoError
from .formats import read_tsv, write_tsv
from .greenreport import BANDS, GreenReport, PowerConfig, estimate_emissions, load_intensity_table
from .langdetect import detect_file_language, load_profiles
from .normalize import normalize_document, normalize_text, read_raw
from .pipeline import collect, load_side, run
from .sentalign import BACKEND, align_segments


def _profiles(args):
    return load_profiles(args.profiles)


def _power_overrides(args):
    power = {}
    if getattr(args, "power_watts", None) is not None:
        power["device_power_watts"] = args.power_watts
    if getattr(args, "pue", None) is not None:
        power["pue"] = args.pue
    if getattr(args, "region", None) is not None:
        power["region"] = args.region
    if getattr(args, "band", None) is not None:
        power["time_of_day_band"] = args.band
    return power


def _config(args):
    file_overrides = load_config_file(args.config) if getattr(args, "config", None) else {}
    return build_config(
        file_overrides,
        source_dir=getattr(args, "src_dir", None),
        target_dir=getattr(args, "tgt_dir", None),
        mixed_dir=getattr(args, "mixed_dir", None),
        source_lang=getattr(args, "src_lang", None),
        target_lang=getattr(args, "tgt_lang", None),
        profiles_dir=getattr(args, "profiles", None),
        out_dir=getattr(args, "out", None),
        encoding=getattr(args, "encoding", None),
        formats=tuple(args.format) if getattr(args, "format", None) else None,
        strict_6b=True if getattr(args, "strict_6b", False) else None,
        intensity_table=getattr(args, "intensity_table", None),
        preset=getattr(args, "preset", None),
        power=_power_overrides(args) or None,
    )


def cmd_normalize(args):
    for path in args.files:
        raw = read_raw(path, args.encoding)
        text = normalize_text(raw.content).content
        if args.keep_blank:
            body = text
        else:
            body = "\n".join(seg.text for seg in normalize_document(raw).segments)
        if args.out:
            out = Path(args.out) / Path(path).name
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_text(body + "\n" if body else "", encoding="utf-8", newline="")
        else:
            sys.stdout.write(body + ("\n" if body else ""))
    return 0


def cmd_detect(args):
    profiles = _profiles(args)
    for path in args.files:
        doc = normalize_document(read_raw(path, args.encoding), doc_id=str(path))
        found = detect_file_language(doc, profiles)
        print(f"{path}\t{found.language}\t{found.confidence:.4f}\t{found.sampled_chars}")
    return 0


def cmd_pair(args):
    config = _config(args)
    src_entries, tgt_entries = collect(config)
    sources = load_side(src_entries, config.source_lang, config.encoding)
    targets = load_side(tgt_entries, config.target_lang, config.encoding)
    pairs, unpaired = pair_documents(sources, targets, ratio_bounds=config.ratio_bounds,
                                     max_iterations=config.max_iterations,
                                     break_patterns=config.break_patterns)
    for p in pairs:
        print(f"paired\t{p.source.id}\t{p.target.id}\t{p.ratio:.4f}\t{p.accepted_iteration}")
    for u in unpaired:
        ratio = "-" if u.last_ratio is None else f"{u.last_ratio:.4f}"
        print(f"unpaired\t{u.side}\t{u.document.id}\t{ratio}")
    return 0


def cmd_align(args):
    src = normalize_document(read_raw(args.src_file, args.encoding))
    tgt = normalize_document(read_raw(args.tgt_file, args.encoding))
    alignment = align_segments(src.segments, tgt.segments, allow_22=not args.no_22)
    for bead in alignment.beads:
        print(f"{bead.bead_type}\t{bead.cost:.4f}\t{bead.source_text}\t{bead.target_text}")
    print(f"# total_cost={alignment.total_cost:.6f} beads={len(alignment.beads)} backend={BACKEND}",
          file=sys.stderr)
    return 0


def cmd_clean(args):
    profiles = _profiles(args)
    pairs = [SentencePair(s, t, args.src_lang, args.tgt_lang) for s, t in read_tsv(args.input)]
    kept, report = clean_pairs(pairs, profiles, strict=args.strict_6b)
    if args.out:
        write_tsv(kept, args.out)
    else:
        for p in kept:
            print(f"{p.source_text}\t{p.target_text}")
    print(json.dumps(report.as_dict(), sort_keys=True), file=sys.stderr)
    return 0


def cmd_run(args):
    config = _config(args)
    if config.out_dir is None:
        raise IoError("--out is required for run")
    manifest = run(config)
    counts = manifest["counts"]
    print(f"documents in: {counts['documents_in']['source']} {config.source_lang}, "
          f"{counts['documents_in']['target']} {config.target_lang}; "
          f"paired: {counts['documents_paired']}; kept pairs: {counts['kept']}")
    for warning in manifest["warnings"]:
        print(f"warning: {warning}", file=sys.stderr)
    if manifest["checksum"]:
        print(f"checksum: {manifest['checksum']}")
    print(f"manifest: {Path(config.out_dir) / 'manifest.json'}")
    print(GreenReport(**manifest["green_report"]).render())
    return 0


def cmd_report(args):
    if args.manifest:
        manifest = json.loads(Path(args.manifest).read_text(encoding="utf-8"))
        duration = manifest["green_report"]["duration_seconds"]
        base = manifest["green_report"]
        power = PowerConfig(
            device_power_watts=args.power_watts if args.power_watts is not None else base["device_power_watts"],
            pue=args.pue if args.pue is not None else base["pue"],
            region=args.region or base["region"],
            time_of_day_band=args.band or base["time_of_day_band"],
        )
    else:
        if args.duration is None:
            raise IoError("report needs --manifest or --duration")
        duration = args.duration
        power = PowerConfig(**{k: v for k, v in {
            "device_power_watts": args.power_watts, "pue": args.pue,
            "region": args.region, "time_of_day_band": args.band,
        }.items() if v is not None})
    report = estimate_emissions(duration, power, load_intensity_table(args.intensity_table))
    if args.json:
        print(json.dumps(report.as_dict(), indent=2, sort_keys=True))
    else:
        print(report.render())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="crisis-corpus", description=__doc__)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, profiles=True):
        p.add_argument("--encoding", default=None, help="input encoding when no BOM is present (default utf-8)")
        if profiles:
            p.add_argument("--profiles", type=Path, default=None,
                           help="language profile directory (env CRISIS_CORPUS_PROFILES)")

    def dirs(p):
        p.add_argument("--src-dir", type=Path)
        p.add_argument("--tgt-dir", type=Path)
        p.add_argument("--mixed-dir", type=Path, help="one directory, languages told apart by .<lang> markers")
        p.add_argument("--src-lang")
        p.add_argument("--tgt-lang")
        p.add_argument("--config", type=Path, help="key = value config file")

    def power(p):
        p.add_argument("--region")
        p.add_argument("--power-watts", type=float)
        p.add_argument("--pue", type=float)
        p.add_argument("--band", choices=BANDS)
        p.add_argument("--intensity-table", type=Path)

    p = sub.add_parser("normalize", help="normalise text files")
    common(p, profiles=False)
    p.add_argument("files", nargs="+", type=Path)
    p.add_argument("--out", type=Path, help="write into this directory instead of stdout")
    p.add_argument("--keep-blank", action="store_true", help="keep blank lines")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("detect", help="file-level language detection")
    common(p)
    p.add_argument("files", nargs="+", type=Path)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("pair", help="pair documents by stem and size ratio")
    common(p, profiles=False)
    dirs(p)
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("align", help="sentence-align two documents")
    common(p, profiles=False)
    p.add_argument("src_file", type=Path)
    p.add_argument("tgt_file", type=Path)
    p.add_argument("--no-22", action="store_true", help="disallow 2-2 beads")
    p.set_defaults(func=cmd_align)

    p = sub.add_parser("clean", help="filter a TSV of sentence pairs")
    common(p)
    p.add_argument("--input", type=Path, required=True)
    p.add_argument("--src-lang", required=True)
    p.add_argument("--tgt-lang", required=True)
    p.add_argument("--out", type=Path)
    p.add_argument("--strict-6b", action="store_true",
                   help="literal reading: drop sides made only of letters")
    p.set_defaults(func=cmd_clean)

    p = sub.add_parser("run", help="full pipeline")
    common(p)
    dirs(p)
    power(p)
    p.add_argument("--out", type=Path)
    p.add_argument("--format", action="append", choices=FORMATS)
    p.add_argument("--strict-6b", action="store_true")
    p.add_argument("--preset", choices=sorted(PRESETS))
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("report", help="green report for a run or a duration")
    power(p)
    p.add_argument("--manifest", type=Path)
    p.add_argument("--duration", type=float, help="seconds")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_report)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CorpusError as exc:
        print(f"error [{exc.stage}]: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error [{args.command}]: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
