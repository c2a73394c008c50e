"""Rebuild the shipped language profiles from the training fixtures.

    python tools/build_profiles.py [fixtures_dir] [profiles_dir]
"""
import sys
from pathlib import Path

from crisis_corpus.langdetect import build_profile, save_profile

ROOT = Path(__file__).resolve().parent.parent


def main(argv):
    src = Path(argv[1]) if len(argv) > 1 else ROOT / "tests" / "fixtures" / "languages"
    dst = Path(argv[2]) if len(argv) > 2 else ROOT / "src" / "crisis_corpus" / "profiles"
    dst.mkdir(parents=True, exist_ok=True)
    for path in sorted(src.glob("*.train.txt")):
        lang = path.name.split(".")[0]
        profile = build_profile(path.read_text(encoding="utf-8"), lang)
        save_profile(profile, dst / f"{lang}.json")
        print(f"{lang}: {len(profile)} n-grams from {profile.training_size} chars")


if __name__ == "__main__":
    main(sys.argv)
