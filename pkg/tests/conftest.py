from pathlib import Path

import pytest

from crisis_corpus import sentalign
from crisis_corpus.langdetect import build_profile, load_profiles

FIXTURES = Path(__file__).parent / "fixtures"
LANG_DIR = FIXTURES / "languages"
TOY = FIXTURES / "toy_en_ga"


def training_texts():
    return {p.name.split(".")[0]: p.read_text(encoding="utf-8") for p in sorted(LANG_DIR.glob("*.train.txt"))}


def heldout_texts():
    return {p.name.split(".")[0]: p.read_text(encoding="utf-8").strip() for p in sorted(LANG_DIR.glob("*.heldout.txt"))}


@pytest.fixture(scope="session")
def shipped_profiles():
    return load_profiles()


@pytest.fixture(scope="session")
def fixture_profiles():
    return {lang: build_profile(text, lang) for lang, text in training_texts().items()}


@pytest.fixture(params=sorted(sentalign.BACKENDS))
def backend(request):
    return request.param


# one summary line per acceptance criterion

_acceptance = []


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker and report.when == "call" or (marker and report.when == "setup" and report.failed):
        _acceptance.append((marker.args[0], item.name, report.outcome, report.duration))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for criterion, name, outcome, duration in sorted(_acceptance):
        verdict = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"{verdict}  {criterion:<40} {name} ({duration:.2f}s)")
