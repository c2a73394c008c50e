"""Pipeline configuration, presets and the key-value config file.

Config files are INI-style ``key = value`` lines; the ``[pipeline]`` section
header is optional. Lists are comma separated, except ``break_patterns``
which takes one regular expression per (indented) line.
"""
from __future__ import annotations

import configparser
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from .docalign import BREAK_PATTERNS, MAX_ITERATIONS, RATIO_BOUNDS
from .errors import ConfigError
from .greenreport import PowerConfig
from .langdetect import FILE_SAMPLE_HEAD, FILE_SAMPLE_STRIDE, MIN_SEGMENT_CHARS

FORMATS = ("moses", "tsv", "tmx")

# Every behavioural constant and the value the corpus guidelines prescribe.
GUIDELINE_DEFAULTS = {
    "ratio_bounds": RATIO_BOUNDS,
    "max_iterations": MAX_ITERATIONS,
    "min_langdetect_chars": MIN_SEGMENT_CHARS,
    "file_sample_head": FILE_SAMPLE_HEAD,
    "file_sample_stride": FILE_SAMPLE_STRIDE,
    "break_patterns": BREAK_PATTERNS,
    "strict_6b": False,
}

# Deployment phases, from fastest turnaround to highest quality. Only
# thresholds, output formats and manifest labels differ.
PRESETS = {
    "rapid": {"max_iterations": 1, "allow_22": False, "formats": ("moses",)},
    "intermediate": {"formats": ("moses", "tsv")},
    "bespoke": {"formats": FORMATS},
}
DEFAULT_PRESET = "bespoke"


@dataclass(frozen=True)
class PipelineConfig:
    source_lang: str = "en"
    target_lang: str = "ga"
    source_dir: Path | None = None
    target_dir: Path | None = None
    mixed_dir: Path | None = None
    out_dir: Path | None = None
    profiles_dir: Path | None = None
    encoding: str = "utf-8"
    ratio_bounds: tuple[float, float] = RATIO_BOUNDS
    max_iterations: int = MAX_ITERATIONS
    min_langdetect_chars: int = MIN_SEGMENT_CHARS
    file_sample_head: int = FILE_SAMPLE_HEAD
    file_sample_stride: int = FILE_SAMPLE_STRIDE
    break_patterns: tuple[str, ...] = BREAK_PATTERNS
    allow_22: bool = True
    strict_6b: bool = False
    formats: tuple[str, ...] = FORMATS
    power: PowerConfig = field(default_factory=PowerConfig)
    intensity_table: Path | None = None
    preset: str = DEFAULT_PRESET

    def __post_init__(self):
        if self.preset not in PRESETS:
            raise ConfigError(f"unknown preset {self.preset!r}; choose from {sorted(PRESETS)}")
        bad = [f for f in self.formats if f not in FORMATS]
        if bad:
            raise ConfigError(f"unknown output format(s) {bad}; choose from {FORMATS}")
        low, high = self.ratio_bounds
        if not 0 < low <= high:
            raise ConfigError(f"invalid ratio bounds {self.ratio_bounds}")
        if not 1 <= self.max_iterations <= MAX_ITERATIONS:
            raise ConfigError(f"max_iterations must be 1..{MAX_ITERATIONS}")
        if self.file_sample_stride < 1 or self.file_sample_head < 0 or self.min_langdetect_chars < 0:
            raise ConfigError("sampling and threshold values must be non-negative (stride >= 1)")

    @classmethod
    def for_preset(cls, preset: str = DEFAULT_PRESET, **overrides) -> PipelineConfig:
        if preset not in PRESETS:
            raise ConfigError(f"unknown preset {preset!r}; choose from {sorted(PRESETS)}")
        return cls(preset=preset, **{**PRESETS[preset], **overrides})

    def deviations(self) -> dict[str, dict]:
        """Constants that differ from the guideline values."""
        out = {}
        for key, expected in GUIDELINE_DEFAULTS.items():
            actual = getattr(self, key)
            if isinstance(expected, tuple):
                actual = tuple(actual)
            if actual != expected:
                out[key] = {"guideline": _plain(expected), "configured": _plain(actual)}
        return out

    def snapshot(self) -> dict:
        data = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if isinstance(value, PowerConfig):
                value = asdict(value)
            data[f.name] = _plain(value)
        return data


def _plain(value):
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, tuple):
        return [_plain(v) for v in value]
    return value


_PATH_KEYS = {"source_dir", "target_dir", "mixed_dir", "out_dir", "profiles_dir", "intensity_table"}
_INT_KEYS = {"max_iterations", "min_langdetect_chars", "file_sample_head", "file_sample_stride"}
_BOOL_KEYS = {"allow_22", "strict_6b"}
_POWER_KEYS = {
    "power_watts": ("device_power_watts", float),
    "device_power_watts": ("device_power_watts", float),
    "pue": ("pue", float),
    "region": ("region", str),
    "time_of_day_band": ("time_of_day_band", str),
    "band": ("time_of_day_band", str),
}


def parse_config_text(text: str, base_dir: Path = Path(".")) -> dict:
    """Parse config file text into keyword overrides for ``PipelineConfig``."""
    parser = configparser.ConfigParser(interpolation=None, comment_prefixes=("#", ";"),
                                       inline_comment_prefixes=None)
    if not text.lstrip().startswith("["):
        text = "[pipeline]\n" + text
    try:
        parser.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config: {exc}") from exc
    if not parser.has_section("pipeline"):
        raise ConfigError("config needs a [pipeline] section")
    known = {f.name for f in fields(PipelineConfig)}
    out, power = {}, {}
    for key, raw in parser.items("pipeline"):
        raw = raw.strip()
        if key in _POWER_KEYS:
            name, conv = _POWER_KEYS[key]
            power[name] = _convert(key, raw, conv)
        elif key not in known or key == "power":
            raise ConfigError(f"unknown config key {key!r}")
        elif key in _PATH_KEYS:
            path = Path(raw)
            out[key] = path if path.is_absolute() else base_dir / path
        elif key in _INT_KEYS:
            out[key] = _convert(key, raw, int)
        elif key in _BOOL_KEYS:
            try:
                out[key] = parser.getboolean("pipeline", key)
            except ValueError as exc:
                raise ConfigError(f"{key}: {exc}") from exc
        elif key == "ratio_bounds":
            parts = [p for p in raw.replace(",", " ").split() if p]
            if len(parts) != 2:
                raise ConfigError("ratio_bounds needs two numbers")
            out[key] = tuple(_convert(key, p, float) for p in parts)
        elif key == "break_patterns":
            out[key] = tuple(line.strip() for line in raw.splitlines() if line.strip())
        elif key == "formats":
            out[key] = tuple(p.strip() for p in raw.split(",") if p.strip())
        else:
            out[key] = raw
    if power:
        out["power"] = power
    return out


def _convert(key, raw, conv):
    try:
        return conv(raw)
    except ValueError:
        raise ConfigError(f"{key}: cannot read {raw!r} as {conv.__name__}") from None


def load_config_file(path) -> dict:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"cannot read config file {str(path)!r}: {exc}") from exc
    return parse_config_text(text, path.parent)


def build_config(file_overrides: dict | None = None, **cli_overrides) -> PipelineConfig:
    """Preset defaults, then the config file, then command-line values."""
    merged = dict(file_overrides or {})
    power = dict(merged.pop("power", {}) or {})
    for key, value in cli_overrides.items():
        if value is None:
            continue
        if key == "power":
            power.update(value)
        else:
            merged[key] = value
    preset = merged.pop("preset", DEFAULT_PRESET)
    try:
        config = PipelineConfig.for_preset(preset, **merged)
    except TypeError as exc:
        raise ConfigError(str(exc)) from exc
    if power:
        config = replace(config, power=replace(config.power, **power))
    return config
