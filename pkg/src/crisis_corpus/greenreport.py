"""Energy and emissions estimate for a pipeline run.

energy (kWh)    = device watts * seconds / 3.6e6 * PUE
emissions (kg)  = energy * grid intensity (g/kWh) / 1000

Intensities are editable configuration keyed by region and time-of-day
band; the shipped table is illustrative only.
"""
from __future__ import annotations

import json
import time
from contextlib import contextmanager
from dataclasses import asdict, dataclass
from importlib import resources
from pathlib import Path

from .errors import ClockError, ConfigError, NegativeDuration, UnknownRegion

BANDS = ("day", "night", "flat")
JOULES_PER_KWH = 3_600_000

ADVISORY = (
    "Note (non-normative): figures are nameplate estimates. Scheduling long jobs "
    "for a low-intensity region or band lowers emissions, as does fine-tuning an "
    "existing model instead of training from scratch."
)


@dataclass(frozen=True)
class PowerConfig:
    device_power_watts: float = 65.0
    pue: float = 1.0
    region: str = "GLOBAL"
    time_of_day_band: str = "flat"

    def __post_init__(self):
        if not self.device_power_watts > 0:
            raise ConfigError(f"device_power_watts must be > 0, got {self.device_power_watts}")
        if not self.pue >= 1.0:
            raise ConfigError(f"pue must be >= 1.0, got {self.pue}")
        if self.time_of_day_band not in BANDS:
            raise ConfigError(f"time_of_day_band must be one of {BANDS}, got {self.time_of_day_band!r}")


@dataclass(frozen=True)
class GreenReport:
    duration_seconds: float
    energy_kwh: float
    intensity_g_per_kwh: float
    emissions_kgco2: float
    device_power_watts: float
    pue: float
    region: str
    time_of_day_band: str

    def as_dict(self) -> dict:
        return asdict(self)

    def render(self) -> str:
        return "\n".join([
            "Green report",
            f"  duration:   {self.duration_seconds:.3f} s",
            f"  power:      {self.device_power_watts:g} W x PUE {self.pue:g}",
            f"  energy:     {self.energy_kwh:.9f} kWh",
            f"  intensity:  {self.intensity_g_per_kwh:g} gCO2/kWh ({self.region}, {self.time_of_day_band})",
            f"  emissions:  {self.emissions_kgco2:.9f} kgCO2",
            "",
            ADVISORY,
        ])


def load_intensity_table(path=None) -> dict:
    if path is None:
        text = (resources.files("crisis_corpus") / "data" / "intensity.json").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    table = json.loads(text)
    for region, bands in table.items():
        for band, value in bands.items():
            if band not in BANDS or value < 0:
                raise ConfigError(f"intensity table: bad entry {region}.{band} = {value!r}")
    return table


def estimate_emissions(duration_seconds: float, config: PowerConfig, intensity_table=None) -> GreenReport:
    if duration_seconds < 0:
        raise NegativeDuration(f"duration must be non-negative, got {duration_seconds}")
    table = load_intensity_table() if intensity_table is None else intensity_table
    try:
        intensity = table[config.region][config.time_of_day_band]
    except KeyError:
        raise UnknownRegion(
            f"no intensity for region {config.region!r} band {config.time_of_day_band!r}"
        ) from None
    energy = config.device_power_watts * duration_seconds / JOULES_PER_KWH * config.pue
    return GreenReport(
        duration_seconds=duration_seconds,
        energy_kwh=energy,
        intensity_g_per_kwh=intensity,
        emissions_kgco2=energy * intensity / 1000,
        device_power_watts=config.device_power_watts,
        pue=config.pue,
        region=config.region,
        time_of_day_band=config.time_of_day_band,
    )


class RunTracker:
    """Monotonic wall-clock stopwatch for one pipeline run."""

    def __init__(self, clock=time.monotonic):
        if clock is time.monotonic and not time.get_clock_info("monotonic").monotonic:
            raise ClockError("no monotonic clock available")
        self._clock = clock
        self.started = None
        self.stopped = None

    def start(self):
        self.started = self._clock()
        self.stopped = None
        return self

    def stop(self) -> float:
        if self.started is None:
            raise ClockError("tracker stopped before it was started")
        self.stopped = self._clock()
        return self.duration

    @property
    def duration(self) -> float:
        if self.started is None or self.stopped is None:
            raise ClockError("tracker has not completed a run")
        elapsed = self.stopped - self.started
        if elapsed < 0:
            raise ClockError(f"stop precedes start by {-elapsed} s")
        return elapsed


@contextmanager
def track(clock=time.monotonic):
    tracker = RunTracker(clock).start()
    try:
        yield tracker
    finally:
        tracker.stop()
