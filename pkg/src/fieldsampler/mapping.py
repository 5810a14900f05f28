"""Label-to-instrument mapping and the live track registry.

The 41 sound classes each have a default instrument track; an operator
config can override any of them. The registry is the one piece of shared
mutable state in the system: eight slots, one current sample per track,
last writer wins.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

TRACKS = ("Bass", "BD", "Chorus", "HH", "Piano", "Snare", "TT", "Wind")
PERCUSSIVE_TRACKS = frozenset({"BD", "HH", "Snare", "TT"})
MELODIC_TRACKS = frozenset({"Bass", "Chorus", "Piano", "Wind"})

# Default instrument for every classification label.
DEFAULT_TRACK_FOR_LABEL = {
    "Bark": "Bass",
    "Burping_or_eructation": "Bass",
    "Bus": "Bass",
    "Cello": "Bass",
    "Double_bass": "Bass",
    "Microwave_oven": "Bass",
    "Bass_drum": "BD",
    "Drawer_open_or_close": "BD",
    "Fart": "BD",
    "Gunshot_or_gunfire": "BD",
    "Applause": "Chorus",
    "Laughter": "Chorus",
    "Meow": "Chorus",
    "Squeak": "Chorus",
    "Computer_keyboard": "HH",
    "Finger_snapping": "HH",
    "Hihat": "HH",
    "Keys_jangling": "HH",
    "Scissors": "HH",
    "Writing": "HH",
    "Acoustic_guitar": "Piano",
    "Electric_piano": "Piano",
    "Harmonica": "Piano",
    "Telephone": "Piano",
    "Violin_or_fiddle": "Piano",
    "Cough": "Snare",
    "Fireworks": "Snare",
    "Knock": "Snare",
    "Shatter": "Snare",
    "Snare_drum": "Snare",
    "Tambourine": "Snare",
    "Tearing": "Snare",
    "Chime": "TT",
    "Cowbell": "TT",
    "Glockenspiel": "TT",
    "Gong": "TT",
    "Clarinet": "Wind",
    "Flute": "Wind",
    "Oboe": "Wind",
    "Saxophone": "Wind",
    "Trumpet": "Wind",
}

# The closed label set, in the lexicographic order used to index
# probability vectors everywhere.
LABELS = tuple(sorted(DEFAULT_TRACK_FOR_LABEL))
LABEL_INDEX = {label: i for i, label in enumerate(LABELS)}

# Default original pitch for samples where no pitch was detected, so
# melodic transposition stays defined.
DEFAULT_ORIGINAL_MIDI = 60.0


class UnknownLabel(KeyError):
    """Label is not one of the 41 classification classes."""


class UnknownTrack(KeyError):
    """Instrument is not one of the 8 tracks."""


def is_percussive(track: str) -> bool:
    if track not in TRACKS:
        raise UnknownTrack(track)
    return track in PERCUSSIVE_TRACKS


@dataclass
class MappingConfig:
    """Operator overrides of the default label-to-track table."""

    overrides: dict[str, str] = field(default_factory=dict)

    def __post_init__(self):
        for label, track in self.overrides.items():
            if label not in DEFAULT_TRACK_FOR_LABEL:
                raise UnknownLabel(label)
            if track not in TRACKS:
                raise UnknownTrack(track)


def map_label(label: str, config: MappingConfig | None = None) -> str:
    """Instrument track for a label: config override, else the default."""
    if label not in DEFAULT_TRACK_FOR_LABEL:
        raise UnknownLabel(label)
    if config is not None and label in config.overrides:
        return config.overrides[label]
    return DEFAULT_TRACK_FOR_LABEL[label]


@dataclass
class SampleAssignment:
    """A classified, pitch-tagged sample bound to an instrument track."""

    sample_id: str
    file_path: str
    label: str
    instrument: str
    original_midi: float = DEFAULT_ORIGINAL_MIDI
    confidence: float = 0.0
    location: tuple[float, float] | None = None
    received_at: float = 0.0

    def __post_init__(self):
        if self.label not in DEFAULT_TRACK_FOR_LABEL:
            raise UnknownLabel(self.label)
        if self.instrument not in TRACKS:
            raise UnknownTrack(self.instrument)
        if not 0.0 <= self.confidence <= 1.0:
            raise ValueError(f"confidence {self.confidence} outside [0, 1]")
        if self.location is not None:
            lat, lon = self.location
            if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
                raise ValueError(f"location ({lat}, {lon}) out of range")


class TrackRegistry:
    """Current sample per instrument track; atomic last-writer-wins slots."""

    def __init__(self):
        self._slots: dict[str, SampleAssignment] = {}
        self._lock = threading.Lock()

    def assign(self, assignment: SampleAssignment) -> SampleAssignment | None:
        """Install an assignment, returning whatever it displaced."""
        with self._lock:
            replaced = self._slots.get(assignment.instrument)
            self._slots[assignment.instrument] = assignment
            return replaced

    def get(self, track: str) -> SampleAssignment | None:
        if track not in TRACKS:
            raise UnknownTrack(track)
        with self._lock:
            return self._slots.get(track)

    def snapshot(self) -> dict[str, SampleAssignment]:
        """Consistent point-in-time copy of all occupied slots."""
        with self._lock:
            return dict(self._slots)
