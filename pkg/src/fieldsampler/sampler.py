"""Note rendering against the current sample assignments.

Playback semantics per track kind:

* percussive tracks (BD, HH, Snare, TT) always play the sample at its
  original pitch; the note number only triggers.
* melodic tracks (Bass, Chorus, Piano, Wind) transpose by resampling, so
  pitch and speed are coupled like a classic sampler.

Either way the note's duration truncates the sample, with a short linear
fade at the cut so truncation never clicks.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .audio import DEFAULT_SAMPLE_RATE, AudioClip, decode_wav
from .mapping import (
    DEFAULT_ORIGINAL_MIDI,
    TRACKS,
    SampleAssignment,
    UnknownTrack,
    is_percussive,
)
from .osc import ADDRESS_NOTE, Malformed, OscMessage

log = logging.getLogger(__name__)

FADE_SECONDS = 0.005


class EmptySample(ValueError):
    """Cannot render a zero-length sample."""


@dataclass
class NoteEvent:
    """One note command: which track, what pitch, how loud, how long."""

    instrument: str
    note: int
    velocity: int
    duration_ms: int
    onset_ms: int = 0

    def __post_init__(self):
        if self.instrument not in TRACKS:
            raise UnknownTrack(self.instrument)
        if not 0 <= self.note <= 127:
            raise ValueError(f"note {self.note} outside 0..127")
        if not 0 <= self.velocity <= 127:
            raise ValueError(f"velocity {self.velocity} outside 0..127")
        if self.duration_ms <= 0:
            raise ValueError("duration_ms must be positive")
        if self.onset_ms < 0:
            raise ValueError("onset_ms must be non-negative")


def note_from_osc(msg: OscMessage) -> NoteEvent:
    """Parse an inbound ADDRESS_NOTE message (",siii") into a NoteEvent."""
    if msg.address != ADDRESS_NOTE:
        raise Malformed(f"expected {ADDRESS_NOTE}, got {msg.address}")
    if len(msg.args) != 4 or not isinstance(msg.args[0], str) or not all(
        isinstance(a, int) for a in msg.args[1:]
    ):
        raise Malformed(f"expected typetag ,siii payload, got {msg.args!r}")
    instrument, note, velocity, duration_ms = msg.args
    try:
        return NoteEvent(instrument, note, velocity, duration_ms)
    except (ValueError, KeyError) as exc:
        raise Malformed(f"bad note event: {exc}") from exc


def render_note(
    sample: AudioClip,
    original_midi: float,
    ev: NoteEvent,
    percussive: bool,
) -> AudioClip:
    """Render one note: transpose (melodic only), scale by velocity, truncate.

    The playback rate for melodic notes is 2^((note - original)/12); the
    output is the sample linearly resampled at that rate, trimmed to the
    requested duration, with a 5 ms linear fade-out at the end.
    """
    n = len(sample)
    if n == 0:
        raise EmptySample("sample has no audio")
    sr = sample.sample_rate

    rate = 1.0 if percussive else 2.0 ** ((ev.note - original_midi) / 12.0)
    n_out = int(np.ceil(n / rate))
    positions = np.arange(n_out) * rate
    out = np.interp(positions, np.arange(n), sample.samples)

    out = out * (ev.velocity / 127.0)

    requested = int(round(ev.duration_ms * sr / 1000.0))
    out = out[: min(requested, n_out)]

    fade = min(int(round(FADE_SECONDS * sr)), len(out))
    if fade > 0:
        out[-fade:] *= np.linspace(1.0, 0.0, fade)
    return AudioClip(out, sr, sample.source_channels)


def render_score(
    events: list[NoteEvent],
    bank: Mapping[str, tuple[AudioClip, float]],
    sample_rate: int = DEFAULT_SAMPLE_RATE,
) -> AudioClip:
    """Mix a list of events into one clip against a bank of track samples.

    ``bank`` maps instrument track to (sample, original_midi). Events whose
    track has no sample are skipped with a log report. The mix is soft
    clipped with tanh, so the output always stays inside [-1, 1].
    """
    rendered: list[tuple[int, np.ndarray]] = []
    total = 0
    for ev in events:
        entry = bank.get(ev.instrument)
        if entry is None:
            log.warning("skipping note on %s: no sample assigned", ev.instrument)
            continue
        sample, original_midi = entry
        clip = render_note(sample, original_midi, ev, is_percussive(ev.instrument))
        onset = int(round(ev.onset_ms * clip.sample_rate / 1000.0))
        rendered.append((onset, clip.samples))
        total = max(total, onset + len(clip.samples))

    mix = np.zeros(total)
    for onset, samples in rendered:
        mix[onset : onset + len(samples)] += samples
    return AudioClip(np.tanh(mix), sample_rate)


def bank_from_assignments(
    assignments: Mapping[str, SampleAssignment],
) -> dict[str, tuple[AudioClip, float]]:
    """Load each assignment's sample file into a render bank."""
    bank = {}
    for track, assignment in assignments.items():
        with open(assignment.file_path, "rb") as f:
            clip = decode_wav(f.read())
        midi = assignment.original_midi
        bank[track] = (clip, DEFAULT_ORIGINAL_MIDI if midi is None else float(midi))
    return bank


class LiveMixer:
    """Render inbound note events against live registry snapshots.

    One of these sits behind the OSC note listener: each event grabs the
    current assignment for its track, renders, and hands the audio to the
    sink (an audio-device adapter, a recorder, or a test capture). Sample
    files are cached per (track, sample id) so repeated notes do not hit
    the disk.
    """

    def __init__(self, registry, sink=None):
        self.registry = registry
        self.sink = sink or (lambda clip, ev: None)
        self._cache: dict[str, tuple[str, AudioClip]] = {}

    def play(self, ev: NoteEvent) -> AudioClip | None:
        assignment = self.registry.get(ev.instrument)
        if assignment is None:
            log.info("note on %s dropped: nothing assigned", ev.instrument)
            return None
        cached = self._cache.get(ev.instrument)
        if cached is None or cached[0] != assignment.sample_id:
            with open(assignment.file_path, "rb") as f:
                self._cache[ev.instrument] = (assignment.sample_id, decode_wav(f.read()))
        sample = self._cache[ev.instrument][1]
        clip = render_note(
            sample, assignment.original_midi, ev, is_percussive(ev.instrument)
        )
        self.sink(clip, ev)
        return clip

    def handle_osc(self, event) -> None:
        """OscListener-compatible handler: parse, render, never raise."""
        if isinstance(event, Exception):
            log.warning("undecodable OSC datagram: %s", event)
            return
        try:
            self.play(note_from_osc(event))
        except Malformed as exc:
            log.warning("ignoring bad note message: %s", exc)
        except Exception:
            log.exception("note rendering failed")
