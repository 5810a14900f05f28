#!/usr/bin/env python3
"""Render a small two-track score and write it to /tmp/fieldsampler_demo.wav.

Percussive tracks trigger the sample at its own pitch; melodic tracks
transpose by resampling, so higher notes also play shorter, like a
classic hardware sampler.
"""
import numpy as np

from fieldsampler.audio import AudioClip, encode_wav
from fieldsampler.sampler import NoteEvent, render_note, render_score

sr = 22050


def pluck(freq, seconds=1.2):
    """A decaying tone standing in for a pitched field recording."""
    t = np.arange(int(seconds * sr)) / sr
    return AudioClip(0.8 * np.sin(2 * np.pi * freq * t) * np.exp(-3 * t), sr)


def thud(seconds=0.3):
    """A noise burst standing in for a percussive one."""
    t = np.arange(int(seconds * sr)) / sr
    x = np.random.default_rng(1).normal(0, 1, len(t)) * np.exp(-20 * t)
    return AudioClip(0.7 * x / np.max(np.abs(x)), sr)


wind_sample = pluck(440.0)  # detected original pitch: A4 = midi 69
snare_sample = thud()

# melodic: note number transposes relative to the sample's own pitch
for note in (57, 69, 81):
    out = render_note(wind_sample, 69.0, NoteEvent("Wind", note, 100, 800), percussive=False)
    mags = np.abs(np.fft.rfft(out.samples))
    peak = np.argmax(mags) * sr / len(out.samples)
    print(f"Wind note {note}: rendered {len(out)} samples, dominant ~{peak:.0f} Hz")

# percussive: the note number only triggers; pitch never changes
for note in (36, 60, 84):
    out = render_note(snare_sample, 60.0, NoteEvent("Snare", note, 100, 500), percussive=True)
    print(f"Snare note {note}: identical audio every time ({len(out)} samples)")

bank = {"Wind": (wind_sample, 69.0), "Snare": (snare_sample, 60.0)}
score = [
    NoteEvent("Wind", 69, 110, 700, onset_ms=0),
    NoteEvent("Snare", 60, 127, 300, onset_ms=0),
    NoteEvent("Wind", 76, 90, 700, onset_ms=750),
    NoteEvent("Snare", 60, 100, 300, onset_ms=750),
    NoteEvent("Wind", 81, 100, 1400, onset_ms=1500),
    NoteEvent("Snare", 60, 127, 300, onset_ms=1500),
    NoteEvent("Snare", 60, 80, 300, onset_ms=2250),
]
mix = render_score(score, bank)
out_path = "/tmp/fieldsampler_demo.wav"
with open(out_path, "wb") as f:
    f.write(encode_wav(mix))
print(f"\nmixed {len(score)} events -> {out_path} "
      f"({mix.duration:.2f} s, peak {np.max(np.abs(mix.samples)):.2f})")
