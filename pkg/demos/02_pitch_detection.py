#!/usr/bin/env python3
"""Dominant pitch detection on tones, a chord-ish mix, and noise.

Melodic tracks replay samples transposed relative to this detected pitch;
samples with no clear pitch fall back to MIDI 60 at playback time.
"""
import numpy as np

from fieldsampler.audio import AudioClip
from fieldsampler.pitch import estimate_pitch, hz_to_midi

sr = 22050
t = np.arange(sr) / sr

NOTE_NAMES = ["C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B"]


def name_of(midi):
    n = int(round(midi))
    return f"{NOTE_NAMES[n % 12]}{n // 12 - 1}"


print(f"{'signal':<28} {'f0':>9} {'midi':>7} {'note':>5} {'clarity':>8}")
for freq in (82.41, 110.0, 220.0, 440.0, 523.25, 1318.5):
    clip = AudioClip(np.sin(2 * np.pi * freq * t), sr)
    est = estimate_pitch(clip)
    print(f"{'sine ' + format(freq, '.2f') + ' Hz':<28} "
          f"{est.f0:>9.2f} {est.midi:>7.2f} {name_of(est.midi):>5} {est.clarity:>8.3f}")

# a sawtooth-ish harmonic stack still reads as its fundamental
stack = sum(np.sin(2 * np.pi * 196 * k * t) / k for k in range(1, 6))
est = estimate_pitch(AudioClip(stack / np.max(np.abs(stack)), sr))
print(f"{'harmonic stack on 196 Hz':<28} "
      f"{est.f0:>9.2f} {est.midi:>7.2f} {name_of(est.midi):>5} {est.clarity:>8.3f}")

# white noise has no dominant pitch: clarity stays under the 0.5 gate
noise = AudioClip(np.random.default_rng(7).uniform(-1, 1, sr), sr)
est = estimate_pitch(noise)
print(f"{'white noise':<28} {'-':>9} {'-':>7} {'-':>5} {est.clarity:>8.3f}  (absent)")

print()
print(f"sanity: hz_to_midi(440) = {hz_to_midi(440)}, hz_to_midi(880) = {hz_to_midi(880)}")
