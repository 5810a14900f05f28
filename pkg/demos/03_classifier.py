#!/usr/bin/env python3
"""Train the baseline classifier on desk-scale synthetic classes.

Three sound families stand in for field recordings: steady tones
(-> Flute), band-limited noise (-> Applause), and rising chirps
(-> Violin_or_fiddle). The baseline learns one centroid per class from
per-band mel statistics.
"""
import numpy as np

from fieldsampler.audio import AudioClip
from fieldsampler.classify import BaselineClassifier, classify_clip, train_baseline
from fieldsampler.mapping import LABELS, map_label

sr = 22050
rng = np.random.default_rng(3)


def tone(freq):
    x = 0.7 * np.sin(2 * np.pi * freq * np.arange(5 * sr) / sr)
    return AudioClip(x, sr)


def noise(seed):
    return AudioClip(0.5 * np.random.default_rng(seed).uniform(-1, 1, 5 * sr), sr)


def chirp(f0, f1):
    t = np.arange(5 * sr) / sr
    phase = 2 * np.pi * (f0 * t + (f1 - f0) / (2 * t[-1]) * t**2)
    return AudioClip(0.7 * np.sin(phase), sr)


dataset = {
    "Flute": [tone(f) for f in (392, 440, 494)],
    "Applause": [noise(s) for s in range(3)],
    "Violin_or_fiddle": [chirp(200, 2000), chirp(220, 1800), chirp(180, 2200)],
}
model = train_baseline(dataset)
print(f"trained labels: {model.labels_present}")
print(f"centroid dimensionality: {len(next(iter(model.centroids.values())))}")

classifier = BaselineClassifier(model)
probes = {
    "unseen 466 Hz tone": tone(466),
    "unseen noise": noise(99),
    "unseen chirp 210->1900": chirp(210, 1900),
}
for name, clip in probes.items():
    result = classify_clip(clip, classifier)
    top3 = sorted(zip(LABELS, result.aggregated), key=lambda kv: -kv[1])[:3]
    ranking = ", ".join(f"{lab} {p:.3f}" for lab, p in top3 if p > 0)
    print(f"{name:<24} -> {result.winner:<18} track {map_label(result.winner):<6} [{ranking}]")
