"""Shared fixtures: synthetic WAVs and a tiny trained baseline model."""

import numpy as np
import pytest

from fieldsampler.audio import DEFAULT_SAMPLE_RATE, AudioClip, encode_wav
from fieldsampler.classify import train_baseline

SR = DEFAULT_SAMPLE_RATE


def tone_wav_bytes(freq=440.0, seconds=5.0, amp=0.8, sr=SR):
    t = np.arange(int(seconds * sr)) / sr
    return encode_wav(AudioClip(amp * np.sin(2 * np.pi * freq * t), sr))


def noise_wav_bytes(seconds=5.0, amp=0.5, seed=0, sr=SR):
    rng = np.random.default_rng(seed)
    return encode_wav(AudioClip(amp * rng.uniform(-1, 1, int(seconds * sr)), sr))


def silence_wav_bytes(seconds=2.0, sr=SR):
    return encode_wav(AudioClip(np.zeros(int(seconds * sr)), sr))


def synth_training_set():
    """Tones -> Flute, noise -> Applause: trivially separable desk classes."""
    tones = [
        AudioClip(0.8 * np.sin(2 * np.pi * f * np.arange(5 * SR) / SR), SR)
        for f in (420.0, 440.0, 460.0)
    ]
    noises = [
        AudioClip(0.5 * np.random.default_rng(i).uniform(-1, 1, 5 * SR), SR)
        for i in range(3)
    ]
    return {"Flute": tones, "Applause": noises}


@pytest.fixture(scope="session")
def synth_model_path(tmp_path_factory):
    path = tmp_path_factory.mktemp("model") / "model.json"
    train_baseline(synth_training_set()).save(str(path))
    return str(path)
