#!/usr/bin/env python3
"""Walk a synthetic field recording through the audio front end.

Builds a clip with a silent gap, then shows each stage: decode, trim,
segment, spectrogram, log-mel, and the 3-channel feature image the
classifier consumes.
"""
import numpy as np

from fieldsampler.audio import (
    AudioClip,
    concat_intervals,
    decode_wav,
    encode_wav,
    feature_image,
    log_mel,
    segment_fixed,
    stft_magnitude,
    trim_silence,
)

sr = 22050
t = np.arange(3 * sr) / sr

# 3 s of "recording": a 440 Hz hum, a second of near-silence, a 660 Hz hum
signal = np.concatenate(
    [
        0.6 * np.sin(2 * np.pi * 440 * t[: sr]),
        np.zeros(sr),
        0.6 * np.sin(2 * np.pi * 660 * t[: sr]),
    ]
)
wav_bytes = encode_wav(AudioClip(signal, sr))
print(f"synthesized a {len(wav_bytes)} byte WAV upload")

# 1. decode, as the server would on ingest
clip = decode_wav(wav_bytes)
print(f"decoded: {len(clip)} samples @ {clip.sample_rate} Hz ({clip.duration:.1f} s)")

# 2. trim the silent middle
intervals = trim_silence(clip, top_db=20.0)
print(f"kept intervals (samples): {intervals}")
trimmed = concat_intervals(clip, intervals)
print(f"trimmed length: {len(trimmed)} samples ({trimmed.duration:.2f} s)")

# 3. cut into 5-second windows (short remainders are padded or dropped)
segments = segment_fixed(trimmed, seconds=5.0)
print(f"segments: {len(segments)} x {len(segments[0])} samples")

# 4. spectrogram and mel features for the first segment
spec = stft_magnitude(segments[0])
print(f"spectrogram: {spec.n_bins} bins x {spec.n_frames} frames")

mel = log_mel(spec, n_mels=64)
print(f"log-mel: {mel.shape[0]} bands x {mel.shape[1]} frames, "
      f"range [{mel.min():.1f}, {mel.max():.1f}] dB")

image = feature_image(mel)
print(f"feature image: {image.data.shape}, values in "
      f"[{image.data.min():.2f}, {image.data.max():.2f}], 3 identical channels")
