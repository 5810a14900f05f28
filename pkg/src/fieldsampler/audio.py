"""WAV decoding, conditioning, and spectral features.

Everything downstream (classifier, pitch detector, sampler) works on mono
float arrays in [-1, 1]. This module turns uploaded WAV bytes into that
representation and produces the log-mel features the classifier consumes.

The processing chain for an incoming recording is:

    decode_wav -> resample -> trim_silence -> segment_fixed
        -> stft_magnitude -> log_mel -> feature_image / summary stats
"""

from __future__ import annotations

import struct
from dataclasses import dataclass, field

import numpy as np

# Internal processing rate. Cheap, and comfortably covers the pitch range
# (<= 2 kHz) and the mel bands we extract.
DEFAULT_SAMPLE_RATE = 22050

# Silence trimming frame geometry.
TRIM_FRAME = 2048
TRIM_HOP = 512

# Frames quieter than this are silent no matter what the clip's peak is.
# Needed so digital silence is rejected: a purely peak-relative threshold
# would keep an all-zero clip (every frame is "within 20 dB of the peak").
SILENCE_FLOOR_DB = -100.0

# Epsilon inside log10 so silence maps to a finite dB value.
DB_EPS = 1e-10

# Trailing segment_fixed remainders shorter than this are dropped.
MIN_REMAINDER_SECONDS = 0.5


class MalformedContainer(ValueError):
    """Input bytes are not a parseable RIFF/WAVE container."""


class UnsupportedEncoding(ValueError):
    """WAV is structurally valid but uses a codec/layout we do not read."""


class EmptyAudio(ValueError):
    """WAV decoded to zero frames."""


class NoSignal(ValueError):
    """Every frame of the clip is below the silence threshold."""


class ClipTooShort(ValueError):
    """Clip is shorter than the analysis window."""


class BadBandCount(ValueError):
    """Requested mel band count is outside [1, n_bins]."""


@dataclass
class AudioClip:
    """Mono PCM audio: samples in [-1, 1] plus the sample rate.

    ``source_channels`` records how many channels the decoded file had;
    the samples themselves are always mono (channels averaged).
    """

    samples: np.ndarray
    sample_rate: int
    source_channels: int = 1

    def __post_init__(self):
        self.samples = np.asarray(self.samples, dtype=np.float64)
        if self.samples.ndim != 1:
            raise ValueError("AudioClip samples must be 1-D")
        if self.sample_rate <= 0:
            raise ValueError("sample_rate must be positive")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def duration(self) -> float:
        return len(self.samples) / self.sample_rate


@dataclass
class Spectrogram:
    """Magnitude STFT: ``magnitudes`` is [n_bins x n_frames], non-negative."""

    magnitudes: np.ndarray
    n_fft: int
    hop: int
    sample_rate: int

    @property
    def n_bins(self) -> int:
        return self.magnitudes.shape[0]

    @property
    def n_frames(self) -> int:
        return self.magnitudes.shape[1]


@dataclass
class FeatureImage:
    """Classifier input tensor [n_mels x n_frames x 3], values in [0, 1].

    The three channels are identical copies of the normalized mel matrix.
    """

    data: np.ndarray

    @property
    def n_mels(self) -> int:
        return self.data.shape[0]


# ---------------------------------------------------------------------------
# WAV container
# ---------------------------------------------------------------------------

_WAVE_FORMAT_PCM = 1
_WAVE_FORMAT_IEEE_FLOAT = 3
_WAVE_FORMAT_EXTENSIBLE = 0xFFFE


def decode_wav(data: bytes) -> AudioClip:
    """Decode RIFF/WAVE bytes into a mono AudioClip.

    Accepts 16-bit integer or 32-bit float PCM, 1 or 2 channels. Stereo is
    averaged down to mono; samples are scaled and clamped to [-1, 1]; the
    file's sample rate is preserved.
    """
    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise MalformedContainer("not a RIFF/WAVE container")

    fmt = None
    payload = None
    pos = 12
    while pos + 8 <= len(data):
        chunk_id = data[pos : pos + 4]
        (size,) = struct.unpack_from("<I", data, pos + 4)
        body = data[pos + 8 : pos + 8 + size]
        if chunk_id == b"fmt " and fmt is None:
            fmt = body
        elif chunk_id == b"data" and payload is None:
            # Tolerate writers that overstate the data size: use what exists.
            payload = body
        pos += 8 + size + (size & 1)  # chunks are word-aligned

    if fmt is None or payload is None:
        raise MalformedContainer("missing fmt or data chunk")
    if len(fmt) < 16:
        raise MalformedContainer("fmt chunk truncated")

    tag, channels, rate, _byte_rate, _block_align, bits = struct.unpack_from(
        "<HHIIHH", fmt
    )
    if tag == _WAVE_FORMAT_EXTENSIBLE:
        if len(fmt) < 26:
            raise MalformedContainer("extensible fmt chunk truncated")
        (tag,) = struct.unpack_from("<H", fmt, 24)  # first 2 bytes of sub-format GUID

    if rate == 0:
        raise MalformedContainer("zero sample rate")
    if channels not in (1, 2):
        raise UnsupportedEncoding(f"{channels} channels (want 1 or 2)")

    if tag == _WAVE_FORMAT_PCM and bits == 16:
        dtype = np.dtype("<i2")
    elif tag == _WAVE_FORMAT_IEEE_FLOAT and bits == 32:
        dtype = np.dtype("<f4")
    else:
        raise UnsupportedEncoding(f"format tag {tag} at {bits} bits")

    frame_bytes = channels * bits // 8
    n_frames = len(payload) // frame_bytes
    if n_frames == 0:
        raise EmptyAudio("data chunk holds no frames")

    raw = np.frombuffer(payload[: n_frames * frame_bytes], dtype=dtype)
    if dtype.kind == "i":
        x = raw.astype(np.float64) / 32768.0
    else:
        x = raw.astype(np.float64)
    if channels == 2:
        x = x.reshape(-1, 2).mean(axis=1)
    x = np.clip(x, -1.0, 1.0)
    return AudioClip(x, int(rate), channels)


def encode_wav(clip: AudioClip) -> bytes:
    """Serialize a clip as a 16-bit PCM mono WAV."""
    x = np.clip(clip.samples, -1.0, 1.0)
    pcm = np.round(x * 32767.0).astype("<i2").tobytes()
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        36 + len(pcm),
        b"WAVE",
        b"fmt ",
        16,
        _WAVE_FORMAT_PCM,
        1,
        clip.sample_rate,
        clip.sample_rate * 2,
        2,
        16,
        b"data",
        len(pcm),
    )
    return header + pcm


# ---------------------------------------------------------------------------
# Conditioning
# ---------------------------------------------------------------------------


def resample(clip: AudioClip, target_sr: int) -> AudioClip:
    """Linear-interpolation resample; identity when rates already match."""
    if target_sr <= 0:
        raise ValueError("target_sr must be positive")
    if target_sr == clip.sample_rate:
        return AudioClip(clip.samples, clip.sample_rate, clip.source_channels)
    n_out = int(round(len(clip) * target_sr / clip.sample_rate))
    positions = np.arange(n_out) * (clip.sample_rate / target_sr)
    out = np.interp(positions, np.arange(len(clip)), clip.samples)
    return AudioClip(out, target_sr, clip.source_channels)


def trim_silence(clip: AudioClip, top_db: float = 20.0) -> list[tuple[int, int]]:
    """Find the non-silent sample intervals of a clip.

    Frames (TRIM_FRAME long, TRIM_HOP apart) whose RMS level is more than
    ``top_db`` below the clip's loudest frame are silent. A silent frame
    erases its whole span; whatever samples survive form the returned
    intervals. Erasing full spans (rather than mapping frame indices back
    to hop cells) keeps interval edges within one hop of the true signal
    boundary on both onset and tail sides.

    Returns a list of (start, end) sample intervals, merged and clipped to
    the signal length. Raises NoSignal when nothing survives.
    """
    x = clip.samples
    n = len(x)
    if n == 0:
        raise EmptyAudio("empty clip")

    if n < TRIM_FRAME:
        spans = [(0, n)]
    else:
        count = 1 + (n - TRIM_FRAME) // TRIM_HOP
        spans = [(i * TRIM_HOP, i * TRIM_HOP + TRIM_FRAME) for i in range(count)]

    rms = np.array([np.sqrt(np.mean(x[a:b] ** 2)) for a, b in spans])
    db = 20.0 * np.log10(rms + DB_EPS)
    cut = max(float(db.max()) - top_db, SILENCE_FLOOR_DB)
    kept = db > cut
    if not kept.any():
        raise NoSignal(f"all frames below {cut:.1f} dB")

    keep_mask = np.ones(n, dtype=bool)
    last = len(spans) - 1
    for i, ((a, b), k) in enumerate(zip(spans, kept)):
        if not k:
            # The final frame also owns the sub-hop tail past its window.
            keep_mask[a : n if i == last else b] = False

    edges = np.flatnonzero(np.diff(keep_mask.astype(np.int8)))
    starts = [0] if keep_mask[0] else []
    starts += [int(e) + 1 for e in edges if not keep_mask[e]]
    ends = [int(e) + 1 for e in edges if keep_mask[e]]
    if keep_mask[-1]:
        ends.append(n)
    intervals = list(zip(starts, ends))
    if not intervals:
        raise NoSignal("nothing above the silence threshold")
    return intervals


def concat_intervals(clip: AudioClip, intervals: list[tuple[int, int]]) -> AudioClip:
    """Concatenate the given sample intervals into a new clip."""
    parts = [clip.samples[a:b] for a, b in intervals]
    joined = np.concatenate(parts) if parts else np.zeros(0)
    return AudioClip(joined, clip.sample_rate, clip.source_channels)


def segment_fixed(clip: AudioClip, seconds: float = 5.0) -> list[AudioClip]:
    """Cut a clip into consecutive fixed-length windows.

    A trailing remainder of at least MIN_REMAINDER_SECONDS is zero-padded
    to a full window; a shorter remainder is dropped. A clip shorter than
    the minimum remainder yields an empty list.
    """
    if seconds <= 0:
        raise ValueError("seconds must be positive")
    n = len(clip)
    if n == 0:
        raise EmptyAudio("empty clip")
    win = int(round(seconds * clip.sample_rate))
    min_keep = int(round(MIN_REMAINDER_SECONDS * clip.sample_rate))

    chunks = [clip.samples[i * win : (i + 1) * win] for i in range(n // win)]
    rem = n - (n // win) * win
    if rem >= min_keep:
        tail = np.zeros(win)
        tail[:rem] = clip.samples[n - rem :]
        chunks.append(tail)
    return [AudioClip(c, clip.sample_rate, clip.source_channels) for c in chunks]


# ---------------------------------------------------------------------------
# Spectral features
# ---------------------------------------------------------------------------


def stft_magnitude(clip: AudioClip, n_fft: int = 2048, hop: int = 512) -> Spectrogram:
    """Magnitude STFT with a periodic Hann window, no centering or padding.

    Frame count is exactly 1 + floor((len - n_fft) / hop).
    """
    n = len(clip)
    if n < n_fft:
        raise ClipTooShort(f"need at least {n_fft} samples, got {n}")
    count = 1 + (n - n_fft) // hop
    window = 0.5 - 0.5 * np.cos(2.0 * np.pi * np.arange(n_fft) / n_fft)
    frames = np.lib.stride_tricks.sliding_window_view(clip.samples, n_fft)[::hop]
    frames = frames[:count]
    mags = np.abs(np.fft.rfft(frames * window, axis=1)).T
    return Spectrogram(mags, n_fft, hop, clip.sample_rate)


def hz_to_mel(f):
    """HTK mel scale."""
    return 2595.0 * np.log10(1.0 + np.asarray(f, dtype=np.float64) / 700.0)


def mel_to_hz(m):
    return 700.0 * (10.0 ** (np.asarray(m, dtype=np.float64) / 2595.0) - 1.0)


def mel_filterbank(
    n_mels: int,
    n_bins: int,
    sample_rate: int,
    fmin: float = 0.0,
    fmax: float | None = None,
) -> np.ndarray:
    """Triangular mel filters [n_mels x n_bins], each peak-normalized to 1."""
    if fmax is None:
        fmax = sample_rate / 2.0
    n_fft = 2 * (n_bins - 1)
    bin_freqs = np.arange(n_bins) * sample_rate / n_fft
    mel_points = np.linspace(hz_to_mel(fmin), hz_to_mel(fmax), n_mels + 2)
    f = mel_to_hz(mel_points)

    weights = np.zeros((n_mels, n_bins))
    for i in range(n_mels):
        lo, mid, hi = f[i], f[i + 1], f[i + 2]
        rising = (bin_freqs - lo) / max(mid - lo, 1e-12)
        falling = (hi - bin_freqs) / max(hi - mid, 1e-12)
        weights[i] = np.maximum(0.0, np.minimum(rising, falling))
        peak = weights[i].max()
        if peak > 0:
            weights[i] /= peak
    return weights


def log_mel(
    spec: Spectrogram,
    n_mels: int = 64,
    fmin: float = 0.0,
    fmax: float | None = None,
) -> np.ndarray:
    """Mel-band log power [n_mels x n_frames], clamped to an 80 dB range."""
    if n_mels < 1 or n_mels > spec.n_bins:
        raise BadBandCount(f"n_mels={n_mels} outside [1, {spec.n_bins}]")
    fb = mel_filterbank(n_mels, spec.n_bins, spec.sample_rate, fmin, fmax)
    power = fb @ (spec.magnitudes**2)
    db = 10.0 * np.log10(power + DB_EPS)
    return np.maximum(db, db.max() - 80.0)


def feature_image(mel: np.ndarray) -> FeatureImage:
    """Min-max normalize a mel matrix to [0, 1] and stack 3 identical channels.

    A constant input maps to all zeros.
    """
    mel = np.asarray(mel, dtype=np.float64)
    if mel.size == 0:
        raise ValueError("empty mel matrix")
    lo, hi = float(mel.min()), float(mel.max())
    if hi == lo:
        norm = np.zeros_like(mel)
    else:
        norm = (mel - lo) / (hi - lo)
    return FeatureImage(np.repeat(norm[:, :, None], 3, axis=2))
