"""Dominant pitch estimation and MIDI note conversion.

The estimator is a normalized autocorrelation over the first second of a
clip. Samples with a clear periodicity get a fractional MIDI pitch; noisy
or aperiodic material comes back with no pitch, and downstream playback
falls back to a default original pitch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .audio import AudioClip, ClipTooShort

FMIN_HZ = 50.0
FMAX_HZ = 2000.0
CLARITY_THRESHOLD = 0.5
ANALYSIS_SECONDS = 1.0
MIN_SAMPLES = 2048

# A candidate lag must come within this fraction of the best correlation to
# win. Picking the smallest such lag avoids octave errors when a multiple of
# the true period happens to land closer to an integer lag than the period
# itself (e.g. period 50.5 samples: lag 101 correlates perfectly, lag 50
# does not, yet 50 is the right answer).
PEAK_TOLERANCE = 0.9

# Peaks are only considered after the autocorrelation first drops below
# zero. Near zero lag r is trivially ~1 for any signal; without this gate a
# low-pitched sine would be read at the shortest allowed lag.
_DIP_SEARCH_MIN_LAG = 2


class NonPositiveFrequency(ValueError):
    """Frequency must be > 0 to have a MIDI equivalent."""


@dataclass
class PitchEstimate:
    """Detected pitch, or absence thereof.

    When ``f0`` is None the clip had no clear periodicity (clarity below
    the gate) and ``midi`` is None as well. Clarity is the normalized
    autocorrelation value at the chosen lag, in [0, 1].
    """

    f0: float | None
    midi: float | None
    clarity: float

    @property
    def present(self) -> bool:
        return self.f0 is not None


def hz_to_midi(f: float) -> float:
    """Fractional MIDI note number; 440 Hz -> 69.0, one octave = 12."""
    if f <= 0:
        raise NonPositiveFrequency(f"frequency must be positive, got {f}")
    return 69.0 + 12.0 * math.log2(f / 440.0)


def estimate_pitch(clip: AudioClip) -> PitchEstimate:
    """Estimate the dominant pitch of a clip's first second.

    Normalized autocorrelation r(tau) over lags spanning [FMIN, FMAX] Hz;
    the winning lag is the smallest local maximum within PEAK_TOLERANCE of
    the global best, refined by parabolic interpolation. Clarity below
    CLARITY_THRESHOLD means no pitch.
    """
    if len(clip) < MIN_SAMPLES:
        raise ClipTooShort(f"need at least {MIN_SAMPLES} samples, got {len(clip)}")

    sr = clip.sample_rate
    n = min(int(round(ANALYSIS_SECONDS * sr)), len(clip))
    x = clip.samples[:n]

    lag_min = max(2, int(math.floor(sr / FMAX_HZ)))
    lag_max = min(int(sr // FMIN_HZ), n - 2)
    if lag_max <= lag_min:
        raise ClipTooShort("clip shorter than the longest pitch period")

    # computed from lag 2 so the first dip can be located below lag_min
    lags = np.arange(_DIP_SEARCH_MIN_LAG, lag_max + 1)
    r = np.empty(len(lags))
    for i, tau in enumerate(lags):
        a = x[: n - tau]
        b = x[tau:]
        denom = math.sqrt(float(np.dot(a, a)) * float(np.dot(b, b)))
        r[i] = float(np.dot(a, b)) / denom if denom > 0 else 0.0

    negatives = np.flatnonzero(r < 0.0)
    if len(negatives) == 0:
        # never oscillates below zero: no periodicity to speak of
        return PitchEstimate(None, None, 0.0)

    search_from = max(int(negatives[0]), lag_min - _DIP_SEARCH_MIN_LAG)
    window = r[search_from:]
    best = float(window.max())

    interior = (r[1:-1] >= r[:-2]) & (r[1:-1] >= r[2:])
    is_peak = np.concatenate(([False], interior, [r[-1] >= r[-2]]))
    is_peak[:search_from] = False
    candidates = np.flatnonzero(is_peak & (r >= PEAK_TOLERANCE * best))
    idx = int(candidates[0]) if len(candidates) else search_from + int(np.argmax(window))

    clarity = float(min(max(r[idx], 0.0), 1.0))
    if clarity < CLARITY_THRESHOLD:
        return PitchEstimate(None, None, clarity)

    tau = float(lags[idx])
    if 0 < idx < len(r) - 1:
        denom = r[idx - 1] - 2.0 * r[idx] + r[idx + 1]
        if denom < 0:
            tau += 0.5 * (r[idx - 1] - r[idx + 1]) / denom
    tau = min(max(tau, sr / FMAX_HZ), sr / FMIN_HZ)

    f0 = sr / tau
    return PitchEstimate(f0, hz_to_midi(f0), clarity)
