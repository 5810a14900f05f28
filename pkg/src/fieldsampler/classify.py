"""Sound classification over the 41 label classes.

Two interchangeable providers sit behind the same ``Classifier`` protocol:

* ``BaselineClassifier`` - a deterministic nearest-centroid model over
  per-band mel statistics. Trainable from a handful of clips, no external
  dependencies; the stand-in for a real CNN.
* ``BridgeClassifier`` - hands the feature tensor to an external model
  process over a one-line JSON stdin/stdout protocol, so an actual CNN
  (any language, any framework) can be plugged in without touching this
  package.

``classify_clip`` runs the full per-clip pipeline: trim, segment into
5-second windows, score each segment, average, pick the winner.
"""

from __future__ import annotations

import json
import math
import shlex
import subprocess
from dataclasses import dataclass
from typing import Protocol

import numpy as np

from .audio import (
    DEFAULT_SAMPLE_RATE,
    AudioClip,
    FeatureImage,
    concat_intervals,
    feature_image,
    log_mel,
    resample,
    segment_fixed,
    stft_magnitude,
    trim_silence,
)
from .mapping import LABEL_INDEX, LABELS

N_MELS = 64
FEATURE_DIM = 2 * N_MELS  # per-band mean ++ per-band std over time

PROB_SUM_TOL = 1e-6
BRIDGE_SUM_TOL = 1e-3


class UnknownLabel(ValueError):
    """Training label outside the 41-label set."""


class EmptyClass(ValueError):
    """Training label supplied with no clips."""


class TooShort(ValueError):
    """Clip yields zero 5-second segments after trimming."""


class BridgeUnavailable(RuntimeError):
    """External classifier process could not be run or spoken to."""


class BridgeProtocol(RuntimeError):
    """External classifier replied, but not with a valid distribution."""


class Classifier(Protocol):
    """Anything that scores one log-mel segment into label probabilities."""

    def predict(self, mel: np.ndarray) -> np.ndarray: ...


@dataclass
class BaselineModel:
    """One 128-dim centroid per trained label."""

    centroids: dict[str, np.ndarray]

    def __post_init__(self):
        if not self.centroids:
            raise EmptyClass("model has no labels")
        for label, c in self.centroids.items():
            if label not in LABEL_INDEX:
                raise UnknownLabel(label)
            c = np.asarray(c, dtype=np.float64)
            if c.shape != (FEATURE_DIM,) or not np.all(np.isfinite(c)):
                raise ValueError(f"bad centroid for {label}")
            self.centroids[label] = c

    @property
    def labels_present(self) -> tuple[str, ...]:
        return tuple(sorted(self.centroids))

    def save(self, path: str) -> None:
        doc = {
            "feature_dim": FEATURE_DIM,
            "centroids": {k: v.tolist() for k, v in self.centroids.items()},
        }
        with open(path, "w") as f:
            json.dump(doc, f)

    @classmethod
    def load(cls, path: str) -> "BaselineModel":
        with open(path) as f:
            doc = json.load(f)
        return cls({k: np.asarray(v) for k, v in doc["centroids"].items()})


@dataclass
class ClassificationResult:
    winner: str
    confidence: float
    per_segment: list[np.ndarray]
    aggregated: np.ndarray


def summary_features(mel: np.ndarray) -> np.ndarray:
    """Per-band mean and standard deviation over time: the baseline's 128-dim view."""
    mel = np.asarray(mel, dtype=np.float64)
    return np.concatenate([mel.mean(axis=1), mel.std(axis=1)])


def _segment_summary(segment: AudioClip) -> np.ndarray:
    return summary_features(log_mel(stft_magnitude(segment), n_mels=N_MELS))


def train_baseline(dataset: dict[str, list[AudioClip]]) -> BaselineModel:
    """Fit one centroid per label from the clips' first 5-second segments.

    Clips are brought to the internal rate first so features are
    comparable across files recorded at different rates.
    """
    centroids = {}
    for label, clips in dataset.items():
        if label not in LABEL_INDEX:
            raise UnknownLabel(label)
        if not clips:
            raise EmptyClass(label)
        feats = []
        for clip in clips:
            segments = segment_fixed(resample(clip, DEFAULT_SAMPLE_RATE))
            if not segments:
                raise TooShort(f"a {label!r} clip is too short to featurize")
            feats.append(_segment_summary(segments[0]))
        centroids[label] = np.mean(feats, axis=0)
    return BaselineModel(centroids)


def predict_baseline(model: BaselineModel, features: np.ndarray) -> np.ndarray:
    """Distance-softmax over the trained labels: probs proportional to exp(-d).

    Labels absent from the model get probability zero. Distances are
    shifted by their minimum before exponentiation; softmax is invariant
    to the shift and it avoids underflow for far-away features.
    """
    features = np.asarray(features, dtype=np.float64)
    probs = np.zeros(len(LABELS))
    labels = model.labels_present
    d = np.array(
        [float(np.linalg.norm(features - model.centroids[lab])) for lab in labels]
    )
    w = np.exp(-(d - d.min()))
    w /= w.sum()
    for lab, p in zip(labels, w):
        probs[LABEL_INDEX[lab]] = p
    return probs


@dataclass
class BaselineClassifier:
    model: BaselineModel

    def predict(self, mel: np.ndarray) -> np.ndarray:
        return predict_baseline(self.model, summary_features(mel))


def predict_external(command: list[str] | str, features: FeatureImage) -> np.ndarray:
    """Ask an external process to score one feature tensor.

    Request: one JSON line ``{"shape": [n_mels, n_frames, 3], "data": [...]}``
    with row-major values. Reply: one JSON line ``{"probs": [41 floats]}``
    in lexicographic label order, summing to 1 within 1e-3.
    """
    argv = shlex.split(command) if isinstance(command, str) else list(command)
    request = json.dumps(
        {"shape": list(features.data.shape), "data": features.data.ravel().tolist()}
    )
    try:
        proc = subprocess.run(
            argv,
            input=request + "\n",
            capture_output=True,
            text=True,
            timeout=60.0,
        )
    except (OSError, subprocess.TimeoutExpired) as exc:
        raise BridgeUnavailable(f"cannot run {argv[0]!r}: {exc}") from exc
    if proc.returncode != 0:
        raise BridgeUnavailable(
            f"{argv[0]!r} exited {proc.returncode}: {proc.stderr.strip()[:200]}"
        )

    line = proc.stdout.strip().splitlines()
    if not line:
        raise BridgeProtocol("empty reply")
    try:
        reply = json.loads(line[0])
        probs = np.asarray(reply["probs"], dtype=np.float64)
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise BridgeProtocol(f"unparseable reply: {exc}") from exc

    if probs.shape != (len(LABELS),):
        raise BridgeProtocol(f"expected {len(LABELS)} probabilities, got {probs.shape}")
    if not np.all(np.isfinite(probs)) or probs.min() < 0:
        raise BridgeProtocol("probabilities must be finite and non-negative")
    total = float(probs.sum())
    if abs(total - 1.0) > BRIDGE_SUM_TOL:
        raise BridgeProtocol(f"probabilities sum to {total}, not 1")
    return probs / total


@dataclass
class BridgeClassifier:
    command: list[str] | str

    def predict(self, mel: np.ndarray) -> np.ndarray:
        return predict_external(self.command, feature_image(mel))


def classify_clip(
    clip: AudioClip,
    classifier: Classifier,
    top_db: float = 20.0,
    segment_seconds: float = 5.0,
) -> ClassificationResult:
    """Trim, segment, score per segment, and average into a final verdict.

    Raises NoSignal if nothing survives trimming and TooShort if the
    trimmed audio yields no segments. Ties in the aggregated vector break
    toward the lexicographically smaller label.
    """
    trimmed = concat_intervals(clip, trim_silence(clip, top_db))
    segments = segment_fixed(trimmed, segment_seconds)
    if not segments:
        raise TooShort(f"{trimmed.duration:.2f} s of signal yields no segments")

    per_segment = [
        classifier.predict(log_mel(stft_magnitude(seg), n_mels=N_MELS))
        for seg in segments
    ]
    aggregated = np.mean(per_segment, axis=0)
    idx = int(np.argmax(aggregated))  # argmax takes the first (smallest) on ties
    return ClassificationResult(
        winner=LABELS[idx],
        confidence=float(aggregated[idx]),
        per_segment=per_segment,
        aggregated=aggregated,
    )
