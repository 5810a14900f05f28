"""Command line entry points.

    fieldsampler serve --config server.json
    fieldsampler classify recording.wav [--json]
    fieldsampler train-baseline dataset_dir --out model.json
    fieldsampler render --score score.json --state assignments.json --out mix.wav
    fieldsampler join-url [--config server.json]

The training dataset directory holds one subdirectory per label, each
containing WAV files. The score file is a JSON list of note events; the
state file maps tracks to sample files (the shape GET /api/state returns
works directly).
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .audio import DEFAULT_SAMPLE_RATE, concat_intervals, decode_wav, encode_wav, resample, trim_silence
from .classify import BaselineClassifier, classify_clip, train_baseline
from .mapping import DEFAULT_ORIGINAL_MIDI, MappingConfig, map_label
from .pitch import estimate_pitch
from .sampler import NoteEvent, render_score
from .service import Service, ServiceConfig, build_classifier, create_app, join_url


def _load_clip(path: str):
    with open(path, "rb") as f:
        return decode_wav(f.read())


def cmd_serve(args) -> int:
    import uvicorn

    config = ServiceConfig.from_file(args.config) if args.config else ServiceConfig()
    if args.static_dir:
        config.static_dir = args.static_dir
    app = create_app(Service(config))
    host, port = config.bind_host_port()
    print(f"recorder join URL: {join_url(config)}")
    uvicorn.run(app, host=host, port=port, log_level="info")
    return 0


def cmd_classify(args) -> int:
    clip = resample(_load_clip(args.wav), DEFAULT_SAMPLE_RATE)
    config = ServiceConfig.from_file(args.config) if args.config else ServiceConfig()
    if args.model:
        config.classifier = {"kind": "baseline", "model_path": args.model}
    classifier = build_classifier(config.classifier)

    trimmed = concat_intervals(clip, trim_silence(clip, config.top_db))
    result = classify_clip(trimmed, classifier, config.top_db, config.segment_seconds)
    pitch = estimate_pitch(trimmed)
    instrument = map_label(result.winner, MappingConfig(dict(config.mapping_overrides)))

    if args.json:
        print(
            json.dumps(
                {
                    "label": result.winner,
                    "confidence": result.confidence,
                    "instrument": instrument,
                    "original_midi": pitch.midi if pitch.present else DEFAULT_ORIGINAL_MIDI,
                    "pitch_hz": pitch.f0,
                    "pitch_clarity": pitch.clarity,
                    "segments": len(result.per_segment),
                }
            )
        )
    else:
        print(f"label:      {result.winner}  (confidence {result.confidence:.3f})")
        print(f"instrument: {instrument}")
        if pitch.present:
            print(f"pitch:      {pitch.f0:.1f} Hz (midi {pitch.midi:.2f}, clarity {pitch.clarity:.2f})")
        else:
            print(f"pitch:      none detected (clarity {pitch.clarity:.2f}); playback uses midi {DEFAULT_ORIGINAL_MIDI:.0f}")
    return 0


def cmd_train_baseline(args) -> int:
    root = Path(args.dataset_dir)
    dataset = {}
    for label_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        clips = [_load_clip(str(w)) for w in sorted(label_dir.glob("*.wav"))]
        if clips:
            dataset[label_dir.name] = clips
    if not dataset:
        print(f"no labeled WAVs under {root}", file=sys.stderr)
        return 1
    model = train_baseline(dataset)
    model.save(args.out)
    counts = {k: len(v) for k, v in dataset.items()}
    print(f"trained {len(dataset)} labels {counts} -> {args.out}")
    return 0


def cmd_render(args) -> int:
    with open(args.score) as f:
        events = [NoteEvent(**e) for e in json.load(f)]
    with open(args.state) as f:
        doc = json.load(f)

    tracks = doc.get("tracks", doc)
    bank = {}
    for track, entry in tracks.items():
        if entry is None:
            continue
        clip = _load_clip(entry["file_path"])
        midi = entry.get("original_midi") or DEFAULT_ORIGINAL_MIDI
        bank[track] = (clip, float(midi))

    mix = render_score(events, bank)
    Path(args.out).write_bytes(encode_wav(mix))
    print(f"rendered {len(events)} events over {len(bank)} tracks -> {args.out} ({mix.duration:.2f} s)")
    return 0


def cmd_join_url(args) -> int:
    config = ServiceConfig.from_file(args.config) if args.config else ServiceConfig()
    print(join_url(config))
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="fieldsampler", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("serve", help="run the ingestion server")
    p.add_argument("--config", help="server config JSON")
    p.add_argument("--static-dir", help="directory with the built web UI")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("classify", help="classify one WAV offline")
    p.add_argument("wav")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--model", help="baseline model path (overrides config)")
    p.add_argument("--config", help="server config JSON")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("train-baseline", help="fit the baseline model from a dataset directory")
    p.add_argument("dataset_dir")
    p.add_argument("--out", required=True, help="where to write the model JSON")
    p.set_defaults(func=cmd_train_baseline)

    p = sub.add_parser("render", help="render a note score against sample assignments")
    p.add_argument("--score", required=True, help="JSON list of note events")
    p.add_argument("--state", required=True, help="assignments JSON (GET /api/state shape)")
    p.add_argument("--out", required=True, help="output WAV path")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("join-url", help="print the recorder URL for QR display")
    p.add_argument("--config", help="server config JSON")
    p.set_defaults(func=cmd_join_url)

    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
