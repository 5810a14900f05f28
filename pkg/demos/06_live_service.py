#!/usr/bin/env python3
"""The whole loop in one process: upload -> classify -> announce -> play.

Stands up the real service (with an in-process HTTP client), submits two
recordings, watches the OSC announcements a Max patch would receive, and
finally fires a note event back at the service's note listener to render
audio from the freshly assigned sample.
"""
import tempfile
import threading
import time
from pathlib import Path

import numpy as np
from fastapi.testclient import TestClient

from fieldsampler.audio import AudioClip, encode_wav
from fieldsampler.classify import train_baseline
from fieldsampler.osc import ADDRESS_NOTE, OscListener, OscMessage, udp_send
from fieldsampler.service import Service, ServiceConfig, create_app

sr = 22050
workdir = Path(tempfile.mkdtemp(prefix="fieldsampler_demo_"))


def tone_wav(freq, amp=0.8):
    x = amp * np.sin(2 * np.pi * freq * np.arange(5 * sr) / sr)
    return encode_wav(AudioClip(x, sr))


def noise_wav(seed):
    x = 0.5 * np.random.default_rng(seed).uniform(-1, 1, 5 * sr)
    return encode_wav(AudioClip(x, sr))


# 1. train a tiny desk model: tones read as Flute, noise as Applause
model_path = workdir / "model.json"
train_baseline(
    {
        "Flute": [AudioClip(0.8 * np.sin(2 * np.pi * f * np.arange(5 * sr) / sr), sr) for f in (420, 440, 460)],
        "Applause": [AudioClip(0.5 * np.random.default_rng(i).uniform(-1, 1, 5 * sr), sr) for i in range(3)],
    }
).save(str(model_path))
print(f"baseline model -> {model_path}")

# 2. capture what would normally go to Max/MSP
announced = []
osc_ready = threading.Event()


def on_announce(event):
    if not isinstance(event, Exception):
        announced.append(event)
        osc_ready.set()


with OscListener(handler=on_announce) as max_stand_in:
    config = ServiceConfig(
        bind="127.0.0.1:0",
        osc_target=f"127.0.0.1:{max_stand_in.port}",
        sample_dir=str(workdir / "samples"),
        classifier={"kind": "baseline", "model_path": str(model_path)},
        static_dir=str(workdir / "no-ui"),
        note_port=0,
    )
    service = Service(config)
    rendered = []
    service.mixer.sink = lambda clip, ev: rendered.append((clip, ev))

    with TestClient(create_app(service)) as client:
        # 3. two participants submit recordings (one tagged with a location)
        first = client.post(
            "/api/recordings",
            content=tone_wav(440),
            params={"lat": 35.39, "lon": 139.43, "participant": "riko"},
        ).json()
        second = client.post("/api/recordings", content=noise_wav(5)).json()
        print(f"submitted: {first['id'][:8]}… and {second['id'][:8]}…")

        for submission in (first, second):
            while True:
                doc = client.get(f"/api/recordings/{submission['id']}").json()
                if doc["state"] in ("done", "rejected"):
                    break
                time.sleep(0.02)
            print(f"  {doc['id'][:8]}… -> {doc['state']}: "
                  f"{doc['label']} on {doc['instrument']} (midi {doc['original_midi']:.1f})")

        osc_ready.wait(2.0)
        time.sleep(0.1)
        print(f"\nOSC announcements seen by the Max stand-in: {len(announced)}")
        for msg in announced:
            print(f"  {msg.address} {msg.args}")

        # 4. the performer plays the Wind track: note 81 = one octave up
        udp_send(
            ("127.0.0.1", service.note_listener.port),
            OscMessage(ADDRESS_NOTE, ["Wind", 81, 110, 400]),
        )
        deadline = time.time() + 2.0
        while not rendered and time.time() < deadline:
            time.sleep(0.02)

        clip, ev = rendered[0]
        mags = np.abs(np.fft.rfft(clip.samples))
        peak = np.argmax(mags) * sr / len(clip.samples)
        print(f"\nnote {ev.note} on {ev.instrument} rendered {clip.duration:.2f} s "
              f"of audio, dominant ~{peak:.0f} Hz (sample was 440 Hz)")

print(f"\ntrack state and stored samples remain under {workdir}")
