"""HTTP ingestion API and pipeline orchestration.

Recordings POSTed to the API are persisted, queued, and processed by a
small worker pool: decode, resample, trim, classify, pitch-tag, map to a
track, install in the registry, announce over OSC. Submitters poll their
submission id for the outcome; the performer (or the web UI) polls the
track state.

Ingest latency is independent of pipeline latency: submit() returns as
soon as the upload is on disk and the job is queued.
"""

import json
import logging
import queue
import secrets
import socket
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

from . import audio
from .audio import DEFAULT_SAMPLE_RATE, concat_intervals, decode_wav, encode_wav, resample, trim_silence
from .classify import (
    BaselineClassifier,
    BaselineModel,
    BridgeClassifier,
    Classifier,
    TooShort,
    classify_clip,
)
from .mapping import (
    DEFAULT_ORIGINAL_MIDI,
    DEFAULT_TRACK_FOR_LABEL,
    LABELS,
    TRACKS,
    MappingConfig,
    SampleAssignment,
    TrackRegistry,
    map_label,
)
from .osc import OscListener, OscSender, sample_announce
from .pitch import estimate_pitch
from .sampler import LiveMixer

log = logging.getLogger(__name__)

REJECT_NO_SIGNAL = "no_signal"
REJECT_TOO_SHORT = "too_short"
REJECT_MALFORMED = "malformed_audio"
REJECT_TOO_LARGE = "too_large"
# Not part of the public contract: terminal state for unexpected faults so
# a submission can never hang in "processing".
REJECT_INTERNAL = "internal_error"


class TooLarge(ValueError):
    """Upload exceeds the configured size limit."""


class MalformedAudio(ValueError):
    """Upload fails the eager RIFF/WAVE header sniff."""


class TooBusy(RuntimeError):
    """Job queue is full."""


class NotFound(KeyError):
    """No submission with that id."""


@dataclass
class ServiceConfig:
    bind: str = "0.0.0.0:8080"
    osc_target: str = "127.0.0.1:9000"
    sample_dir: str = "./samples"
    mapping_overrides: dict[str, str] = field(default_factory=dict)
    top_db: float = 20.0
    segment_seconds: float = 5.0
    workers: int = 2
    queue_size: int = 64
    max_upload_bytes: int = 16 * 1024 * 1024
    classifier: dict = field(default_factory=lambda: {"kind": "baseline"})
    static_dir: str | None = None
    note_port: int | None = None

    @classmethod
    def from_file(cls, path: str) -> "ServiceConfig":
        with open(path) as f:
            doc = json.load(f)
        known = set(cls.__dataclass_fields__)
        unknown = set(doc) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**doc)

    def bind_host_port(self) -> tuple[str, int]:
        return _split_host_port(self.bind, default_port=8080)

    def osc_host_port(self) -> tuple[str, int]:
        return _split_host_port(self.osc_target, default_port=9000)


def _split_host_port(value: str, default_port: int) -> tuple[str, int]:
    host, _, port = value.rpartition(":")
    if not host:
        return value, default_port
    return host, int(port)


def build_classifier(cfg: dict) -> Classifier:
    kind = cfg.get("kind", "baseline")
    if kind == "baseline":
        path = cfg.get("model_path")
        if not path:
            raise ValueError("baseline classifier needs classifier.model_path")
        return BaselineClassifier(BaselineModel.load(path))
    if kind == "bridge":
        command = cfg.get("command")
        if not command:
            raise ValueError("bridge classifier needs classifier.command")
        return BridgeClassifier(command)
    raise ValueError(f"unknown classifier kind {kind!r}")


@dataclass
class SubmissionRecord:
    id: str
    state: str = "queued"  # queued -> processing -> done | rejected
    label: str | None = None
    instrument: str | None = None
    original_midi: float | None = None
    confidence: float | None = None
    reason: str | None = None
    participant: str | None = None
    location: tuple[float, float] | None = None
    submitted_at: float = 0.0

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "state": self.state,
            "label": self.label,
            "instrument": self.instrument,
            "original_midi": self.original_midi,
            "confidence": self.confidence,
            "reason": self.reason,
        }


_TRANSITIONS = {
    "queued": {"processing"},
    "processing": {"done", "rejected"},
    "done": set(),
    "rejected": set(),
}


class SubmissionStore:
    """Thread-safe submission records with guarded state transitions."""

    def __init__(self):
        self._records: dict[str, SubmissionRecord] = {}
        self._lock = threading.Lock()

    def create(self, record: SubmissionRecord) -> None:
        with self._lock:
            self._records[record.id] = record

    def drop(self, submission_id: str) -> None:
        with self._lock:
            self._records.pop(submission_id, None)

    def get(self, submission_id: str) -> SubmissionRecord:
        with self._lock:
            record = self._records.get(submission_id)
            if record is None:
                raise NotFound(submission_id)
            return record

    def _advance(self, submission_id: str, state: str, **updates) -> None:
        with self._lock:
            record = self._records[submission_id]
            if state not in _TRANSITIONS[record.state]:
                raise RuntimeError(f"illegal transition {record.state} -> {state}")
            record.state = state
            for key, value in updates.items():
                setattr(record, key, value)

    def mark_processing(self, submission_id: str) -> None:
        self._advance(submission_id, "processing")

    def mark_done(self, submission_id: str, **updates) -> None:
        self._advance(submission_id, "done", **updates)

    def mark_rejected(self, submission_id: str, reason: str) -> None:
        self._advance(submission_id, "rejected", reason=reason)


_STOP = object()


class Service:
    """The pipeline engine behind the HTTP API.

    Owns the worker pool, submission store, track registry, and the OSC
    sender. Usable directly (the CLI's offline `classify` shares the same
    pipeline steps) or wrapped by the FastAPI app from create_app().
    """

    def __init__(
        self,
        config: ServiceConfig,
        classifier: Classifier | None = None,
        now=time.time,
    ):
        self.config = config
        self.now = now
        self.classifier = classifier or build_classifier(config.classifier)
        self.mapping_config = MappingConfig(dict(config.mapping_overrides))
        self.registry = TrackRegistry()
        self.store = SubmissionStore()
        self.queue: queue.Queue = queue.Queue(maxsize=config.queue_size)
        self.sample_dir = Path(config.sample_dir)
        self.osc = OscSender(*config.osc_host_port())
        self.mixer = LiveMixer(self.registry)
        self.note_listener: OscListener | None = None
        self._threads: list[threading.Thread] = []

    # -- lifecycle ----------------------------------------------------------

    def start(self) -> "Service":
        self.sample_dir.mkdir(parents=True, exist_ok=True)
        for i in range(self.config.workers):
            t = threading.Thread(target=self._worker, name=f"pipeline-{i}", daemon=True)
            t.start()
            self._threads.append(t)
        if self.config.note_port is not None:
            host = self.config.bind_host_port()[0]
            self.note_listener = OscListener(
                port=self.config.note_port, handler=self.mixer.handle_osc, host=host
            ).start()
            log.info("note listener on udp %s:%s", host, self.note_listener.port)
        return self

    def stop(self) -> None:
        for _ in self._threads:
            self.queue.put(_STOP)
        for t in self._threads:
            t.join(timeout=10.0)
        self._threads.clear()
        if self.note_listener is not None:
            self.note_listener.stop()
        self.osc.close()

    # -- ingest -------------------------------------------------------------

    def submit(
        self,
        data: bytes,
        participant: str | None = None,
        location: tuple[float, float] | None = None,
    ) -> SubmissionRecord:
        """Persist an upload and queue it; returns immediately."""
        if len(data) > self.config.max_upload_bytes:
            raise TooLarge(f"{len(data)} bytes exceeds {self.config.max_upload_bytes}")
        if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
            raise MalformedAudio("payload does not look like a WAV file")

        submission_id = secrets.token_hex(16)
        upload_path = self._upload_path(submission_id)
        self.sample_dir.mkdir(parents=True, exist_ok=True)
        upload_path.write_bytes(data)
        record = SubmissionRecord(
            id=submission_id,
            participant=participant,
            location=location,
            submitted_at=self.now(),
        )
        self.store.create(record)
        try:
            self.queue.put_nowait(submission_id)
        except queue.Full:
            self.store.drop(submission_id)
            upload_path.unlink(missing_ok=True)
            raise TooBusy(f"queue of {self.config.queue_size} jobs is full") from None
        return record

    def _upload_path(self, submission_id: str) -> Path:
        return self.sample_dir / f"{submission_id}.upload.wav"

    def _sample_path(self, submission_id: str) -> Path:
        return self.sample_dir / f"{submission_id}.wav"

    # -- pipeline -----------------------------------------------------------

    def _worker(self) -> None:
        while True:
            item = self.queue.get()
            if item is _STOP:
                self.queue.task_done()
                return
            try:
                self._process(item)
            except Exception:
                log.exception("submission %s crashed the pipeline", item)
                try:
                    self.store.mark_rejected(item, REJECT_INTERNAL)
                except Exception:
                    pass
            finally:
                self.queue.task_done()

    def _process(self, submission_id: str) -> None:
        """Run one queued submission to a terminal state.

        Rejections leave the registry and OSC untouched; success updates
        the registry and emits exactly one announcement.
        """
        record = self.store.get(submission_id)
        self.store.mark_processing(submission_id)

        try:
            clip = decode_wav(self._upload_path(submission_id).read_bytes())
        except (audio.MalformedContainer, audio.UnsupportedEncoding, audio.EmptyAudio) as exc:
            log.info("submission %s rejected: %s", submission_id, exc)
            self.store.mark_rejected(submission_id, REJECT_MALFORMED)
            return

        clip = resample(clip, DEFAULT_SAMPLE_RATE)
        try:
            trimmed = concat_intervals(clip, trim_silence(clip, self.config.top_db))
            result = classify_clip(
                trimmed,
                self.classifier,
                top_db=self.config.top_db,
                segment_seconds=self.config.segment_seconds,
            )
        except audio.NoSignal:
            self.store.mark_rejected(submission_id, REJECT_NO_SIGNAL)
            return
        except TooShort:
            self.store.mark_rejected(submission_id, REJECT_TOO_SHORT)
            return

        try:
            pitch = estimate_pitch(trimmed)
            original_midi = pitch.midi if pitch.present else DEFAULT_ORIGINAL_MIDI
        except audio.ClipTooShort:
            original_midi = DEFAULT_ORIGINAL_MIDI

        sample_path = self._sample_path(submission_id)
        sample_path.write_bytes(encode_wav(trimmed))

        assignment = SampleAssignment(
            sample_id=submission_id,
            file_path=str(sample_path),
            label=result.winner,
            instrument=map_label(result.winner, self.mapping_config),
            original_midi=original_midi,
            confidence=result.confidence,
            location=record.location,
            received_at=self.now(),
        )
        replaced = self.registry.assign(assignment)
        if replaced is not None:
            log.info(
                "track %s: sample %s retired by %s (file kept for the session)",
                assignment.instrument,
                replaced.sample_id,
                assignment.sample_id,
            )
        self.osc.send(sample_announce(assignment))
        self.store.mark_done(
            submission_id,
            label=assignment.label,
            instrument=assignment.instrument,
            original_midi=assignment.original_midi,
            confidence=assignment.confidence,
        )

    # -- queries ------------------------------------------------------------

    def get_status(self, submission_id: str) -> SubmissionRecord:
        return self.store.get(submission_id)

    def state_payload(self) -> dict:
        snapshot = self.registry.snapshot()
        tracks = {}
        for track in TRACKS:
            a = snapshot.get(track)
            tracks[track] = None if a is None else {
                "id": a.sample_id,
                "label": a.label,
                "instrument": a.instrument,
                "original_midi": a.original_midi,
                "confidence": a.confidence,
                "file_path": a.file_path,
                "received_at": a.received_at,
                "location": None if a.location is None else {
                    "lat": a.location[0],
                    "lon": a.location[1],
                },
            }
        return {"tracks": tracks}

    def labels_payload(self) -> dict:
        return {
            "labels": list(LABELS),
            "mapping": {
                label: map_label(label, self.mapping_config)
                for label in sorted(DEFAULT_TRACK_FOR_LABEL)
            },
        }


# ---------------------------------------------------------------------------
# HTTP layer
# ---------------------------------------------------------------------------

_PLACEHOLDER_HTML = """<!doctype html>
<html><head><title>fieldsampler</title></head>
<body style="font-family: sans-serif">
<h1>fieldsampler</h1>
<p>The server is up, but the web UI is not built. Build the frontend and
point <code>static_dir</code> at its <code>dist/</code> directory, or use
the HTTP API directly: POST /api/recordings, GET /api/recordings/{id},
GET /api/state, GET /api/labels.</p>
</body></html>"""


def create_app(service: Service):
    """FastAPI app wrapping a Service; lifespan starts/stops the workers."""
    from contextlib import asynccontextmanager

    from fastapi import FastAPI, HTTPException, Request
    from fastapi.responses import FileResponse, HTMLResponse

    @asynccontextmanager
    async def lifespan(app):
        service.start()
        try:
            yield
        finally:
            service.stop()

    app = FastAPI(title="fieldsampler", lifespan=lifespan)
    app.state.service = service

    @app.post("/api/recordings", status_code=202)
    async def submit_recording(
        request: Request,
        lat: float | None = None,
        lon: float | None = None,
        participant: str | None = None,
    ):
        if (lat is None) != (lon is None):
            raise HTTPException(400, "lat and lon must be supplied together")
        location = None
        if lat is not None:
            if not (-90.0 <= lat <= 90.0 and -180.0 <= lon <= 180.0):
                raise HTTPException(400, f"location ({lat}, {lon}) out of range")
            location = (lat, lon)
        body = await request.body()
        try:
            record = service.submit(body, participant=participant, location=location)
        except TooLarge as exc:
            raise HTTPException(413, str(exc)) from exc
        except MalformedAudio as exc:
            raise HTTPException(400, str(exc)) from exc
        except TooBusy as exc:
            raise HTTPException(503, str(exc)) from exc
        return {"id": record.id, "state": record.state}

    @app.get("/api/recordings/{submission_id}")
    def get_recording(submission_id: str):
        try:
            return service.get_status(submission_id).to_json()
        except NotFound:
            raise HTTPException(404, f"no submission {submission_id}") from None

    @app.get("/api/state")
    def get_state():
        return service.state_payload()

    @app.get("/api/labels")
    def get_labels():
        return service.labels_payload()

    static_dir = service.config.static_dir
    if static_dir is None and Path("frontend/dist").is_dir():
        static_dir = "frontend/dist"
    static = Path(static_dir) if static_dir else None

    if static is not None and static.is_dir():
        from fastapi.staticfiles import StaticFiles

        @app.get("/", include_in_schema=False)
        def index():
            return FileResponse(static / "index.html")

        @app.get("/join", include_in_schema=False)
        def join():
            return FileResponse(static / "join.html")

        @app.get("/performer", include_in_schema=False)
        def performer():
            return FileResponse(static / "performer.html")

        app.mount("/", StaticFiles(directory=str(static)), name="assets")
    else:

        @app.get("/", include_in_schema=False)
        def index_placeholder():
            return HTMLResponse(_PLACEHOLDER_HTML)

        @app.get("/join", include_in_schema=False)
        def join_placeholder():
            return HTMLResponse(_PLACEHOLDER_HTML)

    return app


def guess_local_ip() -> str:
    """Best-effort LAN address for display in the recorder join URL."""
    try:
        s = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
        try:
            s.connect(("192.0.2.1", 80))  # TEST-NET; UDP connect sends nothing
            return s.getsockname()[0]
        finally:
            s.close()
    except OSError:
        return "127.0.0.1"


def join_url(config: ServiceConfig) -> str:
    host, port = config.bind_host_port()
    if host in ("0.0.0.0", ""):
        host = guess_local_ip()
    return f"http://{host}:{port}/"
