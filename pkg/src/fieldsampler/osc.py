"""OSC 1.0 message codec and UDP transport.

Implements plain messages (no bundles or timetags) with the four core
argument types: int32, float32, string, blob. Encoding is bit-exact per
the OSC 1.0 padding rules: everything aligns to 4 bytes, strings are
NUL-terminated then padded, numbers are big-endian.

Outbound traffic announces sample assignments on ADDRESS_SAMPLE; note
events are expected inbound on ADDRESS_NOTE with typetag ",siii"
(instrument, midi note, velocity, duration ms).
"""

from __future__ import annotations

import logging
import socket
import struct
import threading
from dataclasses import dataclass, field
from typing import Callable, Union

from .mapping import SampleAssignment

log = logging.getLogger(__name__)

ADDRESS_SAMPLE = "/exsampling/sample"
ADDRESS_NOTE = "/exsampling/note"

OscArg = Union[int, float, str, bytes]

_INT32_MIN = -(2**31)
_INT32_MAX = 2**31 - 1


class OscError(Exception):
    """Base for codec and transport failures."""


class InvalidAddress(OscError):
    """Address missing, not '/'-prefixed, or containing NUL."""


class Malformed(OscError):
    """Byte stream violates OSC 1.0 framing/padding/termination rules."""


class UnsupportedType(OscError):
    """Argument type outside {int32, float32, string, blob}."""


class SocketError(OscError):
    """UDP send or bind failed."""


@dataclass
class OscMessage:
    address: str
    args: list[OscArg] = field(default_factory=list)


def _pad_string(s: bytes) -> bytes:
    out = s + b"\x00"
    return out + b"\x00" * (-len(out) % 4)


def encode(msg: OscMessage) -> bytes:
    """Serialize a message to OSC 1.0 wire bytes (length always % 4 == 0)."""
    if not msg.address or not msg.address.startswith("/"):
        raise InvalidAddress(f"bad address {msg.address!r}")
    if "\x00" in msg.address:
        raise InvalidAddress("address contains NUL")

    tags = ","
    payload = b""
    for arg in msg.args:
        if isinstance(arg, bool):
            arg = int(arg)
        if isinstance(arg, int):
            if not _INT32_MIN <= arg <= _INT32_MAX:
                raise UnsupportedType(f"int {arg} outside int32 range")
            tags += "i"
            payload += struct.pack(">i", arg)
        elif isinstance(arg, float):
            tags += "f"
            payload += struct.pack(">f", arg)
        elif isinstance(arg, str):
            if "\x00" in arg:
                raise UnsupportedType("string argument contains NUL")
            tags += "s"
            payload += _pad_string(arg.encode("utf-8"))
        elif isinstance(arg, (bytes, bytearray)):
            data = bytes(arg)
            tags += "b"
            payload += struct.pack(">i", len(data)) + data + b"\x00" * (-len(data) % 4)
        else:
            raise UnsupportedType(f"cannot encode {type(arg).__name__}")

    return _pad_string(msg.address.encode("utf-8")) + _pad_string(tags.encode("ascii")) + payload


def _read_string(data: bytes, pos: int) -> tuple[str, int]:
    end = data.find(b"\x00", pos)
    if end < 0:
        raise Malformed("unterminated string")
    raw = data[pos:end]
    next_pos = pos + ((end - pos) // 4 + 1) * 4
    if next_pos > len(data):
        raise Malformed("string padding runs past the end")
    if any(data[end:next_pos]):
        raise Malformed("string padding is not NUL")
    try:
        return raw.decode("utf-8"), next_pos
    except UnicodeDecodeError as exc:
        raise Malformed(f"string is not UTF-8: {exc}") from exc


def decode(data: bytes) -> OscMessage:
    """Parse OSC 1.0 wire bytes back into a message (inverse of encode)."""
    if len(data) < 4 or len(data) % 4 != 0:
        raise Malformed(f"length {len(data)} is not a positive multiple of 4")

    address, pos = _read_string(data, 0)
    if not address.startswith("/"):
        raise Malformed(f"address {address!r} does not start with '/'")

    tags, pos = _read_string(data, pos)
    if not tags.startswith(","):
        raise Malformed(f"typetag string {tags!r} does not start with ','")

    args: list[OscArg] = []
    for tag in tags[1:]:
        if tag == "i":
            if pos + 4 > len(data):
                raise Malformed("truncated int32")
            args.append(struct.unpack_from(">i", data, pos)[0])
            pos += 4
        elif tag == "f":
            if pos + 4 > len(data):
                raise Malformed("truncated float32")
            args.append(struct.unpack_from(">f", data, pos)[0])
            pos += 4
        elif tag == "s":
            value, pos = _read_string(data, pos)
            args.append(value)
        elif tag == "b":
            if pos + 4 > len(data):
                raise Malformed("truncated blob length")
            (size,) = struct.unpack_from(">i", data, pos)
            pos += 4
            if size < 0 or pos + size > len(data):
                raise Malformed(f"blob length {size} out of bounds")
            args.append(data[pos : pos + size])
            pos += size + (-size % 4)
            if pos > len(data):
                raise Malformed("blob padding runs past the end")
        else:
            raise UnsupportedType(f"typetag {tag!r}")

    if pos != len(data):
        raise Malformed(f"{len(data) - pos} trailing bytes after arguments")
    return OscMessage(address, args)


def sample_announce(assignment: SampleAssignment) -> OscMessage:
    """Announcement for a new sample assignment, fixed 8-argument layout.

    Typetag ",ssssfffi": id, file path, label, instrument, original midi,
    lat, lon, has_location. Missing locations encode as (0.0, 0.0, 0).
    """
    if assignment.location is not None:
        lat, lon = assignment.location
        has_location = 1
    else:
        lat, lon, has_location = 0.0, 0.0, 0
    return OscMessage(
        ADDRESS_SAMPLE,
        [
            assignment.sample_id,
            assignment.file_path,
            assignment.label,
            assignment.instrument,
            float(assignment.original_midi),
            float(lat),
            float(lon),
            has_location,
        ],
    )


# ---------------------------------------------------------------------------
# UDP transport
# ---------------------------------------------------------------------------


class OscSender:
    """Fire-and-forget UDP sender, one datagram per message.

    Sends are serialized so concurrent pipeline workers interleave whole
    datagrams, never partial writes.
    """

    def __init__(self, host: str, port: int):
        self.target = (host, port)
        self._lock = threading.Lock()
        try:
            self._sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
        except OSError as exc:
            raise SocketError(f"cannot create UDP socket: {exc}") from exc

    def send(self, msg: OscMessage) -> None:
        data = encode(msg)
        with self._lock:
            try:
                self._sock.sendto(data, self.target)
            except OSError as exc:
                raise SocketError(f"send to {self.target} failed: {exc}") from exc

    def close(self) -> None:
        self._sock.close()

    def __enter__(self):
        return self

    def __exit__(self, *exc_info):
        self.close()


def udp_send(target: tuple[str, int], msg: OscMessage) -> None:
    """One-shot convenience send."""
    with OscSender(*target) as sender:
        sender.send(msg)


class OscListener:
    """Background UDP receive loop.

    The handler is invoked once per datagram with either the decoded
    OscMessage or, for undecodable datagrams, the OscError describing the
    problem. Decode failures never stop the loop.
    """

    def __init__(
        self,
        port: int = 0,
        handler: Callable[[OscMessage | OscError], None] = lambda event: None,
        host: str = "127.0.0.1",
    ):
        self.handler = handler
        self._host = host
        try:
            self._sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
            self._sock.bind((host, port))
        except OSError as exc:
            raise SocketError(f"cannot bind UDP {host}:{port}: {exc}") from exc
        self.port = self._sock.getsockname()[1]
        self._stopped = threading.Event()
        self._thread = threading.Thread(
            target=self._run, name=f"osc-listener:{self.port}", daemon=True
        )

    def start(self) -> "OscListener":
        self._thread.start()
        return self

    def _run(self):
        while not self._stopped.is_set():
            try:
                data, _addr = self._sock.recvfrom(65536)
            except OSError:
                break  # socket closed by stop()
            if self._stopped.is_set():
                break
            try:
                event: OscMessage | OscError = decode(data)
            except OscError as exc:
                event = exc
            try:
                self.handler(event)
            except Exception:
                log.exception("OSC handler raised; listener continues")

    def stop(self) -> None:
        self._stopped.set()
        # closing alone does not wake a blocked recvfrom; poke the socket
        wake_host = "127.0.0.1" if self._host in ("0.0.0.0", "") else self._host
        try:
            wake = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
            wake.sendto(b"", (wake_host, self.port))
            wake.close()
        except OSError:
            pass
        if self._thread.is_alive():
            self._thread.join(timeout=2.0)
        self._sock.close()

    def __enter__(self):
        return self.start()

    def __exit__(self, *exc_info):
        self.stop()
