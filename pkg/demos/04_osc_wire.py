#!/usr/bin/env python3
"""The OSC wire format, byte by byte, plus a loopback UDP round trip.

Everything a Max/MSP (or any OSC 1.0) consumer needs to unpack the
sample announcements: fixed address, fixed ",ssssfffi" argument layout.
"""
import threading

from fieldsampler.mapping import SampleAssignment
from fieldsampler.osc import OscListener, OscMessage, decode, encode, sample_announce, udp_send


def hexdump(data):
    for off in range(0, len(data), 16):
        row = data[off : off + 16]
        hx = " ".join(f"{b:02x}" for b in row)
        txt = "".join(chr(b) if 32 <= b < 127 else "." for b in row)
        print(f"  {off:04x}  {hx:<47}  {txt}")


print("minimal message {'/t', [int32 1]}:")
hexdump(encode(OscMessage("/t", [1])))

assignment = SampleAssignment(
    sample_id="a3f9",
    file_path="samples/a3f9.wav",
    label="Gong",
    instrument="TT",
    original_midi=62.3,
    confidence=0.82,
    location=(35.39, 139.43),
    received_at=1_700_000_000.0,
)
msg = sample_announce(assignment)
print(f"\nannouncement for a new {assignment.label} sample on {assignment.instrument}:")
data = encode(msg)
hexdump(data)
# floats ride the wire as float32, so re-encoding the decoded message is
# byte-stable even though 62.3 itself is not float32-representable
print(f"\nencode(decode(data)) == data: {encode(decode(data)) == data}")

# loopback: what a Max patch on the same machine would receive
received = threading.Event()
events = []


def on_message(event):
    events.append(event)
    received.set()


with OscListener(handler=on_message) as listener:
    udp_send(("127.0.0.1", listener.port), msg)
    received.wait(2.0)

print(f"\nloopback datagram on udp:{listener.port} -> {events[0].address}")
print(f"args: {events[0].args}")
