"""Tests for note rendering, score mixdown, and the live mixer."""

import numpy as np
import pytest

from fieldsampler.audio import DEFAULT_SAMPLE_RATE, AudioClip, encode_wav
from fieldsampler.mapping import SampleAssignment, TrackRegistry
from fieldsampler.osc import ADDRESS_NOTE, Malformed, OscMessage
from fieldsampler.sampler import (
    EmptySample,
    LiveMixer,
    NoteEvent,
    bank_from_assignments,
    note_from_osc,
    render_note,
    render_score,
)

SR = DEFAULT_SAMPLE_RATE
FADE = round(0.005 * SR)


def tone(freq=440.0, seconds=1.0, amp=0.9):
    t = np.arange(int(seconds * SR)) / SR
    return AudioClip(amp * np.sin(2 * np.pi * freq * t), SR)


def ev(instrument="Snare", note=60, velocity=127, duration_ms=2000, onset_ms=0):
    return NoteEvent(instrument, note, velocity, duration_ms, onset_ms)


def dominant_hz(clip):
    mags = np.abs(np.fft.rfft(clip.samples))
    return np.argmax(mags) * clip.sample_rate / len(clip.samples)


class TestNoteEvent:
    def test_validation(self):
        with pytest.raises(ValueError):
            ev(note=128)
        with pytest.raises(ValueError):
            ev(velocity=-1)
        with pytest.raises(ValueError):
            ev(duration_ms=0)
        with pytest.raises(ValueError):
            ev(onset_ms=-5)
        with pytest.raises(KeyError):
            ev(instrument="Organ")

    def test_from_osc(self):
        msg = OscMessage(ADDRESS_NOTE, ["Wind", 72, 100, 250])
        event = note_from_osc(msg)
        assert event == NoteEvent("Wind", 72, 100, 250)

    def test_from_osc_rejects_bad_payloads(self):
        with pytest.raises(Malformed):
            note_from_osc(OscMessage("/other", ["Wind", 72, 100, 250]))
        with pytest.raises(Malformed):
            note_from_osc(OscMessage(ADDRESS_NOTE, ["Wind", 72, 100]))
        with pytest.raises(Malformed):
            note_from_osc(OscMessage(ADDRESS_NOTE, ["Wind", 72.0, 100, 250]))
        with pytest.raises(Malformed):
            note_from_osc(OscMessage(ADDRESS_NOTE, ["Wind", 300, 100, 250]))


class TestRenderNote:
    def test_percussive_full_velocity_is_identity_up_to_fade(self):
        sample = tone()
        out = render_note(sample, 69.0, ev(duration_ms=5000), percussive=True)
        assert len(out) == len(sample)
        assert np.array_equal(out.samples[:-FADE], sample.samples[:-FADE])

    def test_percussive_ignores_note_number(self):
        sample = tone()
        outs = [
            render_note(sample, 69.0, ev(note=n), percussive=True).samples.tobytes()
            for n in (0, 36, 60, 84, 127)
        ]
        assert len(set(outs)) == 1

    def test_melodic_octave_up_halves_length_and_doubles_pitch(self):
        sample = tone(440)
        out = render_note(sample, 69.0, ev(note=81, duration_ms=5000), percussive=False)
        assert len(out) == int(np.ceil(len(sample) / 2))
        assert dominant_hz(out) == pytest.approx(880, rel=0.01)

    def test_melodic_at_original_pitch_is_rate_one(self):
        sample = tone(440)
        out = render_note(sample, 69.0, ev(note=69, duration_ms=5000), percussive=False)
        assert dominant_hz(out) == pytest.approx(440, rel=0.01)
        assert len(out) == len(sample)

    def test_velocity_scales_peak_linearly(self):
        sample = tone()
        full = render_note(sample, 69.0, ev(velocity=127), percussive=True)
        half = render_note(sample, 69.0, ev(velocity=64), percussive=True)
        assert np.max(np.abs(half.samples)) == pytest.approx(
            64 / 127 * np.max(np.abs(full.samples)), abs=1e-6
        )

    def test_duration_truncation_is_exact(self):
        sample = tone(seconds=2.0)
        out = render_note(sample, 69.0, ev(duration_ms=250), percussive=True)
        assert len(out) == round(0.25 * SR)

    def test_duration_beyond_sample_keeps_available_length(self):
        sample = tone(seconds=0.5)
        out = render_note(sample, 69.0, ev(duration_ms=10_000), percussive=True)
        assert len(out) == len(sample)

    def test_fade_reaches_zero(self):
        out = render_note(tone(), 69.0, ev(duration_ms=100), percussive=True)
        assert out.samples[-1] == 0.0

    def test_empty_sample_rejected(self):
        with pytest.raises(EmptySample):
            render_note(AudioClip(np.zeros(0), SR), 60.0, ev(), percussive=True)

    def test_output_in_range(self):
        out = render_note(tone(amp=1.0), 69.0, ev(), percussive=True)
        assert np.max(np.abs(out.samples)) <= 1.0


class TestRenderScore:
    def _bank(self, amp=0.9):
        return {"Snare": (tone(amp=amp), 60.0), "Wind": (tone(330, amp=amp), 64.0)}

    def test_empty_event_list_is_empty_clip(self):
        out = render_score([], self._bank())
        assert len(out) == 0
        assert out.sample_rate == SR

    def test_single_event_matches_render_note_after_soft_clip(self):
        bank = self._bank(amp=0.5)  # |tanh(x) - x| < 0.04 holds for |x| <= 0.5
        out = render_score([ev(duration_ms=300)], bank)
        single = render_note(bank["Snare"][0], 60.0, ev(duration_ms=300), True)
        assert len(out) == len(single)
        assert np.max(np.abs(out.samples - single.samples)) < 0.04
        assert np.array_equal(out.samples, np.tanh(single.samples))

    def test_disjoint_events_superpose_exactly(self):
        bank = self._bank()
        quiet = ev(velocity=1, duration_ms=200)
        shifted = ev(velocity=1, duration_ms=200, onset_ms=400)
        out = render_score([quiet, shifted], bank)
        single = render_note(bank["Snare"][0], 60.0, quiet, True)
        n = len(single)
        onset = round(0.4 * SR)
        assert np.allclose(out.samples[:n], single.samples, atol=1e-6)
        assert np.allclose(out.samples[onset : onset + n], single.samples, atol=1e-6)
        assert np.all(out.samples[n:onset] == 0.0)

    def test_overlapping_loud_events_stay_in_range(self):
        events = [ev(duration_ms=1000) for _ in range(6)]
        out = render_score(events, self._bank(amp=1.0))
        assert np.max(np.abs(out.samples)) <= 1.0

    def test_unassigned_track_is_skipped_with_report(self, caplog):
        bank = {"Snare": (tone(), 60.0)}
        with caplog.at_level("WARNING"):
            out = render_score([ev(), ev(instrument="Wind")], bank)
        assert "Wind" in caplog.text
        assert len(out) > 0

    def test_length_is_max_onset_plus_render(self):
        out = render_score([ev(duration_ms=100, onset_ms=1000)], self._bank())
        assert len(out) == round(1.0 * SR) + round(0.1 * SR)


class TestBankLoading:
    def test_bank_from_assignments(self, tmp_path):
        clip = tone(seconds=0.5)
        path = tmp_path / "w.wav"
        path.write_bytes(encode_wav(clip))
        assignment = SampleAssignment("s1", str(path), "Flute", "Wind", 69.0, 0.9)
        bank = bank_from_assignments({"Wind": assignment})
        loaded, midi = bank["Wind"]
        assert midi == 69.0
        assert len(loaded) == len(clip)


class TestLiveMixer:
    def _registry_with_sample(self, tmp_path, track="Snare", label="Knock"):
        clip = tone(seconds=0.5)
        path = tmp_path / "s.wav"
        path.write_bytes(encode_wav(clip))
        registry = TrackRegistry()
        registry.assign(
            SampleAssignment("sid", str(path), label, track, 60.0, 0.8)
        )
        return registry

    def test_plays_assigned_track(self, tmp_path):
        captured = []
        mixer = LiveMixer(
            self._registry_with_sample(tmp_path),
            sink=lambda clip, event: captured.append((clip, event)),
        )
        out = mixer.play(ev(duration_ms=100))
        assert out is not None
        assert len(captured) == 1
        assert len(captured[0][0]) == round(0.1 * SR)

    def test_unassigned_track_drops_note(self, tmp_path):
        mixer = LiveMixer(self._registry_with_sample(tmp_path))
        assert mixer.play(ev(instrument="Wind")) is None

    def test_handle_osc_end_to_end(self, tmp_path):
        captured = []
        mixer = LiveMixer(
            self._registry_with_sample(tmp_path),
            sink=lambda clip, event: captured.append(event),
        )
        mixer.handle_osc(OscMessage(ADDRESS_NOTE, ["Snare", 60, 100, 150]))
        assert captured == [NoteEvent("Snare", 60, 100, 150)]

    def test_handle_osc_swallows_garbage(self, tmp_path):
        mixer = LiveMixer(self._registry_with_sample(tmp_path))
        mixer.handle_osc(Malformed("boom"))
        mixer.handle_osc(OscMessage(ADDRESS_NOTE, ["Snare", 60]))
        mixer.handle_osc(OscMessage("/elsewhere", []))
