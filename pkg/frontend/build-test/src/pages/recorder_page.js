"use strict";
// Participant recorder page: hold-to-record, upload, watch the verdict.
Object.defineProperty(exports, "__esModule", { value: true });
exports.explainRejection = void 0;
const api_1 = require("../api");
Object.defineProperty(exports, "explainRejection", { enumerable: true, get: function () { return api_1.explainRejection; } });
const recorder_1 = require("../recorder");
const session_1 = require("../session");
const wav_1 = require("../wav");
function wire() {
    const session = new session_1.RecorderSession();
    const button = document.getElementById('record');
    const meter = document.getElementById('meter-fill');
    const status = document.getElementById('status');
    const result = document.getElementById('result');
    const geoNote = document.getElementById('geo-note');
    const recorder = new recorder_1.MicRecorder((level) => {
        session.level = level;
        meter.style.width = `${Math.round(level * 100)}%`;
    });
    // consent is optional and asynchronous: recording never waits on this
    (0, recorder_1.requestLocation)().then((coords) => {
        if (coords) {
            session.grantLocation(coords.lat, coords.lon);
            geoNote.textContent = `location attached: ${coords.lat.toFixed(3)}, ${coords.lon.toFixed(3)}`;
        }
        else {
            geoNote.textContent = 'no location attached (that is fine)';
        }
    });
    const render = () => {
        document.body.dataset.state = session.state;
        switch (session.state) {
            case 'idle':
                button.textContent = 'start recording';
                status.textContent = 'record an interesting sound around you';
                break;
            case 'recording':
                button.textContent = 'stop & send';
                status.textContent = 'listening…';
                break;
            case 'uploading':
                button.textContent = 'sending…';
                status.textContent = 'uploading and classifying…';
                break;
            case 'classified':
                button.textContent = 'record another';
                status.textContent = 'your sound is in the performance!';
                break;
            case 'failed':
                button.textContent = 'try again';
                status.textContent = session.error ?? 'something went wrong';
                break;
        }
        button.disabled = session.state === 'uploading';
    };
    button.addEventListener('click', async () => {
        if (session.state === 'classified' || session.state === 'failed') {
            session.reset();
            result.textContent = '';
            meter.style.width = '0%';
            render();
            return;
        }
        if (session.state === 'idle') {
            try {
                await recorder.start();
                session.startRecording();
            }
            catch (err) {
                session.fail(`microphone permission denied (${err})`);
            }
            render();
            return;
        }
        if (session.state === 'recording') {
            const { chunks, sampleRate } = await recorder.stop();
            session.startUpload();
            render();
            try {
                const wav = (0, wav_1.encodeWav)(chunks, sampleRate);
                const { id } = await (0, api_1.submitRecording)(wav, {
                    location: session.coordinates ?? undefined,
                });
                const outcome = await (0, api_1.pollResult)(id);
                if (outcome.kind === 'done') {
                    session.classified({ label: outcome.label, instrument: outcome.instrument });
                    result.textContent = outcome.text;
                }
                else {
                    session.fail(outcome.text);
                    result.textContent = '';
                }
            }
            catch (err) {
                session.fail(err instanceof Error ? err.message : String(err));
            }
            render();
        }
    });
    render();
}
if (typeof document !== 'undefined') {
    document.addEventListener('DOMContentLoaded', wire);
}
