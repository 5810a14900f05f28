"use strict";
// Typed client for the server's HTTP API, plus the polling loop the
// recorder uses to show participants what their sound became.
Object.defineProperty(exports, "__esModule", { value: true });
exports.submitRecording = submitRecording;
exports.getStatus = getStatus;
exports.getState = getState;
exports.explainRejection = explainRejection;
exports.pollResult = pollResult;
function resolve(opts) {
    return {
        baseUrl: opts?.baseUrl ?? '',
        fetchFn: opts?.fetchFn ?? fetch,
    };
}
async function submitRecording(wav, extras, opts) {
    const { baseUrl, fetchFn } = resolve(opts);
    const params = new URLSearchParams();
    if (extras?.location) {
        params.set('lat', String(extras.location.lat));
        params.set('lon', String(extras.location.lon));
    }
    if (extras?.participant)
        params.set('participant', extras.participant);
    const query = params.toString();
    const res = await fetchFn(`${baseUrl}/api/recordings${query ? '?' + query : ''}`, {
        method: 'POST',
        headers: { 'content-type': 'audio/wav' },
        body: wav,
    });
    if (!res.ok)
        throw new Error(`upload failed: HTTP ${res.status}`);
    return res.json();
}
async function getStatus(id, opts) {
    const { baseUrl, fetchFn } = resolve(opts);
    const res = await fetchFn(`${baseUrl}/api/recordings/${id}`);
    if (!res.ok)
        throw new Error(`status failed: HTTP ${res.status}`);
    return res.json();
}
async function getState(opts) {
    const { baseUrl, fetchFn } = resolve(opts);
    const res = await fetchFn(`${baseUrl}/api/state`);
    if (!res.ok)
        throw new Error(`state failed: HTTP ${res.status}`);
    return res.json();
}
const REJECTION_TEXT = {
    no_signal: 'The recording was silent, so there was nothing to classify. Get closer to the sound and try again.',
    too_short: 'Too little audible sound was left after trimming silence. Record at least half a second of sound.',
    malformed_audio: 'The upload was not readable audio. Please try recording again.',
    too_large: 'The recording was too large to upload. Try a shorter one.',
};
function explainRejection(reason) {
    return REJECTION_TEXT[reason ?? ''] ?? `The recording was rejected (${reason ?? 'unknown reason'}).`;
}
const defaultSleep = (ms) => new Promise((r) => setTimeout(r, ms));
/**
 * Poll a submission until it reaches a terminal state.
 *
 * Resolves with what the UI should display; rejects on timeout (30 s) or
 * after repeated network failures, both of which the UI shows as the
 * failed state with a retry.
 */
async function pollResult(id, opts) {
    const intervalMs = opts?.intervalMs ?? 500;
    const timeoutMs = opts?.timeoutMs ?? 30000;
    const sleep = opts?.sleep ?? defaultSleep;
    const maxErrors = opts?.maxErrors ?? 3;
    const started = Date.now();
    let consecutiveErrors = 0;
    while (Date.now() - started < timeoutMs) {
        let status;
        try {
            status = await getStatus(id, opts);
            consecutiveErrors = 0;
        }
        catch (err) {
            consecutiveErrors += 1;
            if (consecutiveErrors >= maxErrors) {
                throw new Error(`lost contact with the server while waiting: ${err}`);
            }
            await sleep(intervalMs);
            continue;
        }
        if (status.state === 'done') {
            const label = status.label ?? '?';
            const instrument = status.instrument ?? '?';
            return { kind: 'done', label, instrument, text: `${label} → ${instrument} track` };
        }
        if (status.state === 'rejected') {
            return { kind: 'rejected', reason: status.reason, text: explainRejection(status.reason) };
        }
        await sleep(intervalMs);
    }
    throw new Error('timed out waiting for the classification result');
}
