"use strict";
// API client behavior against a scripted fetch: upload query params,
// poll cadence, terminal displays, timeout and network failure.
var __importDefault = (this && this.__importDefault) || function (mod) {
    return (mod && mod.__esModule) ? mod : { "default": mod };
};
Object.defineProperty(exports, "__esModule", { value: true });
const strict_1 = __importDefault(require("node:assert/strict"));
const node_test_1 = require("node:test");
const api_1 = require("../src/api");
function jsonResponse(doc, status = 200) {
    return new Response(JSON.stringify(doc), {
        status,
        headers: { 'content-type': 'application/json' },
    });
}
function scriptedFetch(handler) {
    const calls = [];
    const fetchFn = async (input, init) => {
        const url = String(input);
        calls.push(url);
        const out = handler(url, init);
        if (out instanceof Error)
            throw out;
        return out;
    };
    return { fetchFn, calls };
}
const noSleep = async () => { };
(0, node_test_1.test)('submit posts WAV bytes and echoes the id', async () => {
    const { fetchFn, calls } = scriptedFetch(() => jsonResponse({ id: 'abc', state: 'queued' }, 202));
    const out = await (0, api_1.submitRecording)(new Uint8Array([1, 2, 3]), {}, { fetchFn });
    strict_1.default.deepEqual(out, { id: 'abc', state: 'queued' });
    strict_1.default.equal(calls[0], '/api/recordings');
});
(0, node_test_1.test)('submit includes lat/lon only when consented', async () => {
    const { fetchFn, calls } = scriptedFetch(() => jsonResponse({ id: 'abc', state: 'queued' }));
    await (0, api_1.submitRecording)(new Uint8Array(4), { location: { lat: 35.39, lon: 139.43 } }, { fetchFn });
    strict_1.default.equal(calls[0], '/api/recordings?lat=35.39&lon=139.43');
    await (0, api_1.submitRecording)(new Uint8Array(4), {}, { fetchFn });
    strict_1.default.equal(calls[1], '/api/recordings'); // consent withheld: no coordinates
});
(0, node_test_1.test)('submit surfaces server rejection as an error', async () => {
    const { fetchFn } = scriptedFetch(() => jsonResponse({ detail: 'too big' }, 413));
    await strict_1.default.rejects((0, api_1.submitRecording)(new Uint8Array(4), {}, { fetchFn }), /413/);
});
(0, node_test_1.test)('poll resolves done with the label -> instrument display text', async () => {
    let polls = 0;
    const { fetchFn } = scriptedFetch(() => {
        polls += 1;
        if (polls < 3)
            return jsonResponse({ id: 'x', state: 'processing' });
        return jsonResponse({
            id: 'x', state: 'done', label: 'Bark', instrument: 'Bass',
            original_midi: 60, confidence: 0.9, reason: null,
        });
    });
    const outcome = await (0, api_1.pollResult)('x', { fetchFn, sleep: noSleep });
    strict_1.default.equal(outcome.kind, 'done');
    strict_1.default.equal(outcome.text, 'Bark → Bass track');
    strict_1.default.equal(polls, 3);
});
(0, node_test_1.test)('poll resolves rejection with the human explanation', async () => {
    const { fetchFn } = scriptedFetch(() => jsonResponse({ id: 'x', state: 'rejected', reason: 'no_signal', label: null, instrument: null, original_midi: null, confidence: null }));
    const outcome = await (0, api_1.pollResult)('x', { fetchFn, sleep: noSleep });
    strict_1.default.equal(outcome.kind, 'rejected');
    strict_1.default.match(outcome.text, /silent/);
});
(0, node_test_1.test)('poll times out into failure', async () => {
    const { fetchFn } = scriptedFetch(() => jsonResponse({ id: 'x', state: 'processing' }));
    await strict_1.default.rejects((0, api_1.pollResult)('x', { fetchFn, sleep: noSleep, timeoutMs: 50 }), /timed out/);
});
(0, node_test_1.test)('poll tolerates a blip but fails on repeated network loss', async () => {
    let calls = 0;
    const { fetchFn } = scriptedFetch(() => {
        calls += 1;
        if (calls === 1)
            return new Error('connection reset');
        if (calls === 2)
            return jsonResponse({ id: 'x', state: 'processing' });
        return new Error('network is down');
    });
    await strict_1.default.rejects((0, api_1.pollResult)('x', { fetchFn, sleep: noSleep, maxErrors: 3 }), /lost contact/);
    strict_1.default.equal(calls, 5); // 1 blip + 1 ok + 3 consecutive failures
});
(0, node_test_1.test)('every rejection reason has a readable explanation', () => {
    for (const reason of ['no_signal', 'too_short', 'malformed_audio', 'too_large']) {
        const text = (0, api_1.explainRejection)(reason);
        strict_1.default.ok(text.length > 20, `${reason}: ${text}`);
        strict_1.default.ok(!text.includes('undefined'));
    }
    strict_1.default.match((0, api_1.explainRejection)('weird'), /weird/);
});
