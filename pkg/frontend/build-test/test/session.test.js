"use strict";
// The recorder state machine only moves along
// idle -> recording -> uploading -> classified, any -> failed,
// and classified/failed -> idle.
var __importDefault = (this && this.__importDefault) || function (mod) {
    return (mod && mod.__esModule) ? mod : { "default": mod };
};
Object.defineProperty(exports, "__esModule", { value: true });
const strict_1 = __importDefault(require("node:assert/strict"));
const node_test_1 = require("node:test");
const session_1 = require("../src/session");
(0, node_test_1.test)('happy path walks the full order', () => {
    const s = new session_1.RecorderSession();
    strict_1.default.equal(s.state, 'idle');
    s.startRecording();
    strict_1.default.equal(s.state, 'recording');
    s.startUpload();
    strict_1.default.equal(s.state, 'uploading');
    s.classified({ label: 'Bark', instrument: 'Bass' });
    strict_1.default.equal(s.state, 'classified');
    strict_1.default.deepEqual(s.lastResult, { label: 'Bark', instrument: 'Bass' });
    s.reset();
    strict_1.default.equal(s.state, 'idle');
});
(0, node_test_1.test)('failure is reachable from every active state and resets to idle', () => {
    for (const advance of [0, 1, 2]) {
        const s = new session_1.RecorderSession();
        if (advance >= 1)
            s.startRecording();
        if (advance >= 2)
            s.startUpload();
        s.fail('boom');
        strict_1.default.equal(s.state, 'failed');
        strict_1.default.equal(s.error, 'boom');
        s.reset();
        strict_1.default.equal(s.state, 'idle');
    }
});
(0, node_test_1.test)('skipping states is rejected', () => {
    const s = new session_1.RecorderSession();
    strict_1.default.throws(() => s.startUpload(), /illegal transition/);
    strict_1.default.throws(() => s.classified({ label: 'x', instrument: 'y' }), /illegal transition/);
    s.startRecording();
    strict_1.default.throws(() => s.classified({ label: 'x', instrument: 'y' }), /illegal transition/);
    strict_1.default.throws(() => s.reset(), /illegal transition/);
});
(0, node_test_1.test)('terminal states cannot advance except to idle', () => {
    const s = new session_1.RecorderSession();
    s.startRecording();
    s.startUpload();
    s.classified({ label: 'Meow', instrument: 'Chorus' });
    strict_1.default.throws(() => s.startRecording(), /illegal transition/);
    strict_1.default.throws(() => s.fail('late'), /illegal transition/);
});
(0, node_test_1.test)('location consent is optional and does not gate transitions', () => {
    const s = new session_1.RecorderSession();
    strict_1.default.equal(s.geoConsent, false);
    strict_1.default.equal(s.coordinates, null);
    s.startRecording(); // recording never waited for consent
    s.grantLocation(35.39, 139.43);
    strict_1.default.equal(s.geoConsent, true);
    strict_1.default.deepEqual(s.coordinates, { lat: 35.39, lon: 139.43 });
});
