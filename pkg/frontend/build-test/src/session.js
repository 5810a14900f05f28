"use strict";
// Recorder session state machine. Kept free of DOM and network so the
// transition rules are testable on their own.
Object.defineProperty(exports, "__esModule", { value: true });
exports.RecorderSession = void 0;
const FORWARD = {
    idle: ['recording', 'failed'],
    recording: ['uploading', 'failed'],
    uploading: ['classified', 'failed'],
    classified: ['idle'],
    failed: ['idle'],
};
class RecorderSession {
    constructor() {
        this.state = 'idle';
        /** live input meter, 0..1 */
        this.level = 0;
        this.lastResult = null;
        this.error = null;
        this.geoConsent = false;
        this.coordinates = null;
    }
    move(next) {
        if (!FORWARD[this.state].includes(next)) {
            throw new Error(`illegal transition ${this.state} -> ${next}`);
        }
        this.state = next;
    }
    startRecording() {
        this.move('recording');
        this.error = null;
        this.level = 0;
    }
    startUpload() {
        this.move('uploading');
        this.level = 0;
    }
    classified(result) {
        this.move('classified');
        this.lastResult = result;
    }
    fail(message) {
        this.move('failed');
        this.error = message;
        this.level = 0;
    }
    reset() {
        this.move('idle');
        this.level = 0;
    }
    grantLocation(lat, lon) {
        this.geoConsent = true;
        this.coordinates = { lat, lon };
    }
}
exports.RecorderSession = RecorderSession;
