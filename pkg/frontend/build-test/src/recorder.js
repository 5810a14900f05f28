"use strict";
// Microphone capture. Collects mono Float32 chunks from a
// ScriptProcessorNode (deprecated but still the most portable way to get
// raw samples without shipping a worklet file) and reports input levels.
Object.defineProperty(exports, "__esModule", { value: true });
exports.MicRecorder = void 0;
exports.requestLocation = requestLocation;
const wav_1 = require("./wav");
class MicRecorder {
    constructor(onLevel = () => { }) {
        this.onLevel = onLevel;
        this.stream = null;
        this.context = null;
        this.processor = null;
        this.chunks = [];
        this.sampleRate = 0;
    }
    async start() {
        this.stream = await navigator.mediaDevices.getUserMedia({ audio: true });
        this.context = new AudioContext();
        this.sampleRate = this.context.sampleRate;
        this.chunks = [];
        const source = this.context.createMediaStreamSource(this.stream);
        this.processor = this.context.createScriptProcessor(4096, 1, 1);
        this.processor.onaudioprocess = (ev) => {
            const data = ev.inputBuffer.getChannelData(0);
            this.chunks.push(new Float32Array(data));
            this.onLevel((0, wav_1.peakLevel)(data));
        };
        source.connect(this.processor);
        this.processor.connect(this.context.destination);
    }
    /** Stop capture and hand back the collected chunks. */
    async stop() {
        this.processor?.disconnect();
        this.stream?.getTracks().forEach((t) => t.stop());
        await this.context?.close();
        const out = { chunks: this.chunks, sampleRate: this.sampleRate };
        this.processor = null;
        this.stream = null;
        this.context = null;
        this.chunks = [];
        return out;
    }
}
exports.MicRecorder = MicRecorder;
/**
 * Ask for coordinates without ever blocking the recording flow: resolves
 * null when the user declines, the API is missing, or it is just slow.
 */
function requestLocation(timeoutMs = 5000) {
    return new Promise((resolve) => {
        if (!('geolocation' in navigator)) {
            resolve(null);
            return;
        }
        const timer = setTimeout(() => resolve(null), timeoutMs);
        navigator.geolocation.getCurrentPosition((pos) => {
            clearTimeout(timer);
            resolve({ lat: pos.coords.latitude, lon: pos.coords.longitude });
        }, () => {
            clearTimeout(timer);
            resolve(null);
        }, { timeout: timeoutMs });
    });
}
