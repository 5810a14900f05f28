"use strict";
// 16-bit PCM mono WAV encoding: the one canonical upload format the
// server ingests, built client-side so the backend never sees codec soup.
Object.defineProperty(exports, "__esModule", { value: true });
exports.encodeWav = encodeWav;
exports.peakLevel = peakLevel;
function encodeWav(chunks, sampleRate) {
    let total = 0;
    for (const c of chunks)
        total += c.length;
    const bytes = new Uint8Array(44 + total * 2);
    const view = new DataView(bytes.buffer);
    const ascii = (offset, s) => {
        for (let i = 0; i < s.length; i++)
            view.setUint8(offset + i, s.charCodeAt(i));
    };
    ascii(0, 'RIFF');
    view.setUint32(4, 36 + total * 2, true);
    ascii(8, 'WAVE');
    ascii(12, 'fmt ');
    view.setUint32(16, 16, true);
    view.setUint16(20, 1, true); // PCM
    view.setUint16(22, 1, true); // mono
    view.setUint32(24, sampleRate, true);
    view.setUint32(28, sampleRate * 2, true);
    view.setUint16(32, 2, true);
    view.setUint16(34, 16, true);
    ascii(36, 'data');
    view.setUint32(40, total * 2, true);
    let offset = 44;
    for (const chunk of chunks) {
        for (let i = 0; i < chunk.length; i++) {
            const s = Math.max(-1, Math.min(1, chunk[i]));
            view.setInt16(offset, s < 0 ? s * 0x8000 : s * 0x7fff, true);
            offset += 2;
        }
    }
    return bytes;
}
/** Peak absolute amplitude of a capture chunk, for the input level meter. */
function peakLevel(chunk) {
    let peak = 0;
    for (let i = 0; i < chunk.length; i++) {
        const a = Math.abs(chunk[i]);
        if (a > peak)
            peak = a;
    }
    return Math.min(peak, 1);
}
