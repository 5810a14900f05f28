"use strict";
// Join page: a QR code of this server's recorder URL, generated locally.
Object.defineProperty(exports, "__esModule", { value: true });
const join_1 = require("../join");
function wire() {
    const { url, svg } = (0, join_1.createJoinQr)(window.location.origin);
    const qrHost = document.getElementById('qr');
    const urlText = document.getElementById('url');
    qrHost.innerHTML = svg;
    urlText.textContent = url;
}
if (typeof document !== 'undefined') {
    document.addEventListener('DOMContentLoaded', wire);
}
