"use strict";
// QR join page: encode this server's own recorder URL, fully client-side
// so the page keeps working with no network beyond the initial load.
var __importDefault = (this && this.__importDefault) || function (mod) {
    return (mod && mod.__esModule) ? mod : { "default": mod };
};
Object.defineProperty(exports, "__esModule", { value: true });
exports.recorderUrl = recorderUrl;
exports.createJoinQr = createJoinQr;
const qrcode_generator_1 = __importDefault(require("qrcode-generator"));
function recorderUrl(origin) {
    return origin.replace(/\/+$/, '') + '/';
}
function createJoinQr(origin) {
    const url = recorderUrl(origin);
    const qr = (0, qrcode_generator_1.default)(0, 'M'); // type 0 = auto-size
    qr.addData(url);
    qr.make();
    return {
        url,
        svg: qr.createSvgTag({ cellSize: 8, margin: 16, scalable: true }),
        moduleCount: qr.getModuleCount(),
        isDark: (row, col) => qr.isDark(row, col),
    };
}
