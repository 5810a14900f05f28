"use strict";
// Track board diffing and display helpers.
var __importDefault = (this && this.__importDefault) || function (mod) {
    return (mod && mod.__esModule) ? mod : { "default": mod };
};
Object.defineProperty(exports, "__esModule", { value: true });
const strict_1 = __importDefault(require("node:assert/strict"));
const node_test_1 = require("node:test");
const performer_1 = require("../src/performer");
function assignment(id, extra = {}) {
    return {
        id,
        label: 'Gong',
        instrument: 'TT',
        original_midi: 62,
        confidence: 0.8,
        file_path: `/samples/${id}.wav`,
        received_at: 1000,
        location: null,
        ...extra,
    };
}
function doc(tracks) {
    const all = {};
    for (const t of performer_1.TRACKS)
        all[t] = tracks[t] ?? null;
    return { tracks: all };
}
(0, node_test_1.test)('first poll highlights every occupied track', () => {
    const next = doc({ Wind: assignment('a'), TT: assignment('b') });
    strict_1.default.deepEqual((0, performer_1.changedTracks)(null, next), new Set(['Wind', 'TT']));
});
(0, node_test_1.test)('a new sample on one track highlights only that track', () => {
    const prev = doc({ Wind: assignment('a'), TT: assignment('b') });
    const next = doc({ Wind: assignment('c'), TT: assignment('b') });
    strict_1.default.deepEqual((0, performer_1.changedTracks)(prev, next), new Set(['Wind']));
});
(0, node_test_1.test)('unchanged state highlights nothing', () => {
    const prev = doc({ Wind: assignment('a') });
    strict_1.default.deepEqual((0, performer_1.changedTracks)(prev, doc({ Wind: assignment('a') })), new Set());
});
(0, node_test_1.test)('a track going empty is not a highlight', () => {
    const prev = doc({ Wind: assignment('a') });
    strict_1.default.deepEqual((0, performer_1.changedTracks)(prev, doc({})), new Set());
});
(0, node_test_1.test)('location text: coordinates or the unknown sentinel', () => {
    strict_1.default.equal((0, performer_1.describeLocation)(assignment('a')), 'location unknown');
    strict_1.default.equal((0, performer_1.describeLocation)(null), 'location unknown');
    const here = assignment('a', { location: { lat: 35.3939, lon: 139.4333 } });
    strict_1.default.equal((0, performer_1.describeLocation)(here), '35.3939, 139.4333');
    strict_1.default.match((0, performer_1.mapLink)(here), /openstreetmap\.org/);
    strict_1.default.equal((0, performer_1.mapLink)(assignment('a')), null);
});
(0, node_test_1.test)('age formatting', () => {
    strict_1.default.equal((0, performer_1.formatAge)(1000, 1005), '5s ago');
    strict_1.default.equal((0, performer_1.formatAge)(1000, 1000 + 180), '3m ago');
    strict_1.default.equal((0, performer_1.formatAge)(1000, 1000 + 7200), '2h ago');
    strict_1.default.equal((0, performer_1.formatAge)(1000, 999), '0s ago'); // clock skew clamps at zero
});
