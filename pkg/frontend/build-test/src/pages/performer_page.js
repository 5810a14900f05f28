"use strict";
// Performer track board: the 8 slots, refreshed every 2 s, with a
// highlight pulse on whichever track just received a new sample.
Object.defineProperty(exports, "__esModule", { value: true });
const api_1 = require("../api");
const performer_1 = require("../performer");
const POLL_MS = 2000;
function wire() {
    const board = document.getElementById('board');
    const stale = document.getElementById('stale');
    const cells = new Map();
    for (const track of performer_1.TRACKS) {
        const cell = document.createElement('div');
        cell.className = 'track empty';
        cell.innerHTML = `<h2>${track}</h2><p class="label">—</p><p class="meta"></p>`;
        board.appendChild(cell);
        cells.set(track, cell);
    }
    let previous = null;
    const refresh = async () => {
        let doc;
        try {
            doc = await (0, api_1.getState)();
            stale.hidden = true;
        }
        catch {
            stale.hidden = false; // server unreachable: keep showing the last board
            return;
        }
        const fresh = (0, performer_1.changedTracks)(previous, doc);
        const now = Date.now() / 1000;
        for (const track of performer_1.TRACKS) {
            const cell = cells.get(track);
            const a = doc.tracks[track] ?? null;
            cell.classList.toggle('empty', a === null);
            cell.classList.toggle('fresh', fresh.has(track));
            const label = cell.querySelector('.label');
            const meta = cell.querySelector('.meta');
            if (a === null) {
                label.textContent = '—';
                meta.textContent = 'no sample yet';
            }
            else {
                label.textContent = a.label;
                const where = (0, performer_1.describeLocation)(a);
                const link = (0, performer_1.mapLink)(a);
                meta.innerHTML = link
                    ? `${(0, performer_1.formatAge)(a.received_at, now)} · <a href="${link}" target="_blank" rel="noreferrer">${where}</a>`
                    : `${(0, performer_1.formatAge)(a.received_at, now)} · ${where}`;
            }
        }
        previous = doc;
    };
    refresh();
    setInterval(refresh, POLL_MS);
}
if (typeof document !== 'undefined') {
    document.addEventListener('DOMContentLoaded', wire);
}
