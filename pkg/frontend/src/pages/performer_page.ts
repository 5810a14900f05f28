// Performer track board: the 8 slots, refreshed every 2 s, with a
// highlight pulse on whichever track just received a new sample.

import { getState, type StateDoc } from '../api'
import { changedTracks, describeLocation, formatAge, mapLink, TRACKS } from '../performer'

const POLL_MS = 2000

function wire() {
  const board = document.getElementById('board') as HTMLDivElement
  const stale = document.getElementById('stale') as HTMLSpanElement

  const cells = new Map<string, HTMLDivElement>()
  for (const track of TRACKS) {
    const cell = document.createElement('div')
    cell.className = 'track empty'
    cell.innerHTML = `<h2>${track}</h2><p class="label">—</p><p class="meta"></p>`
    board.appendChild(cell)
    cells.set(track, cell)
  }

  let previous: StateDoc | null = null

  const refresh = async () => {
    let doc: StateDoc
    try {
      doc = await getState()
      stale.hidden = true
    } catch {
      stale.hidden = false // server unreachable: keep showing the last board
      return
    }
    const fresh = changedTracks(previous, doc)
    const now = Date.now() / 1000
    for (const track of TRACKS) {
      const cell = cells.get(track)!
      const a = doc.tracks[track] ?? null
      cell.classList.toggle('empty', a === null)
      cell.classList.toggle('fresh', fresh.has(track))
      const label = cell.querySelector('.label') as HTMLParagraphElement
      const meta = cell.querySelector('.meta') as HTMLParagraphElement
      if (a === null) {
        label.textContent = '—'
        meta.textContent = 'no sample yet'
      } else {
        label.textContent = a.label
        const where = describeLocation(a)
        const link = mapLink(a)
        meta.innerHTML = link
          ? `${formatAge(a.received_at, now)} · <a href="${link}" target="_blank" rel="noreferrer">${where}</a>`
          : `${formatAge(a.received_at, now)} · ${where}`
      }
    }
    previous = doc
  }

  refresh()
  setInterval(refresh, POLL_MS)
}

if (typeof document !== 'undefined') {
  document.addEventListener('DOMContentLoaded', wire)
}
