// Performer track board logic: which of the 8 tracks changed since the
// last poll, and how to describe an assignment in text.

import type { StateDoc, TrackAssignment } from './api'

export const TRACKS = ['Bass', 'BD', 'Chorus', 'HH', 'Piano', 'Snare', 'TT', 'Wind']

/** Tracks whose current sample id changed between two state snapshots. */
export function changedTracks(prev: StateDoc | null, next: StateDoc): Set<string> {
  const changed = new Set<string>()
  for (const track of Object.keys(next.tracks)) {
    const before = prev?.tracks[track]?.id ?? null
    const after = next.tracks[track]?.id ?? null
    if (before !== after && after !== null) changed.add(track)
  }
  return changed
}

export function describeLocation(a: TrackAssignment | null): string {
  if (!a || !a.location) return 'location unknown'
  const { lat, lon } = a.location
  return `${lat.toFixed(4)}, ${lon.toFixed(4)}`
}

export function mapLink(a: TrackAssignment | null): string | null {
  if (!a || !a.location) return null
  return `https://www.openstreetmap.org/?mlat=${a.location.lat}&mlon=${a.location.lon}#map=15/${a.location.lat}/${a.location.lon}`
}

export function formatAge(receivedAt: number, nowSeconds: number): string {
  const age = Math.max(0, nowSeconds - receivedAt)
  if (age < 60) return `${Math.round(age)}s ago`
  if (age < 3600) return `${Math.floor(age / 60)}m ago`
  return `${Math.floor(age / 3600)}h ago`
}
