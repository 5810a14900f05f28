// Typed client for the server's HTTP API, plus the polling loop the
// recorder uses to show participants what their sound became.

export interface SubmissionStatus {
  id: string
  state: 'queued' | 'processing' | 'done' | 'rejected'
  label: string | null
  instrument: string | null
  original_midi: number | null
  confidence: number | null
  reason: string | null
}

export interface TrackAssignment {
  id: string
  label: string
  instrument: string
  original_midi: number
  confidence: number
  file_path: string
  received_at: number
  location: { lat: number; lon: number } | null
}

export interface StateDoc {
  tracks: Record<string, TrackAssignment | null>
}

export interface LabelsDoc {
  labels: string[]
  mapping: Record<string, string>
}

export type FetchLike = typeof fetch

export interface ApiOptions {
  baseUrl?: string
  fetchFn?: FetchLike
}

function resolve(opts: ApiOptions | undefined) {
  return {
    baseUrl: opts?.baseUrl ?? '',
    fetchFn: opts?.fetchFn ?? fetch,
  }
}

export async function submitRecording(
  wav: Uint8Array,
  extras?: { location?: { lat: number; lon: number }; participant?: string },
  opts?: ApiOptions,
): Promise<{ id: string; state: string }> {
  const { baseUrl, fetchFn } = resolve(opts)
  const params = new URLSearchParams()
  if (extras?.location) {
    params.set('lat', String(extras.location.lat))
    params.set('lon', String(extras.location.lon))
  }
  if (extras?.participant) params.set('participant', extras.participant)
  const query = params.toString()
  const res = await fetchFn(`${baseUrl}/api/recordings${query ? '?' + query : ''}`, {
    method: 'POST',
    headers: { 'content-type': 'audio/wav' },
    body: wav as BodyInit,
  })
  if (!res.ok) throw new Error(`upload failed: HTTP ${res.status}`)
  return res.json()
}

export async function getStatus(id: string, opts?: ApiOptions): Promise<SubmissionStatus> {
  const { baseUrl, fetchFn } = resolve(opts)
  const res = await fetchFn(`${baseUrl}/api/recordings/${id}`)
  if (!res.ok) throw new Error(`status failed: HTTP ${res.status}`)
  return res.json()
}

export async function getState(opts?: ApiOptions): Promise<StateDoc> {
  const { baseUrl, fetchFn } = resolve(opts)
  const res = await fetchFn(`${baseUrl}/api/state`)
  if (!res.ok) throw new Error(`state failed: HTTP ${res.status}`)
  return res.json()
}

const REJECTION_TEXT: Record<string, string> = {
  no_signal: 'The recording was silent, so there was nothing to classify. Get closer to the sound and try again.',
  too_short: 'Too little audible sound was left after trimming silence. Record at least half a second of sound.',
  malformed_audio: 'The upload was not readable audio. Please try recording again.',
  too_large: 'The recording was too large to upload. Try a shorter one.',
}

export function explainRejection(reason: string | null): string {
  return REJECTION_TEXT[reason ?? ''] ?? `The recording was rejected (${reason ?? 'unknown reason'}).`
}

export type PollOutcome =
  | { kind: 'done'; label: string; instrument: string; text: string }
  | { kind: 'rejected'; reason: string | null; text: string }

export interface PollOptions extends ApiOptions {
  intervalMs?: number
  timeoutMs?: number
  sleep?: (ms: number) => Promise<void>
  /** consecutive fetch failures tolerated before giving up */
  maxErrors?: number
}

const defaultSleep = (ms: number) => new Promise<void>((r) => setTimeout(r, ms))

/**
 * Poll a submission until it reaches a terminal state.
 *
 * Resolves with what the UI should display; rejects on timeout (30 s) or
 * after repeated network failures, both of which the UI shows as the
 * failed state with a retry.
 */
export async function pollResult(id: string, opts?: PollOptions): Promise<PollOutcome> {
  const intervalMs = opts?.intervalMs ?? 500
  const timeoutMs = opts?.timeoutMs ?? 30_000
  const sleep = opts?.sleep ?? defaultSleep
  const maxErrors = opts?.maxErrors ?? 3

  const started = Date.now()
  let consecutiveErrors = 0
  while (Date.now() - started < timeoutMs) {
    let status: SubmissionStatus
    try {
      status = await getStatus(id, opts)
      consecutiveErrors = 0
    } catch (err) {
      consecutiveErrors += 1
      if (consecutiveErrors >= maxErrors) {
        throw new Error(`lost contact with the server while waiting: ${err}`)
      }
      await sleep(intervalMs)
      continue
    }
    if (status.state === 'done') {
      const label = status.label ?? '?'
      const instrument = status.instrument ?? '?'
      return { kind: 'done', label, instrument, text: `${label} → ${instrument} track` }
    }
    if (status.state === 'rejected') {
      return { kind: 'rejected', reason: status.reason, text: explainRejection(status.reason) }
    }
    await sleep(intervalMs)
  }
  throw new Error('timed out waiting for the classification result')
}
