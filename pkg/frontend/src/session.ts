// Recorder session state machine. Kept free of DOM and network so the
// transition rules are testable on their own.

export type SessionState = 'idle' | 'recording' | 'uploading' | 'classified' | 'failed'

export interface LastResult {
  label: string
  instrument: string
}

const FORWARD: Record<SessionState, SessionState[]> = {
  idle: ['recording', 'failed'],
  recording: ['uploading', 'failed'],
  uploading: ['classified', 'failed'],
  classified: ['idle'],
  failed: ['idle'],
}

export class RecorderSession {
  state: SessionState = 'idle'
  /** live input meter, 0..1 */
  level = 0
  lastResult: LastResult | null = null
  error: string | null = null
  geoConsent = false
  coordinates: { lat: number; lon: number } | null = null

  private move(next: SessionState) {
    if (!FORWARD[this.state].includes(next)) {
      throw new Error(`illegal transition ${this.state} -> ${next}`)
    }
    this.state = next
  }

  startRecording() {
    this.move('recording')
    this.error = null
    this.level = 0
  }

  startUpload() {
    this.move('uploading')
    this.level = 0
  }

  classified(result: LastResult) {
    this.move('classified')
    this.lastResult = result
  }

  fail(message: string) {
    this.move('failed')
    this.error = message
    this.level = 0
  }

  reset() {
    this.move('idle')
    this.level = 0
  }

  grantLocation(lat: number, lon: number) {
    this.geoConsent = true
    this.coordinates = { lat, lon }
  }
}
