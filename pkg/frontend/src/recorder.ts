// Microphone capture. Collects mono Float32 chunks from a
// ScriptProcessorNode (deprecated but still the most portable way to get
// raw samples without shipping a worklet file) and reports input levels.

import { peakLevel } from './wav'

export class MicRecorder {
  private stream: MediaStream | null = null
  private context: AudioContext | null = null
  private processor: ScriptProcessorNode | null = null
  private chunks: Float32Array[] = []
  sampleRate = 0

  constructor(private onLevel: (level: number) => void = () => {}) {}

  async start(): Promise<void> {
    this.stream = await navigator.mediaDevices.getUserMedia({ audio: true })
    this.context = new AudioContext()
    this.sampleRate = this.context.sampleRate
    this.chunks = []

    const source = this.context.createMediaStreamSource(this.stream)
    this.processor = this.context.createScriptProcessor(4096, 1, 1)
    this.processor.onaudioprocess = (ev) => {
      const data = ev.inputBuffer.getChannelData(0)
      this.chunks.push(new Float32Array(data))
      this.onLevel(peakLevel(data))
    }
    source.connect(this.processor)
    this.processor.connect(this.context.destination)
  }

  /** Stop capture and hand back the collected chunks. */
  async stop(): Promise<{ chunks: Float32Array[]; sampleRate: number }> {
    this.processor?.disconnect()
    this.stream?.getTracks().forEach((t) => t.stop())
    await this.context?.close()
    const out = { chunks: this.chunks, sampleRate: this.sampleRate }
    this.processor = null
    this.stream = null
    this.context = null
    this.chunks = []
    return out
  }
}

/**
 * Ask for coordinates without ever blocking the recording flow: resolves
 * null when the user declines, the API is missing, or it is just slow.
 */
export function requestLocation(timeoutMs = 5000): Promise<{ lat: number; lon: number } | null> {
  return new Promise((resolve) => {
    if (!('geolocation' in navigator)) {
      resolve(null)
      return
    }
    const timer = setTimeout(() => resolve(null), timeoutMs)
    navigator.geolocation.getCurrentPosition(
      (pos) => {
        clearTimeout(timer)
        resolve({ lat: pos.coords.latitude, lon: pos.coords.longitude })
      },
      () => {
        clearTimeout(timer)
        resolve(null)
      },
      { timeout: timeoutMs },
    )
  })
}
