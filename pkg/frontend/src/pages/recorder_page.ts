// Participant recorder page: hold-to-record, upload, watch the verdict.

import { explainRejection, pollResult, submitRecording } from '../api'
import { MicRecorder, requestLocation } from '../recorder'
import { RecorderSession } from '../session'
import { encodeWav } from '../wav'

function wire() {
  const session = new RecorderSession()
  const button = document.getElementById('record') as HTMLButtonElement
  const meter = document.getElementById('meter-fill') as HTMLDivElement
  const status = document.getElementById('status') as HTMLParagraphElement
  const result = document.getElementById('result') as HTMLDivElement
  const geoNote = document.getElementById('geo-note') as HTMLParagraphElement

  const recorder = new MicRecorder((level) => {
    session.level = level
    meter.style.width = `${Math.round(level * 100)}%`
  })

  // consent is optional and asynchronous: recording never waits on this
  requestLocation().then((coords) => {
    if (coords) {
      session.grantLocation(coords.lat, coords.lon)
      geoNote.textContent = `location attached: ${coords.lat.toFixed(3)}, ${coords.lon.toFixed(3)}`
    } else {
      geoNote.textContent = 'no location attached (that is fine)'
    }
  })

  const render = () => {
    document.body.dataset.state = session.state
    switch (session.state) {
      case 'idle':
        button.textContent = 'start recording'
        status.textContent = 'record an interesting sound around you'
        break
      case 'recording':
        button.textContent = 'stop & send'
        status.textContent = 'listening…'
        break
      case 'uploading':
        button.textContent = 'sending…'
        status.textContent = 'uploading and classifying…'
        break
      case 'classified':
        button.textContent = 'record another'
        status.textContent = 'your sound is in the performance!'
        break
      case 'failed':
        button.textContent = 'try again'
        status.textContent = session.error ?? 'something went wrong'
        break
    }
    button.disabled = session.state === 'uploading'
  }

  button.addEventListener('click', async () => {
    if (session.state === 'classified' || session.state === 'failed') {
      session.reset()
      result.textContent = ''
      meter.style.width = '0%'
      render()
      return
    }
    if (session.state === 'idle') {
      try {
        await recorder.start()
        session.startRecording()
      } catch (err) {
        session.fail(`microphone permission denied (${err})`)
      }
      render()
      return
    }
    if (session.state === 'recording') {
      const { chunks, sampleRate } = await recorder.stop()
      session.startUpload()
      render()
      try {
        const wav = encodeWav(chunks, sampleRate)
        const { id } = await submitRecording(wav, {
          location: session.coordinates ?? undefined,
        })
        const outcome = await pollResult(id)
        if (outcome.kind === 'done') {
          session.classified({ label: outcome.label, instrument: outcome.instrument })
          result.textContent = outcome.text
        } else {
          session.fail(outcome.text)
          result.textContent = ''
        }
      } catch (err) {
        session.fail(err instanceof Error ? err.message : String(err))
      }
      render()
    }
  })

  render()
}

if (typeof document !== 'undefined') {
  document.addEventListener('DOMContentLoaded', wire)
}

export { explainRejection }
