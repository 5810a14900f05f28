// End to end against the real server: WAVs encoded by this frontend are
// trained on, uploaded, classified, and displayed, all through the
// server's public interfaces (CLI + HTTP). Skipped when the server
// binary is not installed (e.g. frontend-only CI).

import assert from 'node:assert/strict'
import { after, before, test } from 'node:test'
import { spawn, spawnSync, type ChildProcess } from 'node:child_process'
import { mkdtempSync, mkdirSync, writeFileSync } from 'node:fs'
import { tmpdir } from 'node:os'
import { join } from 'node:path'

import { pollResult, submitRecording } from '../src/api'
import { createJoinQr } from '../src/join'
import { encodeWav } from '../src/wav'

const SERVER_BIN = process.env.FIELDSAMPLER_BIN ?? 'fieldsampler'
const SR = 22050

const haveServer = (() => {
  const probe = spawnSync(SERVER_BIN, ['join-url'], { timeout: 20000 })
  return probe.status === 0
})()

function sine(freq: number, seconds: number, amp = 0.8): Float32Array {
  const out = new Float32Array(Math.round(seconds * SR))
  for (let i = 0; i < out.length; i++) out[i] = amp * Math.sin((2 * Math.PI * freq * i) / SR)
  return out
}

function seededNoise(seconds: number, seed: number, amp = 0.5): Float32Array {
  // mulberry32: deterministic noise without pulling in a dependency
  let a = seed >>> 0
  const rand = () => {
    a = (a + 0x6d2b79f5) | 0
    let t = Math.imul(a ^ (a >>> 15), 1 | a)
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296
  }
  const out = new Float32Array(Math.round(seconds * SR))
  for (let i = 0; i < out.length; i++) out[i] = amp * (2 * rand() - 1)
  return out
}

const port = 18000 + (process.pid % 2000)
const baseUrl = `http://127.0.0.1:${port}`
let server: ChildProcess | null = null
let workdir = ''

before(async function (this: unknown) {
  if (!haveServer) return
  workdir = mkdtempSync(join(tmpdir(), 'fieldsampler-e2e-'))

  // training WAVs produced by this frontend's own encoder
  for (const [i, freq] of [420, 440, 460].entries()) {
    const dir = join(workdir, 'dataset', 'Flute')
    mkdirSync(dir, { recursive: true })
    writeFileSync(join(dir, `${i}.wav`), encodeWav([sine(freq, 5)], SR))
  }
  for (let i = 0; i < 3; i++) {
    const dir = join(workdir, 'dataset', 'Applause')
    mkdirSync(dir, { recursive: true })
    writeFileSync(join(dir, `${i}.wav`), encodeWav([seededNoise(5, i + 1)], SR))
  }

  const trained = spawnSync(
    SERVER_BIN,
    ['train-baseline', join(workdir, 'dataset'), '--out', join(workdir, 'model.json')],
    { timeout: 120000 },
  )
  assert.equal(trained.status, 0, String(trained.stderr))

  const config = {
    bind: `127.0.0.1:${port}`,
    osc_target: '127.0.0.1:39901',
    sample_dir: join(workdir, 'samples'),
    classifier: { kind: 'baseline', model_path: join(workdir, 'model.json') },
    static_dir: join(__dirname, '..', '..', 'dist'),
  }
  writeFileSync(join(workdir, 'server.json'), JSON.stringify(config))
  server = spawn(SERVER_BIN, ['serve', '--config', join(workdir, 'server.json')], {
    stdio: ['ignore', 'pipe', 'pipe'],
  })

  const deadline = Date.now() + 30000
  while (Date.now() < deadline) {
    try {
      const res = await fetch(`${baseUrl}/api/labels`)
      if (res.ok) return
    } catch {
      /* not up yet */
    }
    await new Promise((r) => setTimeout(r, 150))
  }
  throw new Error('server never came up')
})

after(() => {
  server?.kill()
})

test('recorded tone uploads, classifies, and displays label → instrument', { skip: !haveServer }, async () => {
  const wav = encodeWav([sine(440, 5)], SR)
  const { id, state } = await submitRecording(wav, {}, { baseUrl })
  assert.equal(state, 'queued')

  const outcome = await pollResult(id, { baseUrl })
  assert.equal(outcome.kind, 'done')
  assert.equal(outcome.text, 'Flute → Wind track')
})

test('silent recording displays the no_signal explanation', { skip: !haveServer }, async () => {
  const wav = encodeWav([new Float32Array(2 * SR)], SR)
  const { id } = await submitRecording(wav, {}, { baseUrl })
  const outcome = await pollResult(id, { baseUrl })
  assert.equal(outcome.kind, 'rejected')
  assert.equal(outcome.kind === 'rejected' && outcome.reason, 'no_signal')
  assert.match(outcome.text, /silent/)
})

test('geolocated upload lands on the performer state', { skip: !haveServer }, async () => {
  const wav = encodeWav([sine(452, 5)], SR)
  const { id } = await submitRecording(wav, { location: { lat: 35.39, lon: 139.43 } }, { baseUrl })
  await pollResult(id, { baseUrl })
  const state = await (await fetch(`${baseUrl}/api/state`)).json()
  assert.equal(state.tracks.Wind.id, id)
  assert.ok(Math.abs(state.tracks.Wind.location.lat - 35.39) < 1e-6)
})

test('server serves the built UI at / and /join', { skip: !haveServer }, async () => {
  const index = await (await fetch(`${baseUrl}/`)).text()
  assert.match(index, /recorder_page\.js/)
  const joinPage = await (await fetch(`${baseUrl}/join`)).text()
  assert.match(joinPage, /join_page\.js/)
})

test('join QR at the live origin decodes to the recorder URL', { skip: !haveServer }, () => {
  const qr = createJoinQr(baseUrl)
  assert.equal(qr.url, `${baseUrl}/`)
  // full matrix-level decode is covered in join.test.ts; here we pin the
  // payload against the real origin the server is actually bound to
  assert.ok(qr.moduleCount >= 21)
})
