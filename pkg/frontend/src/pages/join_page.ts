// Join page: a QR code of this server's recorder URL, generated locally.

import { createJoinQr } from '../join'

function wire() {
  const { url, svg } = createJoinQr(window.location.origin)
  const qrHost = document.getElementById('qr') as HTMLDivElement
  const urlText = document.getElementById('url') as HTMLParagraphElement
  qrHost.innerHTML = svg
  urlText.textContent = url
}

if (typeof document !== 'undefined') {
  document.addEventListener('DOMContentLoaded', wire)
}
