// QR join page: encode this server's own recorder URL, fully client-side
// so the page keeps working with no network beyond the initial load.

import qrcode from 'qrcode-generator'

export function recorderUrl(origin: string): string {
  return origin.replace(/\/+$/, '') + '/'
}

export interface JoinQr {
  url: string
  svg: string
  moduleCount: number
  isDark: (row: number, col: number) => boolean
}

export function createJoinQr(origin: string): JoinQr {
  const url = recorderUrl(origin)
  const qr = qrcode(0, 'M') // type 0 = auto-size
  qr.addData(url)
  qr.make()
  return {
    url,
    svg: qr.createSvgTag({ cellSize: 8, margin: 16, scalable: true }),
    moduleCount: qr.getModuleCount(),
    isDark: (row, col) => qr.isDark(row, col),
  }
}
