/** Scene + overlay to SVG markup. Channel polylines are written verbatim
 * from the served geometry (points joined, no transformation). */

import type { Camera } from './camera.js'
import { viewBox } from './camera.js'
import type { Scene } from './scene.js'
import type { Channel, LayoutDocument, RectShape } from './types.js'

export const CHANNEL_COLOR = '#e31a1c'
const HIGHLIGHT_STROKE_FACTOR = 3
const NUM = (v: number) => String(v)

function rectEl(rect: RectShape, fill: string, extra = ''): string {
  return (
    `<rect x="${NUM(rect.x)}" y="${NUM(rect.y)}" width="${NUM(rect.w)}" ` +
    `height="${NUM(rect.h)}" fill="${fill}"${extra}/>`
  )
}

function escapeText(text: string): string {
  return text
    .replaceAll('&', '&amp;')
    .replaceAll('<', '&lt;')
    .replaceAll('>', '&gt;')
    .replaceAll('"', '&quot;')
}

export function channelPoints(channel: Channel): string {
  return channel.polyline.map(([x, y]) => `${NUM(x)},${NUM(y)}`).join(' ')
}

export interface OverlayState {
  channels: Channel[]
  highlighted: string[]
}

export function renderSvg(
  doc: LayoutDocument,
  scene: Scene,
  camera: Camera,
  overlay: OverlayState | null,
  hover: string | null,
  selection: string[],
): string {
  const box = viewBox(camera, doc.display)
  const [pxW, pxH] = doc.render.display_px
  const emphasized = new Set<string>(selection)
  if (hover) emphasized.add(hover)
  for (const id of overlay?.highlighted ?? []) emphasized.add(id)

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${NUM(pxW)}" height="${NUM(pxH)}" ` +
      `viewBox="${NUM(box.x)} ${NUM(box.y)} ${NUM(box.w)} ${NUM(box.h)}">`,
    rectEl(scene.backdrop, '#000000'),
  ]
  for (const half of scene.bridgeHalves) parts.push(rectEl(half.rect, half.fill))
  for (const item of scene.rects) {
    const width = emphasized.has(item.id)
      ? item.strokeWidth * HIGHLIGHT_STROKE_FACTOR
      : item.strokeWidth
    parts.push(
      rectEl(
        item.rect,
        item.fill,
        ` stroke="#ffffff" stroke-width="${NUM(width)}" data-id="${escapeText(item.id)}"`,
      ),
    )
  }
  for (const channel of overlay?.channels ?? []) {
    parts.push(
      `<polyline points="${channelPoints(channel)}" fill="none" ` +
        `stroke="${CHANNEL_COLOR}" stroke-width="${NUM(doc.border_width)}" ` +
        `stroke-linecap="round" stroke-linejoin="round"/>`,
    )
  }
  for (const label of scene.labels) {
    parts.push(
      `<text x="${NUM(label.x)}" y="${NUM(label.y)}" font-size="${NUM(label.size)}" ` +
        `font-family="sans-serif" text-anchor="middle" dominant-baseline="middle">` +
        `${escapeText(label.text)}</text>`,
    )
  }
  parts.push('</svg>')
  return parts.join('\n')
}
