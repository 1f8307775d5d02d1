/** Pan/zoom camera over the layout plane, expressed as an SVG viewBox. */

import type { LayoutDocument, RectShape } from './types.js'

export interface Camera {
  cx: number
  cy: number
  scale: number
}

export const MIN_SCALE = 0.5
export const MAX_SCALE = 64

export function initialCamera(display: RectShape): Camera {
  return { cx: display.x + display.w / 2, cy: display.y + display.h / 2, scale: 1 }
}

export function viewBox(camera: Camera, display: RectShape): RectShape {
  const w = display.w / camera.scale
  const h = display.h / camera.scale
  return { x: camera.cx - w / 2, y: camera.cy - h / 2, w, h }
}

/** Zoom by `factor` keeping the layout-space point (px, py) stationary. */
export function zoomAt(camera: Camera, px: number, py: number, factor: number): Camera {
  const scale = Math.min(MAX_SCALE, Math.max(MIN_SCALE, camera.scale * factor))
  const applied = scale / camera.scale
  return {
    cx: px + (camera.cx - px) / applied,
    cy: py + (camera.cy - py) / applied,
    scale,
  }
}

export function panBy(camera: Camera, dx: number, dy: number): Camera {
  return { cx: camera.cx + dx, cy: camera.cy + dy, scale: camera.scale }
}

/** Convert a screen pixel to layout coordinates given the rendered size. */
export function screenToLayout(
  camera: Camera,
  doc: LayoutDocument,
  pixelX: number,
  pixelY: number,
  widthPx: number,
  heightPx: number,
): [number, number] {
  const box = viewBox(camera, doc.display)
  return [box.x + (pixelX / widthPx) * box.w, box.y + (pixelY / heightPx) * box.h]
}
