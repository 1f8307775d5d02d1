/** Pure scene construction from a layout document.
 *
 * The scene is plain data (no DOM): a black backdrop, bridge halves painted
 * in their rectangles' colors, cluster-colored vertex rects with white
 * outlines, shrink-to-fit labels, and legend entries. Rendering to SVG text
 * happens in svg.ts; nothing here mutates the document.
 */

import type { BridgeEntry, LayoutDocument, RectShape } from './types.js'

export interface SceneRect {
  id: string
  rect: RectShape
  fill: string
  strokeWidth: number
}

export interface SceneLabel {
  id: string
  text: string
  x: number
  y: number
  /** font size in layout units */
  size: number
}

export interface BridgeHalf {
  rect: RectShape
  fill: string
}

export interface LegendEntry {
  cluster: string
  color: string
}

export interface Scene {
  backdrop: RectShape
  bridgeHalves: BridgeHalf[]
  rects: SceneRect[]
  labels: SceneLabel[]
  legend: LegendEntry[]
  outlineWidth: number
}

export const LABEL_MAX_PX = 24
export const LABEL_MIN_PX = 6
const LABEL_FILL_FRACTION = 0.9
const GLYPH_ASPECT = 0.6

export function clusterOrder(doc: LayoutDocument): string[] {
  const seen: string[] = []
  for (const v of doc.vertices) {
    if (!seen.includes(v.cluster)) seen.push(v.cluster)
  }
  return seen
}

/** Palette color for a cluster; beyond the palette length, darkened cycles. */
export function clusterColor(doc: LayoutDocument, cluster: string): string {
  const order = clusterOrder(doc)
  const palette = doc.render.palette
  const index = order.indexOf(cluster)
  if (index < 0) throw new Error(`unknown cluster ${cluster}`)
  const base = palette[index % palette.length]!
  const rounds = Math.floor(index / palette.length)
  if (rounds === 0) return base
  const factor = 0.75 ** rounds
  const darken = (hex: string) =>
    Math.floor(parseInt(hex, 16) * factor)
      .toString(16)
      .padStart(2, '0')
  return `#${darken(base.slice(1, 3))}${darken(base.slice(3, 5))}${darken(base.slice(5, 7))}`
}

export function vertexColor(doc: LayoutDocument, id: string): string {
  const vertex = doc.vertices.find((v) => v.id === id)
  if (!vertex) throw new Error(`unknown vertex ${id}`)
  return clusterColor(doc, vertex.cluster)
}

/** Largest font size in [6, 24] px whose estimated width fits 90% of the
 * rect; null hides the label. Mirrors the exporter's sizing rule. */
export function fitLabelPx(label: string, rectWidthPx: number): number | null {
  if (!label) return null
  const budget = LABEL_FILL_FRACTION * rectWidthPx
  const fits = (size: number) => GLYPH_ASPECT * size * label.length <= budget
  if (!fits(LABEL_MIN_PX)) return null
  let lo = LABEL_MIN_PX
  let hi = LABEL_MAX_PX
  for (let i = 0; i < 20; i += 1) {
    const mid = (lo + hi) / 2
    if (fits(mid)) lo = mid
    else hi = mid
  }
  return lo
}

function bridgeHalves(doc: LayoutDocument, bridge: BridgeEntry): [BridgeHalf, BridgeHalf] {
  const rect = bridge.rect
  const rectOf = (id: string) => doc.vertices.find((v) => v.id === id)!.rect
  const colorA = vertexColor(doc, bridge.a)
  const colorB = vertexColor(doc, bridge.b)
  if (bridge.axis === 'horizontal') {
    const half = rect.w / 2
    const [first, second] =
      rectOf(bridge.a).x <= rectOf(bridge.b).x ? [colorA, colorB] : [colorB, colorA]
    return [
      { rect: { x: rect.x, y: rect.y, w: half, h: rect.h }, fill: first },
      { rect: { x: rect.x + half, y: rect.y, w: half, h: rect.h }, fill: second },
    ]
  }
  const half = rect.h / 2
  const [first, second] =
    rectOf(bridge.a).y <= rectOf(bridge.b).y ? [colorA, colorB] : [colorB, colorA]
  return [
    { rect: { x: rect.x, y: rect.y, w: rect.w, h: half }, fill: first },
    { rect: { x: rect.x, y: rect.y + half, w: rect.w, h: half }, fill: second },
  ]
}

export function buildScene(doc: LayoutDocument): Scene {
  const pxPerUnit = doc.render.display_px[0] / doc.display.w
  const outlineWidth = 0.25 * doc.border_width

  const halves: BridgeHalf[] = []
  for (const bridge of doc.bridges) {
    const [a, b] = bridgeHalves(doc, bridge)
    halves.push(a, b)
  }

  const labels: SceneLabel[] = []
  for (const v of doc.vertices) {
    const sizePx = fitLabelPx(v.label, v.rect.w * pxPerUnit)
    if (sizePx === null) continue
    const sizeUnits = sizePx / pxPerUnit
    if (sizeUnits > v.rect.h) continue
    labels.push({
      id: v.id,
      text: v.label,
      x: v.rect.x + v.rect.w / 2,
      y: v.rect.y + v.rect.h / 2,
      size: sizeUnits,
    })
  }

  return {
    backdrop: doc.display,
    bridgeHalves: halves,
    rects: doc.vertices.map((v) => ({
      id: v.id,
      rect: v.rect,
      fill: clusterColor(doc, v.cluster),
      strokeWidth: outlineWidth,
    })),
    labels,
    legend: clusterOrder(doc).map((cluster) => ({
      cluster,
      color: clusterColor(doc, cluster),
    })),
    outlineWidth,
  }
}

/** Vertex whose rect contains the layout-space point, if any. */
export function hitTest(doc: LayoutDocument, x: number, y: number): string | null {
  for (const v of doc.vertices) {
    const r = v.rect
    if (x >= r.x && x <= r.x + r.w && y >= r.y && y <= r.y + r.h) return v.id
  }
  return null
}
