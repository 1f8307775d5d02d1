/** Shapes mirroring the layout-document schema and the service responses. */

export interface RectShape {
  x: number
  y: number
  w: number
  h: number
}

export interface VertexEntry {
  id: string
  label: string
  cluster: string
  rect: RectShape
  alpha: number
  area_proportion: number
}

export interface BridgeEntry {
  a: string
  b: string
  rect: RectShape
  axis: 'horizontal' | 'vertical'
}

export interface NetworkData {
  nodes: [number, number][]
  kinds: string[]
  edges: [number, number, number][]
  anchors: Record<string, number[]>
}

export interface Channel {
  source: string
  target: string
  polyline: [number, number][]
  length: number
}

export interface MetricsData {
  areal_error: number
  lost_edges: number
  fake_edges: number
  topological_error: number
  amended_topological_error: number
  aspect_ratio_loss: number
  total_cost: number
}

export interface LayoutDocument {
  version: number
  display: RectShape
  border_width: number
  desired_ratio: number
  vertices: VertexEntry[]
  edges: [string, string][]
  bridges: BridgeEntry[]
  network: NetworkData
  ego_channels?: Record<string, Channel[]>
  metrics: MetricsData
  render: { palette: string[]; display_px: [number, number] }
}

export interface EgoResponse {
  id: string
  degree: number
  channels: Channel[]
}

export interface PathResponse {
  source: string
  target: string
  hops: string[]
  channels: Channel[]
  highlighted: string[]
}

/** Degree of a vertex according to the document's edge list. */
export function degreeOf(doc: LayoutDocument, id: string): number {
  let count = 0
  for (const [a, b] of doc.edges) {
    if (a === id || b === id) count += 1
  }
  return count
}
