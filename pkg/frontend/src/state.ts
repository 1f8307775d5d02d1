/** Viewer state machine: hover and pair-selection overlays, toast, camera.
 *
 * Invariants: the selection never exceeds two ids; completing a pair clears
 * the hover; overlay channels are stored exactly as the client returned
 * them; responses landing after a newer request are discarded (request
 * tokens); the loaded document is never mutated.
 */

import type { Camera } from './camera.js'
import { initialCamera, panBy, zoomAt } from './camera.js'
import {
  DisconnectedError,
  LayoutClient,
  NotFoundError,
  PathQueriesUnavailableError,
} from './client.js'
import type { Channel, LayoutDocument } from './types.js'

export interface Overlay {
  kind: 'ego' | 'path'
  channels: Channel[]
  highlighted: string[]
}

export interface ViewState {
  doc: LayoutDocument | null
  hover: string | null
  selection: string[]
  overlay: Overlay | null
  toast: string | null
  legendVisible: boolean
  camera: Camera
}

export class ViewerController {
  readonly state: ViewState = {
    doc: null,
    hover: null,
    selection: [],
    overlay: null,
    toast: null,
    legendVisible: false,
    camera: { cx: 0, cy: 0, scale: 1 },
  }

  private hoverToken = 0
  private pathToken = 0

  constructor(
    private readonly client: LayoutClient,
    private readonly onChange: (state: ViewState) => void = () => {},
  ) {}

  async load(): Promise<void> {
    const doc = await this.client.layout()
    this.state.doc = doc
    this.state.camera = initialCamera(doc.display)
    this.emit()
  }

  /** Hover a vertex (or null to unhover). Ego overlays never replace an
   * active path overlay. */
  async hover(id: string | null): Promise<void> {
    if (!this.state.doc) return
    const token = ++this.hoverToken
    this.state.hover = id
    if (this.state.overlay?.kind === 'path') {
      this.emit()
      return
    }
    if (id === null) {
      this.state.overlay = null
      this.emit()
      return
    }
    this.emit()
    try {
      const response = await this.client.ego(id)
      if (token !== this.hoverToken) return // stale response: a newer hover won
      this.state.overlay = { kind: 'ego', channels: response.channels, highlighted: [] }
    } catch (error) {
      if (token !== this.hoverToken) return
      if (error instanceof NotFoundError) {
        this.state.overlay = null
      } else {
        throw error
      }
    }
    this.emit()
  }

  /** Click a vertex: build the <=2 selection; a completed pair triggers the
   * shortest-hop path query. */
  async selectVertex(id: string): Promise<void> {
    if (!this.state.doc) return
    const selection = this.state.selection
    if (selection.includes(id)) {
      // clicking a selected vertex deselects it
      this.state.selection = selection.filter((v) => v !== id)
      if (this.state.overlay?.kind === 'path') this.state.overlay = null
      this.state.toast = null
      this.emit()
      return
    }
    if (selection.length >= 2) {
      this.state.selection = [id]
      this.state.overlay = null
      this.state.toast = null
      this.emit()
      return
    }
    this.state.selection = [...selection, id]
    this.state.toast = null
    if (this.state.selection.length < 2) {
      this.emit()
      return
    }

    // pair completed: hover cleared, route queried
    this.state.hover = null
    const [a, b] = this.state.selection as [string, string]
    const token = ++this.pathToken
    this.emit()
    try {
      const response = await this.client.path(a, b)
      if (token !== this.pathToken) return
      this.state.overlay = {
        kind: 'path',
        channels: response.channels,
        highlighted: response.highlighted,
      }
    } catch (error) {
      if (token !== this.pathToken) return
      if (error instanceof DisconnectedError) {
        this.state.toast = `${a} and ${b} are disconnected`
        // selection kept so the user can retry or adjust
      } else if (error instanceof PathQueriesUnavailableError) {
        this.state.toast = error.message
      } else if (error instanceof NotFoundError) {
        this.state.toast = `unknown vertex in (${a}, ${b})`
        this.state.selection = []
      } else {
        throw error
      }
    }
    this.emit()
  }

  clearSelection(): void {
    this.state.selection = []
    this.state.toast = null
    if (this.state.overlay?.kind === 'path') this.state.overlay = null
    this.emit()
  }

  toggleLegend(): void {
    this.state.legendVisible = !this.state.legendVisible
    this.emit()
  }

  zoomAt(px: number, py: number, factor: number): void {
    this.state.camera = zoomAt(this.state.camera, px, py, factor)
    this.emit()
  }

  panBy(dx: number, dy: number): void {
    this.state.camera = panBy(this.state.camera, dx, dy)
    this.emit()
  }

  get pathQueriesAvailable(): boolean {
    return this.client.supportsPathQueries
  }

  private emit(): void {
    this.onChange(this.state)
  }
}
