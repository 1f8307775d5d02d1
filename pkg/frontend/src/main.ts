/** Browser bootstrap: loads a document from the service (same origin or
 * ?service=) or a static file (?doc=), renders the scene, and wires pointer
 * interactions to the state machine. All geometry and state logic lives in
 * the imported modules; this file only touches the DOM. */

import { screenToLayout } from './camera.js'
import { ServiceClient, StaticClient } from './client.js'
import { buildScene, hitTest } from './scene.js'
import { ViewerController, ViewState } from './state.js'
import { renderSvg } from './svg.js'
import type { LayoutDocument } from './types.js'

const params = new URLSearchParams(window.location.search)

async function makeController(onChange: (s: ViewState) => void): Promise<ViewerController> {
  const docUrl = params.get('doc')
  if (docUrl) {
    const doc = (await (await fetch(docUrl)).json()) as LayoutDocument
    return new ViewerController(new StaticClient(doc), onChange)
  }
  const base = params.get('service') ?? ''
  return new ViewerController(new ServiceClient(base), onChange)
}

function render(root: HTMLElement, state: ViewState, controller: ViewerController): void {
  if (!state.doc) return
  const scene = buildScene(state.doc)
  root.innerHTML = renderSvg(
    state.doc,
    scene,
    state.camera,
    state.overlay,
    state.hover,
    state.selection,
  )

  const legend = document.getElementById('legend')!
  legend.style.display = state.legendVisible ? 'block' : 'none'
  legend.innerHTML = scene.legend
    .map(
      (entry) =>
        `<span class="swatch"><i style="background:${entry.color}"></i>${entry.cluster}</span>`,
    )
    .join('')

  const toast = document.getElementById('toast')!
  toast.textContent = state.toast ?? ''
  toast.style.display = state.toast ? 'block' : 'none'

  const hint = document.getElementById('hint')!
  hint.textContent = controller.pathQueriesAvailable
    ? 'hover: ego network • click two rectangles: shortest-hop path'
    : 'static document: hover shows precomputed ego networks; path queries need the service'
}

async function start(): Promise<void> {
  const root = document.getElementById('map')!
  const controller = await makeController((state) => render(root, state, controller))
  await controller.load()

  const layoutPoint = (event: MouseEvent): [number, number] => {
    const rect = root.getBoundingClientRect()
    return screenToLayout(
      controller.state.camera,
      controller.state.doc!,
      event.clientX - rect.left,
      event.clientY - rect.top,
      rect.width,
      rect.height,
    )
  }

  let dragging = false
  let moved = false
  let last: [number, number] | null = null

  root.addEventListener('pointerdown', (event) => {
    dragging = true
    moved = false
    last = [event.clientX, event.clientY]
  })
  window.addEventListener('pointerup', (event) => {
    if (dragging && !moved) {
      const [x, y] = layoutPoint(event)
      const id = hitTest(controller.state.doc!, x, y)
      if (id) void controller.selectVertex(id)
      else controller.clearSelection()
    }
    dragging = false
    last = null
  })
  root.addEventListener('pointermove', (event) => {
    if (dragging && last) {
      const rect = root.getBoundingClientRect()
      const scale = controller.state.doc!.display.w / controller.state.camera.scale / rect.width
      const dx = (event.clientX - last[0]) * scale
      const dy = (event.clientY - last[1]) * scale
      if (Math.abs(event.clientX - last[0]) + Math.abs(event.clientY - last[1]) > 3) moved = true
      controller.panBy(-dx, -dy)
      last = [event.clientX, event.clientY]
      return
    }
    const [x, y] = layoutPoint(event)
    const id = hitTest(controller.state.doc!, x, y)
    if (id !== controller.state.hover) void controller.hover(id)
  })
  root.addEventListener('pointerleave', () => void controller.hover(null))
  root.addEventListener('wheel', (event) => {
    event.preventDefault()
    const [x, y] = layoutPoint(event)
    controller.zoomAt(x, y, event.deltaY < 0 ? 1.2 : 1 / 1.2)
  })
  document.getElementById('legend-toggle')!.addEventListener('click', () => {
    controller.toggleLegend()
  })
}

void start()
