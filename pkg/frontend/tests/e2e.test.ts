/** End-to-end sweep of the viewer contract against service responses.
 *
 * The sweep runs two ways: always against the captured fixtures (byte-true
 * recordings of the query service), and — when VMAP_SERVICE_URL points at a
 * live `vmap serve` instance of the blood layout — against the real service.
 */

import { describe, expect, it } from 'vitest'

import { LayoutClient, ServiceClient } from '../src/client.js'
import { ViewerController } from '../src/state.js'
import { degreeOf } from '../src/types.js'
import { channelsJson, fixtureClient, loadFixtures } from './helpers.js'

const blood = loadFixtures('blood')
const synthetic = loadFixtures('synthetic')

async function hoverSweep(client: LayoutClient) {
  const controller = new ViewerController(client)
  await controller.load()
  const doc = controller.state.doc!
  for (const v of doc.vertices) {
    await controller.hover(v.id)
    const overlay = controller.state.overlay!
    // channel count equals the vertex's graph degree
    expect(overlay.channels).toHaveLength(degreeOf(doc, v.id))
    // overlay geometry equals the service response byte-for-byte
    const served = await client.ego(v.id)
    expect(channelsJson(overlay.channels)).toBe(channelsJson(served.channels))
    for (const channel of overlay.channels) {
      expect(channel.source).toBe(v.id)
      expect(channel.polyline.length).toBeGreaterThanOrEqual(2)
    }
  }
  return controller
}

async function adjacentPair(client: LayoutClient) {
  const controller = new ViewerController(client)
  await controller.load()
  const doc = controller.state.doc!
  const [a, b] = doc.edges[0]!
  await controller.selectVertex(a)
  await controller.selectVertex(b)
  const overlay = controller.state.overlay!
  expect(overlay.kind).toBe('path')
  expect(overlay.channels).toHaveLength(1)
  expect(overlay.highlighted).toEqual([])
  const served = await client.path(a, b)
  expect(channelsJson(overlay.channels)).toBe(channelsJson(served.channels))
}

describe('viewer end-to-end (captured service responses)', () => {
  it('hovering every vertex yields degree-many channels, byte-equal to the service', async () => {
    await hoverSweep(fixtureClient(blood))
  })

  it('selecting an adjacent pair yields one channel', async () => {
    // O-|AB+ is the captured adjacent query; reorder edges so it comes first
    const fixtures = {
      ...blood,
      document: {
        ...blood.document,
        edges: [
          ['O-', 'AB+'] as [string, string],
          ...blood.document.edges.filter(([a, b]) => !(a === 'AB+' && b === 'O-')),
        ],
      },
    }
    await adjacentPair(fixtureClient(fixtures))
  })

  it('selecting a disconnected pair reports it and keeps the selection', async () => {
    const controller = new ViewerController(fixtureClient(synthetic))
    await controller.load()
    await controller.selectVertex('a')
    await controller.selectVertex('c')
    expect(controller.state.toast).toContain('disconnected')
    expect(controller.state.selection).toEqual(['a', 'c'])
  })
})

const liveUrl = process.env.VMAP_SERVICE_URL

describe.skipIf(!liveUrl)('viewer end-to-end (live service)', () => {
  it('hover sweep against the live layout', async () => {
    await hoverSweep(new ServiceClient(liveUrl!))
  })

  it('adjacent pair against the live layout', async () => {
    await adjacentPair(new ServiceClient(liveUrl!))
  })
})
