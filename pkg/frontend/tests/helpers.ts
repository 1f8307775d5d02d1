/** Test helpers: fixture loading and a fetch stub that replays captured
 * service responses byte-for-byte. */

import { readFileSync } from 'node:fs'
import { ServiceClient } from '../src/client.js'
import type { Channel, EgoResponse, LayoutDocument } from '../src/types.js'

export interface PathFixture {
  status: number
  body: unknown
}

export interface FixtureSet {
  document: LayoutDocument
  ego: Record<string, EgoResponse>
  paths: Record<string, PathFixture>
}

export function loadFixtures(stem: string): FixtureSet {
  const read = (name: string) =>
    JSON.parse(
      readFileSync(new URL(`./fixtures/${stem}-${name}.json`, import.meta.url), 'utf8'),
    )
  return { document: read('document'), ego: read('ego'), paths: read('paths') }
}

/** ServiceClient wired to a fetch stub that serves the captured responses. */
export function fixtureClient(fixtures: FixtureSet): ServiceClient {
  const fetchStub = async (url: string) => {
    const respond = (status: number, body: unknown) => ({
      ok: status >= 200 && status < 300,
      status,
      json: async () => body,
    })
    const egoMatch = url.match(/\/ego\/([^/]+)$/)
    if (egoMatch) {
      const id = decodeURIComponent(egoMatch[1]!)
      const body = fixtures.ego[id]
      return body ? respond(200, body) : respond(404, { detail: `unknown vertex '${id}'` })
    }
    const pathMatch = url.match(/\/path\/([^/]+)\/([^/]+)$/)
    if (pathMatch) {
      const a = decodeURIComponent(pathMatch[1]!)
      const b = decodeURIComponent(pathMatch[2]!)
      const hit = fixtures.paths[`${a}|${b}`] ?? fixtures.paths[`${b}|${a}`]
      if (!hit) {
        const known = (id: string) => fixtures.document.vertices.some((v) => v.id === id)
        if (!known(a) || !known(b)) return respond(404, { detail: 'unknown vertex' })
        throw new Error(`no fixture for path ${a}|${b}`)
      }
      return respond(hit.status, hit.body)
    }
    if (url.endsWith('/layout')) return respond(200, fixtures.document)
    return respond(404, { detail: `no route for ${url}` })
  }
  return new ServiceClient('http://fixtures', fetchStub)
}

/** Deep-freeze so any accidental mutation of the document throws. */
export function deepFreeze<T>(value: T): T {
  if (value && typeof value === 'object') {
    for (const key of Object.keys(value as object)) {
      deepFreeze((value as Record<string, unknown>)[key])
    }
    Object.freeze(value)
  }
  return value
}

export function channelsJson(channels: Channel[]): string {
  return JSON.stringify(channels)
}
