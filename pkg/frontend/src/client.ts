/** Layout data sources: the query service, or a static document file.
 *
 * All overlay geometry comes from these clients verbatim; the viewer never
 * recomputes channels on its own.
 */

import type { Channel, EgoResponse, LayoutDocument, PathResponse } from './types.js'
import { degreeOf } from './types.js'

export class NotFoundError extends Error {}
export class DisconnectedError extends Error {}
export class PathQueriesUnavailableError extends Error {
  constructor() {
    super('path queries need the layout service; this document was loaded statically')
  }
}

export interface LayoutClient {
  readonly supportsPathQueries: boolean
  layout(): Promise<LayoutDocument>
  ego(id: string): Promise<EgoResponse>
  path(a: string, b: string): Promise<PathResponse>
}

type FetchLike = (url: string) => Promise<{
  ok: boolean
  status: number
  json(): Promise<unknown>
}>

/** Talks to the read-only query service (GET /layout, /ego/{id}, /path/{a}/{b}). */
export class ServiceClient implements LayoutClient {
  readonly supportsPathQueries = true

  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  async layout(): Promise<LayoutDocument> {
    return (await this.get('/layout')) as LayoutDocument
  }

  async ego(id: string): Promise<EgoResponse> {
    return (await this.get(`/ego/${encodeURIComponent(id)}`)) as EgoResponse
  }

  async path(a: string, b: string): Promise<PathResponse> {
    const url = `/path/${encodeURIComponent(a)}/${encodeURIComponent(b)}`
    return (await this.get(url)) as PathResponse
  }

  private async get(path: string): Promise<unknown> {
    const response = await this.fetchFn(this.baseUrl.replace(/\/$/, '') + path)
    if (response.status === 404) throw new NotFoundError(`not found: ${path}`)
    if (response.status === 409) throw new DisconnectedError('disconnected')
    if (!response.ok) throw new Error(`request failed (${response.status}): ${path}`)
    return response.json()
  }
}

/** Serves a document loaded from a file or URL (`?doc=`): ego overlays come
 * from the document's precomputed channels; path queries are unavailable. */
export class StaticClient implements LayoutClient {
  readonly supportsPathQueries = false

  constructor(private readonly doc: LayoutDocument) {}

  async layout(): Promise<LayoutDocument> {
    return this.doc
  }

  async ego(id: string): Promise<EgoResponse> {
    if (!this.doc.vertices.some((v) => v.id === id)) {
      throw new NotFoundError(`unknown vertex ${id}`)
    }
    const channels: Channel[] = this.doc.ego_channels?.[id] ?? []
    return { id, degree: degreeOf(this.doc, id), channels }
  }

  async path(): Promise<PathResponse> {
    throw new PathQueriesUnavailableError()
  }
}
