"""Read-only query service over one layout document.

Layout computation happens offline in the CLI (annealing runs for minutes);
the service answers viewer queries from the finished document: the full
layout, egocentric channels per vertex, and shortest-hop path routes.
Responses are derived from the document alone, so the service is stateless
beyond the document it was started with. Ego channels are cached per vertex;
the cache is idempotent and safe under concurrent requests.
"""

from __future__ import annotations

from typing import Any

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from vmap.document import channel_to_dict, layout_from_document
from vmap.errors import DisconnectedError
from vmap.routing import RoutedChannel, ego_network, route_query


class ChannelModel(BaseModel):
    source: str
    target: str
    polyline: list[tuple[float, float]]
    length: float

    @classmethod
    def from_channel(cls, channel: RoutedChannel) -> "ChannelModel":
        return cls(**channel_to_dict(channel))


class EgoResponse(BaseModel):
    id: str
    degree: int
    channels: list[ChannelModel]


class PathResponse(BaseModel):
    source: str
    target: str
    hops: list[str]
    channels: list[ChannelModel]
    highlighted: list[str]


class HealthResponse(BaseModel):
    status: str
    vertices: int


def create_app(document: dict[str, Any]) -> FastAPI:
    graph, _rects, network = layout_from_document(document)
    app = FastAPI(title="vmap layout service")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["GET"],
        allow_headers=["*"],
    )
    ego_cache: dict[str, list[RoutedChannel]] = {}
    if "ego_channels" in document:
        for vid, channels in document["ego_channels"].items():
            ego_cache[vid] = [
                RoutedChannel(
                    c["source"], c["target"],
                    tuple((float(x), float(y)) for x, y in c["polyline"]),
                    float(c["length"]),
                )
                for c in channels
            ]

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", vertices=len(document["vertices"]))

    @app.get("/layout")
    def layout() -> JSONResponse:
        return JSONResponse(document)

    @app.get("/ego/{vertex_id}", response_model=EgoResponse)
    def ego(vertex_id: str) -> EgoResponse:
        if vertex_id not in graph:
            raise HTTPException(status_code=404, detail=f"unknown vertex {vertex_id!r}")
        if vertex_id not in ego_cache:
            ego_cache[vertex_id] = ego_network(network, graph, vertex_id)
        channels = ego_cache[vertex_id]
        return EgoResponse(
            id=vertex_id,
            degree=graph.degree(vertex_id),
            channels=[ChannelModel.from_channel(c) for c in channels],
        )

    @app.get("/path/{source}/{target}", response_model=PathResponse)
    def path(source: str, target: str, mode: str = "hops") -> PathResponse:
        for vid in (source, target):
            if vid not in graph:
                raise HTTPException(status_code=404, detail=f"unknown vertex {vid!r}")
        if source == target:
            raise HTTPException(status_code=422, detail="endpoints must differ")
        if mode not in ("hops", "geometric"):
            raise HTTPException(status_code=422, detail=f"unknown mode {mode!r}")
        try:
            hops, channels, highlighted = route_query(network, graph, source, target, mode=mode)
        except DisconnectedError as exc:
            raise HTTPException(status_code=409, detail=str(exc)) from exc
        return PathResponse(
            source=source,
            target=target,
            hops=hops,
            channels=[ChannelModel.from_channel(c) for c in channels],
            highlighted=highlighted,
        )

    return app
