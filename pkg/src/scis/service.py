"""Session-oriented HTTP facade over the segmentation engine.

Sessions live in memory; per-session mutations are serialized by a lock so
concurrent stroke posts never interleave partial states. Raster payloads
travel as PNG, everything else as JSON.
"""

from __future__ import annotations

import io
import threading
import time
import uuid
from dataclasses import dataclass, field

import numpy as np
from fastapi import FastAPI, Query, Request, Response
from fastapi.responses import JSONResponse
from PIL import Image, UnidentifiedImageError

from .oversegment import FhParams
from .raster import LabelMap, RasterImage
from .session import SeedingError, Session, Stroke, apply_stroke, create_session, segment
from .svm import SvmParams

DEFAULT_MAX_DIM = 4096

# default palette for overlays; class ids cycle through it
PALETTE = [
    (230, 25, 75), (60, 180, 75), (255, 225, 25), (0, 130, 200),
    (245, 130, 48), (145, 30, 180), (70, 240, 240), (240, 50, 230),
]


def class_color(class_id: int) -> tuple:
    return PALETTE[(class_id - 1) % len(PALETTE)]


@dataclass
class SessionEntry:
    session: Session
    created_at: float
    lock: threading.Lock = field(default_factory=threading.Lock)


def _png_bytes(img: Image.Image) -> bytes:
    buf = io.BytesIO()
    img.save(buf, format="PNG")
    return buf.getvalue()


def _label_png(label_map: LabelMap) -> bytes:
    return _png_bytes(Image.fromarray(label_map.labels.astype(np.uint8), mode="L"))


def _overlay_png(session: Session, label_map: LabelMap | None, alpha=0.5) -> bytes:
    base = session.image.pixels.astype(np.float64)
    out = base.copy()
    if label_map is not None:
        colors = np.array([(0, 0, 0)] + [class_color(c) for c in range(1, label_map.num_classes + 1)],
                          dtype=np.float64)
        tint = colors[label_map.labels]
        out = (1 - alpha) * base + alpha * tint
    out[session.sp.boundary_mask()] = (255, 255, 0)
    return _png_bytes(Image.fromarray(out.astype(np.uint8), mode="RGB"))


def create_app(max_dim: int = DEFAULT_MAX_DIM, idle_timeout: float | None = None) -> FastAPI:
    app = FastAPI(title="scis")
    # the annotator UI is served from a different origin during development
    from fastapi.middleware.cors import CORSMiddleware

    app.add_middleware(CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
                       allow_headers=["*"])
    sessions: dict[str, SessionEntry] = {}
    registry_lock = threading.Lock()

    def _expire():
        if idle_timeout is None:
            return
        cutoff = time.monotonic() - idle_timeout
        with registry_lock:
            for sid in [s for s, e in sessions.items() if e.created_at < cutoff]:
                del sessions[sid]

    def _get(session_id: str) -> SessionEntry | None:
        _expire()
        with registry_lock:
            return sessions.get(session_id)

    @app.post("/sessions", status_code=201)
    async def post_session(
        request: Request,
        k: float = Query(24.0),
        min_size: int = Query(20),
        smoothing_sigma: float = Query(0.8),
        c: float = Query(4.0),
        gamma: float = Query(4.0),
    ):
        body = await request.body()
        try:
            pil = Image.open(io.BytesIO(body))
            pil.load()
        except (UnidentifiedImageError, OSError, ValueError):
            return JSONResponse({"detail": "bad image"}, status_code=400)
        if pil.width > max_dim or pil.height > max_dim:
            return JSONResponse({"detail": "image too large"}, status_code=413)
        try:
            image = RasterImage(np.asarray(pil.convert("RGB"), dtype=np.uint8))
            fh = FhParams(k=k, min_size=min_size, smoothing_sigma=smoothing_sigma)
            svm = SvmParams(c=c, gamma=gamma)
        except ValueError as exc:
            return JSONResponse({"detail": str(exc)}, status_code=400)
        session = create_session(image, fh, svm)
        session_id = uuid.uuid4().hex
        with registry_lock:
            sessions[session_id] = SessionEntry(session=session, created_at=time.monotonic())
        return {
            "id": session_id,
            "width": image.width,
            "height": image.height,
            "num_superpixels": session.sp.num_superpixels,
            "num_classes": 0,
        }

    @app.post("/sessions/{session_id}/strokes")
    async def post_strokes(session_id: str, request: Request):
        entry = _get(session_id)
        if entry is None:
            return JSONResponse({"detail": "unknown session"}, status_code=404)
        try:
            payload = await request.json()
        except Exception:
            return JSONResponse({"detail": "invalid JSON"}, status_code=422)
        raw = payload.get("strokes") if isinstance(payload, dict) else None
        if not isinstance(raw, list):
            return JSONResponse({"detail": "missing strokes list"}, status_code=422)
        strokes = []
        try:
            for s in raw:
                strokes.append(Stroke(
                    class_id=int(s.get("class_id", 0)),
                    points=[(int(p[0]), int(p[1])) for p in s["points"]],
                    brush_radius=int(s.get("brush_radius", 0)),
                    erase=bool(s.get("erase", False)),
                ))
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            return JSONResponse({"detail": f"malformed stroke: {exc}"}, status_code=422)

        with entry.lock:
            session = entry.session
            width, height = session.image.width, session.image.height
            for s in strokes:
                for x, y in s.points:
                    if not (0 <= x < width and 0 <= y < height):
                        return JSONResponse(
                            {"detail": f"point ({x}, {y}) out of bounds"}, status_code=422)
            for s in strokes:
                apply_stroke(session, s)
            result = {
                "num_classes": session.seeds.num_classes,
                "changed": False,
                "segmentation_url": f"/sessions/{session_id}/segmentation",
                "error": None,
            }
            try:
                segment(session)
                result["changed"] = True
            except SeedingError as exc:
                result["error"] = str(exc)
        return result

    @app.get("/sessions/{session_id}/segmentation")
    def get_segmentation(session_id: str, format: str = Query("indexed")):
        entry = _get(session_id)
        if entry is None:
            return JSONResponse({"detail": "unknown session"}, status_code=404)
        with entry.lock:
            session = entry.session
            if session.segmentation is None:
                return JSONResponse({"detail": "no segmentation yet"}, status_code=409)
            if format == "overlay":
                body = _overlay_png(session, session.segmentation)
            elif format == "indexed":
                body = _label_png(session.segmentation)
            else:
                return JSONResponse({"detail": f"unknown format {format!r}"}, status_code=422)
        return Response(content=body, media_type="image/png")

    @app.get("/sessions/{session_id}/superpixels")
    def get_superpixels(session_id: str):
        entry = _get(session_id)
        if entry is None:
            return JSONResponse({"detail": "unknown session"}, status_code=404)
        with entry.lock:
            body = _overlay_png(entry.session, None)
        return Response(content=body, media_type="image/png")

    @app.delete("/sessions/{session_id}", status_code=204)
    def delete_session(session_id: str):
        with registry_lock:
            sessions.pop(session_id, None)
        return Response(status_code=204)

    return app
