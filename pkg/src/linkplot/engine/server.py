"""Local HTTP transport for the engine protocol.

Binds loopback by default; all computation stays on the user's machine.
The UI bundle (when built) is served as static assets from "/".
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request
from fastapi.responses import FileResponse, JSONResponse
from fastapi.staticfiles import StaticFiles

from linkplot.engine.protocol import Engine

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 8750


def create_app(engine: Engine, static_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="linkplot", docs_url=None, redoc_url=None)

    @app.post("/api/message")
    async def api_message(request: Request):
        try:
            doc = await request.json()
        except Exception as e:
            return JSONResponse(
                {"kind": "error", "code": "bad_request",
                 "message": f"not a JSON document: {e}"}
            )
        return JSONResponse(engine.handle(doc))

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok"}

    static = Path(static_dir) if static_dir else None
    if static and static.is_dir():
        index = static / "index.html"

        @app.get("/")
        async def root():
            return FileResponse(index)

        app.mount("/", StaticFiles(directory=str(static)), name="static")
    else:

        @app.get("/")
        async def root_placeholder():
            return JSONResponse(
                {"status": "engine running", "ui": "not bundled",
                 "api": "/api/message"}
            )

    return app


def serve(engine: Engine, host: str = DEFAULT_HOST, port: int = DEFAULT_PORT,
          static_dir: str | None = None):
    import uvicorn

    uvicorn.run(create_app(engine, static_dir), host=host, port=port)
