"""HTTP chat service: session lifecycle plus per-session turn-taking.

Sessions are independent and may be served concurrently, but turns within one
session are strictly serialized: a second message while one is in flight is
rejected with 409. Idle sessions are reclaimed after 30 minutes and answer
410 afterwards.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from . import dialog
from .context_tree import tree_to_dict
from .errors import ConvBrowseError, OutOfScope, PageNotFound
from .locator import PageLocator
from .nlu import DEFAULT_TEMPLATES, UtteranceTemplate
from .pages import FetchConfig

SESSION_IDLE_TTL = 30 * 60.0


@dataclass
class ServiceConfig:
    site_root: str
    listen_address: str = "127.0.0.1:8080"
    tau: Optional[float] = None
    templates: tuple[UtteranceTemplate, ...] = DEFAULT_TEMPLATES
    debug: bool = False

    def __post_init__(self) -> None:
        if self.tau is not None and not 0.0 < self.tau < 1.0:
            raise ValueError(f"tau must be in (0, 1), got {self.tau}")
        host, _, port = self.listen_address.rpartition(":")
        if not host or not port.isdigit():
            raise ValueError(f"listen address must be host:port, got {self.listen_address!r}")

    @property
    def host(self) -> str:
        return self.listen_address.rpartition(":")[0]

    @property
    def port(self) -> int:
        return int(self.listen_address.rpartition(":")[2])

    def policy(self) -> dialog.PolicyConfig:
        if self.tau is not None:
            return dialog.PolicyConfig(tau=self.tau)
        return dialog.PolicyConfig()


class SessionGone(Exception):
    pass


class SessionBusy(Exception):
    pass


@dataclass
class _Entry:
    session: dialog.Session
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_used: float = field(default_factory=time.monotonic)


class SessionRegistry:
    def __init__(self, config: ServiceConfig, idle_ttl: float = SESSION_IDLE_TTL):
        self.config = config
        self.idle_ttl = idle_ttl
        self._entries: dict[str, _Entry] = {}
        self._guard = threading.Lock()

    def open(self, path: str) -> tuple[str, dialog.BotReply]:
        locator = PageLocator(self.config.site_root, path)
        session, reply = dialog.open_session(
            locator,
            config=self.config.policy(),
            fetch=FetchConfig(),
            templates=self.config.templates,
        )
        with self._guard:
            self._entries[session.id] = _Entry(session=session)
        return session.id, reply

    def _get(self, session_id: str) -> _Entry:
        with self._guard:
            entry = self._entries.get(session_id)
            if entry is None:
                raise KeyError(session_id)
            if time.monotonic() - entry.last_used > self.idle_ttl:
                del self._entries[session_id]
                raise SessionGone(session_id)
            return entry

    def message(self, session_id: str, text: str) -> dialog.BotReply:
        entry = self._get(session_id)
        if not entry.lock.acquire(blocking=False):
            raise SessionBusy(session_id)
        try:
            reply = dialog.handle_utterance(entry.session, text)
            entry.last_used = time.monotonic()
            return reply
        finally:
            entry.lock.release()

    def context(self, session_id: str) -> dict:
        entry = self._get(session_id)
        entry.last_used = time.monotonic()
        return tree_to_dict(entry.session.tree)


class OpenSessionBody(BaseModel):
    path: str


class MessageBody(BaseModel):
    text: str


def _reply_payload(reply: dialog.BotReply, include_debug: bool) -> dict:
    payload = {"text": reply.text, "kind": reply.kind}
    if include_debug:
        payload["debug"] = {
            "intent": reply.debug.intent,
            "confidence": reply.debug.confidence,
            "bot": reply.debug.bot,
            "page": reply.debug.page,
        }
    return payload


def create_app(config: ServiceConfig, idle_ttl: float = SESSION_IDLE_TTL) -> FastAPI:
    app = FastAPI(title="convbrowse", docs_url=None, redoc_url=None)
    registry = SessionRegistry(config, idle_ttl=idle_ttl)
    app.state.registry = registry

    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"error": "malformed request body"})

    def include_debug(request: Request) -> bool:
        flag = request.query_params.get("debug", "")
        return config.debug or flag in ("1", "true", "yes")

    @app.get("/healthz")
    async def healthz():
        return {"status": "ok"}

    @app.post("/sessions", status_code=201)
    async def open_session(body: OpenSessionBody, request: Request):
        try:
            session_id, reply = registry.open(body.path)
        except PageNotFound as exc:
            return JSONResponse(status_code=404, content={"error": str(exc)})
        except (OutOfScope, ConvBrowseError) as exc:
            return JSONResponse(status_code=400, content={"error": str(exc)})
        return {"session_id": session_id, "reply": _reply_payload(reply, include_debug(request))}

    @app.post("/sessions/{session_id}/messages")
    async def post_message(session_id: str, body: MessageBody, request: Request):
        try:
            reply = registry.message(session_id, body.text)
        except KeyError:
            return JSONResponse(status_code=404, content={"error": "unknown session"})
        except SessionGone:
            return JSONResponse(status_code=410, content={"error": "session expired"})
        except SessionBusy:
            return JSONResponse(status_code=409, content={"error": "a turn is already in flight"})
        return {"reply": _reply_payload(reply, include_debug(request))}

    @app.get("/sessions/{session_id}/context")
    async def get_context(session_id: str):
        try:
            return registry.context(session_id)
        except KeyError:
            return JSONResponse(status_code=404, content={"error": "unknown session"})
        except SessionGone:
            return JSONResponse(status_code=410, content={"error": "session expired"})

    return app


def serve(config: ServiceConfig) -> None:
    """Run the service until a shutdown signal; in-flight turns complete."""
    import uvicorn

    uvicorn.run(create_app(config), host=config.host, port=config.port, log_level="warning")
