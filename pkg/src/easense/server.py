"""Websocket service: submit experiments and fetch sensitivity reports over ``/mcp``."""
import asyncio
import logging
from collections import deque
from dataclasses import dataclass, field
from datetime import datetime, timedelta
from typing import Any, Callable, Deque, Dict, Optional, Tuple

from fastapi import FastAPI, WebSocket, WebSocketDisconnect
from pydantic import BaseModel, ValidationError

from easense.config import config_from_dict
from easense.errors import ConfigError
from easense.hyperspace import PRESETS
from easense.problems import list_problems
from easense.runner import load_reports, rank_report, run_experiment
from easense.store import ExperimentHistory, ExperimentStore

logger = logging.getLogger(__name__)

HEARTBEAT_INTERVAL = 30  # seconds
IDLE_TIMEOUT = 600  # seconds; a "run" reply can take a while
MAX_REQUESTS_PER_MINUTE = 60


class CommandRequest(BaseModel):
    command: str
    params: Dict[str, Any] = {}


class CommandResponse(BaseModel):
    result: Optional[Dict[str, Any]] = None
    error: Optional[str] = None


@dataclass
class Session:
    connected_at: datetime = field(default_factory=datetime.now)
    last_seen: datetime = field(default_factory=datetime.now)
    recent: Deque[datetime] = field(default_factory=deque)
    served: int = 0

    def allow(self, now: datetime) -> bool:
        while self.recent and now - self.recent[0] >= timedelta(minutes=1):
            self.recent.popleft()
        self.recent.append(now)
        return len(self.recent) <= MAX_REQUESTS_PER_MINUTE


class SessionRegistry:
    """Open websocket sessions, their request windows and the heartbeat sweep."""

    def __init__(self):
        self.sessions: Dict[WebSocket, Session] = {}

    async def open(self, websocket: WebSocket) -> Session:
        await websocket.accept()
        session = self.sessions[websocket] = Session()
        logger.info(f"Session opened ({len(self.sessions)} active)")
        return session

    def close(self, websocket: WebSocket):
        session = self.sessions.pop(websocket, None)
        if session is not None:
            logger.info(f"Session closed after {session.served} commands")

    async def sweep(self):
        while True:
            await asyncio.sleep(HEARTBEAT_INTERVAL)
            now = datetime.now()
            for ws, session in list(self.sessions.items()):
                idle = now - session.last_seen
                try:
                    if idle > timedelta(seconds=IDLE_TIMEOUT):
                        logger.warning(f"Dropping session idle for {idle.total_seconds():.0f}s")
                        await ws.close()
                        self.close(ws)
                    elif idle >= timedelta(seconds=HEARTBEAT_INTERVAL):
                        await ws.send_json({"type": "heartbeat"})
                except Exception:
                    self.close(ws)


def _presets(params: Dict[str, Any], history: ExperimentHistory) -> Dict[str, Any]:
    return {"presets": {name: space.model_dump(mode="json") for name, space in PRESETS.items()}}


def _problems(params: Dict[str, Any], history: ExperimentHistory) -> Dict[str, Any]:
    suite = params.get("suite", "all")
    return {"suite": suite, "problems": list_problems(suite)}


def _list(params: Dict[str, Any], history: ExperimentHistory) -> Dict[str, Any]:
    return {"experiments": history.list_experiments()}


def _report(params: Dict[str, Any], history: ExperimentHistory) -> Dict[str, Any]:
    if "store" not in params:
        raise ValueError("report needs a 'store' directory")
    found = load_reports(ExperimentStore(params["store"]))
    metric, method = params.get("metric"), params.get("method")
    reports = {
        tag: aggregate for tag, (aggregate, _) in found.items()
        if (metric is None or aggregate.metric == metric) and (method is None or aggregate.method == method)
    }
    if not reports:
        raise ValueError(f"no sensitivity reports in {params['store']} for metric={metric} method={method}")
    table = rank_report(list(reports.values()))
    return {
        "reports": {tag: report.model_dump(mode="json") for tag, report in reports.items()},
        "ranking": table.model_dump(mode="json"),
    }


def _run(params: Dict[str, Any], history: ExperimentHistory) -> Dict[str, Any]:
    document = params.get("config", params)
    try:
        config = config_from_dict(document)
    except ConfigError:
        history.record(document, str(document.get("output_dir", "")), "rejected")
        raise
    try:
        result = run_experiment(config)
    except Exception as e:
        history.record(config.model_dump(mode="json"), config.output_dir, "failed", error=str(e))
        raise
    entry = history.record(config.model_dump(mode="json"), result.output_dir, "finished")
    return {
        "experiment_id": entry["id"],
        "output_dir": result.output_dir,
        "executed_cells": result.executed_cells,
        "resumed_cells": result.resumed_cells,
        "failures": result.failures,
        "ranking": result.ranking.model_dump(mode="json") if result.ranking else None,
    }


Handler = Callable[[Dict[str, Any], ExperimentHistory], Dict[str, Any]]

# (handler, runs in a worker thread)
COMMANDS: Dict[str, Tuple[Handler, bool]] = {
    "presets": (_presets, False),
    "problems": (_problems, False),
    "list": (_list, False),
    "report": (_report, False),
    "run": (_run, True),
}


async def dispatch(request: CommandRequest, history: ExperimentHistory) -> CommandResponse:
    if request.command not in COMMANDS:
        logger.error(f"Unknown command: {request.command}")
        return CommandResponse(error=f"Unknown command: {request.command}")
    handler, threaded = COMMANDS[request.command]
    logger.info(f"Processing command: {request.command}")
    try:
        if threaded:
            return CommandResponse(result=await asyncio.to_thread(handler, request.params, history))
        return CommandResponse(result=handler(request.params, history))
    except Exception as e:
        logger.error(f"Error handling {request.command}: {e}")
        return CommandResponse(error=str(e))


def create_app(history: Optional[ExperimentHistory] = None) -> FastAPI:
    """Create the FastAPI application serving experiment commands on /mcp."""
    app = FastAPI()
    registry = SessionRegistry()
    history = history or ExperimentHistory()

    @app.on_event("startup")
    async def start_sweep():
        asyncio.create_task(registry.sweep())

    @app.websocket("/mcp")
    async def commands(websocket: WebSocket):
        session = await registry.open(websocket)
        try:
            while True:
                try:
                    text = await asyncio.wait_for(websocket.receive_text(), timeout=IDLE_TIMEOUT)
                except asyncio.TimeoutError:
                    logger.warning("Session timed out waiting for a command")
                    break
                session.last_seen = datetime.now()
                if not session.allow(session.last_seen):
                    response = CommandResponse(
                        error=f"Rate limit exceeded. Maximum {MAX_REQUESTS_PER_MINUTE} requests per minute allowed.")
                else:
                    try:
                        response = await dispatch(CommandRequest.model_validate_json(text), history)
                    except ValidationError as e:
                        logger.error(f"Malformed command: {e.error_count()} errors")
                        response = CommandResponse(error=f"malformed command: {e}")
                session.served += 1
                await websocket.send_text(response.model_dump_json())
        except WebSocketDisconnect:
            logger.info("Client disconnected")
        finally:
            registry.close(websocket)

    return app


def main(host: str = "127.0.0.1", port: int = 8000, log_level: str = "info"):
    """Serve the experiment service with uvicorn."""
    import uvicorn

    logger.info(f"Starting easense service on {host}:{port}")
    uvicorn.run("easense.server:create_app", host=host, port=port, factory=True, log_level=log_level)
