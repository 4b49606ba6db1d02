"""Batch reward and dataset-sampling service.

Three JSON endpoints under /v1: score a batch of generations against golds
(inline or resolved from a loaded dataset), stream one epoch of samples
through a named cursor, and a health summary. Scoring is stateless and
bit-identical to the in-process functions; cursors live in memory for the
service lifetime and advance atomically, with an optional replay token so
a retried request re-reads the batch it already received instead of
advancing twice.
"""

from __future__ import annotations

import os
import threading
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field

from . import __version__, dataset_io
from .model import AnswerSet, Sample
from .scoring import REWARD_KINDS, reward_for, summarize

DEFAULT_BATCH_LIMIT = 4096
BIND_ENV = "SYNTHQA_BIND"
BATCH_LIMIT_ENV = "SYNTHQA_BATCH_LIMIT"


class ScoreItem(BaseModel):
    sample_id: str
    generation: str
    gold: Optional[str | list[str]] = None


class ScoreRequest(BaseModel):
    reward_kind: str
    items: list[ScoreItem]
    dataset: Optional[str] = None


class SampleRequest(BaseModel):
    cursor_id: str
    batch_size: int = Field(gt=0)
    dataset: Optional[str] = None  # creates the cursor when it does not exist
    epoch_seed: int = 0
    replay_token: Optional[str] = None


class _Cursor:
    def __init__(self, dataset: str, order: list[Sample], epoch_seed: int) -> None:
        self.dataset = dataset
        self.order = order
        self.epoch_seed = epoch_seed
        self.position = 0
        self.lock = threading.Lock()
        self.last_token: Optional[str] = None
        self.last_response: Optional[dict] = None


def batch_limit_from_env(default: int = DEFAULT_BATCH_LIMIT) -> int:
    raw = os.environ.get(BATCH_LIMIT_ENV)
    return int(raw) if raw else default


def create_app(
    datasets: Optional[dict[str, list[Sample]]] = None,
    batch_limit: Optional[int] = None,
) -> FastAPI:
    app = FastAPI(title="synthqa reward service", version=__version__)
    app.state.datasets = dict(datasets or {})
    app.state.by_id = {
        name: {s.id: s for s in samples} for name, samples in app.state.datasets.items()
    }
    app.state.batch_limit = batch_limit if batch_limit is not None else batch_limit_from_env()
    app.state.cursors = {}
    app.state.cursors_lock = threading.Lock()

    @app.exception_handler(RequestValidationError)
    async def malformed_body(request: Request, exc: RequestValidationError):
        return JSONResponse(status_code=400, content={"detail": exc.errors()})

    def _resolve_gold(req: ScoreRequest, item: ScoreItem) -> Optional[AnswerSet]:
        if item.gold is not None:
            if isinstance(item.gold, str):
                return AnswerSet.of(item.gold)
            return AnswerSet.of(*item.gold)
        names = [req.dataset] if req.dataset else sorted(app.state.by_id)
        for name in names:
            sample = app.state.by_id.get(name, {}).get(item.sample_id)
            if sample is not None:
                return sample.gold
        return None

    @app.post("/v1/score")
    async def score(req: ScoreRequest):
        if req.reward_kind not in REWARD_KINDS:
            return JSONResponse(status_code=400, content={"detail": f"unknown reward_kind {req.reward_kind!r}"})
        if not req.items:
            return JSONResponse(status_code=400, content={"detail": "items must be non-empty"})
        if len(req.items) > app.state.batch_limit:
            return JSONResponse(
                status_code=413,
                content={"detail": f"batch of {len(req.items)} exceeds limit {app.state.batch_limit}"},
            )
        golds: list[AnswerSet] = []
        missing: list[str] = []
        for item in req.items:
            gold = _resolve_gold(req, item)
            if gold is None:
                missing.append(item.sample_id)
            else:
                golds.append(gold)
        if missing:
            return JSONResponse(status_code=404, content={"detail": {"unknown_sample_ids": missing}})
        rewards = [
            reward_for(req.reward_kind, item.generation, gold)[1]
            for item, gold in zip(req.items, golds)
        ]
        agg = summarize(rewards)
        return {
            "rewards": rewards,
            "aggregate": {"mean": agg.mean, "stderr": agg.standard_error, "n": agg.n},
        }

    @app.post("/v1/sample")
    async def sample(req: SampleRequest):
        with app.state.cursors_lock:
            cursor = app.state.cursors.get(req.cursor_id)
            if cursor is None:
                if req.dataset is None:
                    return JSONResponse(status_code=404, content={"detail": f"unknown cursor {req.cursor_id!r}"})
                samples = app.state.datasets.get(req.dataset)
                if samples is None:
                    return JSONResponse(status_code=404, content={"detail": f"unknown dataset {req.dataset!r}"})
                order = dataset_io.shuffle_and_cap(samples, None, req.epoch_seed)
                cursor = _Cursor(req.dataset, order, req.epoch_seed)
                app.state.cursors[req.cursor_id] = cursor

        with cursor.lock:
            if req.replay_token is not None and req.replay_token == cursor.last_token:
                return cursor.last_response
            batch = cursor.order[cursor.position : cursor.position + req.batch_size]
            cursor.position += len(batch)
            response = {
                "items": [{"sample_id": s.id, "prompt": s.prompt} for s in batch],
                "exhausted": cursor.position >= len(cursor.order),
            }
            cursor.last_token = req.replay_token
            cursor.last_response = response
            return response

    @app.get("/v1/health")
    async def health():
        return {
            "status": "ok",
            "datasets": [
                {"name": name, "size": len(samples)}
                for name, samples in sorted(app.state.datasets.items())
            ],
            "version": __version__,
        }

    return app


def load_datasets(paths: dict[str, str]) -> dict[str, list[Sample]]:
    return {name: dataset_io.read_samples(path) for name, path in paths.items()}
