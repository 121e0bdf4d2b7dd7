"""HTTP interface: exercises, proof checking, hints and generation.

The JSON shapes served here are the stable wire format; clients should
depend on them rather than on the Python API.
"""
from __future__ import annotations

from pathlib import Path
from typing import Dict, List, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import generator
from .docmodel import Exercise
from .service import CheckOptions, check_text, hints, load_corpus


class CheckRequest(BaseModel):
    exercise_id: str
    text: str
    goal_check: Optional[bool] = None
    want_fallacies: bool = True
    tier: Optional[str] = None


class GenerateRequest(BaseModel):
    family: str
    seed: int = 0
    bounds: Dict[str, int] = Field(default_factory=dict)


def _summary(ex: Exercise) -> dict:
    return {"id": ex.id, "nat": ex.nat, "field": ex.field, "tier": ex.tier,
            "goal_check": ex.goal_check}


def create_app(corpus_dir: Optional[Path] = None) -> FastAPI:
    app = FastAPI(title="proof checking service", version="1.0")
    corpus = load_corpus(corpus_dir)

    def _exercise(exercise_id: str) -> Exercise:
        ex = corpus.get(exercise_id)
        if ex is None:
            raise HTTPException(status_code=404,
                                detail=f"no exercise {exercise_id!r}")
        return ex

    @app.get("/exercises")
    def list_exercises() -> List[dict]:
        return [_summary(ex) for _, ex in sorted(corpus.items())]

    @app.get("/exercises/{exercise_id}")
    def get_exercise(exercise_id: str) -> dict:
        return _exercise(exercise_id).to_json()

    @app.get("/exercises/{exercise_id}/hints")
    def get_hints(exercise_id: str) -> List[dict]:
        ex = _exercise(exercise_id)
        return [{"kind": h.kind, "text": h.text} for h in hints(ex)]

    @app.post("/check")
    def check(req: CheckRequest) -> dict:
        ex = _exercise(req.exercise_id)
        options = CheckOptions(goal_check=req.goal_check,
                               want_fallacies=req.want_fallacies,
                               tier=req.tier)
        try:
            report = check_text(ex, req.text, options)
        except KeyError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return report.to_json()

    @app.post("/generate")
    def generate(req: GenerateRequest) -> dict:
        try:
            ex = generator.generate(req.family, req.seed, req.bounds)
        except generator.GenerationError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return ex.to_json()

    @app.get("/families")
    def families() -> List[str]:
        return list(generator.families())

    return app
