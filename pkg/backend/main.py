"""
FastAPI service exposing the solver commands over HTTP
"""

import logging
import os
from datetime import datetime
from typing import Any

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware

from mst_fortify.commands import CommandFailure, default_collection
from mst_fortify.records import ResultRecord, SolveRequest

logger = logging.getLogger(__name__)

app = FastAPI(
    title="MST Fortify API",
    description="Budgeted and targeted lifting of minimum spanning tree weight",
    version="1.0.0",
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=[
        origin.strip()
        for origin in os.getenv("MST_FORTIFY_CORS_ORIGINS", "*").split(",")
        if origin.strip()
    ],
    allow_credentials=True,
    allow_methods=["*"],
    allow_headers=["*"],
)

collection = default_collection()


@app.get("/")
async def root():
    return {"message": "MST Fortify API"}


@app.get("/health")
async def health_check():
    return {"status": "healthy", "timestamp": datetime.now()}


@app.get("/solvers")
async def list_solvers() -> list[dict[str, Any]]:
    return collection.to_params()


@app.post("/solve/{name}", response_model=ResultRecord, response_model_exclude_none=True)
async def solve(name: str, request: SolveRequest):
    if name not in collection.command_map:
        raise HTTPException(status_code=404, detail=f"Solver {name!r} not found")
    result = await collection.run(name=name, request=request)
    if isinstance(result, CommandFailure) or result.record is None:
        raise HTTPException(status_code=422, detail=result.error)
    if result.violated:
        logger.warning("%s failed its check: %s", name, result.record.check.detail)
        raise HTTPException(
            status_code=409,
            detail={
                "message": result.record.check.detail,
                "record": result.record.model_dump(mode="json", exclude_none=True),
            },
        )
    return result.record


if __name__ == "__main__":
    import uvicorn

    uvicorn.run(app, host="0.0.0.0", port=8000)
