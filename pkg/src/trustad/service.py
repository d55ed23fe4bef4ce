"""HTTP JSON API over the catalog store.

Thin FastAPI wrapper: request bodies are validated by pydantic models, all
domain behavior lives in CatalogStore and the scoring engine.  Error shape
is {"detail": {...}} throughout, with statuses 400 (malformed input,
including unparseable documents and bad weight-profile references), 404
(unknown entity), 409 (duplicate rating) and 422 (semantically rejected
documents, missing VAT).
"""

from __future__ import annotations

import datetime as dt
import json
import re
from pathlib import Path
from typing import Callable

from fastapi import FastAPI, Request, Response
from fastapi.encoders import jsonable_encoder
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from pydantic import BaseModel

from .engine import WeightProfile, load_weight_profile, report_to_dict
from .stad import StadParseError
from .store import CatalogError, CatalogStore

_PROFILE_NAME_RE = re.compile(r"^[A-Za-z0-9_-]+$")


class RegisterRequest(BaseModel):
    document: str


class RegisterResponse(BaseModel):
    id: str
    created: bool
    report: dict


class ProviderResponse(BaseModel):
    id: str
    document: str
    registered_at: str
    profile_clicks: int
    identity_verified: bool


class TransactionRequest(BaseModel):
    customer_id: str
    date: str
    confidential: bool = False


class TransactionResponse(BaseModel):
    tx_id: str
    provider_id: str
    customer_id: str
    date: str
    confidential: bool
    verified: bool


class RatingRequest(BaseModel):
    value: int
    rater_id: str
    rater_verified: bool = False


class RatingResponse(BaseModel):
    tx_id: str
    value: int
    rater_id: str
    rater_verified: bool


class AnalyticsResponse(BaseModel):
    registered_at: str
    profile_clicks: int
    verified_transactions: int
    verified_ratings: int
    identity_verified: bool


class VatCheckResponse(BaseModel):
    vat: str
    format_valid: bool
    checked_at: str


class TransactionInfo(BaseModel):
    id: str
    date: str | None


class ReferenceEntry(BaseModel):
    customer_name: str | None
    customer_logo: str | None
    product_image: str | None
    product_description: str | None
    transaction: TransactionInfo | None


class ReferencesResponse(BaseModel):
    provider_id: str
    references: list[ReferenceEntry]


class _ProfileLookupError(Exception):
    pass


def _load_named_profile(profiles_dir: Path | None,
                        name: str | None) -> WeightProfile | None:
    """None means the built-in default weighting."""
    if name is None:
        return None
    if not _PROFILE_NAME_RE.match(name):
        raise _ProfileLookupError(f"invalid weight profile name: {name!r}")
    if profiles_dir is None:
        raise _ProfileLookupError(
            "no weight-profile directory configured on this server")
    path = profiles_dir / f"{name}.json"
    if not path.is_file():
        raise _ProfileLookupError(f"unknown weight profile: {name!r}")
    try:
        return load_weight_profile(path)
    except (ValueError, json.JSONDecodeError) as exc:
        raise _ProfileLookupError(f"invalid weight profile {name!r}: {exc}")


def create_app(store_dir: str | Path,
               profiles_dir: str | Path | None = None,
               clock: Callable[[], dt.datetime] | None = None,
               verifier=None) -> FastAPI:
    app = FastAPI(title="trustad catalog", version="0.1.0")
    store = CatalogStore(store_dir, clock=clock, verifier=verifier)
    app.state.store = store
    app.state.profiles_dir = Path(profiles_dir) if profiles_dir else None

    @app.exception_handler(CatalogError)
    def _catalog_error(request: Request, exc: CatalogError) -> JSONResponse:
        return JSONResponse(status_code=exc.http_status,
                            content={"detail": exc.payload()})

    @app.exception_handler(StadParseError)
    def _parse_error(request: Request, exc: StadParseError) -> JSONResponse:
        detail = {"error": "StadParseError"}
        detail.update(exc.to_dict())
        return JSONResponse(status_code=400, content={"detail": detail})

    @app.exception_handler(_ProfileLookupError)
    def _profile_error(request: Request,
                       exc: _ProfileLookupError) -> JSONResponse:
        return JSONResponse(
            status_code=400,
            content={"detail": {"error": "WeightProfileError",
                                "message": str(exc)}})

    @app.exception_handler(RequestValidationError)
    def _body_error(request: Request,
                    exc: RequestValidationError) -> JSONResponse:
        # malformed input is a 400 here, not the framework default 422
        return JSONResponse(status_code=400,
                            content={"detail": jsonable_encoder(exc.errors())})

    @app.post("/providers", response_model=RegisterResponse, status_code=201)
    def register(body: RegisterRequest, response: Response):
        provider_id, report, created = store.register(body.document)
        if not created:
            response.status_code = 200
        return RegisterResponse(id=provider_id, created=created,
                                report=report.to_dict())

    @app.get("/providers/{provider_id}", response_model=ProviderResponse)
    def get_provider(provider_id: str):
        record = store.get_provider(provider_id)
        return ProviderResponse(document=record.document, **record.metadata())

    @app.get("/providers/{provider_id}/score")
    def score(provider_id: str, profile: str | None = None):
        weights = _load_named_profile(app.state.profiles_dir, profile)
        report = store.score(provider_id, weights)
        return JSONResponse(content=report_to_dict(report))

    @app.get("/rank")
    def rank(profile: str | None = None):
        weights = _load_named_profile(app.state.profiles_dir, profile)
        ranked = store.rank(weights)
        return JSONResponse(content={
            "profile": weights.name if weights else "default",
            "ranking": [
                {
                    "catalog_id": catalog_id,
                    "provider_id": report.provider_id,
                    "aggregate": round(report.aggregate, 4),
                }
                for catalog_id, report in ranked
            ],
        })

    @app.post("/providers/{provider_id}/transactions",
              response_model=TransactionResponse, status_code=201)
    def record_transaction(provider_id: str, body: TransactionRequest):
        tx = store.record_transaction(provider_id, body.customer_id,
                                      body.date, body.confidential)
        return TransactionResponse(**tx.to_dict())

    @app.post("/transactions/{tx_id}/verify",
              response_model=TransactionResponse)
    def verify_transaction(tx_id: str):
        return TransactionResponse(**store.verify_transaction(tx_id).to_dict())

    @app.post("/transactions/{tx_id}/rating",
              response_model=RatingResponse, status_code=201)
    def record_rating(tx_id: str, body: RatingRequest):
        rating = store.record_rating(tx_id, body.value, body.rater_id,
                                     body.rater_verified)
        return RatingResponse(**rating.to_dict())

    @app.get("/providers/{provider_id}/references",
             response_model=ReferencesResponse)
    def references(provider_id: str):
        return ReferencesResponse(provider_id=provider_id,
                                  references=store.references(provider_id))

    @app.get("/providers/{provider_id}/analytics",
             response_model=AnalyticsResponse)
    def analytics(provider_id: str):
        snapshot = store.analytics(provider_id)
        return AnalyticsResponse(
            registered_at=snapshot.registered_at.isoformat(),
            profile_clicks=snapshot.profile_clicks,
            verified_transactions=snapshot.verified_transactions,
            verified_ratings=snapshot.verified_ratings,
            identity_verified=snapshot.identity_verified,
        )

    @app.post("/providers/{provider_id}/verify-vat",
              response_model=VatCheckResponse)
    def verify_vat(provider_id: str):
        return VatCheckResponse(**store.verify_vat(provider_id).to_dict())

    return app
