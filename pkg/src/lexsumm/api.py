"""HTTP front door: case browsing, ingestion, and on-demand summarization.

The API is a pure facade over the store and the library pipeline; a summary
response carries exactly what summarize_document produced for the same
inputs. Every error body has the shape {"error": code, "message": text}.
"""

from __future__ import annotations

from datetime import date

from fastapi import FastAPI, Query, Request
from fastapi.exceptions import RequestValidationError
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel
from starlette.exceptions import HTTPException as StarletteHTTPException

from .errors import (
    ConfigurationError,
    NotFoundError,
    StorageError,
    ValidationError,
)
from .scorer import ScoringModel
from .sections import parse_judgment
from .store import CaseMetadata, CaseStore, QueryFilter
from .summarize import (
    CaseSummary,
    SummaryConfig,
    SummaryMethod,
    resolve_config,
    summarize_document,
)
from .text import normalize_text


class CaseIn(BaseModel):
    raw_text: str
    metadata: dict


class SummarizeIn(BaseModel):
    method: str = "auto"
    ratio: float | None = None
    include_introduction: bool | None = None


def summary_response(summary: CaseSummary, cfg: SummaryConfig) -> dict:
    return {
        "case_id": summary.case_id,
        "method_used": summary.method.value,
        "quality": summary.quality,
        "sections": [
            {"kind": s.kind.label, "bullets": [b.text for b in s.bullets]}
            for s in summary.sections.values()
        ],
        "combined_text": summary.combined_text,
        "config": {"ratio": cfg.ratio, "damping": cfg.ranking.damping},
    }


def create_app(
    store: CaseStore,
    model: ScoringModel | None = None,
    cors_origins: tuple[str, ...] = ("*",),
    base_config: SummaryConfig | None = None,
) -> FastAPI:
    app = FastAPI(title="lexsumm", version="0.1.0")
    app.state.store = store
    app.state.model = model
    app.state.base_config = base_config or SummaryConfig()

    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    _register_error_handlers(app)

    @app.get("/health")
    def health() -> dict:
        return {
            "status": "ok",
            "cases": store.count(),
            "model_loaded": app.state.model is not None,
        }

    @app.get("/cases")
    def list_cases(
        subject: str | None = Query(default=None),
        jurisdiction: str | None = Query(default=None),
        date_from: str | None = Query(default=None, alias="from"),
        date_to: str | None = Query(default=None, alias="to"),
        page: int = Query(default=1),
        page_size: int = Query(default=20),
    ) -> dict:
        flt = QueryFilter(
            subject_matter=subject,
            jurisdiction=jurisdiction,
            date_from=_parse_date(date_from, "from"),
            date_to=_parse_date(date_to, "to"),
            page=page,
            page_size=page_size,
        )
        result = store.query(flt)
        return {
            "items": [
                {"id": case_id, "metadata": meta.to_dict()}
                for case_id, meta in result.items
            ],
            "total": result.total,
            "page": result.page,
        }

    @app.get("/cases/{case_id}")
    def get_case(case_id: str) -> dict:
        return store.get(case_id).to_dict()

    @app.post("/cases", status_code=201)
    def ingest_case(body: CaseIn) -> dict:
        metadata = CaseMetadata.from_dict(body.metadata)
        return {"id": store.ingest(body.raw_text, metadata)}

    @app.post("/cases/{case_id}/summary")
    def summarize_case(case_id: str, body: SummarizeIn) -> dict:
        method = SummaryMethod.from_label(body.method)
        if body.ratio is not None and not 0.0 < body.ratio <= 1.0:
            raise ValidationError("ratio must be in (0, 1]")
        if method is SummaryMethod.SUPERVISED and app.state.model is None:
            raise ConfigurationError("no scoring model is loaded")
        cfg = resolve_config(
            app.state.base_config,
            ratio=body.ratio,
            include_introduction=body.include_introduction,
        )
        document = store.get(case_id)
        parsed = parse_judgment(normalize_text(document.raw_text))
        summary = summarize_document(
            parsed, method, cfg, app.state.model, case_id=case_id
        )
        return summary_response(summary, cfg)

    return app


def _parse_date(value: str | None, name: str) -> date | None:
    if value is None or value == "":
        return None
    try:
        return date.fromisoformat(value)
    except ValueError:
        raise ValidationError(f"query parameter {name!r} is not an ISO date: {value!r}")


def _register_error_handlers(app: FastAPI) -> None:
    def _body(status: int, code: str, message: str) -> JSONResponse:
        return JSONResponse(status_code=status, content={"error": code, "message": message})

    @app.exception_handler(NotFoundError)
    def _not_found(request: Request, exc: NotFoundError) -> JSONResponse:
        return _body(404, "not_found", str(exc))

    @app.exception_handler(ValidationError)
    def _invalid(request: Request, exc: ValidationError) -> JSONResponse:
        return _body(400, "validation", str(exc))

    @app.exception_handler(ConfigurationError)
    def _conflict(request: Request, exc: ConfigurationError) -> JSONResponse:
        return _body(409, "model_not_loaded", str(exc))

    @app.exception_handler(StorageError)
    def _storage(request: Request, exc: StorageError) -> JSONResponse:
        return _body(500, "storage", str(exc))

    @app.exception_handler(RequestValidationError)
    def _bad_request(request: Request, exc: RequestValidationError) -> JSONResponse:
        return _body(400, "invalid_request", str(exc))

    @app.exception_handler(StarletteHTTPException)
    def _http_error(request: Request, exc: StarletteHTTPException) -> JSONResponse:
        code = "not_found" if exc.status_code == 404 else "http_error"
        return _body(exc.status_code, code, str(exc.detail))
