"""FastAPI application exposing the certification toolkit."""

from fastapi import FastAPI, HTTPException

from . import handlers, schemas


def create_app() -> FastAPI:
    app = FastAPI(
        title="seqrac",
        description=(
            "Sequential qubit random-access-code simulator and "
            "certification service"
        ),
    )

    @app.get("/health")
    def health():
        return {"status": "ok"}

    @app.post("/certify", response_model=schemas.CertifyResponse)
    def certify(request: schemas.CertifyRequest):
        return _run(handlers.certify, request)

    @app.post("/sweep", response_model=schemas.SweepResponse)
    def sweep(request: schemas.SweepRequest):
        return _run(handlers.sweep, request)

    @app.post("/simulate", response_model=schemas.SimulateResponse)
    def simulate(request: schemas.SimulateRequest):
        return _run(handlers.simulate, request)

    @app.post("/incompat", response_model=schemas.IncompatResponse)
    def incompat(request: schemas.IncompatRequest):
        return _run(handlers.incompat, request)

    @app.post("/tomo", response_model=schemas.TomographyResponse)
    def tomo(request: schemas.TomographyRequest):
        return _run(handlers.tomography, request)

    @app.post("/projective-bound", response_model=schemas.ProjectiveBoundResponse)
    def projective_bound(request: schemas.ProjectiveBoundRequest):
        return _run(handlers.projective, request)

    return app


def _run(handler, request):
    try:
        return handler(request)
    except ValueError as exc:
        raise HTTPException(status_code=422, detail=str(exc)) from exc


app = create_app()
