"""FastAPI surface wrapping the exact-arithmetic core.

Every long-running verification (scans, appendix checks, law battery, coset
sums) is exposed as an endpoint with a structured JSON result; the CLI is a
thin client over this app.  Errors carry a `code` used for exit statuses:
"param" (bad input), "verify" (a check failed), "truncation" (not enough
series order).
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import models as m
from .congruence import (
    GammaSearchSpec,
    PipelineError,
    congruence_scan,
    conjecture_scan,
    find_gamma,
    verify_appendix_a,
)
from .frobgen import BetaError, cpsi, cpsi3_closed, lambda_reduce
from .hecke import u_p_prime_params
from .meta import chi_eta, meta_compose, st_word
from .mk import m_k
from .numcheck import BATTERY, run_battery
from .qseries import FracQSeries, TruncationError
from .vvrep import equivalence_classes, gamma0k_matrix, rho_k_of
from .weil import WeilError, weil_rho

app = FastAPI(title="frobq", version="0.1.0", description="Exact arithmetic for generalized Frobenius partition congruences")


@app.exception_handler(TruncationError)
async def _trunc_handler(request: Request, exc: TruncationError):
    return JSONResponse(status_code=400, content={"error": str(exc), "code": "truncation"})


@app.exception_handler(PipelineError)
async def _pipeline_handler(request: Request, exc: PipelineError):
    return JSONResponse(status_code=400, content={"error": str(exc), "code": "verify"})


@app.exception_handler(ValueError)
async def _value_handler(request: Request, exc: ValueError):
    return JSONResponse(status_code=400, content={"error": str(exc), "code": "param"})


@app.exception_handler(KeyError)
async def _key_handler(request: Request, exc: KeyError):
    return JSONResponse(status_code=400, content={"error": str(exc), "code": "param"})


@app.get("/health")
def health():
    return {"status": "ok", "service": "frobq", "version": app.version}


@app.post("/cpsi/expand", response_model=m.SeriesResponse)
def cpsi_expand(req: m.CpsiRequest):
    beta = m.str_to_frac(req.beta)
    if req.closed:
        if req.k != 3:
            raise BetaError("closed eta-quotient forms exist only for k = 3")
        series = cpsi3_closed(beta, req.order)
    else:
        series = cpsi(req.k, beta, req.order)
    return {"series": m.series_to_dict(series)}


@app.post("/series/echo", response_model=m.SeriesResponse)
def series_echo(req: m.SeriesEchoRequest):
    f = FracQSeries.from_json_dict(req.series)
    return {"series": m.series_to_dict(f)}


@app.post("/rho/matrix", response_model=m.MatrixResponse)
def rho_matrix(req: m.RhoRequest):
    from .meta import MetaElement

    gamma = tuple(req.gamma)
    if req.closed:
        mat = gamma0k_matrix(req.k, gamma)
        if req.eps == -1:
            mat = mat.scalar(-1)
    else:
        mat = rho_k_of(req.k, MetaElement(gamma, req.eps))
    return {"matrix": m.matrix_to_dict(mat)}


@app.post("/weil/matrix", response_model=m.MatrixResponse)
def weil_matrix(req: m.WeilRequest):
    from .meta import MetaElement

    if req.k == 0:
        raise WeilError("k must be nonzero")
    mat = weil_rho(req.k, MetaElement(tuple(req.gamma), req.eps))
    return {"matrix": m.matrix_to_dict(mat)}


@app.post("/meta/compose", response_model=m.ElementResponse)
def meta_compose_ep(req: m.ComposeRequest):
    out = meta_compose(req.g1.to_element(), req.g2.to_element())
    return {"element": m.MetaElementModel.from_element(out)}


@app.post("/meta/word", response_model=m.WordResponse)
def meta_word(req: m.WordRequest):
    from .meta import MetaElement

    word = st_word(MetaElement(tuple(req.gamma), req.eps))
    return {"factors": [list(f) for f in word.factors], "sign": word.sign}


@app.post("/meta/chi-eta", response_model=m.CycloResponse)
def meta_chi_eta(req: m.ChiRequest):
    from .meta import MetaElement

    val = chi_eta(MetaElement(tuple(req.gamma), req.eps))
    return {"value": m.cyclo_to_dict(val)}


@app.post("/classes", response_model=m.ClassesResponse)
def classes_ep(req: m.ClassesRequest):
    classes = equivalence_classes(req.k)
    return {
        "k": req.k,
        "classes": [[m.frac_to_str(b) for b in cls] for cls in classes],
        "doubled": [[int(2 * b) for b in cls] for cls in classes],
    }


@app.post("/gamma/find", response_model=m.GammaFindResponse)
def gamma_find(req: m.GammaFindRequest):
    beta = m.str_to_frac(req.beta)
    beta2 = m.str_to_frac(req.beta2)
    spec = GammaSearchSpec(req.p, req.k, beta, beta2).resolved()
    gamma = find_gamma(spec)
    return {
        "gamma": list(gamma),
        "r": spec.r,
        "r_e": spec.r_e,
        "target_index": m.frac_to_str(lambda_reduce(req.k, beta2)),
    }


@app.post("/uprime/params", response_model=m.UprimeResponse)
def uprime_params(req: m.UprimeRequest):
    r, r_e = u_p_prime_params(req.k, m.str_to_frac(req.beta), req.p)
    return {"r": r, "r_e": r_e}


@app.post("/congruence/scan", response_model=m.ReportResponse)
def scan_ep(req: m.ScanRequest):
    rep = congruence_scan(req.family, req.alpha, req.nmax, req.order)
    return {"report": rep.to_dict()}


@app.post("/congruence/conjecture", response_model=m.ReportResponse)
def conjecture_ep(req: m.ConjectureRequest):
    beta = m.str_to_frac(req.beta) if req.beta is not None else None
    rep = conjecture_scan(req.k, req.alpha, req.nmax, beta)
    return {"report": rep.to_dict()}


@app.post("/verify/appendix-a", response_model=m.AppendixResponse)
def appendix_ep(req: m.AppendixRequest):
    results = verify_appendix_a(req.order)
    return {"order": req.order, "results": results, "all_pass": all(results.values())}


@app.get("/check/laws")
def laws_list():
    return {"ids": sorted(BATTERY)}


@app.post("/check/laws", response_model=m.LawsResponse)
def laws_ep(req: m.LawsRequest):
    ids = req.ids
    if ids:
        unknown = [i for i in ids if i not in BATTERY]
        if unknown:
            raise KeyError("unregistered law ids: %s" % ", ".join(unknown))
    results = run_battery(ids, req.tol)
    return {"results": results, "all_pass": all(v["pass"] for v in results.values())}


@app.post("/mk", response_model=m.MkResponse)
def mk_ep(req: m.MkRequest):
    return {"k": req.k, "mode": req.mode, "mk": m_k(req.k, req.mode)}


@app.post("/tables", response_model=m.TablesResponse)
def tables_ep(req: m.TablesRequest):
    rows = []
    if req.which == "classes":
        for k in range(1, req.kmax + 1):
            classes = equivalence_classes(k)
            if k % 2 == 0:
                rows.append({"k": k, "classes": [[int(b) for b in cls] for cls in classes]})
            else:
                rows.append({"k": k, "classes_doubled": [[int(2 * b) for b in cls] for cls in classes]})
    else:
        for k in range(1, req.kmax + 1):
            mode = req.mode if req.mode else ("exact" if k <= 6 else "float")
            rows.append({"k": k, "mk": m_k(k, mode)})
    return {"which": req.which, "rows": rows}
