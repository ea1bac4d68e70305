"""Thin command-line client over the service app.

By default requests run against the FastAPI app in-process; pass --url to
talk to a running server instead.  Output is deterministic JSON (sorted
keys).  Exit codes: 0 success, 2 parameter errors, 3 verification failures,
4 truncation exhaustion.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time

EXIT_PARAM = 2
EXIT_VERIFY = 3
EXIT_TRUNCATION = 4


def default_order(fallback: int = 80) -> int:
    try:
        return int(os.environ.get("FROBQ_DEFAULT_ORDER", fallback))
    except ValueError:
        return fallback


class ServiceClient:
    def __init__(self, url: str | None = None):
        self.url = url
        self._client_obj = None

    def _client(self):
        if self._client_obj is None:
            if self.url:
                import httpx

                self._client_obj = httpx.Client(base_url=self.url, timeout=3600.0)
            else:
                from fastapi.testclient import TestClient

                from .service import app

                self._client_obj = TestClient(app, raise_server_exceptions=False)
        return self._client_obj

    def post(self, path: str, payload: dict):
        client = self._client()
        resp = client.post(path, json=payload)
        try:
            body = resp.json()
        except Exception:
            body = {"error": resp.text, "code": "param"}
        return resp.status_code, body


def _parse_gamma(text: str):
    parts = [int(x) for x in text.replace(" ", "").split(",")]
    if len(parts) not in (4, 5):
        raise argparse.ArgumentTypeError("matrix must be a,b,c,d or a,b,c,d,eps")
    return parts


def _emit(body: dict, as_text: bool = False) -> None:
    if as_text:
        print(_render_text(body))
    else:
        print(json.dumps(body, sort_keys=True, separators=(",", ":")))


def _render_text(body: dict) -> str:
    lines = []

    def walk(prefix, val):
        if isinstance(val, dict):
            for key in sorted(val):
                walk("%s%s." % (prefix, key) if prefix else "%s." % key, val[key])
        elif isinstance(val, list):
            lines.append("%s %s" % (prefix.rstrip("."), json.dumps(val)))
        else:
            lines.append("%s %s" % (prefix.rstrip("."), val))

    walk("", body)
    return "\n".join(lines)


def _exit_code_for(status: int, body: dict) -> int:
    if status == 200:
        return 0
    code = body.get("code") if isinstance(body, dict) else None
    if code == "truncation":
        return EXIT_TRUNCATION
    if code == "verify":
        return EXIT_VERIFY
    return EXIT_PARAM


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frobq", description="Generalized Frobenius partition toolkit")
    parser.add_argument("--url", default=None, help="remote service URL (default: run in-process)")
    parser.add_argument("--text", action="store_true", help="plain-text output instead of JSON")
    parser.add_argument("--manifest", default=None, help="write a reproducibility manifest (command, params, version, wall time, output digest) to this path")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cpsi", help="partition series operations")
    ps = p.add_subparsers(dest="sub", required=True)
    pe = ps.add_parser("expand", help="expand a partition series")
    pe.add_argument("--k", type=int, required=True)
    pe.add_argument("--beta", required=True)
    pe.add_argument("--order", type=int, default=None)
    pe.add_argument("--closed", action="store_true")

    p = sub.add_parser("rho", help="vector-valued representation matrix")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--gamma", type=_parse_gamma, required=True)
    p.add_argument("--closed", action="store_true")

    p = sub.add_parser("weil", help="Weil representation")
    ps = p.add_subparsers(dest="sub", required=True)
    pw = ps.add_parser("matrix")
    pw.add_argument("--k", type=int, required=True)
    pw.add_argument("--gamma", type=_parse_gamma, required=True)

    p = sub.add_parser("meta", help="metaplectic cover operations")
    ps = p.add_subparsers(dest="sub", required=True)
    pc = ps.add_parser("compose")
    pc.add_argument("--g1", type=_parse_gamma, required=True)
    pc.add_argument("--g2", type=_parse_gamma, required=True)
    pw = ps.add_parser("word")
    pw.add_argument("--gamma", type=_parse_gamma, required=True)
    px = ps.add_parser("chi-eta")
    px.add_argument("--gamma", type=_parse_gamma, required=True)

    p = sub.add_parser("classes", help="permutation classes of the index set")
    p.add_argument("--k", type=int, required=True)

    p = sub.add_parser("gamma", help="transporting matrix search")
    ps = p.add_subparsers(dest="sub", required=True)
    pf = ps.add_parser("find")
    pf.add_argument("--k", type=int, required=True)
    pf.add_argument("--p", type=int, required=True)
    pf.add_argument("--beta", required=True)
    pf.add_argument("--beta2", required=True)

    p = sub.add_parser("uprime", help="twisted U operator parameters")
    ps = p.add_subparsers(dest="sub", required=True)
    pp = ps.add_parser("params")
    pp.add_argument("--k", type=int, required=True)
    pp.add_argument("--beta", required=True)
    pp.add_argument("--p", type=int, required=True)

    p = sub.add_parser("congruence", help="congruence scanners")
    ps = p.add_subparsers(dest="sub", required=True)
    pscan = ps.add_parser("scan")
    pscan.add_argument("--family", required=True, help="cpsi3-12, cpsi3-32, cphi2, cpsi2-1, or cpsi2-0")
    pscan.add_argument("--alpha", type=int, required=True)
    pscan.add_argument("--nmax", type=int, required=True)
    pscan.add_argument("--order", type=int, default=None)
    pconj = ps.add_parser("conjecture")
    pconj.add_argument("--k", type=int, required=True)
    pconj.add_argument("--alpha", type=int, required=True)
    pconj.add_argument("--nmax", type=int, required=True)
    pconj.add_argument("--beta", default=None)

    p = sub.add_parser("verify", help="exact identity batteries")
    ps = p.add_subparsers(dest="sub", required=True)
    pa = ps.add_parser("appendix-a")
    pa.add_argument("--order", type=int, default=60)

    p = sub.add_parser("check", help="numeric law battery")
    ps = p.add_subparsers(dest="sub", required=True)
    pl = ps.add_parser("laws")
    pl.add_argument("--id", action="append", default=None, dest="ids")
    pl.add_argument("--tol", type=float, default=1e-8)

    p = sub.add_parser("mk", help="character norm")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "float"), default="exact")

    p = sub.add_parser("tables", help="reproduce the printed tables")
    p.add_argument("--which", choices=("classes", "mk"), required=True)
    p.add_argument("--kmax", type=int, required=True)
    p.add_argument("--mode", choices=("exact", "float"), default="float")

    p = sub.add_parser("series", help="series JSON utilities")
    ps = p.add_subparsers(dest="sub", required=True)
    pe = ps.add_parser("echo", help="parse and re-emit a series (bit-exact round trip)")
    pe.add_argument("--json", default=None, help="series JSON; reads stdin when omitted")

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)

    return parser


def _element_payload(parts):
    eps = parts[4] if len(parts) == 5 else 1
    return {"matrix": [str(x) for x in parts[:4]], "eps": eps}


def run(argv=None) -> int:
    t_start = time.perf_counter()
    parser = build_parser()
    args = parser.parse_args(argv)

    if args.command == "serve":
        import uvicorn

        from .service import app

        uvicorn.run(app, host=args.host, port=args.port)
        return 0

    client = ServiceClient(args.url)
    verify_fail = False

    if args.command == "cpsi":
        order = args.order if args.order is not None else default_order()
        status, body = client.post(
            "/cpsi/expand", {"k": args.k, "beta": args.beta, "order": order, "closed": args.closed}
        )
    elif args.command == "rho":
        status, body = client.post(
            "/rho/matrix",
            {"k": args.k, "gamma": args.gamma[:4], "eps": args.gamma[4] if len(args.gamma) == 5 else 1, "closed": args.closed},
        )
    elif args.command == "weil":
        status, body = client.post(
            "/weil/matrix", {"k": args.k, "gamma": args.gamma[:4], "eps": args.gamma[4] if len(args.gamma) == 5 else 1}
        )
    elif args.command == "meta":
        if args.sub == "compose":
            status, body = client.post("/meta/compose", {"g1": _element_payload(args.g1), "g2": _element_payload(args.g2)})
        elif args.sub == "word":
            status, body = client.post(
                "/meta/word", {"gamma": args.gamma[:4], "eps": args.gamma[4] if len(args.gamma) == 5 else 1}
            )
        else:
            status, body = client.post(
                "/meta/chi-eta", {"gamma": args.gamma[:4], "eps": args.gamma[4] if len(args.gamma) == 5 else 1}
            )
    elif args.command == "classes":
        status, body = client.post("/classes", {"k": args.k})
    elif args.command == "gamma":
        status, body = client.post("/gamma/find", {"k": args.k, "p": args.p, "beta": args.beta, "beta2": args.beta2})
    elif args.command == "uprime":
        status, body = client.post("/uprime/params", {"k": args.k, "beta": args.beta, "p": args.p})
    elif args.command == "congruence":
        if args.sub == "scan":
            status, body = client.post(
                "/congruence/scan",
                {"family": args.family, "alpha": args.alpha, "nmax": args.nmax, "order": args.order},
            )
        else:
            status, body = client.post(
                "/congruence/conjecture", {"k": args.k, "alpha": args.alpha, "nmax": args.nmax, "beta": args.beta}
            )
        if status == 200 and body.get("report", {}).get("status") == "fail":
            verify_fail = True
    elif args.command == "verify":
        status, body = client.post("/verify/appendix-a", {"order": args.order})
        if status == 200 and not body.get("all_pass", False):
            verify_fail = True
    elif args.command == "check":
        status, body = client.post("/check/laws", {"ids": args.ids, "tol": args.tol})
        if status == 200 and not body.get("all_pass", False):
            verify_fail = True
    elif args.command == "series":
        raw = args.json if args.json is not None else sys.stdin.read()
        try:
            payload = json.loads(raw)
        except json.JSONDecodeError as exc:
            _emit({"error": "invalid JSON: %s" % exc, "code": "param"}, args.text)
            return EXIT_PARAM
        status, body = client.post("/series/echo", {"series": payload})
    elif args.command == "mk":
        status, body = client.post("/mk", {"k": args.k, "mode": args.mode})
    elif args.command == "tables":
        status, body = client.post("/tables", {"which": args.which, "kmax": args.kmax, "mode": args.mode})
    else:  # pragma: no cover
        parser.error("unknown command")
        return EXIT_PARAM

    _emit(body, args.text)
    code = _exit_code_for(status, body)
    if code == 0 and verify_fail:
        code = EXIT_VERIFY
    if args.manifest:
        _write_manifest(args.manifest, argv, body, code, time.perf_counter() - t_start)
    return code


def _write_manifest(path: str, argv, body: dict, exit_code: int, wall: float) -> None:
    """Reproducibility record: identical manifests (minus wall time) imply identical outputs."""
    from . import __version__

    payload = json.dumps(body, sort_keys=True, separators=(",", ":")).encode()
    raw_cmd = list(argv) if argv is not None else sys.argv[1:]
    cmd = []
    skip = False
    for token in raw_cmd:
        if skip:
            skip = False
            continue
        if token == "--manifest":
            skip = True
            continue
        if token.startswith("--manifest="):
            continue
        cmd.append(token)
    manifest = {
        "command": cmd,
        "version": __version__,
        "exit_code": exit_code,
        "wall_seconds": round(wall, 6),
        "output_sha256": hashlib.sha256(payload).hexdigest(),
    }
    with open(path, "w") as fh:
        json.dump(manifest, fh, sort_keys=True, indent=1)
        fh.write("\n")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
