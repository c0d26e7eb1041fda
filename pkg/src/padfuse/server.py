"""Thin HTTP facade over the library for the explorer UI.

Endpoints (JSON in, JSON out; canonical serialization shared with report
files, so a response is byte-identical to serializing the corresponding
library result):

    GET  /datasets              -> dataset ids with class counts
    GET  /characteristics/{id}  -> detector and matcher characteristics
    POST /compose               -> resolved point + per-threshold cascade rates
    POST /groc                  -> integrated and individual GROC curves at one w
    POST /geer                  -> GEER sweeps over a w grid, plus w*
    POST /decision              -> /geer payload plus the embed verdict for w_hat
    POST /validate              -> model-vs-replayed error statistics

POST bodies: {"dataset_id", "point": {"mode", "target"}, "w" | "w_grid",
"p_genuine"?, "w_hat"?}. A w grid is either an array of numbers or
{"start", "stop", "step"}. Errors come back as {"code", "message",
"detail"} with status 400 (malformed request), 404 (unknown dataset or
path) or 422 (domain error).

Datasets are loaded eagerly from the data directory at startup and are
immutable afterwards; requests never mutate server state, so concurrent
handling is safe.
"""

from __future__ import annotations

import json
import pathlib
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from . import fileio
from .dataset import ScoreDataset
from .errors import DomainError, PadfuseError
from .fusion import groc_curve, individual_groc_curve
from .geer import embed_decision, find_w_star, geer_sweep, individual_eer_sweep
from .roc import (
    MatcherCharacteristic,
    OperationalPointSpec,
    PadCharacteristic,
    PointMode,
    build_matcher_characteristic,
    build_pad_characteristic,
    resolve_operating_point,
)
from .validation import independence_diagnostic, validate_against_point


class RequestError(Exception):
    def __init__(self, status: int, code: str, message: str, detail=None):
        super().__init__(message)
        self.status = status
        self.code = code
        self.detail = detail


def _bad_request(message: str, detail=None) -> RequestError:
    return RequestError(400, "bad_request", message, detail)


class LoadedDataset:
    """One score file plus its precomputed characteristics."""

    def __init__(self, dataset: ScoreDataset, pad: PadCharacteristic, matcher: MatcherCharacteristic):
        self.dataset = dataset
        self.pad = pad
        self.matcher = matcher


class Api:
    """Pure request handlers over the loaded datasets. No HTTP in here."""

    def __init__(self, datasets: dict[str, LoadedDataset]):
        self._datasets = datasets

    @classmethod
    def from_directory(cls, data_dir) -> "Api":
        data_dir = pathlib.Path(data_dir)
        paths = sorted(data_dir.glob("*.csv"))
        if not paths:
            raise FileNotFoundError(f"no score files (*.csv) in {data_dir}")
        datasets = {}
        for path in paths:
            data = fileio.load_scores(path)
            datasets[path.stem] = LoadedDataset(
                data, build_pad_characteristic(data), build_matcher_characteristic(data)
            )
        return cls(datasets)

    def dataset_ids(self) -> list[str]:
        return sorted(self._datasets)

    def _entry(self, dataset_id) -> LoadedDataset:
        if not isinstance(dataset_id, str):
            raise _bad_request("dataset_id must be a string")
        entry = self._datasets.get(dataset_id)
        if entry is None:
            raise RequestError(404, "unknown_dataset", f"no dataset {dataset_id!r}",
                               {"known": self.dataset_ids()})
        return entry

    # -- GET ---------------------------------------------------------------

    def datasets(self) -> dict:
        return {
            "datasets": [
                {"id": ds_id, "name": self._datasets[ds_id].dataset.name,
                 "class_counts": self._datasets[ds_id].dataset.class_counts()}
                for ds_id in self.dataset_ids()
            ]
        }

    def characteristics(self, dataset_id: str) -> dict:
        entry = self._entry(dataset_id)
        return {
            "dataset_id": dataset_id,
            "pad_characteristic": fileio.pad_characteristic_to_dict(entry.pad),
            "matcher_characteristic": fileio.matcher_characteristic_to_dict(entry.matcher),
        }

    # -- POST --------------------------------------------------------------

    def compose(self, body: dict) -> dict:
        entry, point = self._resolve(body)
        w = _number(body, "w")
        integrated = groc_curve(entry.matcher, point, w)
        live_pass = 1.0 - point.bpcer
        out = {
            "dataset_id": body["dataset_id"],
            "resolved_point": fileio.point_to_dict(point),
            "w": w,
            "fused": {
                "match_thresholds": [float(t) for t in entry.matcher.thresholds],
                "gar_seq": [float(v) for v in entry.matcher.gar * live_pass],
                "fmr_seq": [float(v) for v in entry.matcher.fmr * live_pass],
                "iapmr_seq": [float(v) for v in entry.matcher.iapmr * point.apcer],
                "gfmr": [float(v) for v in integrated.gfmr],
            },
        }
        p_genuine = body.get("p_genuine")
        if p_genuine is not None:
            p = _number({"p_genuine": p_genuine}, "p_genuine")
            if not 0.0 <= p <= 1.0:
                raise DomainError(f"p_genuine must lie in [0, 1], got {p!r}")
            acceptance = integrated.gar * p + integrated.gfmr * (1.0 - p)
            out["fused"]["acceptance"] = [float(v) for v in acceptance]
        return out

    def groc(self, body: dict) -> dict:
        entry, point = self._resolve(body)
        w = _number(body, "w")
        integrated = groc_curve(entry.matcher, point, w)
        individual = individual_groc_curve(entry.matcher, w)
        return {
            "dataset_id": body["dataset_id"],
            "resolved_point": fileio.point_to_dict(point),
            "integrated": fileio.groc_curve_to_dict(integrated, "integrated"),
            "individual": fileio.groc_curve_to_dict(individual, "individual"),
        }

    def _geer_parts(self, body: dict):
        entry, point = self._resolve(body)
        grid = _w_grid(body)
        integrated = geer_sweep(entry.matcher, point, grid)
        individual = individual_eer_sweep(entry.matcher, grid)
        w_star = find_w_star(integrated, individual)
        payload = {
            "dataset_id": body["dataset_id"],
            "resolved_point": fileio.point_to_dict(point),
            "integrated": fileio.geer_sweep_to_dict(integrated),
            "individual": fileio.geer_sweep_to_dict(individual),
            "w_star": fileio.w_star_to_dict(w_star),
        }
        return payload, w_star

    def geer(self, body: dict) -> dict:
        payload, _ = self._geer_parts(body)
        return payload

    def decision(self, body: dict) -> dict:
        w_hat = _number(body, "w_hat")
        payload, w_star = self._geer_parts(body)
        payload["w_hat"] = w_hat
        payload["decision"] = embed_decision(w_star, w_hat).value
        return payload

    def validate(self, body: dict) -> dict:
        entry, point = self._resolve(body)
        result = validate_against_point(entry.dataset, entry.matcher, point)
        return {
            "dataset_id": body["dataset_id"],
            "resolved_point": fileio.point_to_dict(point),
            "validation": fileio.validation_to_dict(result, include_rows=len(result) <= 20000),
            "correlation": fileio.correlation_to_dict(independence_diagnostic(entry.dataset)),
        }

    def _resolve(self, body: dict):
        if not isinstance(body, dict):
            raise _bad_request("request body must be a JSON object")
        if "dataset_id" not in body:
            raise _bad_request("missing field 'dataset_id'")
        entry = self._entry(body["dataset_id"])
        point_spec = body.get("point")
        if not isinstance(point_spec, dict) or "mode" not in point_spec or "target" not in point_spec:
            raise _bad_request("field 'point' must be an object with 'mode' and 'target'")
        try:
            mode = PointMode(point_spec["mode"])
        except ValueError:
            raise _bad_request(f"unknown point mode {point_spec['mode']!r}") from None
        target = _number(point_spec, "target")
        spec = OperationalPointSpec(mode, target)
        return entry, resolve_operating_point(entry.pad, spec)


def _number(body: dict, key: str) -> float:
    if key not in body:
        raise _bad_request(f"missing field {key!r}")
    value = body[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise _bad_request(f"field {key!r} must be a number")
    return float(value)


def _w_grid(body: dict) -> list[float]:
    grid = body.get("w_grid")
    if isinstance(grid, list):
        if not grid or not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in grid):
            raise _bad_request("'w_grid' array must contain only numbers")
        return [float(v) for v in grid]
    if isinstance(grid, dict):
        from .cli import inclusive_range

        try:
            start, stop, step = (_number(grid, k) for k in ("start", "stop", "step"))
        except RequestError:
            raise _bad_request("'w_grid' object needs numeric 'start', 'stop', 'step'") from None
        return inclusive_range(start, stop, step)
    raise _bad_request("missing or malformed 'w_grid'")


class _Handler(BaseHTTPRequestHandler):
    api: Api  # set on the server class

    # Quiet by default; the test suite and UI drive this hard.
    def log_message(self, format, *args):  # noqa: A002 - stdlib signature
        pass

    def _send(self, status: int, payload) -> None:
        body = fileio.canonical_json(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Access-Control-Allow-Origin", "*")
        self.end_headers()
        self.wfile.write(body)

    def _send_error(self, status: int, code: str, message: str, detail=None) -> None:
        self._send(status, {"code": code, "message": message, "detail": detail})

    def _read_body(self) -> dict:
        length = self.headers.get("Content-Length")
        if length is None:
            raise _bad_request("missing Content-Length")
        try:
            raw = self.rfile.read(int(length))
            return json.loads(raw.decode("utf-8"))
        except (ValueError, UnicodeDecodeError) as exc:
            raise _bad_request(f"malformed JSON body: {exc}") from None

    def _dispatch(self, handler) -> None:
        try:
            self._send(200, handler())
        except RequestError as exc:
            self._send_error(exc.status, exc.code, str(exc), exc.detail)
        except DomainError as exc:
            self._send_error(422, "domain_error", str(exc))
        except PadfuseError as exc:
            self._send_error(422, type(exc).__name__, str(exc))
        except Exception as exc:  # keep the connection well-formed on bugs
            self._send_error(500, "internal_error", f"{type(exc).__name__}: {exc}")

    def do_OPTIONS(self) -> None:  # noqa: N802 - CORS preflight for browser clients
        self.send_response(204)
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")
        self.end_headers()

    def do_GET(self) -> None:  # noqa: N802 - stdlib naming
        api = self.server.api  # type: ignore[attr-defined]
        if self.path == "/datasets":
            self._dispatch(api.datasets)
        elif self.path.startswith("/characteristics/"):
            dataset_id = self.path[len("/characteristics/"):]
            self._dispatch(lambda: api.characteristics(dataset_id))
        else:
            self._send_error(404, "not_found", f"no such path {self.path!r}")

    def do_POST(self) -> None:  # noqa: N802
        api = self.server.api  # type: ignore[attr-defined]
        routes = {
            "/compose": api.compose,
            "/groc": api.groc,
            "/geer": api.geer,
            "/decision": api.decision,
            "/validate": api.validate,
        }
        handler = routes.get(self.path)
        if handler is None:
            self._send_error(404, "not_found", f"no such path {self.path!r}")
            return
        try:
            body = self._read_body()
        except RequestError as exc:
            self._send_error(exc.status, exc.code, str(exc), exc.detail)
            return
        self._dispatch(lambda: handler(body))


class PadfuseServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, api: Api):
        super().__init__(address, _Handler)
        self.api = api


def serve(port: int, data_dir) -> PadfuseServer:
    """Load all score files under data_dir and bind the server (not yet running).

    Call serve_forever() on the result; with port 0 the chosen port is in
    server_address[1].
    """
    api = Api.from_directory(data_dir)
    return PadfuseServer(("127.0.0.1", port), api)
