"""HTTP JSON service over a loaded model.

Endpoints:
  GET  /api/health   -> {"status": "ok", "model_topology": [...]}
  GET  /api/config   -> active pipeline configuration
  POST /api/classify -> {"class": ..., "scores": [...]}
  POST /api/process  -> class, scores, raw/processed profiles, 3D curves,
                        optional per-stage trace
Bad bodies get a 400 with a machine-readable {"error": CODE}; bodies over
1 MiB get 413. The model and pipeline are loaded once and never mutated, so
requests may be handled concurrently without locking. /api responses carry
permissive CORS headers for browser clients on other origins.
"""

from __future__ import annotations

import json
import logging
import mimetypes
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .engine import process_stroke
from .errors import ValidationError
from .mlp import MLPModel, classify, load_model
from .pipelines import PipelineConfig, default_pipeline, load_pipeline, pipeline_to_dict
from .projection import ProjectionParams
from .smoothing import SmoothMethod, SmoothingSpec
from .stroke import stroke_from_dict

log = logging.getLogger("depthstroke.service")

MAX_BODY_BYTES = 1 << 20


@dataclass
class ServiceConfig:
    model_path: str
    port: int = 8008
    host: str = "127.0.0.1"
    pipeline_config_path: str | None = None
    static_dir: str | None = None

    def __post_init__(self):
        if not 1 <= self.port <= 65535:
            raise ValidationError(f"port must be in [1, 65535], got {self.port!r}")


class DepthstrokeServer(ThreadingHTTPServer):
    """Shares the immutable model/pipeline with every request thread."""

    daemon_threads = True

    def __init__(self, address, model: MLPModel, pipeline: PipelineConfig,
                 static_dir: str | None):
        super().__init__(address, _Handler)
        self.model = model
        self.pipeline = pipeline
        self.static_root = Path(static_dir).resolve() if static_dir else None


def _json_bytes(obj) -> bytes:
    return (json.dumps(obj, separators=(",", ":")) + "\n").encode("utf-8")


class _Handler(BaseHTTPRequestHandler):
    server: DepthstrokeServer
    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # route access logs through logging
        log.debug("%s - %s", self.address_string(), fmt % args)

    # -- helpers -------------------------------------------------------------

    def _send_json(self, status: int, obj) -> None:
        body = _json_bytes(obj)
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self._cors_headers()
        self.end_headers()
        self.wfile.write(body)

    def _send_error_code(self, status: int, code: str) -> None:
        self._send_json(status, {"error": code})

    def _cors_headers(self) -> None:
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")

    def _read_json_body(self):
        length_header = self.headers.get("Content-Length")
        if length_header is None:
            self._send_error_code(411, "LENGTH_REQUIRED")
            return None
        try:
            length = int(length_header)
        except ValueError:
            self._send_error_code(400, "BAD_LENGTH")
            return None
        if length > MAX_BODY_BYTES:
            self._send_error_code(413, "BODY_TOO_LARGE")
            return None
        raw = self.rfile.read(length)
        try:
            return json.loads(raw.decode("utf-8"))
        except (UnicodeDecodeError, json.JSONDecodeError):
            self._send_error_code(400, "BAD_JSON")
            return None

    def _parse_stroke(self, payload):
        if not isinstance(payload, dict):
            self._send_error_code(400, "BAD_JSON")
            return None
        samples = payload.get("samples")
        if not isinstance(samples, list) or len(samples) < 2:
            self._send_error_code(400, "EMPTY_STROKE")
            return None
        try:
            return stroke_from_dict({"samples": samples})
        except ValidationError:
            self._send_error_code(400, "BAD_STROKE")
            return None

    # -- routes --------------------------------------------------------------

    def do_OPTIONS(self):
        self.send_response(204)
        self.send_header("Content-Length", "0")
        self._cors_headers()
        self.end_headers()

    def do_GET(self):
        if self.path == "/api/health":
            self._send_json(
                200,
                {
                    "status": "ok",
                    "model_topology": list(self.server.model.topology.layer_sizes),
                },
            )
        elif self.path == "/api/config":
            self._send_json(200, pipeline_to_dict(self.server.pipeline))
        elif self.path.startswith("/api/"):
            self._send_error_code(404, "NOT_FOUND")
        else:
            self._serve_static()

    def do_POST(self):
        if self.path == "/api/classify":
            self._handle_classify()
        elif self.path == "/api/process":
            self._handle_process()
        elif self.path.startswith("/api/"):
            self._send_error_code(404, "NOT_FOUND")
        else:
            self._send_error_code(405, "METHOD_NOT_ALLOWED")

    def _handle_classify(self):
        payload = self._read_json_body()
        if payload is None:
            return
        stroke = self._parse_stroke(payload)
        if stroke is None:
            return
        profile = [s.p for s in stroke.samples]
        curve_class, scores = classify(self.server.model, profile)
        self._send_json(
            200, {"class": curve_class.label, "scores": [float(s) for s in scores]}
        )

    def _handle_process(self):
        payload = self._read_json_body()
        if payload is None:
            return
        stroke = self._parse_stroke(payload)
        if stroke is None:
            return
        smooth_spec = None
        if "smooth" in payload:
            try:
                smooth_spec = SmoothingSpec(method=SmoothMethod.parse(payload["smooth"]))
            except ValidationError:
                self._send_error_code(400, "BAD_SMOOTH")
                return
        want_trace = bool(payload.get("trace", False))
        result = process_stroke(
            stroke,
            self.server.model,
            pipeline=self.server.pipeline,
            projection=ProjectionParams(),
            smooth_spec=smooth_spec,
        )
        response = {
            "class": result.curve_class.label,
            "scores": [float(s) for s in result.scores],
            "profile_raw": result.profile_raw.tolist(),
            "profile_processed": result.processed.values.tolist(),
            "curve3d": result.curve3d.tolist(),
            "smoothed": result.smoothed.tolist(),
        }
        if want_trace:
            response["trace"] = [
                {"stage": name, "profile": values.tolist()}
                for name, values in result.processed.stage_trace
            ]
        self._send_json(200, response)

    # -- static UI bundle ----------------------------------------------------

    def _serve_static(self):
        root = self.server.static_root
        if root is None:
            self._send_error_code(404, "NOT_FOUND")
            return
        rel = self.path.split("?", 1)[0].lstrip("/") or "index.html"
        target = (root / rel).resolve()
        if root not in target.parents and target != root:
            self._send_error_code(404, "NOT_FOUND")
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_error_code(404, "NOT_FOUND")
            return
        body = target.read_bytes()
        ctype = mimetypes.guess_type(str(target))[0] or "application/octet-stream"
        self.send_response(200)
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def build_server(config: ServiceConfig) -> DepthstrokeServer:
    """Load the model and pipeline, then bind the server (without serving)."""
    model = load_model(config.model_path)
    pipeline = (
        load_pipeline(config.pipeline_config_path)
        if config.pipeline_config_path
        else default_pipeline()
    )
    return DepthstrokeServer((config.host, config.port), model, pipeline, config.static_dir)


def serve(config: ServiceConfig) -> None:
    server = build_server(config)
    log.info("serving on %s:%d", *server.server_address)
    try:
        server.serve_forever()
    finally:
        server.server_close()
