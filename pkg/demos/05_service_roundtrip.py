"""Run the HTTP service end to end: ingest, detect, browse, restart.

Starts the service on a localhost port with a temporary data directory,
uploads a match, fits a model, reads the pattern/flow/phase payloads the
webapp consumes, then restarts the app over the same directory to show
the stored bytes survive unchanged.
"""

import json
import tempfile
import threading
import time
import urllib.request

import uvicorn

from passflow.service import create_app
from passflow.synth import demo_match, match_bytes

PORT = 8765


def _request(method, path, body=None):
    req = urllib.request.Request(
        f"http://127.0.0.1:{PORT}{path}", data=body, method=method
    )
    with urllib.request.urlopen(req) as resp:
        return resp.status, resp.read()


def _serve(app):
    config = uvicorn.Config(app, host="127.0.0.1", port=PORT, log_level="warning")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    while not server.started:
        time.sleep(0.05)
    return server, thread


data_dir = tempfile.mkdtemp(prefix="passflow-demo-")
doc, _ = demo_match(seed=11)

server, thread = _serve(create_app(data_dir))
status, body = _request("POST", "/matches", match_bytes(doc))
print(f"POST /matches -> {status} {json.loads(body)}")

status, body = _request(
    "POST", "/matches/demo-11/detect?team=home&k=5&seed=7"
)
model = json.loads(body)["model"]
print(f"POST /matches/demo-11/detect -> {status} model={model}")

status, body = _request("GET", f"/matches/demo-11/patterns?model={model}")
patterns = json.loads(body)["patterns"]
print(f"GET /patterns -> {status}: {len(patterns)} patterns")
for p in patterns:
    print(f"  pattern {p['pattern_id']} ({p['style']}): "
          f"{p['frequency']} phases, {p['shootings']} shootings, "
          f"keys {p['key_players']}")

status, body = _request("GET", f"/matches/demo-11/flow?model={model}")
flow = json.loads(body)
print(f"GET /flow -> {status}: {len(flow['phases'])} phase records")

status, body = _request("GET", "/matches/demo-11/phases/0")
detail = json.loads(body)
print(f"GET /phases/0 -> {status}: {len(detail['passes'])} passes, "
      f"defense available = {detail['metrics']['available']}")

status, first_export = _request("GET", f"/matches/demo-11/models/{model}")
server.should_exit = True
thread.join(timeout=5)

# Restart over the same directory: everything is served from disk again.
server, thread = _serve(create_app(data_dir))
status, body = _request("GET", "/matches")
print(f"\nafter restart, GET /matches -> {status} {json.loads(body)}")
status, second_export = _request("GET", f"/matches/demo-11/models/{model}")
print(f"model export byte-identical across restart: {first_export == second_export}")
server.should_exit = True
thread.join(timeout=5)
