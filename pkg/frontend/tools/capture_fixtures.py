"""Capture webapp test fixtures from the running service API.

Boots the service over a temporary store, ingests the showcase match plus
a frameless one, fits models, and saves the exact HTTP payloads the
webapp consumes.  Tests then assert the views against real API bytes.

Run from the frontend directory:  python3 tools/capture_fixtures.py
"""

import json
import pathlib
import tempfile

from fastapi.testclient import TestClient

from passflow.service import create_app
from passflow.synth import demo_match, group_match, match_bytes

OUT = pathlib.Path(__file__).resolve().parent.parent / "test" / "fixtures"


def save(name: str, payload) -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / name).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    print(f"wrote {name}")


def main() -> None:
    with tempfile.TemporaryDirectory() as data_dir:
        client = TestClient(create_app(data_dir))

        doc, _ = demo_match(seed=11)
        assert client.post("/matches", content=match_bytes(doc)).status_code == 201
        bare, _ = group_match(seed=31, n_phases=8)
        assert client.post("/matches", content=match_bytes(bare)).status_code == 201

        r = client.post(
            "/matches/demo-11/detect", params={"team": "home", "k": 5, "seed": 7}
        )
        model = r.json()["model"]
        save("matches.json", client.get("/matches").json())
        save("models.json", client.get("/matches/demo-11/models").json())

        base = {"model": model}
        save(
            "patterns_frequency.json",
            client.get("/matches/demo-11/patterns", params=base).json(),
        )
        save(
            "patterns_shootings.json",
            client.get(
                "/matches/demo-11/patterns", params={**base, "sort": "shootings"}
            ).json(),
        )
        flow = client.get("/matches/demo-11/flow", params=base).json()
        save("flow.json", flow)

        pid = flow["phases"][0]["phase_id"]
        save("phase_detail.json", client.get(f"/matches/demo-11/phases/{pid}").json())
        save(
            "phase_degraded.json",
            client.get(f"/matches/{bare['match_id']}/phases/0").json(),
        )
        save(
            "player_stats.json",
            client.get("/matches/demo-11/players/home:9/stats").json(),
        )


if __name__ == "__main__":
    main()
