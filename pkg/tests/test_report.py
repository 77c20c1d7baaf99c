import csv
import io
import json

import pytest

from hopftwistor.report import (
    canonical_json,
    envelope_to_csv,
    envelope_to_json,
    make_check,
    make_envelope,
)


def test_make_check_defaults():
    c = make_check("residual", 1e-6, 0.0, 1e-4)
    assert c["pass"] is True
    c = make_check("residual", 2e-4, 0.0, 1e-4)
    assert c["pass"] is False
    c = make_check("gate", 5.0, 2.0, 0.0, passed=True)
    assert c["pass"] is True


def test_make_check_rejects_non_finite():
    with pytest.raises(ValueError):
        make_check("bad", float("nan"), 0.0, 1e-4)
    with pytest.raises(ValueError):
        make_check("bad", float("inf"), 0.0, 1e-4)


def test_envelope_sorted_and_certified():
    checks = [
        make_check("b", 0.0, 0.0, 1e-6, grid_point="(1)"),
        make_check("a", 0.0, 0.0, 1e-6, grid_point="(1)"),
        make_check("a", 0.0, 0.0, 1e-6, grid_point="(0)", index=2),
        make_check("a", 0.0, 0.0, 1e-6, grid_point="(0)", index=1),
    ]
    env = make_envelope("verify-hopf", {"n": 2}, checks)
    names = [(c["grid_point"], c["name"], c.get("index")) for c in env["checks"]]
    assert names == [("(0)", "a", 1), ("(0)", "a", 2), ("(1)", "a", None), ("(1)", "b", None)]
    assert env["certified"] is True
    env = make_envelope("verify-hopf", {}, [make_check("x", 1.0, 0.0, 1e-9)])
    assert env["certified"] is False


def test_canonical_json_shortest_roundtrip():
    s = canonical_json({"v": 0.1, "w": 1.0, "flag": True, "none": None})
    assert json.loads(s) == {"v": 0.1, "w": 1.0, "flag": True, "none": None}
    # %.17g preserves the double exactly
    assert "0.1000000000000000" in s
    assert '"flag": true' in s


def test_envelope_json_shape():
    env = make_envelope("mc-check", {"n": 2}, [make_check("mc-residual", 0.0, 0.0, 1e-12)])
    doc = json.loads(envelope_to_json(env))
    assert doc["artifact_version"]
    assert doc["command"] == "mc-check"
    assert doc["certified"] is True
    assert doc["checks"][0]["name"] == "mc-residual"
    assert set(doc["checks"][0]) == {"name", "value", "expected", "tolerance", "pass"}
    assert envelope_to_json(env).endswith("\n")


def test_envelope_csv_shape():
    env = make_envelope(
        "verify-curves",
        {},
        [
            make_check("curvature", 2.0, 2.0, 1e-4, grid_point="(0.5)", index=3),
            make_check("circle-residual", 1e-6, 0.0, 1e-4, grid_point="(0.5)"),
        ],
    )
    rows = list(csv.reader(io.StringIO(envelope_to_csv(env))))
    assert rows[0] == ["name", "grid_point", "index", "value", "expected", "tolerance", "pass"]
    assert len(rows) == 3
    assert rows[1][0] == "circle-residual"
    assert rows[2][6] == "true"
