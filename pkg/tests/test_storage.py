import json

from tverberg_kit.settings import Settings
from tverberg_kit.utils.storage import new_run_id, save_trace


def test_disabled_by_default(tmp_path):
    assert save_trace({"kind": "tverberg"}, Settings(trace_dir=tmp_path)) is None
    assert list(tmp_path.iterdir()) == []


def test_writes_json_when_enabled(tmp_path):
    settings = Settings(save_traces=True, trace_dir=tmp_path / "traces")
    path = save_trace({"kind": "tverberg", "parts": [[0], [1], [2]]}, settings, "run-1")
    assert path == tmp_path / "traces" / "run-1.json"
    assert json.loads(path.read_text(encoding="utf-8"))["parts"] == [[0], [1], [2]]


def test_run_ids_are_timestamped():
    run_id = new_run_id()
    assert run_id.startswith("trace-") and run_id.endswith("Z")
