import json

import pytest

from src.data_processors import JSONExporter, RunManifest
from src.data_processors.manifest import LOCK_NAME
from src.utils.exceptions import OutputLockedError
from src.utils.helpers import sha256_file


def test_records_and_writes_artifacts(tmp_path):
    manifest = RunManifest(str(tmp_path), version="0.1.0")
    path = JSONExporter(output_dir=str(tmp_path)).process({"K": 1.0}, "schmidt")
    manifest.record(path)
    manifest.write()

    data = json.loads((tmp_path / "manifest.json").read_text())
    assert data["version"] == "0.1.0"
    assert data["config_sha256"] is None
    assert data["artifacts"] == [{"path": "schmidt.json", "sha256": sha256_file(path)}]
    assert manifest.verify() == {"schmidt.json": True}


def test_config_checksum(tmp_path):
    config = tmp_path / "run.yaml"
    config.write_text("pump:\n  fwhm_nm: 2.5\n")
    manifest = RunManifest(str(tmp_path / "out"), str(config))
    assert manifest.config_hash == sha256_file(str(config))


def test_keeps_entries_of_earlier_runs(tmp_path):
    first = RunManifest(str(tmp_path))
    exporter = JSONExporter(output_dir=str(tmp_path))
    first.record(exporter.process({"a": 1}, "a"))
    first.write()

    second = RunManifest(str(tmp_path))
    second.record(exporter.process({"b": 2}, "b"))
    second.write()
    names = [entry["path"] for entry in json.loads((tmp_path / "manifest.json").read_text())["artifacts"]]
    assert names == ["a.json", "b.json"]


def test_verify_detects_changes(tmp_path):
    manifest = RunManifest(str(tmp_path))
    path = JSONExporter(output_dir=str(tmp_path)).process({"a": 1}, "a")
    manifest.record(path)
    (tmp_path / "a.json").write_text("{}\n")
    assert manifest.verify() == {"a.json": False}


def test_unreadable_manifest_is_ignored(tmp_path):
    (tmp_path / "manifest.json").write_text("not json")
    assert RunManifest(str(tmp_path)).artifacts == {}


def test_lock_is_exclusive_and_released(tmp_path):
    manifest = RunManifest(str(tmp_path))
    with manifest.lock():
        assert (tmp_path / LOCK_NAME).exists()
        with pytest.raises(OutputLockedError):
            with RunManifest(str(tmp_path)).lock():
                pass
    assert not (tmp_path / LOCK_NAME).exists()


def test_lock_released_on_error(tmp_path):
    manifest = RunManifest(str(tmp_path))
    with pytest.raises(RuntimeError):
        with manifest.lock():
            raise RuntimeError("boom")
    assert not (tmp_path / LOCK_NAME).exists()


def test_failed_rewrite_keeps_previous_manifest(tmp_path, monkeypatch):
    manifest = RunManifest(str(tmp_path), version="0.1.0")
    manifest.write()
    before = (tmp_path / "manifest.json").read_text()

    def refuse(src, dst):
        raise OSError("disk full")

    monkeypatch.setattr("src.data_processors.base_processor.os.replace", refuse)
    manifest.version = "0.2.0"
    with pytest.raises(OSError):
        manifest.write()
    assert (tmp_path / "manifest.json").read_text() == before
    assert sorted(p.name for p in tmp_path.iterdir()) == ["manifest.json"]
