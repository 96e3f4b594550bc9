import json

import pytest

from twinaudit.cache import WindowCache
from twinaudit.errors import CacheError


def test_roundtrip(tmp_path):
    path = tmp_path / "w.jsonl"
    cache = WindowCache(path, "1.0").load()
    assert cache.record(0, 6) is True
    assert cache.record(1, 9) is True
    reloaded = WindowCache(path, "1.0").load()
    assert (reloaded.get(0), reloaded.get(1), len(reloaded)) == (6, 9, 2)
    rec = json.loads(path.read_text().splitlines()[0])
    assert set(rec) == {"n", "twin_count", "computed_at", "tool_version"}


def test_rerun_verifies_instead_of_duplicating(tmp_path):
    path = tmp_path / "w.jsonl"
    cache = WindowCache(path, "1.0").load()
    cache.record(0, 6)
    assert cache.record(0, 6) is False
    assert len(path.read_text().splitlines()) == 1
    with pytest.raises(CacheError, match="disagrees"):
        cache.record(0, 7)


def test_other_versions_ignored(tmp_path):
    path = tmp_path / "w.jsonl"
    WindowCache(path, "0.9").load().record(0, 99)
    cache = WindowCache(path, "1.0").load()
    assert 0 not in cache
    cache.record(0, 6)
    assert len(path.read_text().splitlines()) == 2


@pytest.mark.parametrize(
    "line",
    ["not json", '{"n": 1}', '{"n": "x", "twin_count": 1, "computed_at": "", "tool_version": "1.0"}'],
)
def test_corrupt(tmp_path, line):
    path = tmp_path / "w.jsonl"
    path.write_text(line + "\n")
    with pytest.raises(CacheError, match=":1:"):
        WindowCache(path, "1.0").load()


def test_conflicting_lines(tmp_path):
    path = tmp_path / "w.jsonl"
    recs = [{"n": 0, "twin_count": c, "computed_at": "t", "tool_version": "1.0"} for c in (6, 7)]
    path.write_text("".join(json.dumps(r) + "\n" for r in recs))
    with pytest.raises(CacheError, match="conflicting"):
        WindowCache(path, "1.0").load()
