import json
import logging
from unittest.mock import patch

import pytest

from quantum_clifford.utils import cache


class TestCache:
    def test_store_then_load(self, cache_dir):
        """Test that a stored document is read back unchanged."""
        document = {"weights": [[1], [-1]], "E": {"0": {"0,1": "1"}}}
        path = cache.store(cache_dir, "module", "abc123", document)
        assert path == cache_dir / "module-abc123.json"
        assert cache.load(cache_dir, "module", "abc123") == document

    def test_store_creates_directory(self, tmp_path):
        """Test that a missing cache directory is created."""
        target = tmp_path / "nested" / "cache"
        cache.store(target, "report-roots", "f00", {"status": "ok"})
        assert (target / "report-roots-f00.json").exists()

    def test_written_file_is_canonical(self, cache_dir):
        """Test that the file holds sorted, indented JSON."""
        path = cache.store(cache_dir, "module", "d1", {"b": 1, "a": 2})
        assert path.read_text(encoding="utf-8") == '{\n  "a": 2,\n  "b": 1\n}\n'

    def test_miss_returns_none(self, cache_dir, caplog):
        """Test that a missing entry is a logged miss."""
        with caplog.at_level(logging.INFO):
            assert cache.load(cache_dir, "module", "missing") is None
        assert "cache miss" in caplog.text

    def test_corrupt_entry_is_ignored(self, cache_dir, caplog):
        """Test that an unreadable entry is skipped with a warning."""
        (cache_dir / "module-bad.json").write_text("{not json", encoding="utf-8")
        with caplog.at_level(logging.WARNING):
            assert cache.load(cache_dir, "module", "bad") is None
        assert "ignoring unreadable cache entry" in caplog.text

    def test_disabled_cache(self):
        """Test that cache_dir=None disables both directions."""
        assert cache.store(None, "module", "x", {"a": 1}) is None
        assert cache.load(None, "module", "x") is None

    def test_failed_write_leaves_no_partial_file(self, cache_dir):
        """Test that an interrupted write leaves neither the target nor the temporary file."""
        with patch("quantum_clifford.utils.cache.os.replace", side_effect=OSError("disk full")):
            with pytest.raises(OSError, match="disk full"):
                cache.store(cache_dir, "module", "partial", {"a": 1})
        assert list(cache_dir.iterdir()) == []

    def test_overwrite_is_atomic(self, cache_dir):
        """Test that storing twice replaces the entry."""
        cache.store(cache_dir, "module", "k", {"version": 1})
        cache.store(cache_dir, "module", "k", {"version": 2})
        assert json.loads((cache_dir / "module-k.json").read_text()) == {"version": 2}
        assert [p.name for p in cache_dir.iterdir()] == ["module-k.json"]
