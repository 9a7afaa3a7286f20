"""Tests for the insert-only BasisCache class."""

import json

import pytest

from cuspidal_shadow.basis_cache import BasisCache
from cuspidal_shadow.exceptions import InvariantViolation


def test_locked_dict_creates_file(tmp_path):
    data_file = tmp_path / "cache.json"
    cache = BasisCache(data_file, tmp_path / "cache.lock")

    with cache.locked_dict() as data:
        data["A2|1.2.1|1,0"] = [{"exponent": "1,0,0"}]

    assert json.loads(data_file.read_text()) == {"A2|1.2.1|1,0": [{"exponent": "1,0,0"}]}


def test_default_lock_file(tmp_path):
    cache = BasisCache(tmp_path / "cache.json")
    assert cache.lock_file == tmp_path / "cache.lock"


def test_missing_file_reads_empty(tmp_path):
    cache = BasisCache(tmp_path / "nothing.json")
    assert cache.read() == {}
    assert cache.get("anything") is None
    assert len(cache) == 0


def test_insert_is_idempotent(tmp_path):
    cache = BasisCache(tmp_path / "cache.json")
    cache.insert("key", {"value": 1})
    cache.insert("key", {"value": 1})
    assert cache.read() == {"key": {"value": 1}}


def test_conflicting_insert_raises(tmp_path):
    cache = BasisCache(tmp_path / "cache.json")
    cache.insert("key", {"value": 1})
    with pytest.raises(InvariantViolation) as excinfo:
        cache.insert("key", {"value": 2})
    assert excinfo.value.check == "cache-idempotence"
    assert cache.get("key") == {"value": 1}


def test_name_strips_session_prefix(tmp_path):
    assert BasisCache(tmp_path / "cuspidal_cache_a3.json").name == "a3"
    assert BasisCache(tmp_path / "plain.json").name == "plain"


def test_two_handles_share_one_file(tmp_path):
    first = BasisCache(tmp_path / "cache.json")
    second = BasisCache(tmp_path / "cache.json")
    first.insert("a", 1)
    second.insert("b", 2)
    assert first.read() == second.read() == {"a": 1, "b": 2}
