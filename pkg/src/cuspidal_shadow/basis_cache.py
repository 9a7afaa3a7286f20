"""Shared global-basis cache.

Global basis elements are expensive and identical for every process that
asks for them, so they can be kept in one JSON file guarded by a FileLock.
The store is insert-only: a key is written once, and writing it again with
the same value is a no-op. The `make_basis_cache` fixture gives every
pytest-xdist worker of a session the same cache file.
"""

import json
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Callable, Dict, Generator, Optional, Set

import pytest
from filelock import FileLock

from cuspidal_shadow.exceptions import InvariantViolation

logger = logging.getLogger(__name__)

INIT_LOCK_TIMEOUT = 30  # seconds for initialization lock acquisition
CACHE_FILE_PREFIX = "cuspidal_cache_"  # prefix for session cache files


class BasisCache:
    """Insert-only JSON map shared between processes.

    Keys are "<cartan>|<word>|<weight>" strings built by `GlobalBasis`; values
    are the serialized elements of one weight space.

    Attributes:
        data_file: Path to the JSON data file
        lock_file: Path to the lock file for synchronization
        timeout: Timeout in seconds for acquiring locks (-1 = wait forever)
    """

    def __init__(self, data_file: Path, lock_file: Optional[Path] = None, timeout: float = -1):
        """
        Args:
            data_file: Path where JSON data will be stored
            lock_file: Path for the lock file (defaults to data_file with a .lock suffix)
            timeout: Timeout in seconds for lock acquisition (-1 = wait forever)
        """
        self.data_file = Path(data_file)
        self.lock_file = Path(lock_file) if lock_file else self.data_file.with_suffix(".lock")
        self.timeout = timeout
        self._lock = FileLock(str(self.lock_file), timeout=timeout)

    @property
    def name(self) -> str:
        stem = self.data_file.stem
        if stem.startswith(CACHE_FILE_PREFIX):
            return stem[len(CACHE_FILE_PREFIX) :]
        return stem

    def _load(self) -> Dict[str, Any]:
        if self.data_file.exists():
            with open(self.data_file, "r") as f:
                return json.load(f)
        return {}

    @contextmanager
    def locked_dict(self) -> Generator[Dict[str, Any], None, None]:
        """Atomic read-modify-write of the whole map.

        Raises:
            filelock.Timeout: If lock cannot be acquired within timeout period
        """
        with self._lock:
            data = self._load()
            yield data
            self.data_file.parent.mkdir(parents=True, exist_ok=True)
            with open(self.data_file, "w") as f:
                json.dump(data, f, indent=2, sort_keys=True)

    def read(self) -> Dict[str, Any]:
        """Snapshot of the current map."""
        with self._lock:
            return self._load()

    def get(self, key: str) -> Optional[Any]:
        return self.read().get(key)

    def insert(self, key: str, value: Any) -> None:
        """Store value under key once.

        Raises:
            InvariantViolation: If key already holds a different value
        """
        with self.locked_dict() as data:
            existing = data.get(key)
            if existing is None:
                data[key] = value
                logger.debug(f"Cached {key} in {self.data_file}")
            elif existing != value:
                raise InvariantViolation("cache-idempotence", f"conflicting values for {key}")

    def __len__(self) -> int:
        return len(self.read())


@pytest.fixture(scope="session")
def make_basis_cache(
    request: pytest.FixtureRequest,
    tmp_path_factory: pytest.TempPathFactory,
    worker_id: str,
) -> Generator[Callable[..., BasisCache], None, None]:
    """Factory for global-basis caches shared by all pytest-xdist workers.

    The first worker to ask for a name creates the empty cache; after the
    last worker has finished, `on_last_worker` callbacks run and the files are
    removed.

    Example:
        @pytest.fixture(scope="session")
        def a3_cache(make_basis_cache):
            return make_basis_cache(name="a3")

        def test_weight(a3_cache):
            engine = GlobalBasis.for_word(C, seq, cache=a3_cache)
    """
    shared_temp = tmp_path_factory.getbasetemp().parent
    last_worker_callbacks = []
    created_files: Set[Path] = set()

    def factory(
        name: str,
        on_last_worker: Optional[Callable[[BasisCache], None]] = None,
        timeout: float = -1,
    ) -> BasisCache:
        base_path = shared_temp / f"{CACHE_FILE_PREFIX}{name}"
        data_file = base_path.with_suffix(".json")
        init_marker = base_path.with_name(f"{name}_init.marker")
        data_lock_file = base_path.with_name(f"{name}_data.lock")
        init_lock_file = base_path.with_name(f"{name}_init.lock")

        cache = BasisCache(data_file, data_lock_file, timeout=timeout)

        with FileLock(str(init_lock_file), timeout=INIT_LOCK_TIMEOUT):
            if not init_marker.exists():
                init_marker.parent.mkdir(parents=True, exist_ok=True)
                init_marker.touch()
                with open(data_file, "w") as f:
                    json.dump({}, f)

        created_files.update({data_file, data_lock_file, init_lock_file, init_marker})
        if on_last_worker is not None:
            last_worker_callbacks.append((cache, on_last_worker))
        return cache

    yield factory

    teardown_tracker_path = shared_temp / "cuspidal_cache_teardown"
    teardown_data_file = teardown_tracker_path.with_suffix(".json")
    teardown_lock_file = teardown_tracker_path.with_name("cuspidal_teardown.lock")
    teardown_tracker = BasisCache(teardown_data_file, teardown_lock_file, timeout=30)

    total_workers = getattr(request.config, "workerinput", {}).get("workercount", 1) or 1

    with teardown_tracker.locked_dict() as data:
        data.setdefault("total_workers", total_workers)
        finished = data.setdefault("finished_workers", [])
        if worker_id not in finished:
            finished.append(worker_id)
        is_last = len(finished) >= data["total_workers"]

    if is_last:
        for cache, callback in last_worker_callbacks:
            try:
                callback(cache)
            except Exception as e:
                logger.exception(f"Error in on_last_worker callback: {e}")

        for file_path in created_files | {teardown_data_file, teardown_lock_file}:
            try:
                if file_path.exists():
                    file_path.unlink()
                    logger.debug(f"Cleaned up file: {file_path}")
            except Exception as e:
                logger.warning(f"Failed to cleanup file {file_path}: {e}")
