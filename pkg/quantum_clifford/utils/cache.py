import json
import logging
import os
import pathlib
import tempfile
from json import JSONDecodeError
from typing import Any

from quantum_clifford.utils.helpers import canonical_json

logger = logging.getLogger(__name__)


def cache_path(cache_dir: pathlib.Path, kind: str, digest: str) -> pathlib.Path:
    """
    Location of one cached artifact.

    Args:
        cache_dir (Path): The cache directory
        kind (str): Artifact kind, e.g. "module" or "report-hilbert"
        digest (str): Content hash of the config that produced it

    Returns:
        Path: <cache_dir>/<kind>-<digest>.json
    """
    return cache_dir / f"{kind}-{digest}.json"


def load(cache_dir: pathlib.Path | None, kind: str, digest: str) -> dict[str, Any] | None:
    """
    Read a cached JSON document.

    Returns:
        dict | None: The document, or None on a miss or an unreadable file
    """
    if cache_dir is None:
        return None
    path = cache_path(cache_dir, kind, digest)
    try:
        with open(path, encoding="utf-8") as f:
            document = json.load(f)
    except FileNotFoundError:
        logger.info("cache miss: %s", path.name)
        return None
    except (OSError, JSONDecodeError) as e:
        logger.warning("ignoring unreadable cache entry %s: %s", path, e)
        return None
    logger.info("cache hit: %s", path.name)
    return document


def store(
    cache_dir: pathlib.Path | None, kind: str, digest: str, document: Any
) -> pathlib.Path | None:
    """
    Write a JSON document atomically: a temporary file in the cache directory
    is renamed over the target.

    Returns:
        Path | None: The written path, or None when caching is disabled
    """
    if cache_dir is None:
        return None
    cache_dir.mkdir(parents=True, exist_ok=True)
    path = cache_path(cache_dir, kind, digest)
    fd, temp_name = tempfile.mkstemp(prefix=f".{kind}-", suffix=".tmp", dir=cache_dir)
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as f:
            f.write(canonical_json(document, indent=2))
            f.write("\n")
        os.replace(temp_name, path)
    except BaseException:
        pathlib.Path(temp_name).unlink(missing_ok=True)
        raise
    logger.info("cached %s", path.name)
    return path
