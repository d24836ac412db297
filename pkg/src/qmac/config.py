"""Reads .qmac.yml into a QmacConfig.

A missing or empty file means defaults. Keys QmacConfig does not know are
dropped with a warning, and ``QMAC_THREADS`` overrides the thread cap.
"""

from __future__ import annotations

import logging
import os
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from qmac.constants import DEFAULT_CONFIG_FILE, DEFAULT_MAX_THREADS, THREADS_ENV_VAR
from qmac.models import QmacConfig

logger = logging.getLogger(__name__)


def load_config(config_path: str = DEFAULT_CONFIG_FILE) -> QmacConfig:
    """The configuration in ``config_path`` with ``QMAC_THREADS`` applied.

    Raises:
        ValidationError: a file with only known keys holds an invalid value.
    """
    return _apply_env(_load_file(Path(config_path)))


def _read_mapping(path: Path) -> dict[str, Any]:
    if not path.exists():
        return {}
    raw = yaml.safe_load(path.read_text())
    if raw is None:
        return {}
    if not isinstance(raw, dict):
        logger.warning("Ignoring %s: expected a mapping, got %s", path, type(raw).__name__)
        return {}
    return {str(key): value for key, value in raw.items()}


def _load_file(path: Path) -> QmacConfig:
    """Validate the file against QmacConfig.

    A file with only known keys must validate. A file that also carries
    unknown keys is treated as written for another version: the unknown keys
    are dropped, and if the rest is still invalid the defaults are used.
    """
    raw = _read_mapping(path)
    known = {key: value for key, value in raw.items() if key in QmacConfig.model_fields}
    unknown = sorted(raw.keys() - known.keys())
    if not unknown:
        return QmacConfig.model_validate(known)

    logger.warning("Unknown config keys (ignored): %s", ", ".join(unknown))
    try:
        return QmacConfig.model_validate(known)
    except ValidationError as exc:
        logger.warning("Config %s is invalid without its unknown keys, using defaults: %s", path, exc)
        return QmacConfig()


def _apply_env(config: QmacConfig) -> QmacConfig:
    value = os.environ.get(THREADS_ENV_VAR)
    if value is None:
        return config
    try:
        threads = int(value)
    except ValueError:
        logger.warning("Ignoring non-integer %s=%r", THREADS_ENV_VAR, value)
        return config
    if threads < 1:
        logger.warning("Ignoring %s=%d (must be at least 1)", THREADS_ENV_VAR, threads)
        return config
    config.threads = threads
    return config


def resolve_threads(config: QmacConfig) -> int:
    """Worker count for parallel verification."""
    if config.threads is not None:
        return config.threads
    return min(DEFAULT_MAX_THREADS, os.cpu_count() or 1)
