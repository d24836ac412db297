"""Storage backends: expansion cache."""

from __future__ import annotations
