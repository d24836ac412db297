"""Output formatters: plain text, JSON, LaTeX, terminal tables."""

from __future__ import annotations
