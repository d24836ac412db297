"""Compositions, diagrams, fillings, and standard-filling maps."""

from __future__ import annotations
