"""Macdonald expansion formulas, the compute engine, and the verify suite."""

from __future__ import annotations
