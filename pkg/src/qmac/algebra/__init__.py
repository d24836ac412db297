"""Exact algebra: polynomials, factored rational expressions, quasisymmetric expansions."""

from __future__ import annotations
