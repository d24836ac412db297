"""qmac: exact quasisymmetric Macdonald polynomials and their combinatorial formulas."""

from __future__ import annotations

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("py-qmac")
except PackageNotFoundError:
    __version__ = "0.0.0-dev"
