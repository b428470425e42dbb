# cli/__init__.py - Interfejs wiersza poleceń pst-network

from .pst_cli import cli, main

__all__ = ["cli", "main"]
