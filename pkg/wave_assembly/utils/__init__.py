"""Utility helpers for wave-assembly."""

from .discovery import discover_external_plugins

__all__ = ["discover_external_plugins"]
