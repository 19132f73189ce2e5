"""Plugins for wave-assembly."""
