"""Test suite for wave-assembly."""
