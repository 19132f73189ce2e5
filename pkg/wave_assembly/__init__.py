"""Predict where small particles assemble under a superposition of plane waves"""

__version__ = "0.1.0"
