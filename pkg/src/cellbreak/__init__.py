"""Headless, deterministic breakout engine on a console-cell grid."""

__version__ = "0.1.0"
