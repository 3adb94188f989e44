"""Wiring diagrams of real line arrangements and the moves between them."""

__version__ = "0.1.0"
