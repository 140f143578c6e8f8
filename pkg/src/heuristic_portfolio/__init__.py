"""Heuristic Portfolio - general-game heuristic win-rate measurement and prediction."""

__version__ = "0.1.0"
