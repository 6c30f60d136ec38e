"""Micro-task category classification and semantic task-similarity toolkit."""

__version__ = "0.1.0"
