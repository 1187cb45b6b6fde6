"""Utility modules: configuration, logging, errors and small numerical helpers."""
