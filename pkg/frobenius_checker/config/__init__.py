"""Configuration management for the Frobenius checker."""

from .settings import Settings, get_settings

__all__ = ["Settings", "get_settings"]
