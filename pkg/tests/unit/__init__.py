"""Unit tests for the Frobenius checker."""
