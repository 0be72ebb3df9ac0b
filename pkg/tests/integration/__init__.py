"""Integration tests for the Frobenius checker."""
