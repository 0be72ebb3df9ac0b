"""Performance tests for the Frobenius checker."""
