"""Test package for the Frobenius checker."""
