"""Unit tests for individual services."""
