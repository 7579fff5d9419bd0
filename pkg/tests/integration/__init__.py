"""Integration tests for API endpoints."""
