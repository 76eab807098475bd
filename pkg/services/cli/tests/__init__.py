"""CLI service tests."""
