"""Shared core: errors, logging, special functions, models and utilities."""
