"""Integration tests package for logz."""
