"""Unit tests package for logz."""
