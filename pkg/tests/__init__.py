"""Tests package for logz."""
