"""Performance tests package for logz."""
