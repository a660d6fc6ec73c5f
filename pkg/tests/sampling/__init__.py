"""Statistical sampler tests package for logz."""
