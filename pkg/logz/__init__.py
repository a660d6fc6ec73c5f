"""logz: normalizing-constant estimation for strongly log-concave targets."""
__version__ = "1.0.0"
