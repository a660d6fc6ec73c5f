"""Command handlers, one module per subcommand."""
from logz.commands import bench, estimate, hardness, oracle, sample

COMMANDS = [estimate, bench, oracle, sample, hardness]

__all__ = ["COMMANDS", "estimate", "bench", "oracle", "sample", "hardness"]
