"""hardgen and hardverify: hard-instance files."""
import argparse
import json
import logging
import os

from logz.core.exceptions import EXIT_CHECK_FAILURE
from logz.core.rng import RngStream
from logz.hardness import generate, verify_instance
from logz.potentials.factory import load_instance

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    gen = subparsers.add_parser("hardgen", help="Generate a hard instance as JSON")
    gen.add_argument("--k", type=int, required=True, help="Dimension")
    gen.add_argument("--n", type=int, required=True, help="Number of cells (a perfect k-th power)")
    types = gen.add_mutually_exclusive_group()
    types.add_argument("--types", type=int, nargs="+", help="Explicit cell types (1 or 2)")
    types.add_argument("--delta", type=float, help="Type-2 probability is 1/2 + delta")
    gen.add_argument("--seed", type=int, default=0, help="Seed for drawn types")
    gen.add_argument("--mode", choices=["uniform", "equalized"], default="uniform")
    gen.add_argument("--reference", choices=["type2", "all"], default="type2", help="Equalization reference cells")
    gen.add_argument("--output", required=True, help="Instance JSON")
    gen.set_defaults(handler=handle_hardgen)

    verify = subparsers.add_parser("hardverify", help="Check smoothness and convexity of an instance")
    verify.add_argument("--input", required=True, help="Instance JSON")
    verify.add_argument("--points", type=int, default=10_000)
    verify.add_argument("--seed", type=int, default=0)
    verify.set_defaults(handler=handle_hardverify)


def handle_hardgen(args: argparse.Namespace) -> int:
    instance = generate(
        args.k,
        args.n,
        types=args.types,
        delta=args.delta or 0.0,
        rng=RngStream(args.seed),
        mode=args.mode,
        reference=args.reference,
    )
    parent = os.path.dirname(os.path.abspath(args.output))
    os.makedirs(parent, exist_ok=True)
    with open(args.output, "w", encoding="utf-8", newline="\n") as handle:
        json.dump(instance.model_dump(mode="json"), handle, indent=2, sort_keys=True)
        handle.write("\n")
    logger.info(f"Instance written to {args.output}")
    return 0


def handle_hardverify(args: argparse.Namespace) -> int:
    instance = load_instance(args.input)
    report = verify_instance(instance, points=args.points, rng=RngStream(args.seed))
    print(json.dumps(report.model_dump(mode="json"), indent=2, sort_keys=True))
    return 0 if report.ok else EXIT_CHECK_FAILURE
